"""Maximization of the average-distance energy over probability measures.

The objective I(mu) = sum_ij D_ij mu_i mu_j is maximized over the simplex
by Frank-Wolfe ascent with exact line search, in rounds: after each block
of iterations the near-active set (nodes whose potential (D.mu)_i is close
to the maximum) is extracted and the first-order stationarity system is
solved on it directly. When that candidate is feasible and certifies a
smaller gap it replaces the iterate, which turns the slow tail of
Frank-Wolfe into one linear solve.

The optimality gap max_i (D.mu)_i - I(mu) is recomputed from scratch at
every decision point; nothing is certified from incremental state.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import MaskLengthMismatch
from .spaces import FiniteMetricSpace

TOL_SUPP = 1e-7

# Iterations per Frank-Wolfe block between stationarity polish attempts.
BLOCK_ITERS = 2000

DEFAULT_MAX_ITERS = 50000
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class EnergyResult:
    """Best measure found, its energy, and the certificate that comes free.

    ``optimality_gap`` is max potential minus energy at ``measure``; zero at
    a maximizer. ``support`` holds indices with mass above TOL_SUPP.
    ``converged`` records whether the gap reached the requested tolerance.
    """

    measure: np.ndarray
    energy: float
    support: np.ndarray
    optimality_gap: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class OptimalityReport:
    """First-order conditions at a candidate maximizer.

    At an exact maximizer the potential equals the energy on the support
    and does not exceed it elsewhere; the two fields quantify both sides.
    """

    support_error: float
    complement_excess: float
    tolerance: float
    passes: bool


@dataclass(frozen=True)
class CrossCheckReport:
    """Agreement between the energy maximizer and the equilibrium measure.

    Comparable only when the equilibrium measure is a probability measure
    and the maximizer has full support; the two solutions then describe
    the same object and must agree.
    """

    comparable: bool
    mass_difference: float
    constant_difference: float
    passes: bool
    note: str


def _energy_and_gap(D, x):
    g = D @ x
    energy = float(x @ g)
    return g, energy, float(g.max()) - energy


def _stationary_on(D, active, n):
    """Solve (D mu)_i = const, sum mu = 1 on one support candidate.

    Returns the embedded measure, or None when the solution has genuinely
    negative entries (the support guess was wrong).
    """
    s = len(active)
    M = np.zeros((s + 1, s + 1))
    M[:s, :s] = D[np.ix_(active, active)]
    M[:s, s] = -1.0
    M[s, :s] = 1.0
    rhs = np.zeros(s + 1)
    rhs[s] = 1.0
    try:
        sol = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    mu_s = sol[:s]
    top = float(mu_s.max())
    if top <= 0.0 or float(mu_s.min()) < -1e-10 * top:
        return None
    cand = np.zeros(n)
    cand[active] = np.clip(mu_s, 0.0, None)
    cand /= cand.sum()
    return cand


# active sets larger than this skip the full-support polish rung
POLISH_FULL_LIMIT = 1024


def _polish(D, x, tol, gap):
    """Stationarity solves on widening near-active sets; best candidate.

    Starts from the nodes whose potential is within max(10 tol, 2 gap) of
    the best and widens the window geometrically up to full support,
    because iterates can stall with part of the true support still far
    from the top potential. Candidates are judged by their recomputed
    exact gap; wrong support guesses solve to negative masses and are
    dropped.
    """
    n = len(x)
    g = D @ x
    gmax = float(g.max())
    base = max(10.0 * tol, 2.0 * gap)
    best = None
    seen = set()
    for widen in (1.0, 8.0, 64.0, np.inf):
        if np.isinf(widen):
            if n > POLISH_FULL_LIMIT:
                break
            active = np.arange(n)
        else:
            active = np.flatnonzero(g >= gmax - widen * base)
        if len(active) < 1 or len(active) in seen:
            continue  # thresholds nest, so equal size means equal set
        seen.add(len(active))
        cand = _stationary_on(D, active, n)
        if cand is None:
            continue
        g2 = D @ cand
        cand_gap = float(g2.max()) - float(cand @ g2)
        if best is None or cand_gap < best[0]:
            best = (cand_gap, cand)
    return None if best is None else best[1]


def _starts(D, n, seed):
    """Deterministic multi-start seeds: uniform, Dirichlet draws, far pairs."""
    starts = [np.full(n, 1.0 / n)]
    rng = np.random.default_rng(seed)
    for _ in range(3):
        starts.append(rng.dirichlet(np.ones(n)))
    iu, ju = np.triu_indices(n, k=1)
    order = np.argsort(-D[iu, ju], kind="stable")
    for t in order[:4]:
        x = np.zeros(n)
        x[iu[t]] = x[ju[t]] = 0.5
        starts.append(x)
    return starts


def maximize_energy(
    space: FiniteMetricSpace,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> EnergyResult:
    """Best average-distance energy over the simplex, with certificate.

    Runs Frank-Wolfe ascent from several starts (uniform, three Dirichlet
    draws seeded by ``seed``, and midpoints of the four farthest node
    pairs), each for up to ``max_iters`` iterations, and returns the
    highest-energy result. The distance matrix need not make the energy
    concave, so distinct stationary points may exist; the reported gap
    always refers to the returned measure.
    """
    if space.n < 2:
        raise ValueError(f"maximize_energy: need >= 2 nodes, got {space.n}")
    if tol <= 0:
        raise ValueError(f"maximize_energy: tol must be positive, got {tol}")
    D = space.distances
    best = None
    total_iters = 0
    for start in _starts(D, space.n, seed):
        x = start.copy()
        used = 0
        _, energy, gap = _energy_and_gap(D, x)
        while used < max_iters:
            block = int(min(BLOCK_ITERS, max_iters - used))
            x, gap, its = kernels.frank_wolfe_ascent(D, x, block, tol)
            used += int(its)
            _, energy, gap = _energy_and_gap(D, x)
            cand = _polish(D, x, tol, gap)
            if cand is not None:
                _, cand_energy, cand_gap = _energy_and_gap(D, cand)
                if cand_gap <= gap and cand_energy >= energy - 1e-12 * max(1.0, abs(energy)):
                    x, energy, gap = cand, cand_energy, cand_gap
            if gap <= tol:
                break
            if its < block:
                break  # the kernel hit its own stopping rule; no progress left
        total_iters += used
        if best is None or energy > best[1]:
            best = (x, energy, gap)
    x, energy, gap = best
    x.flags.writeable = False
    return EnergyResult(
        measure=x,
        energy=energy,
        support=np.flatnonzero(x > TOL_SUPP),
        optimality_gap=gap,
        iterations=total_iters,
        converged=bool(gap <= tol),
    )


def check_optimality_conditions(
    space: FiniteMetricSpace, result: EnergyResult, tol: float = DEFAULT_TOL
) -> OptimalityReport:
    """Verify the equality/inequality structure of a maximizer's potential.

    On the support the potential must equal the energy; off it, not exceed
    it. Certification tolerance is 10 times the solve tolerance.
    """
    g = space.distances @ result.measure
    on = result.support
    off = np.setdiff1d(np.arange(space.n), on, assume_unique=True)
    support_error = float(np.abs(g[on] - result.energy).max()) if len(on) else 0.0
    complement_excess = float((g[off] - result.energy).max()) if len(off) else 0.0
    tolerance = 10.0 * tol
    return OptimalityReport(
        support_error=support_error,
        complement_excess=complement_excess,
        tolerance=tolerance,
        passes=bool(support_error <= tolerance and complement_excess <= tolerance),
    )


def boundary_support_fraction(
    space: FiniteMetricSpace, result: EnergyResult, boundary_mask
) -> float:
    """Share of the maximizer's mass sitting on boundary nodes."""
    mask = np.asarray(boundary_mask, dtype=bool)
    if mask.shape != (space.n,):
        raise MaskLengthMismatch(
            f"boundary_support_fraction: mask length {mask.shape} for "
            f"{space.n} nodes"
        )
    return float(result.measure[mask].sum())


def cross_validate_equilibrium(
    space: FiniteMetricSpace,
    energy_result: EnergyResult,
    equilibrium_solution,
    tol: float = 1e-4,
) -> CrossCheckReport:
    """Compare the two characterizations of the optimal measure.

    When the equilibrium solve yields a genuine probability measure and
    the energy maximizer has full support, both should produce the same
    measure and the same constant; the report quantifies the agreement.
    """
    if not equilibrium_solution.is_probability:
        return CrossCheckReport(
            comparable=False,
            mass_difference=float("nan"),
            constant_difference=float("nan"),
            passes=False,
            note="not comparable: equilibrium measure is signed",
        )
    if len(energy_result.support) < space.n:
        return CrossCheckReport(
            comparable=False,
            mass_difference=float("nan"),
            constant_difference=float("nan"),
            passes=False,
            note="not comparable: energy maximizer lacks full support",
        )
    mass_diff = float(np.abs(energy_result.measure - equilibrium_solution.masses).max())
    const_diff = float(abs(energy_result.energy - equilibrium_solution.r))
    return CrossCheckReport(
        comparable=True,
        mass_difference=mass_diff,
        constant_difference=const_diff,
        passes=bool(mass_diff <= tol and const_diff <= tol),
        note="",
    )
