"""Constant-average-distance measures on finite metric spaces.

The central operation solves, for a space with distances D and quadrature
weights w, the linear system

    sum_j D_ij w_j rho_j = 1   for every i,

then normalizes the node masses m_j = w_j rho_j to total mass one. The
resulting measure makes the weighted average distance from every node equal
to the same constant r, the reciprocal of the raw solution's total mass.
The measure may be signed; classification is part of the result, not an
error. Magnitude reuses the same linear algebra with the kernel exp(-d).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NoPositiveNormalization, SingularSystem
from .spaces import FiniteMetricSpace, KernelKind, apply_kernel

# Above this condition number a direct factorization is not trusted and the
# solve falls back to minimum-norm least squares.
COND_LIMIT = 1e12

# Relative constancy of D.m required to call a solve converged.
RESIDUAL_TOL = 1e-8

# A rank-deficient system counts as solvable when the least-squares residual
# is below this, relative to the right side.
CONSISTENCY_TOL = 1e-9

# Mass classification: entries above -tol_neg are rounding noise, not sign
# structure. Relative to the largest mass.
TOL_NEG = 1e-8


@dataclass(frozen=True)
class EquilibriumSolution:
    """Solution of the constant-average-distance system.

    ``masses`` sum to one; ``densities`` are masses divided by quadrature
    weights; ``r`` is the constant value of the weighted average distance;
    ``residual`` is the infinity norm of D.m - r relative to r;
    ``variation`` is max(D.m) - min(D.m). ``status`` is "converged",
    "ill_conditioned" (least-squares fallback) or "not_converged".
    """

    masses: np.ndarray
    densities: np.ndarray
    r: float
    residual: float
    min_mass: float
    is_probability: bool
    variation: float
    status: str


@dataclass(frozen=True)
class MagnitudeResult:
    """Signed weighting solving exp(-D).weights = 1 and its total."""

    weights: np.ndarray
    magnitude: float


def solve_linear_system(A: np.ndarray, b: np.ndarray, context: str):
    """Solve A x = b, degrading gracefully as conditioning worsens.

    Returns (x, status) with status "converged" for a trusted direct solve
    and "ill_conditioned" for the minimum-norm least-squares fallback (used
    both for condition numbers beyond COND_LIMIT and for rank-deficient but
    consistent systems). Raises SingularSystem when no solution attains the
    consistency tolerance.
    """
    U, sig, Vt = np.linalg.svd(A)
    smax = float(sig[0])
    rank_tol = 100.0 * np.finfo(np.float64).eps * smax
    rank = int(np.count_nonzero(sig > rank_tol))
    if rank == 0:
        raise SingularSystem(f"{context}: matrix is numerically zero", cond=np.inf)
    cond = smax / float(sig[-1]) if sig[-1] > 0 else np.inf
    if rank == A.shape[0] and cond <= COND_LIMIT:
        return np.linalg.solve(A, b), "converged"
    x = (Vt[:rank].T / sig[:rank]) @ (U[:, :rank].T @ b)
    resid = float(np.abs(A @ x - b).max()) / float(np.abs(b).max())
    if resid > CONSISTENCY_TOL:
        raise SingularSystem(
            f"{context}: rank-deficient system (rank {rank} of {A.shape[0]}) "
            f"with no solution, best relative residual {resid:.3e}",
            cond=cond,
        )
    return x, "ill_conditioned"


def solve_equilibrium(space: FiniteMetricSpace, rhs: str = "ones") -> EquilibriumSolution:
    """Find node masses whose weighted average distance is constant.

    Parameters
    ----------
    space : FiniteMetricSpace
    rhs : {"ones", "paper"}
        "ones" solves for a constant right side, the convention under which
        the average distance really is constant. "paper" uses a right side
        proportional to the quadrature weights instead, reproducing the
        alternative published convention; on spaces with non-constant
        weights its result has a non-constant average distance, which the
        residual and variation fields then report.

    Raises
    ------
    SingularSystem
        The weighted distance system has no solution.
    NoPositiveNormalization
        The raw solution has non-positive total mass, so no scaling makes
        it a unit measure with positive r.
    """
    if rhs not in ("ones", "paper"):
        raise ValueError(f"solve_equilibrium: rhs must be 'ones' or 'paper', got {rhs!r}")
    D = space.distances
    w = space.weights
    A = D * w[None, :]
    b = np.ones(space.n) if rhs == "ones" else w.copy()
    rho, status = solve_linear_system(A, b, "solve_equilibrium")
    total = float(w @ rho)
    if total <= 0.0:
        raise NoPositiveNormalization(
            f"solve_equilibrium: raw solution has total mass {total:.6g} <= 0, "
            "cannot normalize to a unit measure"
        )
    masses = (w * rho) / total
    # after normalization the potential is b / total; its mean is the
    # equilibrium constant (exactly 1/total for the constant right side)
    r = float(b.mean()) / total
    g = D @ masses
    variation = float(g.max() - g.min())
    residual = float(np.abs(g - r).max() / r)
    if status == "converged" and residual > RESIDUAL_TOL:
        status = "not_converged"
    min_mass = float(masses.min())
    masses.flags.writeable = False
    densities = rho / total
    densities.flags.writeable = False
    return EquilibriumSolution(
        masses=masses,
        densities=densities,
        r=r,
        residual=residual,
        min_mass=min_mass,
        is_probability=bool(min_mass >= -TOL_NEG * float(np.abs(masses).max())),
        variation=variation,
        status=status,
    )


def constancy_report(space: FiniteMetricSpace, masses: np.ndarray):
    """Mean and spread of the average-distance function for given masses.

    Returns (r_mean, variation) where variation is max - min of D.masses.
    """
    m = np.asarray(masses, dtype=np.float64)
    if m.shape != (space.n,):
        raise ValueError(f"constancy_report: masses shape {m.shape}, expected ({space.n},)")
    if abs(m.sum() - 1.0) > 1e-9:
        raise ValueError(f"constancy_report: masses sum to {m.sum():.12g}, not 1")
    g = space.distances @ m
    return float(g.mean()), float(g.max() - g.min())


def gross_constant(solution: EquilibriumSolution, space: FiniteMetricSpace):
    """The constant r when the solution is an actual probability measure.

    Returns None for signed solutions. The constant of a genuine metric
    space lies in [diam/2, diam]; a value outside that range is a
    discretization artifact and triggers a warning.
    """
    if not solution.is_probability:
        return None
    r = solution.r
    diam = float(space.distances.max())
    slack = 1e-12 * diam
    if not (diam / 2.0 - slack <= r <= diam + slack):
        warnings.warn(
            f"equilibrium constant r = {r:.6g} outside [diam/2, diam] = "
            f"[{diam / 2.0:.6g}, {diam:.6g}]; discretization artifact",
            UserWarning,
            stacklevel=2,
        )
    return r


def solve_magnitude(space: FiniteMetricSpace) -> MagnitudeResult:
    """Total of the signed weights solving exp(-D).weights = 1.

    No normalization: the total itself is the quantity of interest. A
    single point has magnitude exactly one.
    """
    K = apply_kernel(space, KernelKind.EXP_NEG_DISTANCE)
    u, _ = solve_linear_system(K, np.ones(space.n), "solve_magnitude")
    u.flags.writeable = False
    return MagnitudeResult(weights=u, magnitude=float(u.sum()))
