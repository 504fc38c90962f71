"""Numeric kernels: exact rational solving, symmetric eigenwork, and a small LP.

Two arithmetic worlds are kept deliberately separate:

* solvability classification, nullspaces, and the max-min canonicalization run
  over exact rationals (``fractions.Fraction``), so "singular" and
  "inconsistent" are structural verdicts rather than tolerance calls;
* eigendecomposition and pseudo-inverse application run in binary64 through a
  cyclic Jacobi sweep.

Callers convert explicitly at the boundary. Everything here is a pure function
of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm, sqrt
from typing import Sequence

import numpy as np

__all__ = [
    "SolveStatus",
    "SolveOutcome",
    "EigenDecomposition",
    "NonSymmetricMatrixError",
    "JacobiConvergenceError",
    "LpUnboundedError",
    "solve_exact",
    "symmetric_eigen",
    "pseudo_apply",
    "lp_max_min",
]

SYMMETRY_TOLERANCE = 1e-12
# relative off-diagonal target for the Jacobi sweep
JACOBI_TARGET = 1e-12


class NonSymmetricMatrixError(ValueError):
    """Matrix handed to the eigensolver is not symmetric within tolerance."""


class JacobiConvergenceError(RuntimeError):
    """Jacobi sweep hit its sweep cap before reaching the off-diagonal target."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class LpUnboundedError(RuntimeError):
    """The max-min objective is unbounded; carries a certificate direction."""

    def __init__(self, message: str, direction: tuple[Fraction, ...]):
        super().__init__(message)
        self.direction = direction


class SolveStatus(Enum):
    UNIQUE = "unique"
    AFFINE = "affine"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveOutcome:
    """Exact classification of a square linear system.

    ``solution`` is the unique solution (UNIQUE), one particular solution
    (AFFINE), or None (INCONSISTENT). ``nullspace`` is an exact basis of the
    kernel of the coefficient matrix and is reported for every status.
    """

    status: SolveStatus
    solution: tuple[Fraction, ...] | None
    nullspace: tuple[tuple[Fraction, ...], ...]
    rank: int

    @property
    def nullspace_dimension(self) -> int:
        return len(self.nullspace)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues (descending) with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    offdiagonal_residual: float

    def __post_init__(self) -> None:
        for name in ("eigenvalues", "eigenvectors"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    raise TypeError(f"exact arithmetic needs int or Fraction entries, got {type(value).__name__}")


def solve_exact(matrix, rhs) -> SolveOutcome:
    """Classify and solve ``M x = rhs`` over exact rationals.

    Parameters
    ----------
    matrix : square 2-D array or nested sequence of int/Fraction entries
    rhs : sequence of int/Fraction, same length as the matrix side

    Returns
    -------
    SolveOutcome
        Status UNIQUE, AFFINE (particular solution plus exact kernel basis),
        or INCONSISTENT. No tolerances are involved anywhere.

    Notes
    -----
    Rows are scaled to integers, then eliminated with integer row operations
    and per-row gcd reduction, which is much faster than per-entry Fraction
    normalization. Back-substitution returns to Fractions at the end.
    """
    rows = [list(row) for row in matrix]
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    rhs = list(rhs)
    if len(rhs) != n:
        raise ValueError(f"rhs length {len(rhs)} does not match matrix size {n}")

    # one integer row per equation: clear denominators of [row | rhs]
    aug: list[list[int]] = []
    for i in range(n):
        frs = [_to_fraction(x) for x in rows[i]] + [_to_fraction(rhs[i])]
        den = 1
        for fr in frs:
            den = lcm(den, fr.denominator)
        aug.append([int(fr * den) for fr in frs])

    width = n + 1
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        # smallest nonzero entry keeps the integer growth down
        best = None
        best_abs = None
        for i in range(r, n):
            a = aug[i][col]
            if a != 0 and (best_abs is None or abs(a) < best_abs):
                best, best_abs = i, abs(a)
        if best is None:
            continue
        aug[r], aug[best] = aug[best], aug[r]
        prow = aug[r]
        pval = prow[col]
        for i in range(r + 1, n):
            val = aug[i][col]
            if val == 0:
                continue
            row = aug[i]
            new = [pval * row[j] - val * prow[j] for j in range(width)]
            g = 0
            for x in new:
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                new = [x // g for x in new]
            aug[i] = new
        pivot_cols.append(col)
        r += 1
        if r == n:
            break

    rank = r
    consistent = all(aug[i][n] == 0 for i in range(rank, n))

    frac_rows = [[Fraction(x) for x in aug[i]] for i in range(rank)]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_set]

    def back_solve(free_value_col: int | None, use_rhs: bool) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        if free_value_col is not None:
            x[free_value_col] = Fraction(1)
        for i in reversed(range(rank)):
            c = pivot_cols[i]
            row = frac_rows[i]
            acc = row[n] if use_rhs else Fraction(0)
            for j in range(c + 1, n):
                if x[j]:
                    acc -= row[j] * x[j]
            x[c] = acc / row[c]
        return tuple(x)

    nullspace = tuple(back_solve(f, use_rhs=False) for f in free_cols)
    if not consistent:
        return SolveOutcome(SolveStatus.INCONSISTENT, None, nullspace, rank)
    particular = back_solve(None, use_rhs=True)
    if rank == n:
        return SolveOutcome(SolveStatus.UNIQUE, particular, (), rank)
    return SolveOutcome(SolveStatus.AFFINE, particular, nullspace, rank)


def symmetric_eigen(matrix, *, max_sweeps: int = 100) -> EigenDecomposition:
    """Eigendecompose a symmetric matrix with cyclic Jacobi rotations.

    Sweeps run until the largest off-diagonal magnitude drops below
    ``1e-12 * ||M||_F`` (of the input), capped at ``max_sweeps``; exceeding the
    cap raises JacobiConvergenceError carrying the achieved residual.
    Eigenpairs come back sorted by eigenvalue, descending.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    n = a.shape[0]
    if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_TOLERANCE:
        raise NonSymmetricMatrixError(
            f"matrix is not symmetric within {SYMMETRY_TOLERANCE:g} absolute"
        )
    a = (a + a.T) / 2.0
    v = np.eye(n)
    fro = float(np.linalg.norm(a))
    target = JACOBI_TARGET * fro

    def offmax() -> float:
        if n == 1:
            return 0.0
        b = np.abs(a.copy())
        np.fill_diagonal(b, 0.0)
        return float(b.max())

    residual = offmax()
    if fro > 0.0:
        rotate_tol = target / (4.0 * n)
        for _sweep in range(max_sweeps):
            if residual <= target:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if abs(apq) <= rotate_tol:
                        continue
                    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if tau >= 0.0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    col_p = a[:, p].copy()
                    col_q = a[:, q].copy()
                    a[:, p] = c * col_p - s * col_q
                    a[:, q] = s * col_p + c * col_q
                    row_p = a[p, :].copy()
                    row_q = a[q, :].copy()
                    a[p, :] = c * row_p - s * row_q
                    a[q, :] = s * row_p + c * row_q
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
            residual = offmax()
        if residual > target:
            raise JacobiConvergenceError(
                f"Jacobi sweep did not converge in {max_sweeps} sweeps: "
                f"off-diagonal residual {residual:.3e} above target {target:.3e}",
                residual,
            )

    order = np.argsort(-np.diag(a), kind="stable")
    return EigenDecomposition(np.diag(a)[order], v[:, order], residual)


def pseudo_apply(matrix, rhs) -> np.ndarray:
    """Apply the Moore-Penrose pseudo-inverse of a symmetric matrix to rhs.

    Spectral truncation with cutoff ``n * 1e-10 * max|lambda|`` (the single
    truncation knob); the result is the minimum-norm least-squares solution of
    ``M z = rhs``.
    """
    eig = symmetric_eigen(matrix)
    lam = eig.eigenvalues
    n = lam.size
    b = np.asarray(rhs, dtype=float)
    if b.shape != (n,):
        raise ValueError(f"rhs shape {b.shape} does not match matrix size {n}")
    lam_max = float(np.abs(lam).max(initial=0.0))
    cutoff = n * 1e-10 * lam_max
    keep = np.abs(lam) > cutoff
    if not keep.any():
        return np.zeros(n)
    vk = eig.eigenvectors[:, keep]
    return vk @ ((vk.T @ b) / lam[keep])


# ---------------------------------------------------------------------------
# Exact simplex and the max-min canonical solution
# ---------------------------------------------------------------------------


def _simplex_max(
    a_rows: list[list[Fraction]], b: list[Fraction], c: list[Fraction]
) -> tuple[str, list[Fraction]]:
    """Maximize ``c . x`` over ``{A x <= b}`` with x free and b >= 0.

    Exact dense tableau with Bland's rule (guaranteed termination). Returns
    ("optimal", x) or ("unbounded", d) with d a feasible improving ray.
    Callers must shift the problem so b >= 0; the all-slack basis is then
    feasible and no phase-1 is needed.
    """
    m = len(a_rows)
    nv = len(c)
    assert all(x >= 0 for x in b), "simplex caller must shift to b >= 0"
    ncols = 2 * nv + m
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(nv):
            aij = a_rows[i][j]
            row[j] = aij
            row[nv + j] = -aij
        row[2 * nv + i] = Fraction(1)
        row[ncols] = b[i]
        tab.append(row)
    # reduced-cost row for the slack basis: z_j - c_j = -c_j
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(nv):
        obj[j] = -c[j]
        obj[nv + j] = c[j]
    basis = [2 * nv + i for i in range(m)]

    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            aie = tab[i][enter]
            if aie > 0:
                ratio = tab[i][ncols] / aie
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            direction = [Fraction(0)] * ncols
            direction[enter] = Fraction(1)
            for i in range(m):
                direction[basis[i]] = -tab[i][enter]
            return "unbounded", [direction[j] - direction[nv + j] for j in range(nv)]
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        prow = tab[leave]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * p for x, p in zip(tab[i], prow)]
        if obj[enter]:
            f = obj[enter]
            obj = [x - f * p for x, p in zip(obj, prow)]
        basis[leave] = enter

    xfull = [Fraction(0)] * ncols
    for i in range(m):
        xfull[basis[i]] = tab[i][ncols]
    return "optimal", [xfull[j] - xfull[nv + j] for j in range(nv)]


def lp_max_min(particular, nullspace) -> tuple[Fraction, ...]:
    """Canonical point of an affine solution family: the max-min solution.

    Over ``w(c) = particular + sum_j c_j * nullspace_j`` this maximizes
    ``min_i w_i``, refining ties lexicographically (largest smallest entry,
    then largest second-smallest among the remaining optima, and so on), which
    pins every coordinate and determines w uniquely. Raises LpUnboundedError
    with a certificate direction when ``min_i w_i`` has no upper bound, which
    cannot happen for genuine distance systems.
    """
    p = [_to_fraction(x) for x in particular]
    basis = [[_to_fraction(x) for x in vec] for vec in nullspace]
    n = len(p)
    k = len(basis)
    if any(len(vec) != n for vec in basis):
        raise ValueError("nullspace vectors must match the particular solution's length")
    if k == 0:
        return tuple(p)

    def w_of(coef: list[Fraction]) -> list[Fraction]:
        return [p[i] + sum(coef[j] * basis[j][i] for j in range(k)) for i in range(n)]

    bounds: list[Fraction | None] = [None] * n
    coef = [Fraction(0)] * k
    for _level in range(n + 1):
        active = [i for i in range(n) if bounds[i] is None]
        if not active:
            break
        w = w_of(coef)
        t0 = min(w[i] for i in active)
        rows = []
        rhs = []
        for i in range(n):
            row = [-basis[j][i] for j in range(k)]
            if bounds[i] is None:
                row.append(Fraction(1))
                rhs.append(w[i] - t0)
            else:
                row.append(Fraction(0))
                rhs.append(w[i] - bounds[i])
            rows.append(row)
        status, x = _simplex_max(rows, rhs, [Fraction(0)] * k + [Fraction(1)])
        if status == "unbounded":
            delta = x[:k]
            direction = tuple(
                sum(delta[j] * basis[j][i] for j in range(k)) for i in range(n)
            )
            if all(bound is None for bound in bounds):
                raise LpUnboundedError(
                    "min_i w_i is unbounded over the affine family", direction
                )
            # the objective itself is bounded (earlier levels pinned it); only
            # the remaining coordinates grow without bound, so keep the current
            # deterministic vertex, whose pinned coordinates already sit at
            # their final values
            return tuple(w_of(coef))
        t_level = t0 + x[k]
        coef = [coef[j] + x[j] for j in range(k)]
        w = w_of(coef)

        # pin the coordinates that cannot exceed t_level anywhere in the
        # remaining region; at least one must pin per level
        req = [bounds[i] if bounds[i] is not None else t_level for i in range(n)]
        rows2 = [[-basis[j][i] for j in range(k)] for i in range(n)]
        rhs2 = [w[i] - req[i] for i in range(n)]
        pinned = False
        for i in active:
            if w[i] > t_level:
                continue
            status2, x2 = _simplex_max(rows2, rhs2, [basis[j][i] for j in range(k)])
            if status2 == "unbounded":
                continue
            best_wi = w[i] + sum(x2[j] * basis[j][i] for j in range(k))
            if best_wi == t_level:
                bounds[i] = t_level
                pinned = True
        if not pinned:  # mathematically unreachable: the level optimum pins someone
            raise RuntimeError("max-min refinement failed to pin a coordinate")

    assert all(bound is not None for bound in bounds)
    return tuple(bounds)  # type: ignore[arg-type]
