"""Verifiers for the curvature theorem suite and the spectral quantities they use.

Each checker returns a TheoremReport. Inequalities between exact rational
quantities are compared with rational equality (zero tolerance); wherever a
floating eigenvalue enters, the floating side gets a one-sided 1e-9 absolute
slack so numerical noise can never fail a true statement. Reports distinguish
"hypothesis unmet" (not applicable, counts as passed) from a genuine failed
inequality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from .curvature import CurvatureResult, CurvatureStatus, compute_curvature, exact_matvec
from .graphs import DistanceMatrix, Graph, apsp, cartesian_product
from .linalg import symmetric_eigen

__all__ = [
    "SpectralInfo",
    "Quantity",
    "InequalityCheck",
    "TheoremReport",
    "FLOAT_SLACK",
    "spectral_gap",
    "check_bonnet_myers",
    "check_reverse_bonnet_myers",
    "check_lichnerowicz",
    "check_minimax",
    "check_theorem5",
    "spectral_criterion",
    "perron_alignment",
    "check_product_curvature",
    "simplex_measures",
]

FLOAT_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralInfo:
    """Eigen-data of the Laplacian (Deg - A) and of the distance matrix.

    ``lambda1`` is the spectral gap (second-smallest Laplacian eigenvalue);
    the Laplacian spectrum is ascending, the distance spectrum descending so
    its first entry is the Perron eigenvalue. ``c_G`` measures how close the
    Perron eigenvector of D is to constant: <v, 1> / (||v|| * sqrt(n)).
    """

    lambda1: float
    laplacian_spectrum: tuple[float, ...]
    distance_spectrum: tuple[float, ...]
    perron_vector: tuple[float, ...]
    c_G: float


@dataclass(frozen=True)
class Quantity:
    label: str
    value: float
    exact: str | None = None


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    lhs: Quantity
    relation: str
    rhs: Quantity
    holds: bool
    exact_arithmetic: bool


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    hypothesis_satisfied: bool
    checks: tuple[InequalityCheck, ...]
    passed: bool
    notes: tuple[str, ...] = ()
    seed: int | None = None

    @property
    def failed(self) -> bool:
        """True only for a hypothesis-satisfied report with a failed check."""
        return self.hypothesis_satisfied and not self.passed


def _q(label: str, value) -> Quantity:
    if isinstance(value, Fraction):
        return Quantity(label, float(value), str(value))
    if isinstance(value, (int, np.integer)):
        return Quantity(label, float(value), str(int(value)))
    return Quantity(label, float(value), None)


def _not_applicable(theorem: str, reason: str) -> TheoremReport:
    return TheoremReport(theorem, False, (), True, (f"hypothesis not satisfied: {reason}",))


def _exact_hypothesis(result: CurvatureResult, need_positive_k: bool = False) -> str | None:
    """Reason string when the Exact*/K-sign hypothesis fails, else None."""
    if not result.is_exact:
        return "no exact solution (status inconsistent)"
    if need_positive_k:
        if result.K <= 0:
            return f"K = {result.K} is not positive"
    elif result.K < 0:
        return f"K = {result.K} is negative"
    return None


def spectral_gap(g: Graph, dm: DistanceMatrix | None = None) -> SpectralInfo:
    """Eigendecompose the graph Laplacian and the distance matrix."""
    if g.n < 2:
        raise ValueError("spectral quantities need at least two vertices")
    if dm is None:
        dm = apsp(g)
    n = g.n
    adj = np.zeros((n, n))
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = 1.0
    lap = np.diag(adj.sum(axis=1)) - adj
    lap_eig = symmetric_eigen(lap)
    lap_asc = tuple(float(x) for x in lap_eig.eigenvalues[::-1])

    dist_eig = symmetric_eigen(dm.entries.astype(float))
    v = dist_eig.eigenvectors[:, 0].copy()
    if v.sum() < 0:
        v = -v
    c_g = float(v.sum() / (np.linalg.norm(v) * sqrt(n)))
    return SpectralInfo(
        lambda1=lap_asc[1],
        laplacian_spectrum=lap_asc,
        distance_spectrum=tuple(float(x) for x in dist_eig.eigenvalues),
        perron_vector=tuple(float(x) for x in v),
        c_G=c_g,
    )


def check_bonnet_myers(
    g: Graph, result: CurvatureResult, dm: DistanceMatrix | None = None
) -> TheoremReport:
    """diam(G) <= 2n/||w||_1 <= 2/K, plus the rigidity clause at diam*K == 2."""
    reason = _exact_hypothesis(result)
    if reason is not None:
        return _not_applicable("bonnet_myers", reason)
    if dm is None:
        dm = apsp(g)
    n = g.n
    diam = dm.diameter()
    total: Fraction = result.total
    k_val: Fraction = result.K
    mid = Fraction(2 * n) / total
    checks = [
        InequalityCheck(
            "diam <= 2n/||w||_1", _q("diam", diam), "<=", _q("2n/||w||_1", mid),
            Fraction(diam) <= mid, True,
        )
    ]
    notes: list[str] = []
    if k_val > 0:
        # 2n/total <= 2/K  <=>  n*K <= total
        checks.append(
            InequalityCheck(
                "2n/||w||_1 <= 2/K", _q("2n/||w||_1", mid), "<=", _q("2/K", Fraction(2) / k_val),
                n * k_val <= total, True,
            )
        )
        if Fraction(diam) * k_val == 2:
            constant = all(x == result.w[0] for x in result.w)
            checks.append(
                InequalityCheck(
                    "diam*K == 2 implies constant curvature",
                    _q("distinct w values", len(set(result.w))), "==", _q("one", 1),
                    constant, True,
                )
            )
            notes.append("sharp: diam * K == 2, rigidity clause checked")
    else:
        notes.append("K == 0: the 2/K bound is vacuous")
    passed = all(c.holds for c in checks)
    return TheoremReport("bonnet_myers", True, tuple(checks), passed, tuple(notes))


def check_reverse_bonnet_myers(
    g: Graph, result: CurvatureResult, dm: DistanceMatrix | None = None
) -> TheoremReport:
    """||w||_1 >= n^2 / ((n-1) diam), with equality exactly for complete graphs."""
    reason = _exact_hypothesis(result)
    if reason is not None:
        return _not_applicable("reverse_bonnet_myers", reason)
    if g.n < 2:
        return _not_applicable("reverse_bonnet_myers", "single-vertex graph has no diameter")
    if dm is None:
        dm = apsp(g)
    n = g.n
    diam = dm.diameter()
    total: Fraction = result.total
    bound = Fraction(n * n, (n - 1) * diam)
    checks = [
        InequalityCheck(
            "||w||_1 >= n^2/((n-1) diam)", _q("||w||_1", total), ">=", _q("bound", bound),
            total >= bound, True,
        )
    ]
    notes: list[str] = []
    if total == bound:
        complete = g.edge_count == n * (n - 1) // 2
        checks.append(
            InequalityCheck(
                "equality implies complete graph",
                _q("edge count", g.edge_count), "==", _q("n(n-1)/2", n * (n - 1) // 2),
                complete, True,
            )
        )
        notes.append("equality case: graph must be (and is checked to be) complete")
    passed = all(c.holds for c in checks)
    return TheoremReport("reverse_bonnet_myers", True, tuple(checks), passed, tuple(notes))


def check_lichnerowicz(
    g: Graph, result: CurvatureResult, info: SpectralInfo | None = None,
    dm: DistanceMatrix | None = None,
) -> TheoremReport:
    """lambda_1 >= ||w||_1 / (2n^2) >= K / (2n), for positive K."""
    reason = _exact_hypothesis(result, need_positive_k=True)
    if reason is not None:
        return _not_applicable("lichnerowicz", reason)
    if info is None:
        info = spectral_gap(g, dm)
    n = g.n
    total: Fraction = result.total
    k_val: Fraction = result.K
    mid = total / (2 * n * n)
    right = k_val / (2 * n)
    checks = (
        InequalityCheck(
            "lambda_1 >= ||w||_1/(2n^2)", _q("lambda_1", info.lambda1), ">=", _q("mid", mid),
            info.lambda1 + FLOAT_SLACK >= float(mid), False,
        ),
        InequalityCheck(
            "||w||_1/(2n^2) >= K/(2n)", _q("mid", mid), ">=", _q("K/(2n)", right),
            mid >= right, True,
        ),
    )
    passed = all(c.holds for c in checks)
    return TheoremReport("lichnerowicz", True, checks, passed)


def simplex_measures(n: int, count: int, seed: int) -> list[np.ndarray]:
    """Seeded random probability measures: normalized independent exponentials."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        e = [rng.expovariate(1.0) for _ in range(n)]
        s = sum(e)
        out.append(np.array([x / s for x in e]))
    return out


def _validate_measure(nu: np.ndarray) -> None:
    if nu.min() < 0:
        raise ValueError("measure has a negative entry")
    if abs(float(nu.sum()) - 1.0) > 1e-12:
        raise ValueError("measure does not sum to 1 within 1e-12")


def check_minimax(
    g: Graph,
    result: CurvatureResult,
    measures: Sequence[np.ndarray] | None = None,
    *,
    seed: int = 0,
    n_random: int = 100,
    dm: DistanceMatrix | None = None,
) -> TheoremReport:
    """min_a (D nu)_a <= n/||w||_1 <= max_b (D nu)_b for every probability measure nu.

    The battery is every vertex point mass, the uniform measure, the sharp
    measure nu* = w/||w||_1 (checked to achieve equality on both sides), and
    ``n_random`` seeded random simplex draws; ``measures`` replaces the random
    part when given. Exact measures are checked in rational arithmetic, random
    ones in floating point with the usual slack.
    """
    reason = _exact_hypothesis(result)
    if reason is not None:
        return _not_applicable("minimax", reason)
    if dm is None:
        dm = apsp(g)
    n = g.n
    total: Fraction = result.total
    alpha = Fraction(n) / total
    checks: list[InequalityCheck] = []
    notes: list[str] = []

    # point masses: (D e_a)_i = d(i, a); the min side is 0 at i = a, the max
    # side is the eccentricity of a
    ecc_min = int(dm.entries.max(axis=0).min())
    checks.append(
        InequalityCheck(
            "point masses: min_a ecc(a) >= alpha",
            _q("min eccentricity", ecc_min), ">=", _q("alpha", alpha),
            Fraction(ecc_min) >= alpha, True,
        )
    )
    checks.append(
        InequalityCheck(
            "point masses: 0 <= alpha", _q("zero", 0), "<=", _q("alpha", alpha),
            alpha >= 0, True,
        )
    )

    # uniform measure, exact
    row = [Fraction(int(s), n) for s in dm.row_sums()]
    checks.append(
        InequalityCheck(
            "uniform: min (D nu)_a <= alpha", _q("min", min(row)), "<=", _q("alpha", alpha),
            min(row) <= alpha, True,
        )
    )
    checks.append(
        InequalityCheck(
            "uniform: alpha <= max (D nu)_b", _q("alpha", alpha), "<=", _q("max", max(row)),
            alpha <= max(row), True,
        )
    )

    # nu* = w / ||w||_1 achieves equality on both sides; D nu* entries are the
    # already-computed residuals divided by the total
    lo = result.residual_range[0] / total
    hi = result.residual_range[1] / total
    checks.append(
        InequalityCheck(
            "nu*: min (D nu*)_a == alpha", _q("min", lo), "==", _q("alpha", alpha),
            lo == alpha, True,
        )
    )
    checks.append(
        InequalityCheck(
            "nu*: max (D nu*)_b == alpha", _q("max", hi), "==", _q("alpha", alpha),
            hi == alpha, True,
        )
    )

    if measures is None:
        measures = simplex_measures(n, n_random, seed)
        notes.append(f"{n_random} random simplex measures from seed {seed}")
    if measures:
        batch = np.column_stack([np.asarray(m, dtype=float) for m in measures])
        if batch.shape[0] != n:
            raise ValueError("measure length does not match the vertex count")
        for j in range(batch.shape[1]):
            _validate_measure(batch[:, j])
        values = dm.entries.astype(float) @ batch
        worst_min = float(values.min(axis=0).max())
        worst_max = float(values.max(axis=0).min())
        alpha_f = float(alpha)
        checks.append(
            InequalityCheck(
                "random: worst min side <= alpha",
                _q("max over nu of min (D nu)", worst_min), "<=", _q("alpha", alpha),
                worst_min <= alpha_f + FLOAT_SLACK, False,
            )
        )
        checks.append(
            InequalityCheck(
                "random: alpha <= worst max side",
                _q("alpha", alpha), "<=", _q("min over nu of max (D nu)", worst_max),
                alpha_f <= worst_max + FLOAT_SLACK, False,
            )
        )
    passed = all(c.holds for c in checks)
    return TheoremReport("minimax", True, tuple(checks), passed, tuple(notes), seed)


def check_theorem5(
    g: Graph,
    w,
    info: SpectralInfo | None = None,
    dm: DistanceMatrix | None = None,
) -> TheoremReport:
    """Bounds for arbitrary positive weight vectors.

    For any w > 0 with K = min_i w_i:
    ``diam(G) <= (||Dw||_inf / n) * 8/K`` and ``lambda_1 >= K / (8 ||Dw||_inf)``.
    Unlike the other checkers, w need not solve the distance system.
    """
    w_list = list(w)
    if len(w_list) != g.n:
        raise ValueError("w length does not match the vertex count")
    exact = all(isinstance(x, (int, Fraction, np.integer)) for x in w_list)
    if dm is None:
        dm = apsp(g)
    n = g.n
    diam = dm.diameter()
    if exact:
        w_frac = [Fraction(x) for x in w_list]
        if min(w_frac) <= 0:
            raise ValueError("theorem5 needs every entry of w to be positive")
        k_val: Fraction | float = min(w_frac)
        dw = exact_matvec(dm.entries, w_frac)
        dw_inf: Fraction | float = max(abs(x) for x in dw)
        diam_holds = Fraction(diam) * n * k_val <= 8 * dw_inf
        lam_bound: Fraction | float = k_val / (8 * dw_inf)
    else:
        w_arr = np.asarray(w_list, dtype=float)
        if w_arr.min() <= 0:
            raise ValueError("theorem5 needs every entry of w to be positive")
        k_val = float(w_arr.min())
        dw_inf = float(np.abs(dm.entries.astype(float) @ w_arr).max())
        diam_holds = diam <= (dw_inf / n) * (8.0 / k_val) + FLOAT_SLACK
        lam_bound = k_val / (8.0 * dw_inf)
    if info is None:
        info = spectral_gap(g, dm)
    checks = (
        InequalityCheck(
            "diam <= (||Dw||_inf/n) * 8/K",
            _q("diam", diam), "<=", _q("(||Dw||_inf/n)*8/K", _frac_or_float(dw_inf, n, k_val)),
            bool(diam_holds), exact,
        ),
        InequalityCheck(
            "lambda_1 >= K/(8 ||Dw||_inf)",
            _q("lambda_1", info.lambda1), ">=", _q("K/(8||Dw||_inf)", lam_bound),
            info.lambda1 + FLOAT_SLACK >= float(lam_bound), False,
        ),
    )
    passed = all(c.holds for c in checks)
    return TheoremReport("theorem5", True, checks, passed)


def _frac_or_float(dw_inf, n, k_val):
    if isinstance(dw_inf, Fraction) and isinstance(k_val, Fraction):
        return (dw_inf / n) * (8 / k_val)
    return (float(dw_inf) / n) * (8.0 / float(k_val))


def spectral_criterion(
    info: SpectralInfo, curvature_status: CurvatureStatus | None = None
) -> TheoremReport:
    """Sufficient solvability test from the distance spectrum.

    When D has one positive eigenvalue (lambda_1 > 0 >= lambda_2 >= ...) and
    ``1 - <v, 1/sqrt(n)>^2 < |lambda_2| / (lambda_1 - lambda_2)``, the system
    ``D x = 1`` is solvable. The prediction is evaluated one-sidedly (slack
    subtracted) so floating noise cannot produce a false "solvable". With the
    exact classification supplied, soundness is cross-checked: a true
    criterion must not meet an inconsistent classification.
    """
    ds = info.distance_spectrum
    if len(ds) < 2:
        return _not_applicable("spectral_criterion", "spectrum too small")
    lam1, lam2 = ds[0], ds[1]
    hyp = lam1 > 0 and lam2 <= FLOAT_SLACK and (lam1 - lam2) > 0
    if not hyp:
        return _not_applicable(
            "spectral_criterion",
            f"distance spectrum not of the form lambda_1 > 0 >= lambda_2 (lambda_2 = {lam2:.3e})",
        )
    lhs = 1.0 - info.c_G**2
    rhs = abs(lam2) / (lam1 - lam2)
    criterion_true = lhs < rhs - FLOAT_SLACK
    checks = [
        InequalityCheck(
            "1 - <v, 1/sqrt(n)>^2 < |lambda_2|/(lambda_1 - lambda_2)",
            _q("1 - c_G^2", lhs), "<", _q("|lambda_2|/(lambda_1-lambda_2)", rhs),
            criterion_true, False,
        )
    ]
    notes = [f"criterion {'holds: predicts solvable' if criterion_true else 'does not hold: no prediction'}"]
    passed = True
    if curvature_status is not None:
        sound = not (criterion_true and curvature_status is CurvatureStatus.INCONSISTENT)
        checks.append(
            InequalityCheck(
                "criterion true implies exactly solvable",
                _q("criterion", int(criterion_true)), "=>",
                _q("solvable", int(curvature_status is not CurvatureStatus.INCONSISTENT)),
                sound, False,
            )
        )
        passed = sound
    return TheoremReport("spectral_criterion", True, tuple(checks), passed, tuple(notes))


def perron_alignment(info: SpectralInfo) -> TheoremReport:
    """Alignment of the Perron eigenvector of D with the constant vector.

    Asserts c_G >= 1/sqrt(2) (a metric-space fact); values at or below 0.95
    are merely flagged as notable since they are hard to find.
    """
    bound = 1.0 / sqrt(2.0)
    holds = info.c_G >= bound - FLOAT_SLACK
    checks = (
        InequalityCheck(
            "c_G >= 1/sqrt(2)", _q("c_G", info.c_G), ">=", _q("1/sqrt(2)", bound),
            holds, False,
        ),
    )
    notes = []
    if info.c_G <= 0.95:
        notes.append(f"notable: c_G = {info.c_G:.6f} <= 0.95")
    return TheoremReport("perron_alignment", True, checks, holds, tuple(notes))


def check_product_curvature(g: Graph, h: Graph) -> TheoremReport:
    """Harmonic-sum law for products of constant-curvature graphs.

    K_1 and K_2 come from the factors' constant distance row sums (K = n/R);
    the product curvature comes from the full pipeline, so the relation
    ``1/K = 1/K_1 + 1/K_2`` is a genuine cross-check, with rational equality.
    """
    r1 = apsp(g).constant_row_sum()
    r2 = apsp(h).constant_row_sum()
    if r1 is None or r2 is None:
        return _not_applicable(
            "product_curvature", "a factor does not have constant distance row sums"
        )
    k1 = Fraction(g.n) / r1
    k2 = Fraction(h.n) / r2
    product = cartesian_product(g, h)
    result = compute_curvature(product)
    if not result.is_exact:
        return TheoremReport(
            "product_curvature", True, (), False,
            ("product graph unexpectedly has no exact solution",),
        )
    constant = all(x == result.w[0] for x in result.w)
    k_prod: Fraction = result.w[0]
    checks = [
        InequalityCheck(
            "product curvature is constant",
            _q("distinct w values", len(set(result.w))), "==", _q("one", 1),
            constant, True,
        )
    ]
    if constant and k_prod > 0:
        checks.append(
            InequalityCheck(
                "1/K == 1/K_1 + 1/K_2",
                _q("1/K", 1 / k_prod), "==", _q("1/K_1 + 1/K_2", 1 / k1 + 1 / k2),
                1 / k_prod == 1 / k1 + 1 / k2, True,
            )
        )
    passed = all(c.holds for c in checks) and constant
    return TheoremReport("product_curvature", True, tuple(checks), passed)
