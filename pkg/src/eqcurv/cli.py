"""Command-line front end: compute curvature, verify the theorem suite, sweep
random corpora, and export curvature-colored DOT files.

All reports are JSON with ``schema_version`` "1". Rational values are carried
as exact "p/q" strings next to floating approximations. Every random choice
flows from the --seed flag, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .curvature import CurvatureResult, CurvatureStatus, compute_curvature
from .graphs import (
    DisconnectedGraphError,
    DistanceMatrix,
    FamilySpec,
    FamilySpecError,
    Graph,
    GraphFormatError,
    apsp,
    generate,
    parse_edge_list,
    parse_family_spec,
)
from .theorems import (
    SpectralInfo,
    TheoremReport,
    check_bonnet_myers,
    check_lichnerowicz,
    check_minimax,
    check_reverse_bonnet_myers,
    check_theorem5,
    perron_alignment,
    spectral_criterion,
    spectral_gap,
)

SCHEMA_VERSION = "1"

THEOREM_NAMES = (
    "bonnet_myers",
    "reverse_bonnet_myers",
    "lichnerowicz",
    "minimax",
    "theorem5",
    "spectral_criterion",
    "perron_alignment",
)

_THEOREM_ALIASES = {
    "bm": "bonnet_myers",
    "reverse_bm": "reverse_bonnet_myers",
    "rbm": "reverse_bonnet_myers",
    "lich": "lichnerowicz",
    "perron": "perron_alignment",
    "criterion": "spectral_criterion",
    "prop4": "spectral_criterion",
}


def _frac_payload(x: Fraction | int) -> dict:
    f = Fraction(x)
    return {"exact": str(f), "float": float(f)}


def _value_payload(x) -> dict:
    if isinstance(x, (Fraction, int, np.integer)):
        return _frac_payload(Fraction(x))
    return {"exact": None, "float": float(x)}


def graph_payload(g: Graph, source: str, dm: DistanceMatrix) -> dict:
    return {
        "source": source,
        "n": g.n,
        "edge_count": g.edge_count,
        "diameter": dm.diameter(),
        "average_distance": _frac_payload(dm.average_distance()),
    }


def curvature_payload(result: CurvatureResult) -> dict:
    return {
        "status": result.status.value,
        "w": [_value_payload(x) for x in result.w],
        "k": {**_value_payload(result.K), "pseudo": not result.is_exact},
        "total": _value_payload(result.total),
        "residual_range": [_value_payload(x) for x in result.residual_range],
        "nullspace_dimension": result.nullspace_dimension,
        "lp_unbounded": result.lp_unbounded,
    }


def spectral_payload(info: SpectralInfo) -> dict:
    return {
        "lambda1": info.lambda1,
        "c_g": info.c_G,
        "laplacian_spectrum": list(info.laplacian_spectrum),
        "distance_spectrum": list(info.distance_spectrum),
        "perron_vector": list(info.perron_vector),
    }


def theorem_payload(report: TheoremReport) -> dict:
    return asdict(report)


def build_analysis_report(
    g: Graph,
    source: str,
    dm: DistanceMatrix,
    result: CurvatureResult,
    info: SpectralInfo | None,
    theorems: Sequence[TheoremReport] = (),
    seed: int | None = None,
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "seed": seed,
        "graph": graph_payload(g, source, dm),
        "curvature": curvature_payload(result),
        "spectral": spectral_payload(info) if info is not None else None,
        "theorems": [theorem_payload(r) for r in theorems],
    }


def run_verifiers(
    g: Graph,
    dm: DistanceMatrix,
    result: CurvatureResult,
    info: SpectralInfo,
    names: Sequence[str],
    seed: int,
) -> list[TheoremReport]:
    reports: list[TheoremReport] = []
    for name in names:
        if name == "bonnet_myers":
            reports.append(check_bonnet_myers(g, result, dm))
        elif name == "reverse_bonnet_myers":
            reports.append(check_reverse_bonnet_myers(g, result, dm))
        elif name == "lichnerowicz":
            reports.append(check_lichnerowicz(g, result, info, dm))
        elif name == "minimax":
            reports.append(check_minimax(g, result, seed=seed, dm=dm))
        elif name == "theorem5":
            ones = check_theorem5(g, [1] * g.n, info, dm)
            reports.append(
                TheoremReport(
                    ones.theorem, ones.hypothesis_satisfied, ones.checks, ones.passed,
                    ones.notes + ("weights: all-ones",), ones.seed,
                )
            )
            # the curvature vector itself qualifies whenever it is positive,
            # pseudo solutions included
            if result.is_exact:
                w_positive = min(result.w) > 0
                variant = "weights: curvature solution"
            else:
                w_positive = bool(np.min(result.w) > 0)
                variant = "weights: pseudo solution"
            if w_positive:
                with_w = check_theorem5(g, result.w, info, dm)
                reports.append(
                    TheoremReport(
                        with_w.theorem, with_w.hypothesis_satisfied, with_w.checks,
                        with_w.passed, with_w.notes + (variant,), with_w.seed,
                    )
                )
        elif name == "spectral_criterion":
            reports.append(spectral_criterion(info, result.status))
        elif name == "perron_alignment":
            reports.append(perron_alignment(info))
        else:
            raise ValueError(f"unknown theorem {name!r}; known: {', '.join(THEOREM_NAMES)}")
    return reports


def _parse_theorem_list(text: str) -> list[str]:
    if text.strip().lower() == "all":
        return list(THEOREM_NAMES)
    names = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        name = _THEOREM_ALIASES.get(token, token)
        if name not in THEOREM_NAMES:
            raise ValueError(
                f"unknown theorem {token!r}; known: {', '.join(THEOREM_NAMES)} (or 'all')"
            )
        names.append(name)
    if not names:
        raise ValueError("empty theorem list")
    return names


def _load_graph(args) -> tuple[Graph, str]:
    if args.family:
        spec = parse_family_spec(args.family)
        return generate(spec), f"family:{spec}"
    with open(args.edge_list, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_edge_list(text), f"edge-list:{args.edge_list}"


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def _diverging_color(t: float) -> str:
    """Red for positive, blue for negative, white at zero; t in [-1, 1]."""
    t = max(-1.0, min(1.0, t))
    if t >= 0:
        other = round(255 * (1.0 - t))
        r, g, b = 255, other, other
    else:
        other = round(255 * (1.0 + t))
        r, g, b = other, other, 255
    return f"#{r:02x}{g:02x}{b:02x}"


def render_dot(g: Graph, result: CurvatureResult) -> str:
    """DOT text with vertices filled on a diverging scale anchored at zero."""
    values = [float(x) for x in result.w]
    scale = max((abs(v) for v in values), default=0.0) or 1.0
    lines = ["graph curvature {", "  node [shape=circle, style=filled];"]
    for i in range(g.n):
        if result.is_exact:
            shown = str(result.w[i])
        else:
            shown = f"{values[i]:.4g}"
        color = _diverging_color(values[i] / scale)
        name = g.labels[i] if g.labels else str(i)
        lines.append(
            f'  {i} [label="{name}\\n{shown}", tooltip="w[{i}] = {shown}", '
            f'fillcolor="{color}"];'
        )
    for u, v in sorted(g.edges):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Corpus runner
# ---------------------------------------------------------------------------

CORPUS_VERIFIERS = (
    "bonnet_myers",
    "reverse_bonnet_myers",
    "lichnerowicz",
    "minimax",
    "theorem5",
    "spectral_criterion",
    "perron_alignment",
)


def analyze_graph(g: Graph, seed: int) -> tuple[CurvatureResult, SpectralInfo, list[TheoremReport]]:
    """Full verifier battery over one connected graph."""
    dm = apsp(g)
    result = compute_curvature(g, dm)
    info = spectral_gap(g, dm)
    reports = run_verifiers(g, dm, result, info, CORPUS_VERIFIERS, seed)
    return result, info, reports


def run_corpus(
    count: int,
    n_lo: int,
    n_hi: int,
    p: float | None = None,
    seed: int = 0,
) -> tuple[list[dict], dict]:
    """Seeded connected random-graph sweep; returns (per-graph records, summary)."""
    if count < 1 or n_lo < 2 or n_hi < n_lo:
        raise ValueError("corpus needs count >= 1 and 2 <= n_lo <= n_hi")
    rng = random.Random(seed)
    records: list[dict] = []
    statuses: dict[str, int] = {s.value: 0 for s in CurvatureStatus}
    failures_total = 0
    failing = []
    c_g_values = []
    criterion_applicable = 0
    criterion_true = 0
    criterion_unsound = 0
    theorem5_ones_failures = 0
    negative_k = 0
    for index in range(count):
        n = rng.randint(n_lo, n_hi)
        p_i = p if p is not None else rng.uniform(0.25, 0.75)
        graph_seed = rng.randrange(2**32)
        g = generate(FamilySpec("erdos_renyi", (n, p_i, graph_seed)))
        result, info, reports = analyze_graph(g, graph_seed)
        statuses[result.status.value] += 1
        fails = [r.theorem for r in reports if r.failed]
        failures_total += len(fails)
        if fails:
            failing.append(index)
        c_g_values.append(info.c_G)
        crit = next(r for r in reports if r.theorem == "spectral_criterion")
        crit_true = False
        if crit.hypothesis_satisfied:
            criterion_applicable += 1
            crit_true = bool(crit.checks[0].holds)
            if crit_true:
                criterion_true += 1
                if result.status is CurvatureStatus.INCONSISTENT:
                    criterion_unsound += 1
        t5_ones = next(r for r in reports if r.theorem == "theorem5")
        if not t5_ones.passed:
            theorem5_ones_failures += 1
        if result.is_exact and result.K < 0:
            negative_k += 1
        records.append(
            {
                "index": index,
                "n": n,
                "p": p_i,
                "graph_seed": graph_seed,
                "edge_count": g.edge_count,
                "status": result.status.value,
                "nullspace_dimension": result.nullspace_dimension,
                "k_float": float(result.K),
                "k_exact": str(result.K) if result.is_exact else None,
                "c_g": info.c_G,
                "criterion_applicable": crit.hypothesis_satisfied,
                "criterion_true": crit_true,
                "theorem5_ones_pass": t5_ones.passed,
                "failures": fails,
            }
        )
    summary = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "seed": seed,
        "count": count,
        "n_range": [n_lo, n_hi],
        "p": p,
        "statuses": statuses,
        "verifier_failures": failures_total,
        "failing_graphs": failing,
        "negative_curvature_graphs": negative_k,
        "theorem5_ones_failures": theorem5_ones_failures,
        "c_g": {
            "min": min(c_g_values),
            "fraction_above_0_95": sum(1 for c in c_g_values if c > 0.95) / len(c_g_values),
        },
        "spectral_criterion": {
            "applicable": criterion_applicable,
            "predicted_solvable": criterion_true,
            "unsound_predictions": criterion_unsound,
        },
    }
    return records, summary


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_compute(args) -> int:
    g, source = _load_graph(args)
    dm = apsp(g)
    result = compute_curvature(g, dm)
    info = spectral_gap(g, dm) if g.n >= 2 else None
    report = build_analysis_report(g, source, dm, result, info)
    print(json.dumps(report, indent=2))
    return 2 if result.status is CurvatureStatus.INCONSISTENT else 0


def cmd_verify(args) -> int:
    names = _parse_theorem_list(args.theorems)
    g, source = _load_graph(args)
    dm = apsp(g)
    result = compute_curvature(g, dm)
    info = spectral_gap(g, dm)
    reports = run_verifiers(g, dm, result, info, names, args.seed)
    report = build_analysis_report(g, source, dm, result, info, reports, args.seed)
    print(json.dumps(report, indent=2))
    return 2 if any(r.failed for r in reports) else 0


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like 'a..b', got {text!r}")
    return int(lo), int(hi)


def cmd_corpus(args) -> int:
    n_lo, n_hi = _parse_range(args.n_range)
    records, summary = run_corpus(args.count, n_lo, n_hi, args.p, args.seed)
    if args.json_lines:
        for record in records:
            print(json.dumps(record))
    print(json.dumps(summary, indent=2))
    return 2 if summary["verifier_failures"] else 0


def cmd_export_dot(args) -> int:
    g, _source = _load_graph(args)
    result = compute_curvature(g)
    text = render_dot(g, result)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return 0


def _add_source_arguments(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--family",
        help="family spec 'name:arg1,arg2' (complete, cycle, path, hypercube, "
        "cocktail_party, johnson, demicube, complete_multipartite, "
        "knight_board, erdos_renyi)",
    )
    group.add_argument("--edge-list", help="path to a 'u v' edge-list file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqcurv",
        description="Equilibrium-measure curvature of finite connected graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser(
        "compute",
        help="solve D w = n*1 and report curvature (exit 2 when no exact solution exists)",
    )
    _add_source_arguments(compute)
    compute.set_defaults(func=cmd_compute)

    verify = sub.add_parser("verify", help="run theorem verifiers (exit 2 on any failure)")
    _add_source_arguments(verify)
    verify.add_argument("--theorems", default="all", help="'all' or comma list of theorem names")
    verify.add_argument("--seed", type=int, default=0, help="seed for random measures")
    verify.set_defaults(func=cmd_verify)

    corpus = sub.add_parser("corpus", help="verify a seeded random-graph corpus")
    corpus.add_argument("--count", type=int, required=True, help="number of graphs")
    corpus.add_argument("--n-range", required=True, help="vertex-count range 'a..b'")
    corpus.add_argument(
        "--p", type=float, default=None,
        help="edge probability (default: drawn per graph from [0.25, 0.75])",
    )
    corpus.add_argument("--seed", type=int, default=0, help="master seed")
    corpus.add_argument(
        "--json-lines", action="store_true", help="emit one JSON record per graph before the summary"
    )
    corpus.set_defaults(func=cmd_corpus)

    export = sub.add_parser("export-dot", help="write a curvature-colored DOT file")
    _add_source_arguments(export)
    export.add_argument("--out", required=True, help="output DOT path")
    export.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, FamilySpecError, DisconnectedGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
