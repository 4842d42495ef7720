"""Command-line front door: analyses and verification suites over (k, l) ranges.

Reports are deterministic: identical configuration yields byte-identical
output.  Rationals serialize as "numerator/denominator" strings so no
exact data passes through floating point.  Exit codes: 0 all checks pass,
1 a mathematical check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    CellKind,
    Context,
    Window,
    build_context,
    mirrored_pairs,
    monomial_of_exponents,
    partner_cell,
    window_basis,
)
from .operators import (
    OpTag,
    SparseVector,
    apply,
    format_polynomial,
    inner_product,
    monomial_vector,
    raising_targets,
)
from .spectral import (
    class_of,
    eigenvalue_of,
    lemma_suite,
    partition_window,
    spectral_project,
)
from .structure import (
    NullspaceDiagnostics,
    commutant_diagnostics,
    intertwiner_diagnostics,
    structure_report,
    swap_unitary_check,
)
from .subspaces import (
    Subspace,
    antisymmetric_part,
    canonical_subspace,
    full_cell,
    generate_reducing,
    is_minimal,
    net_raising_span,
    slice_recursion_holds,
    spans_equal_on_grade,
    symmetric_part,
    wandering_space,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    k_range: tuple[int, int]
    l_range: tuple[int, int]
    max_grade: int = 8
    safe_grade: int = 4
    trials: int = 20
    seed: int = 0
    tol: float = 1e-8
    fmt: str = "json"
    include_commutant: bool = False
    stability: bool = False
    lemma_bound: int = 8
    out: str | None = None

    def window(self) -> Window:
        return Window(max_grade=self.max_grade, safe_grade=self.safe_grade)

    def pairs(self) -> list[tuple[int, int]]:
        return [
            (k, l)
            for k in range(self.k_range[0], self.k_range[1] + 1)
            for l in range(self.l_range[0], self.l_range[1] + 1)
        ]


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _float_json(x: float):
    if x == float("inf"):
        return "inf"
    return x


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "k": list(cfg.k_range),
        "l": list(cfg.l_range),
        "max_grade": cfg.max_grade,
        "safe_grade": cfg.safe_grade,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "lemma_bound": cfg.lemma_bound,
    }


def _diag_dict(diag: NullspaceDiagnostics) -> dict:
    return {
        "dimension": diag.dimension,
        "gap_ratio": _float_json(diag.gap_ratio),
        "gap_ok": diag.gap_ok,
        "n_unknowns": diag.n_unknowns,
        "n_equations": diag.n_equations,
    }


def _canonical_minimal(ctx: Context, window: Window) -> list[Subspace]:
    subs = []
    for cell in ctx.cells:
        if cell.kind is CellKind.SYMMETRIC:
            subs.append(canonical_subspace(ctx, symmetric_part(cell.a, cell.b), window))
            subs.append(canonical_subspace(ctx, antisymmetric_part(cell.a, cell.b), window))
        else:
            subs.append(canonical_subspace(ctx, full_cell(cell.a, cell.b), window))
    return subs


def _expected_wandering(ctx: Context, sub: Subspace, window: Window) -> SparseVector:
    label = sub.label
    cell = ctx.cell(label.a, label.b)
    seed = monomial_vector(monomial_of_exponents(ctx, cell.a, cell.b), window)
    if label.kind == "antisymmetric":
        raised_z = monomial_of_exponents(ctx, cell.a + ctx.k, cell.b)
        raised_w = monomial_of_exponents(ctx, cell.a, cell.b + ctx.l)
        seed = monomial_vector(raised_z, window).sub(monomial_vector(raised_w, window))
    return seed


# ---------------------------------------------------------------------------
# analyze


def _analyze_pair(ctx: Context, cfg: RunConfig) -> dict:
    window = cfg.window()
    report = structure_report(ctx)
    inventory = []
    for entry in report.minimal_subspaces:
        label = {
            "full_cell": full_cell,
            "symmetric": symmetric_part,
            "antisymmetric": antisymmetric_part,
        }[entry.kind](*entry.cell)
        sub = canonical_subspace(ctx, label, window)
        wander = wandering_space(ctx, sub, window)
        inventory.append(
            {
                "kind": entry.kind,
                "cell": list(entry.cell),
                "paired_with": list(entry.paired_with) if entry.paired_with else None,
                "dim_window": sub.dim,
                "wandering_generator": " ; ".join(
                    format_polynomial(v) for v in wander.basis
                ),
            }
        )
    classes = partition_window(ctx, window)
    result = {
        "k": ctx.k,
        "l": ctx.l,
        "delta": ctx.delta,
        "m": report.m,
        "m_prime": report.m_prime,
        "dim_predicted": report.dim_predicted,
        "minimal_count": report.minimal_count,
        "abelian": report.abelian,
        "minimal_subspaces": inventory,
        "partition": {
            "window_dim": len(window_basis(ctx, window)),
            "class_count": len(classes),
            "complete_classes": sum(1 for c in classes if c.complete),
            "largest_class": max(c.size for c in classes),
        },
    }
    if cfg.include_commutant:
        diag = commutant_diagnostics(ctx, window, cfg.tol)
        result["dim_measured"] = diag.dimension
        result["commutant"] = _diag_dict(diag)
    return result


def run_analyze(cfg: RunConfig) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "config": _config_dict(cfg),
        "results": [_analyze_pair(build_context(k, l), cfg) for k, l in cfg.pairs()],
    }


# ---------------------------------------------------------------------------
# verify


def _check(name: str, passed: bool, details: dict | None = None) -> dict:
    out = {"name": name, "passed": bool(passed)}
    if details is not None:
        out["details"] = details
    return out


def _verify_pair(ctx: Context, cfg: RunConfig) -> list[dict]:
    window = cfg.window()
    checks: list[dict] = []

    suite = lemma_suite(ctx, cfg.lemma_bound)
    for c in suite.checks:
        checks.append(_check(c.name, c.passed, c.counterexample))

    basis = window_basis(ctx, window)

    bad = None
    for idx in basis:
        x = monomial_vector(idx, window)
        if apply(ctx, OpTag.COMMUTATOR, x) != x.scale(eigenvalue_of(idx)):
            bad = {"index": repr(idx)}
            break
    checks.append(_check("commutator_diagonal", bad is None, bad))

    bad = None
    for idx in basis:
        if idx.grade > window.max_grade - 2:
            continue
        x = monomial_vector(idx, window)
        composed = apply(ctx, OpTag.POLY_STAR, apply(ctx, OpTag.POLY, x)).sub(
            apply(ctx, OpTag.POLY, apply(ctx, OpTag.POLY_STAR, x))
        )
        if composed != apply(ctx, OpTag.COMMUTATOR, x):
            bad = {"index": repr(idx)}
            break
    checks.append(_check("commutator_composition", bad is None, bad))

    bad = None
    for idx in basis:
        if idx.grade > window.max_grade - 1:
            continue
        x = monomial_vector(idx, window)
        for tgt, _ in raising_targets(ctx, idx):
            y = monomial_vector(tgt, window)
            if inner_product(apply(ctx, OpTag.POLY, x), y) != inner_product(
                x, apply(ctx, OpTag.POLY_STAR, y)
            ):
                bad = {"index": repr(idx), "target": repr(tgt)}
                break
        if bad:
            break
    checks.append(_check("adjoint_pairing", bad is None, bad))

    scan_window = Window(max_grade=12, safe_grade=12)
    by_lam: dict[Fraction, list] = {}
    for idx in window_basis(ctx, scan_window):
        by_lam.setdefault(eigenvalue_of(idx), []).append(idx)
    bad = None
    for idx in window_basis(ctx, Window(max_grade=6, safe_grade=6)):
        solver = [x for x in class_of(ctx, idx).members if x.grade <= 12]
        brute = sorted(by_lam[eigenvalue_of(idx)], key=lambda x: (x.cell.a, x.cell.b, x.grade, -x.n))
        if solver != brute:
            bad = {"index": repr(idx)}
            break
    checks.append(_check("class_solver_matches_scan", bad is None, bad))

    classes = partition_window(ctx, window)
    total = sum(c.size for c in classes)
    distinct = len({c.eigenvalue for c in classes})
    checks.append(
        _check(
            "partition_disjoint_cover",
            total == len(basis) and distinct == len(classes),
            None if total == len(basis) else {"covered": total, "window": len(basis)},
        )
    )

    probe = SparseVector({}, window)
    for pos, idx in enumerate(basis[: 5 * ctx.k * ctx.l]):
        probe = probe.add(monomial_vector(idx, window, pos + 1))
    bad = None
    for cls in classes[:10]:
        once = spectral_project(classes, cls.eigenvalue, probe)
        if spectral_project(classes, cls.eigenvalue, once) != once:
            bad = {"eigenvalue": frac_str(cls.eigenvalue)}
            break
    checks.append(_check("projection_idempotent", bad is None, bad))

    bad = None
    top_r = min(5, window.max_grade - 1)
    for cell in ctx.cells:
        for r in range(1, top_r + 1):
            if not slice_recursion_holds(ctx, cell, r, window):
                bad = {"cell": [cell.a, cell.b], "r": r}
                break
        if bad:
            break
    checks.append(_check("slice_recursion", bad is None, bad))

    cell_dims = 0
    split_ok = True
    split_bad = None
    for cell in ctx.cells:
        sub = canonical_subspace(ctx, full_cell(cell.a, cell.b), window)
        cell_dims += sub.dim
        if cell.kind is CellKind.SYMMETRIC:
            plus = canonical_subspace(ctx, symmetric_part(cell.a, cell.b), window)
            minus = canonical_subspace(ctx, antisymmetric_part(cell.a, cell.b), window)
            if plus.dim + minus.dim != sub.dim or any(
                inner_product(u, v) for u in plus.basis for v in minus.basis
            ):
                split_ok = False
                split_bad = {"cell": [cell.a, cell.b]}
                break
    checks.append(
        _check(
            "cell_direct_sum",
            cell_dims == len(basis),
            None if cell_dims == len(basis) else {"sum": cell_dims, "window": len(basis)},
        )
    )
    checks.append(_check("symmetric_split", split_ok, split_bad))

    report = structure_report(ctx)
    d = ctx.delta
    counts_ok = (
        report.m == (d * d - d) // 2
        and report.m_prime == ctx.k * ctx.l - d * d + 2 * d
        and report.dim_predicted == ctx.k * ctx.l + d * d
        and report.minimal_count == ctx.k * ctx.l + d
        and report.abelian == (d == 1)
        and sum(1 for c in ctx.cells if c.kind is CellKind.SYMMETRIC) == d
    )
    checks.append(
        _check(
            "structure_counts",
            counts_ok,
            None if counts_ok else {"m": report.m, "m_prime": report.m_prime},
        )
    )

    bad = None
    for cell in ctx.cells:
        partner = partner_cell(ctx, cell)
        if partner is not None and partner_cell(ctx, partner) != cell:
            bad = {"cell": [cell.a, cell.b]}
            break
    pair_count_ok = len(mirrored_pairs(ctx)) == (d * d - d) // 2
    checks.append(
        _check("mirror_involution", bad is None and pair_count_ok, bad)
    )

    minimal = _canonical_minimal(ctx, window)
    bad = None
    for sub in minimal:
        if not is_minimal(ctx, sub, window, cfg.trials, cfg.seed):
            bad = {"label": str(sub.label)}
            break
    if bad is None:
        for cell in ctx.cells:
            if cell.kind is not CellKind.SYMMETRIC:
                continue
            whole = canonical_subspace(ctx, full_cell(cell.a, cell.b), window)
            if is_minimal(ctx, whole, window, cfg.trials, cfg.seed):
                bad = {"label": str(whole.label), "expected": "non-minimal"}
                break
    checks.append(_check("canonical_minimality", bad is None, bad))

    bad = None
    for sub in minimal:
        gen = generate_reducing(ctx, _expected_wandering(ctx, sub, window), window)
        if not spans_equal_on_grade(ctx, gen.basis, sub.basis, window, window.safe_grade):
            bad = {"label": str(sub.label)}
            break
    checks.append(_check("wandering_vector_generates", bad is None, bad))

    bad = None
    for sub in minimal:
        wander = wandering_space(ctx, sub, window)
        expected = _expected_wandering(ctx, sub, window)
        if wander.dim != 1 or not spans_equal_on_grade(
            ctx, wander.basis, [expected], window, window.safe_grade
        ):
            bad = {"label": str(sub.label), "dim": wander.dim}
            break
        regen = generate_reducing(ctx, wander.basis[0], window)
        if not spans_equal_on_grade(ctx, regen.basis, sub.basis, window, window.safe_grade):
            bad = {"label": str(sub.label), "stage": "regeneration"}
            break
    checks.append(_check("wandering_spaces", bad is None, bad))

    word_bound = 2 * window.safe_grade + 1
    bad = None
    for sub in minimal[:2]:
        d1 = net_raising_span(ctx, sub, window, word_bound).dim
        d2 = net_raising_span(ctx, sub, window, word_bound + 1).dim
        if d1 != d2:
            bad = {"label": str(sub.label), "dims": [d1, d2]}
            break
    checks.append(_check("raising_span_stable", bad is None, bad))

    bad = None
    for c1, c2 in mirrored_pairs(ctx):
        if not swap_unitary_check(ctx, c1, c2, window):
            bad = {"pair": [[c1.a, c1.b], [c2.a, c2.b]]}
            break
    checks.append(_check("mirror_swap_commutes", bad is None, bad))

    mirrored = {
        tuple(sorted(((c1.a, c1.b), (c2.a, c2.b))))
        for c1, c2 in mirrored_pairs(ctx)
    }

    def expected_rank(s1: Subspace, s2: Subspace) -> int:
        if s1.label == s2.label:
            return 1
        if s1.label.kind == s2.label.kind == "full_cell":
            key = tuple(sorted(((s1.label.a, s1.label.b), (s2.label.a, s2.label.b))))
            if key in mirrored:
                return 1
        return 0

    bad = None
    for i in range(len(minimal)):
        for j in range(i, len(minimal)):
            diag = intertwiner_diagnostics(
                ctx, minimal[i], minimal[j], window, cfg.tol, assume_reducing=True
            )
            want = expected_rank(minimal[i], minimal[j])
            if diag.dimension != want or not diag.gap_ok:
                bad = {
                    "pair": [str(minimal[i].label), str(minimal[j].label)],
                    "dimension": diag.dimension,
                    "expected": want,
                    "gap_ok": diag.gap_ok,
                }
                break
        if bad:
            break
    checks.append(_check("intertwiner_ranks", bad is None, bad))

    if cfg.include_commutant:
        diag = commutant_diagnostics(ctx, window, cfg.tol)
        want = ctx.k * ctx.l + d * d
        ok = diag.dimension == want and diag.gap_ok
        checks.append(
            _check(
                "commutant_dimension",
                ok,
                None if ok else {"measured": diag.dimension, "predicted": want},
            )
        )

    return checks


def run_verify(cfg: RunConfig) -> tuple[dict, bool]:
    results = []
    all_passed = True
    for k, l in cfg.pairs():
        checks = _verify_pair(build_context(k, l), cfg)
        passed = all(c["passed"] for c in checks)
        all_passed = all_passed and passed
        results.append({"k": k, "l": l, "passed": passed, "checks": checks})
    doc = {
        "schema": SCHEMA_VERSION,
        "config": _config_dict(cfg),
        "all_passed": all_passed,
        "results": results,
    }
    return doc, all_passed


# ---------------------------------------------------------------------------
# classes / commutant


def run_classes(cfg: RunConfig) -> dict:
    results = []
    for k, l in cfg.pairs():
        ctx = build_context(k, l)
        window = cfg.window()
        classes = partition_window(ctx, window)
        results.append(
            {
                "k": k,
                "l": l,
                "window_dim": len(window_basis(ctx, window)),
                "class_count": len(classes),
                "classes": [
                    {
                        "eigenvalue": frac_str(c.eigenvalue),
                        "size": c.size,
                        "complete": c.complete,
                        "members": [
                            f"({x.cell.a},{x.cell.b}|{x.n},{x.m})" for x in c.members
                        ],
                    }
                    for c in classes
                ],
            }
        )
    return {"schema": SCHEMA_VERSION, "config": _config_dict(cfg), "results": results}


def run_commutant(cfg: RunConfig) -> dict:
    results = []
    for k, l in cfg.pairs():
        ctx = build_context(k, l)
        entry = {
            "k": k,
            "l": l,
            "dim_predicted": k * l + ctx.delta**2,
            "commutant": _diag_dict(commutant_diagnostics(ctx, cfg.window(), cfg.tol)),
        }
        if cfg.stability:
            values = {}
            for n in (cfg.max_grade - 2, cfg.max_grade - 1, cfg.max_grade):
                win = Window(max_grade=n, safe_grade=min(cfg.safe_grade, n))
                values[str(n)] = commutant_diagnostics(ctx, win, cfg.tol).dimension
            entry["values_by_grade"] = values
            entry["stable"] = len(set(values.values())) == 1
        results.append(entry)
    return {"schema": SCHEMA_VERSION, "config": _config_dict(cfg), "results": results}


# ---------------------------------------------------------------------------
# rendering and entry point


def render_text(doc: dict) -> str:
    lines: list[str] = []

    def walk(node, indent: int) -> None:
        pad = "  " * indent
        if isinstance(node, dict):
            for key, value in node.items():
                if isinstance(value, (dict, list)):
                    lines.append(f"{pad}{key}:")
                    walk(value, indent + 1)
                else:
                    lines.append(f"{pad}{key}: {value}")
        elif isinstance(node, list):
            for value in node:
                if isinstance(value, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(value, indent + 1)
                else:
                    lines.append(f"{pad}- {value}")

    walk(doc, 0)
    return "\n".join(lines) + "\n"


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid exponent range {text!r}")
    return lo, hi


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bidisklab",
        description="Reducing-subspace structure of z^k + w^l on the bidisk Bergman space",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("analyze", "structure report and minimal-subspace inventory"),
        ("verify", "run the full exact verification suite"),
        ("classes", "eigenvalue partition of the truncation window"),
        ("commutant", "numeric commutant dimension cross-check"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--k", required=True, help="exponent of z, e.g. 2 or 1..3")
        p.add_argument("--l", required=True, help="exponent of w, e.g. 2 or 1..3")
        p.add_argument("--max-grade", type=int, default=8)
        p.add_argument("--safe-grade", type=int, default=None)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--lemma-bound", type=int, default=8)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report to this path")
        if name in ("analyze", "verify"):
            p.add_argument(
                "--commutant",
                action="store_true",
                help="include the numeric commutant dimension",
            )
        if name == "commutant":
            p.add_argument(
                "--stability",
                action="store_true",
                help="also report the value at the two previous grades",
            )
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    k_range = _parse_range(args.k)
    l_range = _parse_range(args.l)
    safe = args.safe_grade if args.safe_grade is not None else args.max_grade - 4
    if safe < 2:
        raise ValueError("safe grade must be at least 2")
    if args.max_grade < safe + 2:
        raise ValueError("max grade must exceed the safe grade by at least 2")
    if args.trials < 1:
        raise ValueError("trials must be positive")
    if args.tol <= 0:
        raise ValueError("tolerance must be positive")
    if args.lemma_bound < 2:
        raise ValueError("lemma bound must be at least 2")
    return RunConfig(
        command=args.command,
        k_range=k_range,
        l_range=l_range,
        max_grade=args.max_grade,
        safe_grade=safe,
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
        fmt=args.format,
        include_commutant=getattr(args, "commutant", False),
        stability=getattr(args, "stability", False),
        lemma_bound=args.lemma_bound,
        out=args.out,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    status = 0
    if cfg.command == "analyze":
        doc = run_analyze(cfg)
    elif cfg.command == "verify":
        doc, all_passed = run_verify(cfg)
        status = 0 if all_passed else 1
    elif cfg.command == "classes":
        doc = run_classes(cfg)
    else:
        doc = run_commutant(cfg)

    rendered = (
        json.dumps(doc, indent=2) + "\n" if cfg.fmt == "json" else render_text(doc)
    )
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
