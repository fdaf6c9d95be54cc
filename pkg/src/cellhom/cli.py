"""Command-line front end.

Exit status 0 on success, 1 on unreadable or malformed input, 2 when the
input parses but is mathematically inconsistent (d∘d != 0, impossible
degrees, a failed SNF verification). Results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import io
from .chain import (
    Q, ChainComplex, ValidationError, betti_numbers, euler_characteristic, homology,
    homology_with_coefficients, morse_inequalities, poincare_polynomial, rank_table,
)
from .cw import build_chain_complex
from .morse import (
    CANCELLING_PAIRS, PAPER_MODEL, analyze_index_sequence, analyze_nullity_sequence,
    interval_invariants, perturb, sublevel_complex,
)
from .nerve import nerve_complex, simplicial_chain_complex
from .poly import GradedPolynomial
from .smith import smith_normal_form, verify_snf
from .spaces import (
    HolonomyFactor, berger_lookup, classify_growth, decompose_holonomy, kunneth_poincare,
    parse_factor_list, rational_space_poincare,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _coeff(text: str):
    t = text.strip().upper()
    if t == "Z":
        return None
    if t == "Q":
        return Q
    if t.startswith("Z/") and t[2:].isdigit() and int(t[2:]) >= 2:
        return int(t[2:])
    raise argparse.ArgumentTypeError(f"coefficient ring must be Z, Q or Z/<n> with n >= 2, "
                                     f"got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number like 1.5 or 3/2, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers separated by spaces, got {text!r}")


def _fmt_value(v: Fraction) -> str:
    return str(io.encode_value(v))


def format_summands(orders: Sequence[int], coeff) -> str:
    """Render universal-coefficient summands; 0 stands for a free summand."""
    free = sum(1 for o in orders if o == 0)
    parts = []
    if free:
        base = "Q" if coeff == Q else f"Z/{coeff}"
        if free == 1:
            parts.append(base)
        else:
            parts.append(f"{base}^{free}" if coeff == Q else f"({base})^{free}")
    parts.extend(f"Z/{o}" for o in orders if o)
    return " ⊕ ".join(parts) or "0"


def _group_json(g) -> dict:
    return {"free_rank": g.free_rank, "torsion": [io.encode_int(a) for a in g.torsion]}


def _degrees(C: ChainComplex, dim: int | None) -> range:
    if dim is None:
        return range(C.top_degree + 1)
    return range(dim, dim + 1)


def _load_chain(path) -> tuple[str, ChainComplex]:
    X = io.load_complex(path)
    return X.name, build_chain_complex(X)


# commands: each returns (text lines, structured object)

def cmd_snf(args):
    A = io.load_matrix(args.file)
    res = smith_normal_form(A)
    lines = [f"rank: {res.rank}", "divisors: " + " ".join(map(str, res.divisors))]
    obj = {"U": io.matrix_to_json(res.U), "D": io.matrix_to_json(res.D),
           "V": io.matrix_to_json(res.V), "divisors": [io.encode_int(d) for d in res.divisors],
           "rank": res.rank}
    failed = False
    if args.verify:
        rep = verify_snf(A, res)
        failed = not rep.ok
        lines.append("verification: PASS" if rep.ok else
                     "verification: FAIL (" + ", ".join(rep.failures()) + ")")
        obj["verification"] = {"pass": rep.ok, "failures": rep.failures()}
    return lines, obj, failed


def _homology_lines(name, C, dims, coeff):
    lines, groups = [], []
    for k in dims:
        if coeff is None:
            g = homology(C, k)
            lines.append(f"H_{k} = {g}")
            groups.append({"degree": k, **_group_json(g)})
        else:
            orders = homology_with_coefficients(C, k, coeff)
            lines.append(f"H_{k} = {format_summands(orders, coeff)}")
            groups.append({"degree": k, "summands": list(orders)})
    ring = "Z" if coeff is None else ("Q" if coeff == Q else f"Z/{coeff}")
    return lines, {"complex": name, "coefficients": ring, "homology": groups}


def cmd_homology(args):
    name, C = _load_chain(args.file)
    lines, obj = _homology_lines(name, C, _degrees(C, args.dim), args.coeff)
    return lines, obj, False


def cmd_betti(args):
    name, C = _load_chain(args.file)
    b = betti_numbers(C)
    lines = [f"b_{k} = {x}" for k, x in enumerate(b)]
    rows = rank_table(C)
    lines += [f"rank M_{r.degree} = {r.rank} (min(n_{r.degree - 1}, n_{r.degree}) = {r.min_bound})"
              for r in rows]
    obj = {"complex": name, "betti": list(b), "cell_counts": list(C.cell_counts),
           "boundary_ranks": [{"degree": r.degree, "rank": r.rank, "min_bound": r.min_bound}
                              for r in rows]}
    return lines, obj, False


def cmd_euler(args):
    name, C = _load_chain(args.file)
    rep = morse_inequalities(C)
    p = poincare_polynomial(C)
    lines = [
        f"chi = {euler_characteristic(C)}",
        f"chi from betti = {rep.euler_from_betti}",
        f"P(-1) = {p(-1)}",
        "morse: " + " ".join(f"b_{k}={b}<=n_{k}={n}" for k, (b, n)
                             in enumerate(zip(rep.betti, rep.counts))),
        "morse inequalities: " + ("PASS" if rep.ok else "FAIL"),
    ]
    obj = {"complex": name, "euler_characteristic": euler_characteristic(C),
           "euler_from_betti": rep.euler_from_betti, "poincare_at_minus_one": p(-1),
           "betti": list(rep.betti), "cell_counts": list(rep.counts),
           "morse_pass": rep.ok}
    return lines, obj, not rep.ok


def cmd_poincare(args):
    name, C = _load_chain(args.file)
    p = poincare_polynomial(C)
    return [f"P(t) = {p}", f"sparse: {p.sparse()}"], \
        {"complex": name, "poincare": {str(d): c for d, c in p.coefficients.items()}}, False


def cmd_filtration(args):
    F = io.load_filtration(args.file)
    if args.interval is not None:
        a, b = args.interval
        rep = interval_invariants(F, a, b)
        lines = [
            f"interval ({_fmt_value(rep.a)}, {_fmt_value(rep.b)}]",
            "C = " + " ".join(map(str, rep.counts)),
            "r = " + " ".join(map(str, rep.ranks)),
            "t = " + " ".join(map(str, rep.torsion)),
        ]
        lines += [f"H_{k}(b, a) = {g}" for k, g in enumerate(rep.groups)]
        lines.append("inequalities: " + ("PASS" if rep.ok else "FAIL"))
        obj = {"a": _fmt_value(rep.a), "b": _fmt_value(rep.b), "counts": list(rep.counts),
               "ranks": list(rep.ranks), "torsion_ranks": list(rep.torsion),
               "relative_homology": [_group_json(g) for g in rep.groups],
               "local": list(rep.local), "alternating": list(rep.alternating), "pass": rep.ok}
        return lines, obj, not rep.ok
    if args.level is None:
        raise UsageError("filtration: give --level a or --interval a b")
    C = sublevel_complex(F, args.level)
    level = _fmt_value(args.level)
    if C is None:
        dims = range(F.underlying.top_dim + 1) if args.dim is None else [args.dim]
        lines = [f"H_{k}(<= {level}) = 0" for k in dims]
        obj = {"level": level, "homology": [{"degree": k, "free_rank": 0, "torsion": []}
                                            for k in dims]}
        return lines, obj, False
    lines, obj = _homology_lines(F.name, C, _degrees(C, args.dim), None)
    lines = [ln.replace(" = ", f"(<= {level}) = ", 1) for ln in lines]
    obj = {"level": level, "homology": obj["homology"]}
    return lines, obj, False


def cmd_perturb(args):
    F = io.load_filtration(args.file)
    if args.level is None or args.index is None or args.count is None:
        raise UsageError("perturb: --level, --index and --count are required")
    G = perturb(F, args.level, args.index, args.count, args.mode)
    before = betti_numbers(build_chain_complex(F.underlying))
    C = build_chain_complex(G.underlying)
    after = betti_numbers(C)
    lines = [f"mode: {args.mode}",
             "betti before: " + " ".join(map(str, before)),
             "betti after: " + " ".join(map(str, after))]
    lines += [f"H_{k} = {homology(C, k)}" for k in range(C.top_degree + 1)]
    return lines, io.complex_to_json(G.underlying), False


def cmd_nerve(args):
    cover = io.load_cover(args.file)
    K = nerve_complex(cover)
    C = simplicial_chain_complex(K)
    counts = [len(K.of_dim(k)) for k in range(K.dimension() + 1)]
    lines = ["simplices: " + " ".join(map(str, counts))]
    hl, hobj = _homology_lines("nerve", C, _degrees(C, args.dim), args.coeff)
    obj = {"vertices": list(K.vertices), "simplex_counts": counts,
           "simplices": [list(s) for k in range(K.dimension() + 1) for s in K.of_dim(k)],
           "coefficients": hobj["coefficients"], "homology": hobj["homology"]}
    return lines + hl, obj, False


def cmd_spaces(args):
    lines, obj = [], {}
    if args.factors is not None:
        if args.dim is None:
            raise UsageError("spaces: --factors needs --dim")
        rep = decompose_holonomy(parse_factor_list(args.factors), args.dim)
        lines += [f"holonomy: {rep.product}",
                  f"dimension: {' + '.join(str(f.real_dimension) for f in rep.factors)} "
                  f"= {rep.total_dim}",
                  f"reducible decomposition: {'yes' if rep.valid else 'no (single factor)'}",
                  "at least two rational cohomology generators: "
                  + ("yes" if rep.two_generators else "not asserted")]
        obj["decomposition"] = {"product": rep.product, "total_dim": rep.total_dim,
                                "dimensions": [f.real_dimension for f in rep.factors],
                                "valid": rep.valid, "two_generators": rep.two_generators}
    if args.lookup is not None:
        f = HolonomyFactor.parse(args.lookup)
        row = berger_lookup(f)
        lines.append(f"{f}: dim {row.dimension}, {row.structure}, {row.description}")
        obj["berger"] = {"group": str(f), "dimension": row.dimension,
                         "structure": row.structure, "description": row.description}
    if args.rank_one is not None:
        p = rational_space_poincare(args.rank_one, args.n)
        lines.append(f"P(t) = {p}")
        obj["rank_one"] = {"label": args.rank_one, "n": args.n, "poincare": p.sparse()}
    if args.kunneth is not None:
        p = kunneth_poincare([GradedPolynomial.parse_sparse(s) for s in args.kunneth])
        lines.append(f"P(t) = {p}")
        lines.append(f"sparse: {p.sparse()}")
        obj["kunneth"] = p.sparse()
    if not lines:
        raise UsageError("spaces: give --factors, --lookup, --rank-one or --kunneth")
    return lines, obj, False


def cmd_analyze(args):
    if args.seq is None:
        raise UsageError("analyze: --seq is required")
    seq = args.seq
    if args.kind == "index":
        if args.base is None:
            raise UsageError("analyze index: --base is required")
        rep = analyze_index_sequence(seq, args.base)
        eps = "none" if rep.epsilon is None else str(rep.epsilon)
        lines = [f"linear: {'yes' if rep.linear else 'no'}",
                 f"epsilon: {eps}" + (f" at (m, s) = {rep.witness}" if rep.witness else ""),
                 f"all zero: {'yes' if rep.all_zero else 'no'}"]
        obj = {"linear": rep.linear, "epsilon": None if rep.epsilon is None else str(rep.epsilon),
               "witness": list(rep.witness) if rep.witness else None, "all_zero": rep.all_zero}
    elif args.kind == "nullity":
        rep = analyze_nullity_sequence(seq)
        lines = [f"constant one: {'yes' if rep.constant_one else 'no'}",
                 "first occurrences: " + " ".join(f"{v}@{m}" for v, m in
                                                  rep.first_occurrence.items()),
                 "divisibility consistent: " + ("yes" if rep.consistent else
                                                f"no (position {rep.violation})")]
        obj = {"constant_one": rep.constant_one,
               "first_occurrence": {str(v): m for v, m in rep.first_occurrence.items()},
               "consistent": rep.consistent, "violation": rep.violation}
    else:
        if args.alpha is None:
            raise UsageError("analyze growth: --alpha is required")
        res = classify_growth(seq, args.alpha, args.from_)
        lines = [f"exponential growth from n={args.from_} with alpha={args.alpha}: "
                 + ("yes" if res.holds else f"no (fails at n={res.violation})")]
        obj = {"holds": res.holds, "violation": res.violation, "alpha": str(args.alpha),
               "from": args.from_}
    return lines, obj, False


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cellhom", description="Exact cellular homology toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, file=True):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file")
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("snf", cmd_snf, "Smith normal form of a matrix file")
    sp.add_argument("--verify", action="store_true")
    for name, func, h in [("homology", cmd_homology, "integral or coefficient homology"),
                          ("betti", cmd_betti, "Betti numbers and boundary ranks"),
                          ("euler", cmd_euler, "Euler characteristic and Morse checks"),
                          ("poincare", cmd_poincare, "Poincare polynomial")]:
        sp = add(name, func, h)
        if name == "homology":
            sp.add_argument("--dim", type=int)
            sp.add_argument("--coeff", type=_coeff, default=None)
    sp = add("filtration", cmd_filtration, "sublevel or relative homology of a filtration")
    sp.add_argument("--level", type=_fraction)
    sp.add_argument("--interval", type=_fraction, nargs=2)
    sp.add_argument("--dim", type=int)
    sp = add("perturb", cmd_perturb, "add critical points to a filtration")
    sp.add_argument("--level", type=_fraction)
    sp.add_argument("--index", type=int)
    sp.add_argument("--count", type=int)
    sp.add_argument("--mode", choices=(PAPER_MODEL, CANCELLING_PAIRS), default=PAPER_MODEL)
    sp = add("nerve", cmd_nerve, "homology of the nerve of a cover")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--coeff", type=_coeff, default=None)
    sp = add("spaces", cmd_spaces, "holonomy, Kunneth and rank-one Poincare polynomials",
             file=False)
    sp.add_argument("--factors")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--lookup")
    sp.add_argument("--rank-one", dest="rank_one")
    sp.add_argument("--n", type=int)
    sp.add_argument("--kunneth", nargs="+", metavar="POLY")
    sp = add("analyze", cmd_analyze, "index, nullity and growth sequence analysis", file=False)
    sp.add_argument("kind", choices=("index", "nullity", "growth"))
    sp.add_argument("--seq", type=_int_list)
    sp.add_argument("--base", type=int)
    sp.add_argument("--alpha", type=_fraction)
    sp.add_argument("--from", dest="from_", type=int, default=1)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        lines, obj, failed = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.format == "structured":
        stdout.write(io.dumps(obj))
    else:
        stdout.write("\n".join(lines) + "\n")
    return 2 if failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
