"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation failure,
3 unclosed bracket with ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import chains as chains_mod
from .closure import algebra_degree_name, close_all
from .commutant import GeneratorSet, build_generating_set, independent_solution_count
from .grading import count_pruned, count_unpruned, grade
from .lie import LieAlgebraSpec, SpecError, _item_lines, load_algebra, validate
from .poly import Poly
from .poisson import poisson_bracket
from .roots import classify_bracket, enumerate_cartan_generators, parse_generator, sl_spec
from .tables import count_table, format_table

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_UNCLOSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, dest: str | None):
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fmt_grades(gs) -> str:
    return " +~ ".join(str(t).replace(" ", "") for t in sorted(gs))


# ---------------------------------------------------------------- generator files


def read_generators(path: str, spec: LieAlgebraSpec) -> GeneratorSet:
    """JSON list of {"label", "poly"} objects, as written by ``commutant --json``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path!r}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno) from None
    if isinstance(data, dict):
        data = data.get("generators")
    if not isinstance(data, list):
        raise SpecError("expected a list of generators", 1)
    line_of = _object_lines(text)
    polys, labels = [], []
    for pos, item in enumerate(data):
        line = line_of[pos] if pos < len(line_of) else None
        if not isinstance(item, dict) or "poly" not in item:
            raise SpecError("generator entry needs a 'poly' field", line)
        try:
            p = Poly.from_json(item["poly"], spec.dim)
        except (ValueError, TypeError, IndexError) as exc:
            raise SpecError(f"bad polynomial: {exc}", line) from None
        if not p or not p.is_homogeneous():
            raise SpecError("generator must be a nonzero homogeneous polynomial", line)
        polys.append(p)
        labels.append(str(item.get("label", f"g{pos + 1}")))
    gens = GeneratorSet.from_polys(polys, labels)
    return gens


def _object_lines(text: str) -> list[int]:
    """Line of each top-level list item's opening brace."""
    out, depth, line = [], 0, 1
    in_str = esc = False
    for ch in text:
        if ch == "\n":
            line += 1
        if in_str:
            if esc:
                esc = False
            elif ch == "\\":
                esc = True
            elif ch == '"':
                in_str = False
            continue
        if ch == '"':
            in_str = True
        elif ch in "[{":
            if ch == "{" and depth == 1:
                out.append(line)
            depth += 1
        elif ch in "]}":
            depth -= 1
    return out


def _load(ref: str) -> LieAlgebraSpec:
    return load_algebra(ref)


def _chain_for(spec: LieAlgebraSpec, sub: str):
    for name in chains_mod.CHAINS:
        ch = chains_mod.get_chain(name)
        if ch.spec.name == spec.name and ch.sub == sub and ch.spec.structure == spec.structure:
            return ch
    return None


# ---------------------------------------------------------------- subcommands


def cmd_validate(args) -> int:
    spec = _load(args.algebra)
    rep = validate(spec)
    entry_lines = _structure_lines(args.algebra)
    if args.json is not None:
        _emit({"algebra": spec.name, "dim": spec.dim, "valid": rep.ok, "problems": rep.lines(spec)}, args.json)
    elif rep.ok:
        print(f"{spec.name}: dim {spec.dim}, antisymmetry and Jacobi hold: valid")
    else:
        for i, j, k in rep.antisymmetry:
            where = entry_lines.get((spec.basis[i], spec.basis[j])) or entry_lines.get((spec.basis[j], spec.basis[i]))
            prefix = f"{args.algebra}:{where}: " if where else ""
            print(f"{prefix}antisymmetry: C[{spec.basis[i]},{spec.basis[j]}]^{spec.basis[k]} "
                  f"!= -C[{spec.basis[j]},{spec.basis[i]}]^{spec.basis[k]}")
        other = [ln for ln in rep.lines(spec) if not ln.startswith("antisymmetry")]
        for ln in other:
            print(ln)
        n = len(rep.lines(spec))
        print(f"{spec.name}: invalid ({n} problem{'' if n == 1 else 's'})")
    return EXIT_OK if rep.ok else EXIT_INVALID


def _structure_lines(ref: str) -> dict:
    if not os.path.isfile(ref):
        return {}
    with open(ref, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
        lines = _item_lines(text, "structure")
        return {(e["i"], e["j"]): lines[p] for p, e in enumerate(data["structure"]) if p < len(lines)}
    except (ValueError, KeyError, TypeError):
        return {}


def _generators(args, spec: LieAlgebraSpec) -> tuple[GeneratorSet, object]:
    """Generators for close/counts: explicit file, built-in chain, or computed."""
    chain = None
    if getattr(args, "gens", None):
        return read_generators(args.gens, spec), None
    if getattr(args, "basis", None):
        chain, gens = chains_mod.transformed(args.basis)
        if chain.spec.name != spec.name:
            raise UsageError(f"basis {args.basis} belongs to {chain.spec.name}, not {spec.name}")
        return gens, chain
    if args.sub is None:
        raise UsageError("need --sub, --gens or --basis")
    _check_sub(spec, args.sub)
    if args.max_deg is None:
        chain = _chain_for(spec, args.sub)
        if chain is None:
            raise UsageError(f"no built-in generators for {spec.name}/{args.sub}; pass --max-deg")
        return chain.gens, chain
    return build_generating_set(spec, args.sub, args.max_deg), _chain_for(spec, args.sub)


def _check_sub(spec: LieAlgebraSpec, sub: str):
    if sub not in spec.subalgebras:
        known = ", ".join(sorted(spec.subalgebras)) or "none"
        raise UsageError(f"{spec.name} has no subalgebra {sub!r} (known: {known})")


def cmd_commutant(args) -> int:
    spec = _load(args.algebra)
    _check_sub(spec, args.sub)
    gens = build_generating_set(spec, args.sub, args.max_deg, check_next=args.check_next)
    sol = independent_solution_count(spec, seed=args.seed)
    if args.json is not None:
        _emit({"algebra": spec.name, "sub": args.sub, "max_degree": args.max_deg,
               "counts": list(gens.counts()), "saturated": gens.saturated,
               "casimir_count": sol, "generators": gens.to_json()}, args.json)
        if args.json == "-":
            return EXIT_OK
    print(f"commutant of {args.sub} in {spec.name} up to degree {args.max_deg}")
    print(f"new generators per degree: {tuple(gens.counts())}")
    if gens.saturated is not None:
        print(f"degree {args.max_deg + 1} adds nothing new: {'yes' if gens.saturated else 'no'}")
    print(f"independent Casimir count (generic rank, seed {args.seed}): {sol}")
    for g in gens:
        print(f"{g.label} = {g.poly.format(spec.basis)}")
    return EXIT_OK


def cmd_grade(args) -> int:
    spec = _load(args.algebra)
    if not spec.blocks:
        raise UsageError(f"{spec.name} declares no block decomposition")
    gens = read_generators(args.gens, spec)
    out = [(g.label, grade(spec, g.poly)) for g in gens]
    if args.json is not None:
        _emit([{"label": l, "grading": sorted(list(t) for t in gs)} for l, gs in out], args.json)
    else:
        for l, gs in out:
            print(f"G({l}) = {_fmt_grades(gs)}")
    return EXIT_OK


def cmd_counts(args) -> int:
    spec = _load(args.algebra)
    gens, chain = _generators(args, spec)
    commuting = tuple(args.commuting) if args.commuting is not None else (chain.commuting if chain else ())
    degs = sorted({g.degree for g in gens})
    rows = []
    for a, k in enumerate(degs):
        for l in degs[a:]:
            if k == l and len(gens.of_degree(k)) < 2:
                continue
            pr = count_pruned(spec, gens, k, l, commuting, mode=args.mode) if spec.blocks else None
            rows.append({"k": k, "l": l, "unpruned": count_unpruned(gens, k, l),
                         "pruned": pr.count if pr else None,
                         "pair": list(pr.pair) if pr and pr.pair else None})
    if args.json is not None:
        _emit({"algebra": spec.name, "counts": list(gens.counts()), "rows": rows}, args.json)
        return EXIT_OK
    print(f"generators per degree: {tuple(gens.counts())}")
    for r in rows:
        pr = "-" if r["pruned"] is None else str(r["pruned"])
        print(f"{{q{r['k']},q{r['l']}}}: {r['unpruned']} without grading, {pr} with grading")
    return EXIT_OK


def cmd_close(args) -> int:
    spec = _load(args.algebra)
    gens, chain = _generators(args, spec)
    commuting = tuple(args.commuting) if args.commuting is not None else (chain.commuting if chain else ())
    use_grading = not args.no_grading and bool(spec.blocks)
    res = close_all(spec, gens, use_grading=use_grading, commuting=commuting, threads=args.threads)
    unclosed = [r for r in res.relations if not r.closed]
    if args.json is not None:
        _emit({"algebra": spec.name, "grading": use_grading, "closed": res.closed,
               "center": res.center, "degree": res.degree,
               "relations": [r.to_json() for r in res.relations if r.terms or not r.closed]}, args.json)
    else:
        for r in res.relations:
            if r.terms or not r.closed:
                print(r.format())
        print(f"center: {', '.join(res.center) if res.center else '(none)'}")
        print(f"degree: {res.degree} ({algebra_degree_name(res.degree)})")
    for r in unclosed:
        print(f"warning: residual_nonzero in {{{r.lhs[0]},{r.lhs[1]}}}", file=sys.stderr)
    if unclosed and args.strict:
        return EXIT_UNCLOSED
    return EXIT_OK


def cmd_roots(args) -> int:
    n = args.rank
    if n < 1:
        raise UsageError("--rank must be at least 1")
    if args.action == "list":
        gens = enumerate_cartan_generators(n)
        if args.json is not None:
            _emit([{"label": g.label, "degree": g.degree} for g in gens], args.json)
        else:
            for g in gens:
                print(f"{g.label}  degree {g.degree}")
            print(f"total {len(gens)}")
        return EXIT_OK
    if args.p is None or args.q is None:
        raise UsageError("roots classify needs --p and --q")
    try:
        p, q = parse_generator(n, args.p), parse_generator(n, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cl = classify_bracket(n, p, q)
    ok = cl.expansion.poly() == poisson_bracket(sl_spec(n), p.poly(), q.poly())
    if args.json is not None:
        d = cl.to_json()
        d.update({"p": p.label, "q": q.label, "oracle": ok})
        _emit(d, args.json)
    else:
        print(f"case: {cl.label}")
        print(f"{{{p.label},{q.label}}} = {cl.expansion.format()}")
        print(f"oracle: {'agrees' if ok else 'DISAGREES'} with the Poisson engine")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_tables(args) -> int:
    names = chains_mod.CHAINS if args.chain == "all" else (args.chain,)
    blobs = []
    for name in names:
        rows = count_table(name)
        if args.json is not None:
            blobs.append({"chain": name, "rows": [r.to_json() for r in rows]})
        else:
            print(format_table(name, rows))
            if len(names) > 1:
                print()
    if args.json is not None:
        _emit(blobs if len(blobs) > 1 else blobs[0], args.json)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    def add_common(parser, suppress):
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parser.add_argument("--seed", type=int, default=dflt(0), help="seed for randomized internals (default 0)")
        parser.add_argument("--threads", type=int, default=dflt(1), help="worker processes for bracket closure")
        parser.add_argument("--json", nargs="?", const="-", default=dflt(None), metavar="FILE",
                            help="write JSON (to FILE, or stdout when no FILE is given)")
        return parser

    # global flags may appear before or after the subcommand; the copies on
    # subparsers suppress their defaults so they never clobber the global ones
    common = add_common(argparse.ArgumentParser(add_help=False), suppress=True)

    ap = add_common(_Parser(prog="liecommutant",
                            description="Commutants in symmetric algebras and their Poisson closure."), suppress=False)
    sub = ap.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("validate", parents=[common], help="check antisymmetry and Jacobi")
    p.add_argument("algebra", help="built-in name (su3-elliott, sl3, sl<k>) or JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("commutant", parents=[common], help="generators of the commutant degree by degree")
    p.add_argument("algebra")
    p.add_argument("--sub", required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--check-next", action="store_true", help="also scan max-deg + 1 for new generators")
    p.set_defaults(func=cmd_commutant)

    p = sub.add_parser("grade", parents=[common], help="block gradings of generators from a file")
    p.add_argument("algebra")
    p.add_argument("--gens", required=True)
    p.set_defaults(func=cmd_grade)

    for name, fn, helptext in (("counts", cmd_counts, "candidate counts with and without grading"),
                               ("close", cmd_close, "close the Poisson algebra of the generators")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("algebra")
        p.add_argument("--sub")
        p.add_argument("--max-deg", type=int)
        p.add_argument("--gens", help="generator file instead of built-in or computed generators")
        p.add_argument("--basis", choices=sorted(chains_mod.TRANSFORMS), help="named basis change")
        p.add_argument("--commuting", type=int, nargs="*", help="blocks inside the centralized subalgebra")
        if name == "counts":
            p.add_argument("--mode", choices=("block", "monomial"), default="monomial")
        else:
            p.add_argument("--no-grading", action="store_true")
            p.add_argument("--strict", action="store_true", help="exit 3 if any bracket fails to close")
        p.set_defaults(func=fn)

    p = sub.add_parser("roots", parents=[common], help="A_n cycle generators and bracket cases")
    p.add_argument("action", choices=("classify", "list"))
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--p")
    p.add_argument("--q")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("tables", parents=[common], help="comparison tables for the built-in chains")
    p.add_argument("--chain", choices=chains_mod.CHAINS + ("all",), required=True)
    p.set_defaults(func=cmd_tables)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"liecommutant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpecError as exc:
        src = getattr(args, "gens", None) or getattr(args, "algebra", "")
        print(f"liecommutant: {src}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KeyError as exc:
        print(f"liecommutant: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
