"""Command line interface: ``fibrous eval|verify|complex|catalog``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

from .catalog import BUILTIN, Catalog
from .dsl import parse, render
from .errors import ComplexError, ParseError, ResolutionError, SchemaError
from .evaluate import ChiDerivation, Evaluator, Rule
from .homology import (
    chi_by_betti,
    chi_by_cells,
    chi_by_faces,
    complex_from_json,
    homology,
    skeleton_from_json,
)
from .terms import CatalogRef
from .verify import OracleResult, oracle_chis, param_sweep, realize, verify_entry

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOLUTION = 4
EXIT_IO = 5
EXIT_SCHEMA = 6
EXIT_INVALID_COMPLEX = 7

EXIT_CODES_HELP = """\
exit codes:
  0  success
  1  verification failure (a FAIL row, or oracle routes disagree)
  2  usage error
  3  DSL parse error
  4  resolution error (unknown name, arity, parameter domain, depth bound)
  5  file I/O error
  6  JSON schema violation in an input file
  7  invalid simplicial complex or CW skeleton
"""


# -- derivation reports -------------------------------------------------------


def format_level(level) -> str:
    if isinstance(level, tuple):
        return f"({level[0]},{level[1]})"
    return str(level)


def derivation_to_json(d: ChiDerivation, catalog: Catalog = BUILTIN) -> dict:
    node = {"rule": d.rule.value, "term": render(d.term, catalog), "chi": d.chi, "children": []}
    levels = d.levels or (None,) * len(d.children)
    for (sign, child), level in zip(d.children, levels):
        entry = {"sign": sign}
        if level is not None:
            entry["level"] = list(level) if isinstance(level, tuple) else level
        entry["derivation"] = derivation_to_json(child, catalog)
        node["children"].append(entry)
    return node


def resum_json(node: dict) -> int:
    """Recompute a serialized node's value from its leaves, checking every node on the way."""
    if node["rule"] == Rule.FINITE_COUNT.value:
        return node["chi"]
    total = sum(c["sign"] * resum_json(c["derivation"]) for c in node["children"])
    if total != node["chi"]:
        raise ValueError(f"node {node['term']!r} records {node['chi']} but its children sum to {total}")
    return total


@dataclass
class DerivationReport:
    expr: str
    derivation: ChiDerivation
    oracles: list[OracleResult] = field(default_factory=list)

    @property
    def chi(self) -> int:
        return self.derivation.chi

    @property
    def match(self) -> bool:
        return all(o.chi == self.chi for o in self.oracles)

    def to_json(self, catalog: Catalog = BUILTIN) -> dict:
        out = {"expr": self.expr, "chi": self.chi, "derivation": derivation_to_json(self.derivation, catalog)}
        if self.oracles:
            out["oracle"] = [{"route": o.route, "chi": o.chi} for o in self.oracles]
            out["match"] = self.match
        return out


def _paren(v: int) -> str:
    return f"({v})" if v < 0 else str(v)


def _signed(values: list[tuple[int, int]]) -> str:
    first_sign, first = values[0]
    out = _paren(first) if first_sign > 0 else f"-{_paren(first)}"
    for sign, v in values[1:]:
        out += f" {'+' if sign > 0 else '-'} {_paren(v)}"
    return out


def explain_lines(d: ChiDerivation, catalog: Catalog = BUILTIN) -> list[str]:
    """Indented trace; each alternating sum is written out with explicit signs."""
    lines: list[str] = []
    printed: set[CatalogRef] = set()

    def visit(node: ChiDerivation, indent: str, prefix: str) -> None:
        text = render(node.term, catalog)
        rule = node.rule
        if rule is Rule.FINITE_COUNT:
            lines.append(f"{indent}{prefix}{text} = {node.chi}  [{rule.value}]")
            return
        if rule is Rule.CATALOG_EXPANSION:
            if node.term in printed:
                lines.append(f"{indent}{prefix}{text} = {node.chi}  [{rule.value}, derived above]")
                return
            printed.add(node.term)
            lines.append(f"{indent}{prefix}{text} = {node.chi}  [{rule.value}]")
            visit(node.children[0][1], indent + "  ", "")
            return
        if rule is Rule.MULTIPLE:
            base = node.children[0][1]
            lines.append(f"{indent}{prefix}{text} = {len(node.children)} x {_paren(base.chi)} = {node.chi}  [{rule.value}]")
            visit(base, indent + "  ", "")
            return
        arith = _signed([(s, c.chi) for s, c in node.children])
        lines.append(f"{indent}{prefix}{text} = {arith} = {node.chi}  [{rule.value}]")
        levels = node.levels or (None,) * len(node.children)
        for (sign, child), level in zip(node.children, levels):
            tag = "+" if sign > 0 else "-"
            where = f"level {format_level(level)}: " if level is not None else ""
            visit(child, indent + "  ", f"{where}{tag} ")

    visit(d, "", "")
    return lines


# -- commands -----------------------------------------------------------------


class _UsageFailure(Exception):
    pass


class _IOFailure(Exception):
    pass


def cmd_eval(args, out: TextIO, catalog: Catalog) -> int:
    term = parse(args.expr, catalog)
    derivation = Evaluator(catalog).chi(term)
    report = DerivationReport(args.expr, derivation)
    if args.oracle:
        r = realize(term, catalog)
        if r is not None:
            report.oracles = oracle_chis(r)
    if args.json:
        json.dump(report.to_json(catalog), out, indent=2)
        out.write("\n")
    else:
        if args.explain:
            for line in explain_lines(derivation, catalog):
                out.write(line + "\n")
        out.write(f"chi({args.expr}) = {report.chi}\n")
        if args.oracle:
            if not report.oracles:
                out.write("oracle: no realization for this expression\n")
            for o in report.oracles:
                out.write(f"oracle {o.route}: {o.chi} {'match' if o.chi == report.chi else 'MISMATCH'}\n")
    return EXIT_OK if report.match else EXIT_VERIFY_FAILED


def _parse_params(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    return values


def cmd_verify(args, out: TextIO, catalog: Catalog) -> int:
    entry = catalog[args.name]
    if args.params is not None:
        tuples = [args.params]
    else:
        tuples = param_sweep(entry, args.max, args.min)
    if not tuples:
        raise _UsageFailure(f"empty parameter range for {args.name}")
    rows = verify_entry(catalog, args.name, tuples)
    if args.json:
        json.dump([r.to_json() for r in rows], out, indent=2)
        out.write("\n")
    else:
        header = f"{'space':<16} {'chi':>5} {'expected':>8} {'alternatives':<14} {'oracle':<20} result"
        out.write(header + "\n")
        for r in rows:
            alts = ",".join(map(str, r.alternatives)) or "-"
            oracle = ",".join(f"{o.route}={o.chi}" for o in r.oracles) or "-"
            expected = "-" if r.expected is None else str(r.expected)
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{r.notation:<16} {r.chi:>5} {expected:>8} {alts:<14} {oracle:<20} {status}\n")
        failed = sum(not r.passed for r in rows)
        out.write(f"{len(rows) - failed}/{len(rows)} passed\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VERIFY_FAILED


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise _IOFailure(f"cannot read {path}: {err.strerror or err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{path} is not valid JSON: {err}") from err


def cmd_complex(args, out: TextIO, catalog: Catalog) -> int:
    data = _load_json(args.file)
    if isinstance(data, dict) and "cell_counts" in data and "maximal_simplices" not in data:
        skeleton = skeleton_from_json(data)
        if args.sub == "betti":
            raise SchemaError("betti numbers need a simplicial complex, not cell counts")
        value = chi_by_cells(skeleton)
        if args.json:
            json.dump({"cell_counts": list(skeleton.cell_counts), "chi_by_cells": value}, out, indent=2)
            out.write("\n")
        else:
            out.write(f"chi_by_cells = {value}\n")
        return EXIT_OK
    c = complex_from_json(data)
    if args.sub == "chi":
        faces, betti = chi_by_faces(c), chi_by_betti(c)
        if args.json:
            json.dump(
                {"f_vector": list(c.f_vector), "chi_by_faces": faces, "chi_by_betti": betti,
                 "match": faces == betti},
                out, indent=2,
            )
            out.write("\n")
        else:
            out.write(f"f_vector = {list(c.f_vector)}\n")
            out.write(f"chi_by_faces = {faces}\nchi_by_betti = {betti}\n")
            out.write("match\n" if faces == betti else "MISMATCH\n")
        return EXIT_OK if faces == betti else EXIT_VERIFY_FAILED
    h = homology(c)
    if args.json:
        json.dump({"betti": list(h.betti), "torsion": [list(t) for t in h.torsion]}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"betti = {list(h.betti)}\n")
        for k, t in enumerate(h.torsion):
            if t:
                out.write(f"torsion H_{k}: {' + '.join(f'Z/{d}' for d in t)}\n")
    return EXIT_OK


def catalog_listing(catalog: Catalog) -> list[dict]:
    rows = []
    for entry in catalog.values():
        if entry.variadic:
            example_params = (1, 2, 1)
        else:
            example_params = tuple(p.minimum + 2 if p.maximum is None else p.maximum for p in entry.params)
        example = f"{entry.notation(example_params)} = {render(entry.build(example_params), catalog)}"
        rows.append({
            "name": entry.name,
            "notation": entry.notation(),
            "description": entry.description,
            "domain": entry.domain(),
            "decomposition": entry.decomposition,
            "example": example,
            "alternatives": len(entry.alt_builders),
            "chi": entry.chi_formula,
            "realization": entry.realization is not None,
        })
    return rows


def cmd_catalog(args, out: TextIO, catalog: Catalog) -> int:
    rows = catalog_listing(catalog)
    if args.json:
        json.dump(rows, out, indent=2)
        out.write("\n")
        return EXIT_OK
    for row in rows:
        out.write(f"{row['notation']}  ({row['description']})\n")
        out.write(f"  domain:        {row['domain']}\n")
        out.write(f"  decomposition: {row['decomposition']}\n")
        out.write(f"  example:       {row['example']}\n")
        out.write(f"  chi:           {row['notation']} = {row['chi']}\n")
        out.write(f"  realization:   {'yes' if row['realization'] else 'no'}\n")
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibrous",
        description="Euler characteristic of spaces given by fibrous decompositions.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate chi of a DSL expression", epilog=EXIT_CODES_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("expr", help='expression such as "p(S^1)rosette(4)"')
    p.add_argument("--explain", action="store_true", help="print the full derivation tree")
    p.add_argument("--json", action="store_true", help="emit the derivation as JSON")
    p.add_argument("--oracle", action="store_true",
                   help="also compute chi from a concrete realization when one exists")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="check a catalog entry over a parameter range",
                       epilog=EXIT_CODES_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("name", help="catalog name, e.g. S, M, N, RP, D, T, rosette, chain, cw")
    p.add_argument("--max", type=int, default=8, help="largest parameter value (default 8)")
    p.add_argument("--min", type=int, default=0, help="smallest parameter value (default 0)")
    p.add_argument("--params", type=_parse_params, help="verify one tuple, e.g. 4,6,4")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("complex", help="oracle chi or homology of a complex file",
                       epilog=EXIT_CODES_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("sub", choices=("chi", "betti"))
    p.add_argument("file", help='JSON {"maximal_simplices": [[...], ...]} or {"cell_counts": [...]}')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("catalog", help="list catalog entries")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None,
         catalog: Catalog = BUILTIN) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, catalog)
    except ParseError as exc:
        err.write(exc.pretty() + "\n")
        return EXIT_PARSE
    except ResolutionError as exc:
        err.write(_resolution_message(exc, getattr(args, "expr", None)) + "\n")
        return EXIT_RESOLUTION
    except _UsageFailure as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except _IOFailure as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO
    except SchemaError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except ComplexError as exc:
        err.write(f"error: invalid complex: {exc}\n")
        return EXIT_INVALID_COMPLEX


def _resolution_message(exc: ResolutionError, text: Optional[str]) -> str:
    if exc.span is None or text is None:
        return f"error: {exc.message}"
    start, end = exc.span
    marker = " " * start + "^" * max(1, end - start)
    return f"error: {exc.message} at {start}:{end}\n  {text}\n  {marker}"


if __name__ == "__main__":
    sys.exit(main())
