# app/api/cli.py
"""
Command-line front end.

Exit status: 0 success / equivalent / representable,
             1 well-formed negative verdict,
             2 usage or input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from app.api import files, render
from app.core.config import resolve_jobs
from app.core.errors import ForgeError, InputError
from app.schemas.invocation import SUBCOMMANDS, Invocation
from app.services import catalog, coordinatizer, equivalence, extender
from app.services.finite_field import field_of_order
from app.services.matrix import dual_matrix, to_standard_form
from app.services.matroid import are_isomorphic, lexicographic_basis, matroid_of_matrix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matroid-forge",
        description="Equivalence, coordinatization and extension of matroid representations over GF(q)",
    )
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="output", action="store_const", const="json", help="JSON report")
    group.add_argument("--plain", dest="output", action="store_const", const="plain", help="text tables (default)")
    fmt.add_argument("--jobs", type=int, help="worker processes (default: MATROID_FORGE_JOBS or 1)")
    fmt.set_defaults(output="plain")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("field", parents=[fmt], help="describe GF(q)")
    p.add_argument("q", type=int)
    p.add_argument("--poly", help="reduction coefficients c0,...,c(k-1)")

    p = sub.add_parser("equiv", parents=[fmt], help="decide equivalence of two matrices")
    p.add_argument("inputs", nargs=2, metavar="MATRIX")
    p.add_argument("--relation", choices=["projective", "algebraic", "geometric"], default="geometric")
    p.add_argument("--witness", action="store_true", help="print the transformation witness")

    p = sub.add_parser("iso", parents=[fmt], help="decide matroid isomorphism")
    p.add_argument("inputs", nargs=2, metavar="FILE")

    p = sub.add_parser("dual", parents=[fmt], help="dual representation [I | -D^T]")
    p.add_argument("inputs", nargs=1, metavar="MATRIX")
    p.add_argument("--basis", help="basis labels, e.g. 1,2,3 (default: least basis)")

    p = sub.add_parser("coordinatize", parents=[fmt], help="all representations of a matroid over GF(q)")
    p.add_argument("--matroid", required=True, metavar="FILE")
    p.add_argument("--field", dest="field_order", type=int, required=True, metavar="Q")
    p.add_argument("--poly", help="reduction coefficients c0,...,c(k-1)")
    p.add_argument("--basis", help="basis labels, e.g. 1,2,3 (default: least basis)")
    p.add_argument("--ones", help="pinned ones as basis:element pairs, e.g. 1:4,2:4,2:5")
    p.add_argument("--max-unknowns", type=int)

    for name, text in (("extend", "single-element extensions"), ("coextend", "single-element coextensions")):
        p = sub.add_parser(name, parents=[fmt], help=text)
        p.add_argument("inputs", nargs=1, metavar="MATRIX")
        p.add_argument("--basis", help="standard-form basis labels (default: least basis)")
        if name == "extend":
            p.add_argument("--stability", action="store_true", help="per-class projective/geometric counts only")

    p = sub.add_parser("catalog", parents=[fmt], help="breadth-first catalog from seed matrices")
    p.add_argument("inputs", nargs="+", metavar="SEED")
    p.add_argument("--max-n", type=int, required=True)
    return parser


def parse_invocation(argv: Optional[Sequence[str]]) -> Invocation:
    args = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(args).items() if v is not None}
    if "q" in values:
        values["field_order"] = values.pop("q")
    values["inputs"] = values.get("inputs", [])
    try:
        return Invocation(**values)
    except ValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(x) for x in err["loc"])
        raise InputError(f"--{where.replace('_', '-')}: {err['msg']}")


def _standard_form(path: str, basis):
    m = files.read_matrix(path)
    basis = basis or lexicographic_basis(matroid_of_matrix(m))
    return to_standard_form(m, basis)


def execute(inv: Invocation) -> tuple[render.Report, int]:
    jobs = resolve_jobs(inv.jobs)
    cmd = inv.subcommand

    if cmd == "field":
        return render.field_out(field_of_order(inv.field_order, inv.poly)), EXIT_OK

    if cmd == "equiv":
        a1, a2 = (files.read_matrix(p) for p in inv.inputs)
        w = equivalence.decide(equivalence.EquivalenceQuery(a1, a2, equivalence.Relation(inv.relation)))
        return render.equivalence_out(inv.relation, w, inv.witness), EXIT_OK if w else EXIT_NEGATIVE

    if cmd == "iso":
        m1, m2 = (files.read_any_matroid(p) for p in inv.inputs)
        mapping = are_isomorphic(m1, m2)
        return render.isomorphism_out(mapping), EXIT_OK if mapping else EXIT_NEGATIVE

    if cmd == "dual":
        return render.matrix_out(dual_matrix(_standard_form(inv.inputs[0], inv.basis)).base), EXIT_OK

    if cmd == "coordinatize":
        M = files.read_matroid(inv.matroid)
        spec = field_of_order(inv.field_order, inv.poly)
        prob = coordinatizer.build_problem(M, inv.basis, inv.ones)
        report = coordinatizer.enumerate_representations(prob, spec, inv.max_unknowns, jobs)
        return render.coordination_out(report), EXIT_OK if report.representable else EXIT_NEGATIVE

    if cmd == "extend":
        s = _standard_form(inv.inputs[0], inv.basis)
        if inv.stability:
            return render.stability_out(extender.stability_report(s, jobs), s.base.spec.q), EXIT_OK
        return render.extension_report_out(extender.extend_all(s, jobs)), EXIT_OK

    if cmd == "coextend":
        s = _standard_form(inv.inputs[0], inv.basis)
        return render.extension_report_out(extender.coextend_all(s, jobs)), EXIT_OK

    if cmd == "catalog":
        seeds = [files.read_matrix(p) for p in inv.inputs]
        spec = seeds[0].spec
        for p, s in zip(inv.inputs[1:], seeds[1:]):
            if s.spec != spec:
                raise InputError(f"field {s.spec} does not match {spec} of the first seed", p)
        entries = catalog.generate_catalog(seeds, spec, inv.max_n, jobs)
        return render.catalog_out(entries), EXIT_OK

    raise InputError(f"unknown subcommand {cmd!r}; expected one of {', '.join(SUBCOMMANDS)}")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        inv = parse_invocation(argv)
        report, status = execute(inv)
    except SystemExit as e:
        # argparse usage errors and --help
        return int(e.code or 0)
    except ForgeError as e:
        logger.debug("failed: %s", e.detail)
        stderr.write(f"error: {e.detail}\n")
        return e.status_code
    stdout.write(render.write_report(report, inv.output).decode())
    stdout.flush()
    return status
