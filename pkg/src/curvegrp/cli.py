"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 computation error (search
or overflow guard), 3 ``distinguish`` found no separating group.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .catalog import CATALOG, resolve
from .errors import ComputationError
from .finitegrp import group_from_name, parse_battery
from .freegroup import Word
from .lattice import lemma_preimD_report
from .presentation import (
    Presentation,
    abelianization,
    change_basis,
    format_presentation,
    kill_generator,
    rewrite_conjugations,
    tietze_simplify,
)
from .quotient import (
    MeridianConstraint,
    dihedral_cover_test,
    distinguish,
    epimorphisms,
    gk_cover_test,
    homomorphisms,
)

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Report:
    sections: list = field(default_factory=list)  # (heading, [line])
    machine_readable: bool = False

    def add(self, heading: str, pairs) -> None:
        self.sections.append((heading, [f"{k}: {v}" for k, v in pairs]))

    def add_lines(self, heading: str, lines) -> None:
        self.sections.append((heading, list(lines)))

    def render(self) -> str:
        out = []
        for heading, lines in self.sections:
            if self.machine_readable:
                out.extend(lines)
            else:
                if out:
                    out.append("")
                out.append(f"# {heading}")
                out.extend(lines)
        return "\n".join(out) + "\n"


def _apply_basis_change(P: Presentation, spec: str) -> tuple[Presentation, list[str]]:
    new, sep, word = spec.partition(":=")
    if not sep:
        new, sep, word = spec.partition("=")
    if not sep:
        raise UsageError(f"basis change must look like 'g := word', got {spec!r}")
    w = Word.parse(word)
    change = change_basis(P, new.strip(), w)
    keep = [new.strip()] + sorted(w.generators() - set(change.to_new))
    return change.presentation, keep


def cmd_present(args, report: Report) -> int:
    sc = resolve(args.scenario)
    P = sc.presentation
    if sc.monodromy is not None and not args.kill:
        checks = []
        product = Word()
        for m in reversed(sc.monodromy.meridians):
            product = product * Word.gen(m)
        for f in sc.monodromy.fibers:
            if f.meridian is not None:
                w = product.inverse() * product.conjugate(Word.gen(f.meridian))
                nf = rewrite_conjugations(P, w, f.meridian)
                checks.append((f"[{product}, {f.meridian}]", "identity" if not nf else str(nf)))
        if checks:
            report.add("product invariance", checks)
    for g in args.kill:
        P = kill_generator(P, g)
    if args.simplify:
        change = args.change_basis or (" := ".join(sc.basis_change) if sc.basis_change else None)
        keep: list[str] = []
        if change is not None:
            name = change.partition(":=")[2] or change.partition("=")[2]
            if set(Word.parse(name).generators()) <= set(P.generators):
                P, keep = _apply_basis_change(P, change)
        P = tietze_simplify(P, keep=keep)
    elif args.change_basis:
        P, _ = _apply_basis_change(P, args.change_basis)
    report.add_lines("presentation", format_presentation(P).splitlines())
    if args.abelianize:
        ab = abelianization(P)
        report.add("abelianization", [("rank", ab.rank),
                                      ("torsion", " ".join(map(str, ab.torsion)) or "none")])
    for heading, pairs in sc.sections:
        report.add(heading, pairs)
    return EXIT_OK


def _parse_constraints(text: str) -> list[MeridianConstraint]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        gen, *items = line.split()
        kw = {}
        for item in items:
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"constraints line {lineno}: bad item {item!r}")
            if key == "order":
                kw["order"] = int(value)
            elif key == "in":
                kw["in_subgroup"] = value
            elif key == "not-in":
                kw["not_in_subgroup"] = value
            elif key == "quotient-order":
                sub, _, q = value.rpartition(":")
                kw["quotient_order"] = (sub, int(q))
            else:
                raise ValueError(f"constraints line {lineno}: unknown key {key!r}")
        out.append(MeridianConstraint(gen, **kw))
    return out


def cmd_quotients(args, report: Report) -> int:
    sc = resolve(args.scenario)
    G = group_from_name(args.target)
    cons = []
    if args.constraints:
        with open(args.constraints) as fh:
            cons = _parse_constraints(fh.read())
    search = epimorphisms if args.epi_only else homomorphisms
    homs = search(sc.presentation, G, cons)
    epi_flags = [h.is_surjective() for h in homs]
    report.add("summary", [("target", G.name), ("homCount", len(homs)),
                           ("epiCount", sum(epi_flags))])
    for i, (h, epi) in enumerate(zip(homs, epi_flags), 1):
        report.add_lines(f"hom {i}", h.lines() + [f"epi: {'yes' if epi else 'no'}"])
    return EXIT_OK


def cmd_cover_test(args, report: Report) -> int:
    sc = resolve(args.scenario)
    P = sc.presentation
    lines = P.gens_of_class("line")
    curves = P.gens_of_class("curve")
    if not lines or not curves:
        raise ValueError("missing class labels: need line:* and curve:* generators")
    test = dihedral_cover_test if args.family == "dihedral" else gk_cover_test
    res = test(P, lines, curves[0], args.param)
    report.add("cover test", [("family", args.family), ("param", args.param),
                              ("target", res.target.name), ("lineGens", " ".join(lines)),
                              ("curveGen", curves[0]), ("exists", "yes" if res else "no")])
    if res.witness is not None:
        report.add_lines("witness", res.witness.lines() + ["epi: yes"])
    return EXIT_OK


def cmd_distinguish(args, report: Report) -> int:
    left, right = resolve(args.left), resolve(args.right)
    battery = parse_battery(args.battery)
    if not battery:
        raise UsageError("empty battery")
    v = distinguish(left.presentation, right.presentation, battery)
    rows = [(G.name, f"left={a[0]}/{a[1]} right={b[0]}/{b[1]}")
            for G, a, b in zip(battery, v.left, v.right)]
    report.add("fingerprints (hom/epi)", rows)
    report.add("verdict", [("distinguishedBy",
                            v.distinguished_by.name if v.distinguished_by else "inconclusive")])
    return EXIT_INCONCLUSIVE if v.inconclusive else EXIT_OK


def cmd_lattice(args, report: Report) -> int:
    rep = lemma_preimD_report(args.d, args.k)
    report.add("lattice report", rep.lines())
    return EXIT_OK


def cmd_catalog(args, report: Report) -> int:
    report.add_lines("catalog", [f"{name}: {desc}" for name, desc in CATALOG.items()])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvegrp", description="Fundamental groups of plane-curve complements.")
    p.add_argument("--machine", action="store_true", help="omit section headings")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("present", help="print the presentation of a scenario")
    sp.add_argument("scenario")
    sp.add_argument("--kill", action="append", default=[], metavar="GEN")
    sp.add_argument("--simplify", action="store_true")
    sp.add_argument("--change-basis", metavar="'g := word'")
    sp.add_argument("--abelianize", action="store_true")
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("quotients", help="enumerate homomorphisms into a finite group")
    sp.add_argument("scenario")
    sp.add_argument("--target", required=True)
    sp.add_argument("--epi-only", action="store_true")
    sp.add_argument("--constraints")
    sp.set_defaults(func=cmd_quotients)

    sp = sub.add_parser("cover-test", help="group-level Galois cover existence test")
    sp.add_argument("scenario")
    sp.add_argument("--family", choices=["dihedral", "gk"], required=True)
    sp.add_argument("--param", type=int, required=True)
    sp.set_defaults(func=cmd_cover_test)

    sp = sub.add_parser("distinguish", help="separate two groups by finite quotients")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--battery", required=True)
    sp.set_defaults(func=cmd_distinguish)

    sp = sub.add_parser("lattice", help="Picard lattice computations")
    lsub = sp.add_subparsers(dest="lattice_command", required=True)
    rp = lsub.add_parser("report")
    rp.add_argument("--d", type=int, required=True)
    rp.add_argument("--k", type=int, required=True)
    rp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("catalog", help="list catalog entries")
    csub = sp.add_subparsers(dest="catalog_command", required=True)
    lp = csub.add_parser("list")
    lp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    report = Report(machine_readable=args.machine)
    try:
        code = args.func(args, report)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.render())
    return code


def run() -> None:
    sys.exit(main())
