"""Named scenarios: the worked examples and group families, addressable as
``catalog:<name>[:p1[:p2...]]`` from the command line."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .finitegrp import dihedral
from .freegroup import Word, commutator
from .lattice import node_count
from .presentation import Presentation, consequence_by_substitution, parse_presentation
from .quotient import refute_consequence
from .scenario import parse_monodromy
from .zvk import (
    MonodromyInput,
    fibered_presentation,
    k_group,
    k_group_long,
    nodal_cubic_input,
    z2_group,
)

__all__ = ["Scenario", "CATALOG", "catalog", "resolve", "bifamily_presentations"]


@dataclass
class Scenario:
    kind: str  # "monodromy-file", "presentation-file" or "catalog-entry"
    parameters: dict
    presentation: Presentation
    monodromy: MonodromyInput | None = None
    basis_change: tuple[str, str] | None = None
    sections: list = field(default_factory=list)  # extra (heading, [(key, value)])


CATALOG = {
    "nodal-cubic": "nodal cubic with inflectional and ordinary tangents (fibered monodromy)",
    "smooth-family": "generic smooth member of the nodal-cubic family, Z^2",
    "type-I": "type-I:<d>:<r1>:<r2>, rational nodal type I curve, group K_2",
    "type-II": "type-II:<k>, rational nodal type II curve, group K_k",
    "k-group": "k-group:<k>, two-generator K_k",
    "k-group-long": "k-group-long:<k>, K_k on l, x1..xk",
    "bifamily": "bifamily:[generic|nodal|cusp], local relations of a cusp-node bifamily",
}


def _ints(name: str, params: list[str], count: int) -> list[int]:
    if len(params) != count:
        raise ValueError(f"catalog entry {name!r} takes {count} parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise ValueError(f"catalog entry {name!r}: parameters must be integers") from None


def bifamily_presentations() -> dict[str, Presentation]:
    gens = ("m", "n")
    return {
        "generic": Presentation(gens, (Word.parse("m n^-1"),)),
        "nodal": Presentation(gens, (Word.parse("m n^-1"), commutator("m", "n"))),
        "cusp": Presentation(gens, (Word.parse("m n m n^-1 m^-1 n^-1"),)),
    }


def _bifamily(params: list[str]) -> Scenario:
    if len(params) > 1:
        raise ValueError("bifamily takes at most one parameter")
    member = params[0] if params else "nodal"
    sets = bifamily_presentations()
    if member not in sets:
        raise ValueError(f"bifamily member must be one of {sorted(sets)}")
    sections = []
    for name in ("generic", "nodal", "cusp"):
        P = sets[name]
        sections.append((f"relations {name}", [("relator", str(r)) for r in P.relators]))
    proven = consequence_by_substitution(sets["generic"], commutator("m", "n"))
    ref = refute_consequence(sets["cusp"].relators, "m n^-1", [dihedral(3)], ("m", "n"))
    analysis = [("node-vs-double-relation consequence", "yes" if proven else "unknown")]
    if ref.refuted:
        analysis.append(("cusp-vs-node refutedBy", ref.refuted_by.name))
        analysis.extend(("witness", line) for line in ref.witness.lines())
    else:
        analysis.append(("cusp-vs-node refutedBy", "unknown"))
    sections.append(("analysis", analysis))
    return Scenario("catalog-entry", {"name": "bifamily", "member": member}, sets[member],
                    sections=sections)


def catalog(name: str, params: list[str] | None = None) -> Scenario:
    params = list(params or [])
    if name == "nodal-cubic":
        _ints(name, params, 0)
        data = nodal_cubic_input()
        return Scenario("catalog-entry", {"name": name}, fibered_presentation(data), data,
                        basis_change=("m", "m1 b"))
    if name == "smooth-family":
        _ints(name, params, 0)
        return Scenario("catalog-entry", {"name": name}, z2_group())
    if name == "type-I":
        d, r1, r2 = _ints(name, params, 3)
        nodes = node_count(d, r1, r2)
        return Scenario("catalog-entry", {"name": name, "d": d, "r1": r1, "r2": r2}, k_group(2),
                        sections=[("curve", [("nodeCount", str(nodes))])])
    if name == "type-II":
        (k,) = _ints(name, params, 1)
        if k < 2:
            raise ValueError("type-II needs k >= 2")
        return Scenario("catalog-entry", {"name": name, "k": k}, k_group(k))
    if name == "k-group":
        (k,) = _ints(name, params, 1)
        return Scenario("catalog-entry", {"name": name, "k": k}, k_group(k))
    if name == "k-group-long":
        (k,) = _ints(name, params, 1)
        return Scenario("catalog-entry", {"name": name, "k": k}, k_group_long(k))
    if name == "bifamily":
        return _bifamily(params)
    raise ValueError(f"unknown catalog entry {name!r}")


def resolve(ref: str) -> Scenario:
    """Resolve ``catalog:<name>[:params]`` or a path to a scenario/presentation file."""
    if ref.startswith("catalog:"):
        name, *params = ref[len("catalog:"):].split(":")
        return catalog(name, params)
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read scenario {ref!r}: {exc.strerror}") from None
    if "[monodromy]" in text:
        data = parse_monodromy(text)
        return Scenario("monodromy-file", {"path": ref}, fibered_presentation(data), data)
    return Scenario("presentation-file", {"path": ref}, parse_presentation(text))
