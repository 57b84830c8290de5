"""Zariski-van Kampen presentations from braid monodromy data.

Also holds constructors for the named groups that arise for rational nodal
curves of type I and II, and the worked nodal-cubic pipeline.
"""
from __future__ import annotations

from dataclasses import dataclass

from .freegroup import NAME_RE, BraidWord, Word, artin_act, commutator, strand_names
from .presentation import (
    Presentation,
    change_basis,
    kill_generator,
    tietze_simplify,
)

__all__ = [
    "Fiber",
    "MonodromyInput",
    "fiber_relators",
    "fibered_presentation",
    "projective_quotient",
    "local_braid",
    "k_group",
    "k_group_long",
    "z2_group",
    "nodal_cubic_input",
    "NodalCubicStages",
    "nodal_cubic_pipeline",
]


@dataclass(frozen=True)
class Fiber:
    braid: BraidWord
    meridian: str | None = None
    label: str = ""


@dataclass(frozen=True)
class MonodromyInput:
    strands: int
    fibers: tuple[Fiber, ...] = ()
    meridians: tuple[str, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("need at least one strand")
        mer = tuple(self.meridians) or strand_names(self.strands)
        if len(mer) != self.strands:
            raise ValueError(f"expected {self.strands} meridian names, got {len(mer)}")
        if len(set(mer)) != len(mer):
            raise ValueError("strand meridian names must be distinct")
        fibers = tuple(self.fibers)
        named = []
        for f in fibers:
            if f.braid.strands != self.strands:
                raise ValueError(f"fiber {f.label!r} braid has {f.braid.strands} strands, "
                                 f"expected {self.strands}")
            if f.meridian is not None:
                if not NAME_RE.match(f.meridian):
                    raise ValueError(f"invalid meridian name {f.meridian!r}")
                named.append(f.meridian)
        if set(named) & set(mer) or len(set(named)) != len(named):
            raise ValueError("fiber meridians must be distinct from each other and from strand meridians")
        object.__setattr__(self, "meridians", mer)
        object.__setattr__(self, "fibers", fibers)

    @property
    def is_classical(self) -> bool:
        return all(f.meridian is None for f in self.fibers)


def fiber_relators(data: MonodromyInput) -> list[list[Word]]:
    """The raw relators, ``strands`` of them per fiber, before canonicalisation."""
    out = []
    for f in data.fibers:
        rels = []
        for m in data.meridians:
            x = Word.gen(m)
            image = artin_act(f.braid, x, data.meridians)
            lhs = x.conjugate(Word.gen(f.meridian)) if f.meridian is not None else x
            rels.append(lhs * image.inverse())
        out.append(rels)
    return out


def fibered_presentation(data: MonodromyInput) -> Presentation:
    gens = list(data.meridians)
    classes = {m: "strand" for m in data.meridians}
    for f in data.fibers:
        if f.meridian is not None:
            gens.append(f.meridian)
            classes[f.meridian] = f"vertical:{f.label}"
    rels = [r for block in fiber_relators(data) for r in block]
    return Presentation(tuple(gens), tuple(rels), classes)


def projective_quotient(P: Presentation, data: MonodromyInput) -> Presentation:
    """Adjoin ``m_n ... m_1`` (the loop around the line at infinity)."""
    if not data.is_classical:
        raise ValueError("projective closure of fibered data unsupported")
    w = Word()
    for m in reversed(data.meridians):
        w = w * Word.gen(m)
    return P.with_relators(P.relators + (w,))


def local_braid(kind: str, r: int = 0, k: int | None = None) -> BraidWord:
    """Local monodromy braids of the non-transversal fibers.

    ``tangency`` is ``s1^(2(2r+1))``, ``node`` is ``s1^2``, ``asymptote`` is
    ``s1^-2`` and ``asymptote_typeII`` is
    ``(s1 ... s(k-2) s(k-1)^2 s(k-2) ... s1)^-1`` on ``k`` strands.
    """
    if kind == "tangency":
        if r < 0:
            raise ValueError("tangency order r must be >= 0")
        return BraidWord(2, [(1, 1)] * (2 * (2 * r + 1)))
    if kind == "node":
        return BraidWord(2, [(1, 1), (1, 1)])
    if kind == "asymptote":
        return BraidWord(2, [(1, -1), (1, -1)])
    if kind == "asymptote_typeII":
        if k is None or k < 3:
            raise ValueError("asymptote_typeII needs k >= 3")
        up = [(i, 1) for i in range(1, k - 1)]
        b = BraidWord(k, up + [(k - 1, 1), (k - 1, 1)] + up[::-1])
        return b.inverse()
    raise ValueError(f"unknown local braid kind {kind!r}")


_LINE, _CURVE = "line:L1", "curve:D"


def k_group(k: int) -> Presentation:
    """``< l, x | [x, l^k], [x, l^-i x l^i] (i = 1..k-1) >``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    l, x = Word.gen("l"), Word.gen("x")
    rels = [commutator(x, l ** k)]
    rels += [commutator(x, x.conjugate(l ** i)) for i in range(1, k)]
    return Presentation(("l", "x"), tuple(rels), {"l": _LINE, "x": _CURVE})


def k_group_long(k: int) -> Presentation:
    """``< l, x1..xk | [xi, xj], l^-1 xi l = x(i+1) (indices mod k) >``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    l = Word.gen("l")
    xs = [Word.gen(f"x{i}") for i in range(1, k + 1)]
    rels = [commutator(xs[i], xs[j]) for i in range(k) for j in range(i + 1, k)]
    rels += [xs[i].conjugate(l) * xs[(i + 1) % k].inverse() for i in range(k)]
    classes = {"l": _LINE}
    classes.update({f"x{i}": _CURVE for i in range(1, k + 1)})
    return Presentation(("l",) + tuple(f"x{i}" for i in range(1, k + 1)), tuple(rels), classes)


def z2_group() -> Presentation:
    """Free abelian group of rank two on a line meridian ``l`` and a curve meridian ``x``."""
    return Presentation(("l", "x"), (commutator("x", "l"),), {"l": _LINE, "x": _CURVE})


def nodal_cubic_input() -> MonodromyInput:
    """Nodal cubic with its inflectional tangent at infinity.

    Two special fibers: ``alpha`` (the line through the node, meridian ``a``)
    with braid ``s1^2`` and ``beta`` (the ordinary tangent, meridian ``b``)
    with braid ``s1``.
    """
    return MonodromyInput(
        2,
        (
            Fiber(BraidWord.parse(2, "s1^2"), "a", "alpha"),
            Fiber(BraidWord.parse(2, "s1"), "b", "beta"),
        ),
        ("m1", "m2"),
    )


@dataclass(frozen=True)
class NodalCubicStages:
    fibered: Presentation
    killed: Presentation
    simplified: Presentation


def nodal_cubic_pipeline() -> NodalCubicStages:
    fibered = fibered_presentation(nodal_cubic_input())
    killed = kill_generator(fibered, "a")
    changed = change_basis(killed, "m", "m1 b").presentation
    simplified = tietze_simplify(changed, keep=("m", "b"))
    return NodalCubicStages(fibered, killed, simplified)
