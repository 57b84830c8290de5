"""Homomorphisms from finitely presented groups onto concrete finite groups.

The search is exhaustive backtracking over generator images in declared
order. A relator is evaluated as soon as all of its generators have images,
and constraints prune candidates at assignment time, so results come out in
lexicographic order of image tuples.

Branched Galois covers of the plane with group G correspond to epimorphisms
from the complement's fundamental group onto G; the branching data becomes
conjugation-invariant conditions on meridian images. For a curve
``L1 + L2 + D``:

* a D_2n-cover branched at ``2(L1+L2) + nD`` means every line meridian maps
  to a reflection (order 2, outside the rotations) and the D meridian to a
  rotation of exact order n;
* a G(k)-cover branched at ``k(L1+L2) + 2D`` whose H(k)-quotient is cyclic
  means every line meridian maps to an element of order k modulo H(k) and
  the D meridian to an involution inside H(k).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import SearchTooLarge
from .finitegrp import ConcreteGroup, dihedral, element_order, generated_subgroup, gk
from .freegroup import Word
from .presentation import Presentation

__all__ = [
    "MeridianConstraint",
    "Homomorphism",
    "homomorphisms",
    "epimorphisms",
    "fingerprint",
    "Verdict",
    "distinguish",
    "CoverResult",
    "dihedral_cover_test",
    "gk_cover_test",
    "Refutation",
    "refute_consequence",
    "evaluate",
    "max_group_order",
    "MAX_SEARCH_GENERATORS",
]

MAX_SEARCH_GENERATORS = 6
DEFAULT_MAX_ORDER = 24_576


def max_group_order() -> int:
    value = os.environ.get("CURVEGRP_MAX_ORDER")
    return int(value) if value else DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class MeridianConstraint:
    generator: str
    order: int | None = None
    in_subgroup: str | None = None
    not_in_subgroup: str | None = None
    quotient_order: tuple[str, int] | None = None

    def __post_init__(self):
        if self.in_subgroup is not None and self.in_subgroup == self.not_in_subgroup:
            raise ValueError(f"{self.generator}: both inside and outside {self.in_subgroup!r}")

    def allowed(self, G: ConcreteGroup) -> list[int]:
        """Elements of ``G`` the generator may map to."""
        ok = [True] * G.order
        if self.order is not None:
            ok = [o and element_order(G, g) == self.order for g, o in enumerate(ok)]
        for name, inside in ((self.in_subgroup, True), (self.not_in_subgroup, False)):
            if name is None:
                continue
            N = _normal_marked(G, name)
            ok = [o and ((g in N) == inside) for g, o in enumerate(ok)]
        if self.quotient_order is not None:
            name, q = self.quotient_order
            N = _normal_marked(G, name)
            ok = [o and _order_mod(G, g, N) == q for g, o in enumerate(ok)]
        return [g for g, o in enumerate(ok) if o]


def _normal_marked(G: ConcreteGroup, name: str) -> frozenset:
    if name not in G.marked:
        raise ValueError(f"{G.name} has no marked subgroup {name!r}")
    N = G.marked[name]
    for g in range(G.order):
        gi = int(G.inv[g])
        if any(G.mul(G.mul(gi, n), g) not in N for n in N):
            # membership would not be conjugation invariant
            raise ValueError(f"marked subgroup {name!r} of {G.name} is not normal")
    return N


def _order_mod(G: ConcreteGroup, g: int, N: frozenset) -> int:
    k, x = 1, g
    while x not in N:
        x = G.mul(x, g)
        k += 1
    return k


@dataclass(frozen=True)
class Homomorphism:
    source: Presentation
    target: ConcreteGroup
    images: dict

    def __call__(self, w) -> int:
        return evaluate(w, self.images, self.target)

    def is_valid(self) -> bool:
        return all(self(r) == 0 for r in self.source.relators)

    def is_surjective(self) -> bool:
        return len(generated_subgroup(self.target, self.images.values())) == self.target.order

    def key(self) -> tuple:
        return tuple(self.images[g] for g in self.source.generators)

    def lines(self) -> list[str]:
        return [f"{g} -> {self.target.names[self.images[g]]}" for g in self.source.generators]


def evaluate(w, images: dict, G: ConcreteGroup) -> int:
    if isinstance(w, str):
        w = Word.parse(w)
    x = 0
    for g, e in w.syllables:
        x = G.mul(x, G.power(images[g], e))
    return x


def _check_guards(P: Presentation, G: ConcreteGroup) -> None:
    if len(P.generators) > MAX_SEARCH_GENERATORS:
        raise SearchTooLarge("search space too large; simplify first")
    if G.order > max_group_order():
        raise SearchTooLarge(f"search space too large; |{G.name}| = {G.order} exceeds the order guard")


def _search(P: Presentation, G: ConcreteGroup, constraints: Sequence[MeridianConstraint] = (),
            epi: bool = False, accept: Callable[[dict], bool] | None = None,
            limit: int | None = None) -> list[Homomorphism]:
    _check_guards(P, G)
    gens = P.generators
    pos = {g: i for i, g in enumerate(gens)}
    candidates = [list(range(G.order)) for _ in gens]
    for c in constraints:
        if c.generator not in pos:
            raise ValueError(f"constraint on unknown generator {c.generator!r}")
        allowed = set(c.allowed(G))
        i = pos[c.generator]
        candidates[i] = [g for g in candidates[i] if g in allowed]

    # relators checked at the position of their last-assigned generator
    checks: list[list] = [[] for _ in gens]
    for r in P.relators:
        code = [(pos[g], e) for g, e in r.syllables]
        if not code:
            continue  # the empty relator holds everywhere
        checks[max(i for i, _ in code)].append(code)

    if G.order <= 4096:
        tbl = G.table.tolist()
        mul = lambda a, b: tbl[a][b]  # noqa: E731
    else:
        mul = G.mul
    powers: dict = {}

    def power(a, e):
        key = (a, e)
        v = powers.get(key)
        if v is None:
            v = powers[key] = G.power(a, e)
        return v

    images = [0] * len(gens)
    found: list[Homomorphism] = []

    def rec(i):
        if i == len(gens):
            imgs = dict(zip(gens, images))
            if epi and len(generated_subgroup(G, images)) != G.order:
                return False
            if accept is not None and not accept(imgs):
                return False
            found.append(Homomorphism(P, G, imgs))
            return limit is not None and len(found) >= limit
        for a in candidates[i]:
            images[i] = a
            ok = True
            for code in checks[i]:
                x = 0
                for j, e in code:
                    x = mul(x, power(images[j], e))
                if x:
                    ok = False
                    break
            if ok and rec(i + 1):
                return True
        return False

    rec(0)
    return found


def homomorphisms(P: Presentation, G: ConcreteGroup,
                  constraints: Sequence[MeridianConstraint] = ()) -> list[Homomorphism]:
    return _search(P, G, constraints)


def epimorphisms(P: Presentation, G: ConcreteGroup,
                 constraints: Sequence[MeridianConstraint] = ()) -> list[Homomorphism]:
    return _search(P, G, constraints, epi=True)


def fingerprint(P: Presentation, battery: Iterable[ConcreteGroup]) -> list[tuple[int, int]]:
    out = []
    for G in battery:
        homs = _search(P, G)
        epis = sum(1 for h in homs if h.is_surjective())
        out.append((len(homs), epis))
    return out


@dataclass(frozen=True)
class Verdict:
    distinguished_by: ConcreteGroup | None
    left: list
    right: list

    @property
    def inconclusive(self) -> bool:
        return self.distinguished_by is None


def distinguish(P1: Presentation, P2: Presentation, battery: Sequence[ConcreteGroup]) -> Verdict:
    """First battery group on which hom/epi counts differ. Never claims isomorphism."""
    left, right = [], []
    for G in battery:
        a, b = fingerprint(P1, [G])[0], fingerprint(P2, [G])[0]
        left.append(a)
        right.append(b)
        if a != b:
            return Verdict(G, left, right)
    return Verdict(None, left, right)


@dataclass(frozen=True)
class CoverResult:
    exists: bool
    witness: Homomorphism | None
    target: ConcreteGroup

    def __bool__(self) -> bool:
        return self.exists


def _check_classes(P: Presentation, line_gens, curve_gen) -> None:
    for g in line_gens:
        if not P.classes.get(g, "").startswith("line"):
            raise ValueError(f"generator {g!r} is not labelled as a line meridian")
    if not P.classes.get(curve_gen, "").startswith("curve"):
        raise ValueError(f"generator {curve_gen!r} is not labelled as a curve meridian")


def dihedral_cover_test(P: Presentation, line_gens: Iterable[str], curve_gen: str,
                        n: int) -> CoverResult:
    """Is there an epimorphism onto D_2n sending lines to reflections and D to an order-n rotation?"""
    if n < 3:
        raise ValueError("n must be >= 3")
    line_gens = list(line_gens)
    _check_classes(P, line_gens, curve_gen)
    G = dihedral(n)
    cons = [MeridianConstraint(g, order=2, not_in_subgroup="rotations") for g in line_gens]
    cons.append(MeridianConstraint(curve_gen, order=n, in_subgroup="rotations"))
    found = _search(P, G, cons, epi=True, limit=1)
    return CoverResult(bool(found), found[0] if found else None, G)


def gk_cover_test(P: Presentation, line_gens: Iterable[str], curve_gen: str, k: int) -> CoverResult:
    """Is there an epimorphism onto G(k) with lines of order k mod H(k) and D an involution in H(k)?"""
    if k < 3:
        raise ValueError("k must be >= 3")
    line_gens = list(line_gens)
    _check_classes(P, line_gens, curve_gen)
    G = gk(k)
    cons = [MeridianConstraint(g, quotient_order=("H(k)", k)) for g in line_gens]
    cons.append(MeridianConstraint(curve_gen, order=2, in_subgroup="H(k)"))
    found = _search(P, G, cons, epi=True, limit=1)
    return CoverResult(bool(found), found[0] if found else None, G)


@dataclass(frozen=True)
class Refutation:
    refuted_by: ConcreteGroup | None
    witness: Homomorphism | None

    @property
    def refuted(self) -> bool:
        return self.refuted_by is not None


def refute_consequence(base_relators: Iterable, candidate, battery: Sequence[ConcreteGroup],
                       generators: Sequence[str] | None = None) -> Refutation:
    """Look for a finite quotient killing ``base_relators`` but not ``candidate``.

    A witness proves ``candidate`` is outside the normal closure of the base
    relators. Failing to find one proves nothing.
    """
    base = [Word.parse(r) if isinstance(r, str) else r for r in base_relators]
    cand = Word.parse(candidate) if isinstance(candidate, str) else candidate
    if generators is None:
        names = set(cand.generators())
        for r in base:
            names |= r.generators()
        generators = sorted(names)
    P = Presentation(tuple(generators), tuple(base))
    for G in battery:
        found = _search(P, G, accept=lambda imgs: evaluate(cand, imgs, G) != 0, limit=1)
        if found:
            return Refutation(G, found[0])
    return Refutation(None, None)
