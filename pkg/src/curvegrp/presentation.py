"""Finitely presented groups.

A :class:`Presentation` stores its relators in a canonical cyclic form, so two
presentations that differ only by rotating, inverting or repeating relators
compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import IncompleteConjugationTable
from .freegroup import NAME_RE, Word, commutator
from .smith import snf

__all__ = [
    "Presentation",
    "AbelianInvariants",
    "BasisChange",
    "canonical_relator",
    "add_relator",
    "kill_generator",
    "tietze_simplify",
    "tietze_with_substitutions",
    "change_basis",
    "rewrite_conjugations",
    "abelianization",
    "consequence_by_substitution",
    "is_central_by_relators",
    "format_presentation",
    "parse_presentation",
    "snf",
]

MAX_TIETZE_MOVES = 10_000
MAX_GROWTH = 4


def _letter_key(letter):
    g, s = letter
    return (g, 0 if s > 0 else 1)


def _rotations(letters: list):
    for i in range(len(letters)):
        yield letters[i:] + letters[:i]


def canonical_relator(w: Word) -> Word:
    """Least rotation of the cyclic reduction of ``w`` or of its inverse."""
    w = w.cyclic_reduce()
    if not w:
        return w
    best = None
    for cand in (list(w.letters()), list(w.inverse().letters())):
        for rot in _rotations(cand):
            key = [_letter_key(x) for x in rot]
            if best is None or key < best[0]:
                best = (key, rot)
    return Word.from_syllables(best[1])


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    classes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generators in {gens}")
        for g in gens:
            if not NAME_RE.match(g):
                raise ValueError(f"invalid generator name {g!r}")
        allowed = set(gens)
        rels, seen = [], set()
        for r in self.relators:
            if isinstance(r, str):
                r = Word.parse(r)
            extra = r.generators() - allowed
            if extra:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(extra)}")
            c = canonical_relator(r)
            if c not in seen:
                seen.add(c)
                rels.append(c)
        classes = dict(self.classes)
        for g in classes:
            if g not in allowed:
                raise ValueError(f"class assigned to unknown generator {g!r}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))
        object.__setattr__(self, "classes", classes)

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"

    def relator_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def gens_of_class(self, prefix: str) -> list[str]:
        return [g for g in self.generators if self.classes.get(g, "").startswith(prefix)]

    def with_relators(self, relators: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, tuple(relators), self.classes)


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion {t} is not a divisibility chain")
        if any(d < 2 for d in t):
            raise ValueError("torsion coefficients must be >= 2")
        object.__setattr__(self, "torsion", t)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank:
            parts.insert(0, "Z" if self.rank == 1 else f"Z^{self.rank}")
        return " x ".join(parts) if parts else "0"


# -- elementary operations ---------------------------------------------------

def add_relator(P: Presentation, w) -> Presentation:
    if isinstance(w, str):
        w = Word.parse(w)
    return P.with_relators(P.relators + (w,))


def _eliminate(P: Presentation, g: str, image: Word, drop=None) -> Presentation:
    sub = {g: image}
    rels = [r.substitute(sub) for i, r in enumerate(P.relators) if i != drop]
    gens = tuple(x for x in P.generators if x != g)
    classes = {k: v for k, v in P.classes.items() if k != g}
    return Presentation(gens, tuple(rels), classes)


def kill_generator(P: Presentation, g: str) -> Presentation:
    """Adjoin the relator ``g`` and eliminate ``g`` (it becomes the identity)."""
    if g not in P.generators:
        raise ValueError(f"unknown generator {g!r}")
    return _eliminate(P, g, Word())


# -- Tietze simplification -----------------------------------------------------

def _solve_for(r: Word, g: str) -> Word | None:
    """If ``g`` occurs exactly once in ``r`` with exponent +-1, return the word it equals."""
    letters = list(r.letters())
    pos = [i for i, (h, _) in enumerate(letters) if h == g]
    if len(pos) != 1:
        return None
    i = pos[0]
    sign = letters[i][1]
    rest = Word.from_syllables(letters[i + 1:] + letters[:i])
    # g^sign * rest = 1
    return rest.inverse() if sign > 0 else rest


def _shorten_by(r: Word, s: Word) -> Word | None:
    """Replace a piece of ``r`` covering more than half of a cyclic conjugate of ``s^+-1``."""
    rl = list(r.letters())
    n = len(rl)
    sl = list(s.letters())
    m = len(sl)
    if n == 0 or m == 0:
        return None
    for cand in (sl, list(s.inverse().letters())):
        for srot in _rotations(cand):
            for p in range(n):
                L = 0
                while L < min(n, m) and rl[(p + L) % n] == srot[L]:
                    L += 1
                if 2 * L > m:
                    tail = [rl[(p + L + i) % n] for i in range(n - L)]
                    repl = Word.from_syllables(srot[L:]).inverse()
                    return repl * Word.from_syllables(tail)
    return None


def tietze_with_substitutions(P: Presentation, keep: Iterable[str] = (),
                              max_moves: int = MAX_TIETZE_MOVES):
    """Tietze-simplify ``P`` and also return the eliminations performed.

    Returns ``(Q, subs)`` where ``subs`` is an ordered list of
    ``(generator, image)`` pairs; applying them in order to a word over ``P``
    expresses it over ``Q``.
    """
    keep = set(keep)
    subs: list[tuple[str, Word]] = []
    moves = 0
    while moves < max_moves:
        rels = [r for r in P.relators if r]
        if len(rels) != len(P.relators):
            P = P.with_relators(rels)
            moves += 1
            continue
        done = False
        total = P.relator_length()
        # later generators are eliminated first, so earlier ones survive
        for g in reversed(P.generators):
            if g in keep:
                continue
            for idx, r in enumerate(P.relators):
                image = _solve_for(r, g)
                if image is None:
                    continue
                Q = _eliminate(P, g, image, drop=idx)
                if total and Q.relator_length() > MAX_GROWTH * total:
                    continue
                subs.append((g, image))
                P = Q
                done = True
                break
            if done:
                break
        if not done:
            for i, r in enumerate(P.relators):
                for j, s in enumerate(P.relators):
                    if i == j or len(s) > 2 * len(r):
                        continue
                    short = _shorten_by(r, s)
                    if short is not None:
                        rels = list(P.relators)
                        rels[i] = short
                        P = P.with_relators(rels)
                        done = True
                        break
                if done:
                    break
        if not done:
            break
        moves += 1
    return P, subs


def tietze_simplify(P: Presentation, keep: Iterable[str] = (),
                    max_moves: int = MAX_TIETZE_MOVES) -> Presentation:
    """Simplify by Tietze moves until nothing applies.

    Moves, tried in this order: drop trivial relators; eliminate a generator
    (not in ``keep``) that occurs exactly once in some relator; shorten a
    relator by a piece longer than half of another relator. Generators are
    scanned from the last declared one backwards, relators in list order.
    """
    return tietze_with_substitutions(P, keep, max_moves)[0]


# -- change of basis -------------------------------------------------------------

@dataclass(frozen=True)
class BasisChange:
    presentation: Presentation
    to_new: dict  # old generator -> word over the new generators
    to_old: dict  # new generator -> word over the old generators


def change_basis(P: Presentation, new: str, word, replace: str | None = None) -> BasisChange:
    """Introduce ``new := word`` and drop a generator it can be solved for.

    The dropped generator is ``replace`` if given, otherwise the first
    generator of ``word`` that occurs in it exactly once with exponent +-1.
    """
    if isinstance(word, str):
        word = Word.parse(word)
    extra = word.generators() - set(P.generators)
    if extra:
        raise ValueError(f"substitution uses unknown generators {sorted(extra)}")
    letters = list(word.letters())
    candidates = [h for h, _ in letters if sum(1 for x, _ in letters if x == h) == 1]
    if replace is not None:
        if replace not in candidates:
            raise ValueError(f"cannot solve {new} := {word} for {replace!r}")
        h = replace
    elif candidates:
        h = candidates[0]
    else:
        raise ValueError(f"substitution {new} := {word} is not invertible")
    if new != h and new in P.generators:
        raise ValueError(f"generator {new!r} already exists")
    i = next(k for k, (x, _) in enumerate(letters) if x == h)
    eps = letters[i][1]
    u = Word.from_syllables(letters[:i])
    v = Word.from_syllables(letters[i + 1:])
    solved = u.inverse() * Word.gen(new) * v.inverse()
    if eps < 0:
        solved = solved.inverse()
    if new == h:
        # h := u h v; rename through a temporary to keep substitution simultaneous
        tmp = "tmp"
        while tmp in P.generators:
            tmp += "_"
        solved = solved.substitute({new: Word.gen(tmp)})
        rels = [r.substitute({h: solved}).substitute({tmp: Word.gen(new)}) for r in P.relators]
        solved = solved.substitute({tmp: Word.gen(new)})
    else:
        rels = [r.substitute({h: solved}) for r in P.relators]
    gens = tuple(new if x == h else x for x in P.generators)
    classes = {k: v for k, v in P.classes.items() if k != h}
    Q = Presentation(gens, tuple(rels), classes)
    return BasisChange(Q, {h: solved}, {new: word})


# -- consequences ------------------------------------------------------------------

def _conjugation_rules(P: Presentation, outer: str):
    phi, psi = {}, {}
    for r in P.relators:
        for cand in (list(r.letters()), list(r.inverse().letters())):
            for rot in _rotations(cand):
                if len(rot) < 3 or rot[0][0] != outer or rot[2][0] != outer:
                    continue
                m, s = rot[1]
                if m == outer or s < 0 or rot[0][1] != -rot[2][1]:
                    continue
                rest = rot[3:]
                if any(x == outer for x, _ in rest):
                    continue
                target = phi if rot[0][1] < 0 else psi
                target.setdefault(m, Word.from_syllables(rest).inverse())
    return phi, psi


def _apply_rules(w: Word, rules: dict, times: int) -> Word:
    for _ in range(times):
        missing = w.generators() - set(rules)
        if missing:
            raise IncompleteConjugationTable(
                f"incomplete conjugation table: no rule for {sorted(missing)}")
        w = w.substitute(rules)
    return w


def _push_right(w: Word, outer: str, phi: dict, psi: dict) -> Word:
    u, k = Word(), 0
    for g, s in w.letters():
        if g == outer:
            k += s
            continue
        x = Word.gen(g, s)
        if k < 0:
            x = _apply_rules(x, phi, -k)
        elif k > 0:
            x = _apply_rules(x, psi, k)
        u = u * x
    return u * Word.gen(outer, k)


def rewrite_conjugations(P: Presentation, w, outer: str) -> Word:
    """Normal form of ``w`` after moving every ``outer`` letter past the others.

    Uses relators of shape ``outer^-1 m outer = v`` (and ``outer m outer^-1 = v``
    when present). A result equal to the identity proves ``w`` lies in the
    normal closure of the relators.
    """
    if isinstance(w, str):
        w = Word.parse(w)
    phi, psi = _conjugation_rules(P, outer)
    try:
        return _push_right(w, outer, phi, psi)
    except IncompleteConjugationTable:
        # w = 1 iff w^-1 = 1; the inverse needs the opposite rule family
        return _push_right(w.inverse(), outer, phi, psi).inverse()


def consequence_by_substitution(P: Presentation, w) -> bool:
    """True if Tietze eliminations of ``P`` turn ``w`` into the identity or a relator."""
    if isinstance(w, str):
        w = Word.parse(w)
    Q, subs = tietze_with_substitutions(P)
    for g, image in subs:
        w = w.substitute({g: image})
    c = canonical_relator(w)
    return not c or c in Q.relators


def is_central_by_relators(P: Presentation, u) -> bool:
    """Sufficient check that ``u`` is central: each ``[u, g]`` is trivial or a relator."""
    if isinstance(u, str):
        u = Word.parse(u)
    for g in P.generators:
        c = canonical_relator(commutator(u, Word.gen(g)))
        if c and c not in P.relators:
            return False
    return True


# -- abelianization ------------------------------------------------------------------

def relation_matrix(P: Presentation) -> np.ndarray:
    M = np.zeros((len(P.relators), len(P.generators)), dtype=np.int64)
    for i, r in enumerate(P.relators):
        for j, g in enumerate(P.generators):
            M[i, j] = r.exponent_sum(g)
    return M


def abelianization(P: Presentation) -> AbelianInvariants:
    diag, _, _ = snf(relation_matrix(P))
    nonzero = [d for d in diag if d]
    return AbelianInvariants(len(P.generators) - len(nonzero), tuple(d for d in nonzero if d >= 2))


# -- text format ------------------------------------------------------------------------

def format_presentation(P: Presentation) -> str:
    lines = ["generators: " + " ".join(P.generators)]
    for g in P.generators:
        if g in P.classes:
            lines.append(f"class {g} = {P.classes[g]}")
    lines.extend(f"relator: {r}" for r in P.relators)
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    gens = None
    classes, rels = {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("generators:"):
            if gens is not None:
                raise ValueError(f"line {lineno}: generators declared twice")
            gens = line[len("generators:"):].split()
        elif line.startswith("relator:"):
            rels.append(Word.parse(line[len("relator:"):]))
        elif line.startswith("class "):
            name, sep, label = line[len("class "):].partition("=")
            if not sep or not label.strip():
                raise ValueError(f"line {lineno}: expected 'class <gen> = <label>'")
            classes[name.strip()] = label.strip()
        else:
            raise ValueError(f"line {lineno}: unrecognised line {raw!r}")
    if gens is None:
        raise ValueError("missing 'generators:' line")
    return Presentation(tuple(gens), tuple(rels), classes)
