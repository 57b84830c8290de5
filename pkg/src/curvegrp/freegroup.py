"""Free-group words and the Artin braid action on them.

Words are immutable and always freely reduced. Internally a word is a tuple
of syllables ``(generator, exponent)`` with nonzero exponents and no two
adjacent syllables on the same generator.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Word",
    "BraidWord",
    "reduce",
    "multiply",
    "invert",
    "conjugate",
    "commutator",
    "exponent_sum",
    "artin_act",
    "strand_names",
]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")
_BRAID_TOKEN_RE = re.compile(r"s(\d+)(?:\^(-?\d+))?\Z")


def _push(stack: list, gen: str, exp: int) -> None:
    if exp == 0:
        return
    if stack and stack[-1][0] == gen:
        e = stack.pop()[1] + exp
        if e:
            stack.append((gen, e))
    else:
        stack.append((gen, exp))


class Word:
    """A freely reduced word in a free group.

    Build one with :meth:`parse`, :meth:`gen` or :func:`reduce`; the
    constructor expects syllables that are already reduced.
    """

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: Iterable[tuple[str, int]] = ()):
        self.syllables: tuple[tuple[str, int], ...] = tuple(syllables)
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_syllables(cls, syllables: Iterable[tuple[str, int]]) -> "Word":
        stack: list = []
        for g, e in syllables:
            _push(stack, g, int(e))
        return cls(stack)

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        if not NAME_RE.match(name):
            raise ValueError(f"invalid generator name {name!r}")
        return cls([(name, exp)] if exp else [])

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse whitespace-separated tokens ``g``, ``g^-1`` or ``g^k``.

        The token ``1`` (or an empty string) denotes the identity.
        """
        syl = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _TOKEN_RE.match(tok)
            if not m:
                raise ValueError(f"bad word token {tok!r}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if exp == 0:
                raise ValueError(f"zero exponent in token {tok!r}")
            syl.append((m.group(1), exp))
        return cls.from_syllables(syl)

    # -- basic queries ------------------------------------------------
    def letters(self) -> Iterator[tuple[str, int]]:
        """Yield the word letter by letter as ``(generator, +1 | -1)``."""
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield (g, s)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def generators(self) -> set[str]:
        return {g for g, _ in self.syllables}

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = Word.parse(other)
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    # -- arithmetic ---------------------------------------------------
    def __mul__(self, other: "Word") -> "Word":
        if not other.syllables:
            return self
        if not self.syllables:
            return other
        stack = list(self.syllables)
        for g, e in other.syllables:
            _push(stack, g, e)
        return Word(stack)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate(self, g: "Word") -> "Word":
        """Return ``g^-1 * self * g``."""
        return g.inverse() * self * g

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def substitute(self, images: dict[str, "Word"]) -> "Word":
        """Apply the endomorphism given by ``images``; unlisted generators are fixed."""
        out: list = []
        for g, e in self.syllables:
            img = images.get(g)
            if img is None:
                _push(out, g, e)
                continue
            piece = img.syllables if e > 0 else img.inverse().syllables
            for _ in range(abs(e)):
                for h, f in piece:
                    _push(out, h, f)
        return Word(out)

    def cyclic_reduce(self) -> "Word":
        syl = list(self.syllables)
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            g = syl[0][0]
            e = syl[0][1] + syl[-1][1]
            syl = syl[1:-1]
            if e:
                if syl:
                    syl = [(g, e)] + syl
                else:
                    syl = [(g, e)]
        return Word(syl)


def reduce(letters: Iterable[tuple[str, int]] | str) -> Word:
    """Freely reduce a raw letter sequence (or parse a text word)."""
    if isinstance(letters, str):
        return Word.parse(letters)
    return Word.from_syllables(letters)


def _as_word(w) -> Word:
    return Word.parse(w) if isinstance(w, str) else w


def multiply(w1, w2) -> Word:
    return _as_word(w1) * _as_word(w2)


def invert(w) -> Word:
    return _as_word(w).inverse()


def conjugate(w, g) -> Word:
    """``g^-1 w g``, matching the exponential notation ``w^g``."""
    return _as_word(w).conjugate(_as_word(g))


def commutator(u, v) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    u, v = _as_word(u), _as_word(v)
    return u.inverse() * v.inverse() * u * v


def exponent_sum(w, gen: str) -> int:
    return _as_word(w).exponent_sum(gen)


class BraidWord:
    """A word in the Artin generators ``s1 .. s(n-1)`` of the braid group B_n."""

    __slots__ = ("strands", "letters")

    def __init__(self, strands: int, letters: Iterable[tuple[int, int]] = ()):
        if strands < 1:
            raise ValueError("braid needs at least one strand")
        letters = tuple((int(i), 1 if s > 0 else -1) for i, s in letters)
        for i, _ in letters:
            if not 1 <= i <= strands - 1:
                raise ValueError(f"braid index {i} out of range for {strands} strands")
        self.strands = strands
        self.letters = letters

    @classmethod
    def parse(cls, strands: int, text: str) -> "BraidWord":
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _BRAID_TOKEN_RE.match(tok)
            if not m:
                raise ValueError(f"bad braid token {tok!r}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if exp == 0:
                raise ValueError(f"zero exponent in token {tok!r}")
            letters.extend([(int(m.group(1)), 1 if exp > 0 else -1)] * abs(exp))
        return cls(strands, letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, [(i, -s) for i, s in reversed(self.letters)])

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BraidWord):
            return NotImplemented
        return self.strands == other.strands and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.strands, self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        # run-length encode for display
        out, i = [], 0
        while i < len(self.letters):
            j = i
            while j < len(self.letters) and self.letters[j] == self.letters[i]:
                j += 1
            idx, s = self.letters[i]
            e = s * (j - i)
            out.append(f"s{idx}" if e == 1 else f"s{idx}^{e}")
            i = j
        return " ".join(out)

    def __repr__(self) -> str:
        return f"BraidWord({self.strands}, {str(self)!r})"


def strand_names(n: int, prefix: str = "m") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def _generator_images(i: int, sign: int, names: Sequence[str]) -> dict[str, Word]:
    xi, xj = Word.gen(names[i - 1]), Word.gen(names[i])
    if sign > 0:
        # x_i -> x_{i+1},  x_{i+1} -> x_{i+1} x_i x_{i+1}^-1
        return {names[i - 1]: xj, names[i]: xj * xi * xj.inverse()}
    # inverse automorphism
    return {names[i - 1]: xi.inverse() * xj * xi, names[i]: xi}


def artin_act(braid: BraidWord, word, meridians: Sequence[str] | None = None) -> Word:
    """Right action of ``braid`` on a word in the strand meridians.

    Letters of the braid act left to right. Under ``s_i`` the meridian
    ``x_i`` goes to ``x_{i+1}`` and ``x_{i+1}`` to ``x_{i+1} x_i x_{i+1}^-1``,
    so the decreasing product ``x_n ... x_1`` is fixed.
    """
    word = _as_word(word)
    names = tuple(meridians) if meridians is not None else strand_names(braid.strands)
    if len(names) != braid.strands:
        raise ValueError(f"expected {braid.strands} meridian names, got {len(names)}")
    allowed = set(names)
    for g in word.generators():
        if g not in allowed:
            raise ValueError(f"{g!r} is not a strand meridian")
    cache: dict = {}
    for i, s in braid.letters:
        images = cache.get((i, s))
        if images is None:
            images = cache[(i, s)] = _generator_images(i, s, names)
        word = word.substitute(images)
    return word
