"""Concrete finite groups with a total multiplication.

Elements are the integers ``0 .. order-1`` with ``0`` the identity. Small
groups carry a dense multiplication table; larger ones multiply through a
function and build the table only on request.
"""
from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import TableTooLarge

__all__ = [
    "ConcreteGroup",
    "SignedShift",
    "dihedral",
    "cyclic",
    "gk",
    "gk_matrix",
    "element_order",
    "conjugacy_classes",
    "quotient_map",
    "generated_subgroup",
    "group_from_name",
    "parse_battery",
    "MAX_GK_ORDER",
]

DENSE_LIMIT = 4096
MAX_GK_ORDER = 24_576
FULL_ASSOC_CHECK = 64


class ConcreteGroup:
    """A finite group on ``range(order)``.

    ``mul`` is either a dense ``order x order`` integer table or a callable
    ``(a, b) -> a*b``. ``marked`` names distinguished subgroups and ``gens``
    names distinguished elements (e.g. ``sigma``, ``tau1``).
    """

    def __init__(self, name: str, order: int, mul, names: Sequence[str] | None = None,
                 marked: Mapping[str, Iterable[int]] | None = None,
                 gens: Mapping[str, int] | None = None, check: bool = True):
        self.name = name
        self.order = order
        if callable(mul):
            self._fn = mul
            self._table = None
        else:
            self._table = np.asarray(mul)
            self._fn = None
        self.names = list(names) if names is not None else [f"e{i}" for i in range(order)]
        self.marked = {k: frozenset(v) for k, v in (marked or {}).items()}
        self.gens = dict(gens or {})
        if self._table is not None:
            hits = self._table == 0
            if not hits.any(axis=1).all():
                raise ValueError(f"{name}: some element has no inverse")
            inv = np.argmax(hits, axis=1).astype(np.int64)
        else:
            inv = np.zeros(order, dtype=np.int64)
            for a in range(order):
                x, prev = a, 0
                for _ in range(order):
                    if x == 0:
                        break
                    prev, x = x, self._fn(x, a)
                else:
                    raise ValueError(f"{name}: element {a} has no inverse")
                inv[a] = prev
        self.inv = inv
        if check:
            self.check_axioms()

    def __repr__(self) -> str:
        return f"ConcreteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        return self._fn(a, b)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > DENSE_LIMIT:
                raise TableTooLarge(f"{self.name}: dense table of order {self.order} not built")
            n = self.order
            dtype = np.int16 if n < 2**15 else np.int32
            t = np.empty((n, n), dtype=dtype)
            for a in range(n):
                for b in range(n):
                    t[a, b] = self._fn(a, b)
            self._table = t
        return self._table

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = int(self.inv[a]), -e
        out = 0
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a)
                   for a in range(self.order) for b in range(a + 1, self.order))

    def center(self) -> frozenset:
        return frozenset(z for z in range(self.order)
                         if all(self.mul(z, g) == self.mul(g, z) for g in range(self.order)))

    def check_axioms(self, samples: int = 2000, seed: int = 0) -> None:
        n = self.order
        for a in range(n):
            if self.mul(0, a) != a or self.mul(a, 0) != a:
                raise ValueError(f"{self.name}: 0 is not an identity")
            if self.mul(int(self.inv[a]), a) != 0:
                raise ValueError(f"{self.name}: bad inverse for {a}")
        if n <= FULL_ASSOC_CHECK:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError(f"{self.name}: not associative at {(a, b, c)}")
        for key, sub in self.marked.items():
            if len(sub) <= FULL_ASSOC_CHECK:
                pairs = ((a, b) for a in sub for b in sub)
            else:
                rng, members = random.Random(seed), sorted(sub)
                pairs = ((rng.choice(members), rng.choice(members)) for _ in range(samples))
            if 0 not in sub or any(self.mul(a, b) not in sub for a, b in pairs):
                raise ValueError(f"{self.name}: marked subset {key!r} is not a subgroup")


def element_order(G: ConcreteGroup, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = G.mul(x, g)
        k += 1
    return k


def conjugacy_classes(G: ConcreteGroup) -> list[list[int]]:
    seen = [False] * G.order
    classes = []
    for a in range(G.order):
        if seen[a]:
            continue
        cls = sorted({G.mul(G.mul(int(G.inv[g]), a), g) for g in range(G.order)})
        for c in cls:
            seen[c] = True
        classes.append(cls)
    return classes


def generated_subgroup(G: ConcreteGroup, elements: Iterable[int]) -> set[int]:
    gens = [g for g in set(elements) if g != 0]
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = G.mul(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def quotient_map(G: ConcreteGroup, N) -> tuple[ConcreteGroup, np.ndarray]:
    """Quotient by a normal subgroup, given as a marked name or an element set."""
    key = N if isinstance(N, str) else None
    Nset = G.marked[N] if isinstance(N, str) else frozenset(N)
    if 0 not in Nset or any(G.mul(a, b) not in Nset for a in Nset for b in Nset):
        raise ValueError("not a subgroup")
    for g in range(G.order):
        gi = int(G.inv[g])
        if any(G.mul(G.mul(gi, n), g) not in Nset for n in Nset):
            raise ValueError("subgroup is not normal")
    proj = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if proj[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for n in Nset:
            proj[G.mul(g, n)] = idx
    q = len(reps)
    table = np.array([[proj[G.mul(reps[i], reps[j])] for j in range(q)] for i in range(q)])
    names = [G.names[r] for r in reps]
    label = f"{G.name}/{key}" if key else f"{G.name}/N"
    return ConcreteGroup(label, q, table, names), proj


# -- cyclic and dihedral --------------------------------------------------------------

def _power_name(sym: str, j: int) -> str:
    return "" if j == 0 else (sym if j == 1 else f"{sym}^{j}")


def cyclic(n: int) -> ConcreteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    names = [_power_name("c", j) or "1" for j in range(n)]
    gens = {"c": 1 % n}
    return ConcreteGroup(f"c{n}", n, table, names, gens=gens)


def dihedral(n: int) -> ConcreteGroup:
    """Dihedral group of order 2n: ``tau^j`` at index j, ``sigma tau^j`` at n + j."""
    if n < 2:
        raise ValueError("dihedral group needs n >= 2")
    order = 2 * n
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        s1, j1 = divmod(a, n)
        for b in range(order):
            s2, j2 = divmod(b, n)
            # tau^j sigma = sigma tau^-j
            j = ((-j1 if s2 else j1) + j2) % n
            table[a, b] = ((s1 + s2) % 2) * n + j
    names = [_power_name("t", j) or "1" for j in range(n)]
    names += [" ".join(x for x in ("s", _power_name("t", j)) if x) for j in range(n)]
    return ConcreteGroup(f"d{order}", order, table, names,
                         marked={"rotations": range(n)},
                         gens={"sigma": n, "tau": 1})


# -- G(k) --------------------------------------------------------------------------------

@dataclass(frozen=True)
class SignedShift:
    """Monomial matrix sending ``e_j`` to ``signs[j] * e_(j+shift)`` (indices mod k)."""
    shift: int
    signs: tuple[int, ...]

    def __post_init__(self):
        k = len(self.signs)
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")
        if self.signs.count(-1) % 2:
            raise ValueError("sign vector must have even weight")
        object.__setattr__(self, "shift", self.shift % k)

    @property
    def k(self) -> int:
        return len(self.signs)

    def matrix(self) -> np.ndarray:
        k = self.k
        M = np.zeros((k, k), dtype=np.int64)
        for j, s in enumerate(self.signs):
            M[(j + self.shift) % k, j] = s
        return M

    @classmethod
    def from_matrix(cls, M: np.ndarray) -> "SignedShift":
        k = M.shape[0]
        rows = np.argmax(M != 0, axis=0).tolist()
        shift = rows[0]
        if any(rows[j] != (j + shift) % k for j in range(k)):
            raise ValueError("matrix is not a signed cyclic shift")
        return cls(shift, tuple(int(M[rows[j], j]) for j in range(k)))

    def mask(self) -> int:
        return sum(1 << j for j, s in enumerate(self.signs) if s < 0)


def gk_matrix(k: int, which: str) -> np.ndarray:
    """The generator matrices ``sigma`` and ``tau1`` of the faithful k-dim representation."""
    if which == "sigma":
        M = np.zeros((k, k), dtype=np.int64)
        for j in range(k):
            M[(j + 1) % k, j] = 1
        return M
    if which == "tau1":
        return np.diag([-1, -1] + [1] * (k - 2)).astype(np.int64)
    raise ValueError(which)


def gk(k: int) -> ConcreteGroup:
    """The group G(k) of order ``k * 2^(k-1)``, built by closing its generator matrices.

    Elements are numbered in breadth-first discovery order from the identity
    with generators ordered ``sigma, tau1, .., tau(k-1)`` acting on the right.
    The marked subgroup ``H(k)`` consists of the diagonal (shift 0) elements.
    """
    if k < 3:
        raise ValueError("G(k) needs k >= 3")
    if k * 2 ** (k - 1) > MAX_GK_ORDER:
        raise TableTooLarge("table too large")
    sigma = gk_matrix(k, "sigma")
    sigma_inv = sigma.T
    taus = [gk_matrix(k, "tau1")]
    for _ in range(k - 2):
        taus.append(sigma @ taus[-1] @ sigma_inv)
    gen_mats = [sigma] + taus

    ident = np.eye(k, dtype=np.int64)
    codes = {ident.tobytes(): 0}
    elems = [SignedShift.from_matrix(ident)]
    mats = [ident]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g in gen_mats:
            M = mats[i] @ g
            key = M.tobytes()
            if key not in codes:
                codes[key] = len(mats)
                mats.append(M)
                elems.append(SignedShift.from_matrix(M))
                queue.append(codes[key])
    order = len(mats)
    full = (1 << k) - 1
    shifts = np.array([e.shift for e in elems], dtype=np.int64)
    masks = np.array([e.mask() for e in elems], dtype=np.int64)
    index = np.full((k, 1 << k), -1, dtype=np.int32)
    index[shifts, masks] = np.arange(order)

    # (M1 M2) e_j = eps2_j * eps1_(j+s2) * e_(j+s1+s2): rotate the sign mask of
    # the left factor by the shift of the right factor
    def _product(sa, ma, sb, mb):
        rot = ((ma >> sb) | (ma << (k - sb))) & full
        return index[(sa + sb) % k, mb ^ rot]

    def mul(a: int, b: int) -> int:
        return int(_product(shifts[a], masks[a], shifts[b], masks[b]))

    table = None
    if order <= DENSE_LIMIT:
        table = _product(shifts[:, None], masks[:, None], shifts[None, :], masks[None, :])
    names = [_gk_name(e) for e in elems]
    gens = {"sigma": codes[sigma.tobytes()]}
    for i, t in enumerate(taus, 1):
        gens[f"tau{i}"] = codes[t.tobytes()]
    G = ConcreteGroup(f"g{k}", order, table if table is not None else mul, names,
                      marked={"H(k)": np.flatnonzero(shifts == 0).tolist()},
                      gens=gens)
    G.elements = elems
    return G


def _gk_name(e: SignedShift) -> str:
    neg = "".join(str(j + 1) for j, s in enumerate(e.signs) if s < 0)
    parts = []
    if e.shift:
        parts.append("s" if e.shift == 1 else f"s^{e.shift}")
    if neg:
        parts.append(f"d{neg}")
    return " ".join(parts) if parts else "1"


# -- names -------------------------------------------------------------------------------

_NAME_RE = re.compile(r"([dgc])(\d+)\Z")


def group_from_name(name: str) -> ConcreteGroup:
    """``d<2n>`` dihedral of order 2n, ``g<k>`` for G(k), ``c<n>`` cyclic."""
    m = _NAME_RE.match(name.strip().lower())
    if not m:
        raise ValueError(f"unknown group name {name!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "d":
        if num % 2 or num < 4:
            raise ValueError(f"dihedral order must be even and >= 4, got {num}")
        return dihedral(num // 2)
    if kind == "g":
        return gk(num)
    return cyclic(num)


def parse_battery(text: str) -> list[ConcreteGroup]:
    return [group_from_name(t) for t in text.split(",") if t.strip()]
