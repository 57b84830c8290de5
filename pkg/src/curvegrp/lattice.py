"""Divisor classes on Hirzebruch surfaces.

``Pic(Sigma_n) = Z Delta + Z F`` with ``Delta^2 = -n``, ``Delta.F = 1`` and
``F^2 = 0``. A class remembers its surface so that mixing surfaces fails
loudly.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "DivisorClass",
    "section",
    "fiber",
    "intersect",
    "strict_transform_class",
    "pullback",
    "LemmaReport",
    "lemma_preimD_report",
    "node_count",
]


@dataclass(frozen=True)
class DivisorClass:
    surface: int
    a: int  # coefficient of the negative section
    b: int  # coefficient of the fiber

    def __post_init__(self):
        if self.surface < 0:
            raise ValueError("surface degree must be >= 0")

    def _same(self, other: "DivisorClass") -> None:
        if self.surface != other.surface:
            raise ValueError(f"classes live on different surfaces "
                             f"(Sigma_{self.surface} vs Sigma_{other.surface})")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.surface, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.surface, self.a - other.a, self.b - other.b)

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.surface, k * self.a, k * self.b)

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return intersect(self, other)
        return DivisorClass(self.surface, other * self.a, other * self.b)

    def __str__(self) -> str:
        return f"{self.a}*Delta_{self.surface} + {self.b}*F_{self.surface}"


def section(n: int) -> DivisorClass:
    return DivisorClass(n, 1, 0)


def fiber(n: int) -> DivisorClass:
    return DivisorClass(n, 0, 1)


def intersect(c1: DivisorClass, c2: DivisorClass) -> int:
    c1._same(c2)
    return -c1.surface * c1.a * c2.a + c1.a * c2.b + c2.a * c1.b


def strict_transform_class(d: int, k: int) -> DivisorClass:
    """Class on Sigma_1 of the strict transform of a degree-d curve with an ordinary (d-k)-fold point."""
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got d={d}, k={k}")
    return DivisorClass(1, k, d)


def pullback(c: DivisorClass, k: int) -> DivisorClass:
    """Pull back along the k-cyclic cover Sigma_k -> Sigma_1 branched over two fibers."""
    if k < 2:
        raise ValueError("cover degree must be >= 2")
    if c.surface != 1:
        raise ValueError("pullback expects a class on Sigma_1")
    return DivisorClass(k, c.a, k * c.b)


@dataclass(frozen=True)
class LemmaReport:
    d: int
    k: int
    component: DivisorClass
    comp_dot_f: int
    comp_dot_delta: int
    total_dot_f: int
    total_dot_delta: int

    def lines(self) -> list[tuple[str, str]]:
        return [
            ("d", str(self.d)),
            ("k", str(self.k)),
            ("componentClass", str(self.component)),
            ("compDotF", str(self.comp_dot_f)),
            ("compDotDelta", str(self.comp_dot_delta)),
            ("totalDotF", str(self.total_dot_f)),
            ("totalDotDelta", str(self.total_dot_delta)),
        ]


def lemma_preimD_report(d: int, k: int) -> LemmaReport:
    """Intersection numbers of the k components of the pulled-back curve.

    Each component is ``Delta_k + d F_k``; the k of them sum to the pullback
    of ``k Delta_1 + d F_1``. All identities are recomputed from the
    intersection form and an ``ArithmeticError`` is raised if one fails.
    """
    if not 2 <= k <= d:
        raise ValueError(f"need 2 <= k <= d, got d={d}, k={k}")
    comp = DivisorClass(k, 1, d)
    total = pullback(strict_transform_class(d, k), k)
    F, D = fiber(k), section(k)
    report = LemmaReport(d, k, comp, intersect(comp, F), intersect(comp, D),
                         intersect(total, F), intersect(total, D))
    expected = {
        "sum of components": (k * comp, total),
        "compDotF": (report.comp_dot_f, 1),
        "compDotDelta": (report.comp_dot_delta, d - k),
        "totalDotF": (report.total_dot_f, k),
        "totalDotDelta": (report.total_dot_delta, k * (d - k)),
    }
    for name, (got, want) in expected.items():
        if got != want:
            raise ArithmeticError(f"{name}: got {got}, expected {want}")
    return report


def node_count(d: int, r1: int, r2: int) -> int:
    """Number of nodes of a rational nodal type I curve of degree d with A_{2 r_i} points on the lines."""
    if d < 3 or r1 < 0 or r2 < 0:
        raise ValueError("invalid type I data")
    n = d - 2 - r1 - r2
    if n < 0:
        raise ValueError("invalid type I data")
    return n
