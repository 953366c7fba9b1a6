"""The Penrose transform along F <- G -> M.

A bundle on F (or a composition series of them) is pulled back to G,
twisted by the relative forms of G -> F, and pushed down to M.  The
resulting E1 page collapses to a complex of invariant differential operators
when it lives in a single row; summands repeated in adjacent columns are then
cancelled in favour of higher-order composite operators.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .bbw import CohomologyResult, cohomology, direct_images
from .charlib import tensor
from .errors import NotCollapsed, PenroseError
from .flagspace import BundleSum, F, G, M, validate_bundle
from .relforms import pullback_sum, relative_forms, tangent_series
from .rootsys import Weight, from_epsilon, zero


@dataclass(frozen=True)
class GradedInput:
    """Composition series of a bundle on F(n), sub first."""

    grades: tuple[BundleSum, ...]
    conjectural: bool = False

    def __post_init__(self):
        grades = tuple(self.grades)
        if not grades:
            raise PenroseError("a graded input needs at least one grade")
        space = grades[0].space
        if space.tag != "F":
            raise PenroseError(f"graded input must live on F, got {space}")
        for g in grades:
            if g.space != space:
                raise PenroseError("all grades must live on the same F(n)")
        object.__setattr__(self, "grades", grades)

    @property
    def n(self) -> int:
        return self.grades[0].space.n

    @classmethod
    def single(cls, label: Weight) -> "GradedInput":
        return cls((BundleSum.of(F(label.n), label),))

    @classmethod
    def trivial(cls, n: int) -> "GradedInput":
        return cls.single(zero(n))

    @classmethod
    def theta(cls, n: int) -> "GradedInput":
        """The holomorphic tangent bundle of F(n)."""
        return cls(tuple(tangent_series(F(n))))

    @classmethod
    def conjecture(cls, n: int = 3) -> "GradedInput":
        """The extension V proposed as the source of the more symmetric complex on CP_3."""
        if n != 3:
            raise PenroseError("the conjectured bundle V is only stated for n = 3")
        f = F(3)
        return cls(
            (BundleSum.of(f, (2, -1, 0), (-1, 1, 1)), BundleSum.of(f, (-2, 3, 0), (1, 0, 1))),
            conjectural=True,
        )

    @classmethod
    def from_json(cls, d: dict) -> "GradedInput":
        n = int(d["n"])
        grades = []
        for grade in d["grades"]:
            grades.append(BundleSum.of(F(n), *[tuple(lab) for lab in grade]))
        return cls(tuple(grades), bool(d.get("conjectural", False)))


@dataclass
class E1Page:
    n: int
    cells: dict[tuple[int, int], BundleSum] = field(default_factory=dict)

    @property
    def relative_dim(self) -> int:
        return self.n

    def cell(self, p: int, q: int) -> BundleSum:
        return self.cells.get((p, q), BundleSum(M(self.n)))

    def row(self, q: int) -> list[BundleSum]:
        return [self.cell(p, q) for p in range(self.relative_dim + 1)]

    @property
    def collapsed(self) -> bool:
        return all(q == 0 or not s for (p, q), s in self.cells.items())

    def max_q(self) -> int:
        return max([q for (p, q), s in self.cells.items() if s] or [0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, E1Page) or other.n != self.n:
            return False
        keys = {k for k, v in self.cells.items() if v} | {k for k, v in other.cells.items() if v}
        return all(self.cell(*k) == other.cell(*k) for k in keys)


def e1_page(V: GradedInput) -> E1Page:
    n = V.n
    g, m = G(n), M(n)
    acc: dict[tuple[int, int], Counter] = {}
    for grade in V.grades:
        pulled = pullback_sum(grade)
        for p in range(n + 1):
            twisted = tensor(g, relative_forms(n, p), pulled)
            for w, k in twisted.terms:
                im = direct_images(g, m, validate_bundle(g, w))
                if im is not None:
                    acc.setdefault((p, im.degree), Counter())[im.bundle.label] += k
    return E1Page(n, {key: BundleSum(m, c) for key, c in sorted(acc.items())})


# --- operators ------------------------------------------------------------------

def charge(w: Weight) -> Fraction:
    """Central U(1) charge of an M-bundle label; the form Λ^{0,1} has charge +1 and Λ^{1,0} has -1."""
    n = w.n
    return Fraction(sum((n - i) * a for i, a in enumerate(w.coeffs)), n + 1)


def holomorphic_forms_label(n: int) -> Weight:
    """Label of Λ^{1,0} on M(n)."""
    e = [0] * (n + 1)
    e[0], e[1] = -1, 1
    return from_epsilon(e)


def antiholomorphic_forms_label(n: int) -> Weight:
    """Label of Λ^{0,1} on M(n)."""
    e = [0] * (n + 1)
    e[0], e[-1] = 1, -1
    return from_epsilon(e)


@lru_cache(maxsize=None)
def _first_order_targets(source: Weight) -> tuple[frozenset, frozenset]:
    m = M(source.n)
    s = BundleSum.of(m, source)
    d = tensor(m, s, BundleSum.of(m, holomorphic_forms_label(source.n)))
    dbar = tensor(m, s, BundleSum.of(m, antiholomorphic_forms_label(source.n)))
    return frozenset(w for w, _ in d.terms), frozenset(w for w, _ in dbar.terms)


def first_order_type(source: Weight, target: Weight) -> str | None:
    """'d' or 'dbar' when an invariant first-order operator source -> target is possible, else None."""
    d, dbar = _first_order_targets(source)
    if target in dbar:
        return "dbar"
    if target in d:
        return "d"
    return None


@dataclass(frozen=True, order=True)
class Arrow:
    """An operator from a summand of column ``col`` to a summand of column ``col + 1``."""

    col: int
    source: Weight
    target: Weight
    order: int = 1

    @property
    def dbar_count(self) -> int:
        delta = charge(self.target) - charge(self.source)
        twice = self.order + delta
        if twice.denominator != 1 or twice % 2 or not 0 <= twice <= 2 * self.order:
            raise PenroseError(f"arrow {self.source} -> {self.target} of order {self.order} has inconsistent charge")
        return int(twice) // 2

    @property
    def d_count(self) -> int:
        return self.order - self.dbar_count

    @property
    def type(self) -> str:
        if self.d_count == 0:
            return "dbar"
        if self.dbar_count == 0:
            return "d"
        return "mixed"


@dataclass(frozen=True)
class Cancellation:
    col: int
    label: Weight
    mult: int = 1


@dataclass
class Complex:
    n: int
    columns: list[BundleSum]
    arrows: frozenset = frozenset()
    cohomology: CohomologyResult = field(default_factory=CohomologyResult)
    conjectural: bool = False
    cancelled: tuple[Cancellation, ...] = ()

    def ranks(self) -> list[int]:
        return [c.rank for c in self.columns]

    def euler_rank(self) -> int:
        return sum((-1) ** p * r for p, r in enumerate(self.ranks()))

    def sorted_arrows(self) -> list[Arrow]:
        return sorted(self.arrows, key=lambda a: (a.col, a.source.sort_key(), a.target.sort_key(), a.order))

    def arrows_into(self, col: int) -> list[Arrow]:
        return [a for a in self.sorted_arrows() if a.col + 1 == col]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Complex)
            and self.n == other.n
            and self.columns == other.columns
            and set(self.arrows) == set(other.arrows)
            and self.cohomology == other.cohomology
            and self.conjectural == other.conjectural
            and self._cancel_key() == other._cancel_key()
        )

    def _cancel_key(self):
        c: Counter = Counter()
        for x in self.cancelled:
            c[(x.col, x.label)] += x.mult
        return c


def first_order_arrows(columns: Sequence[BundleSum]) -> frozenset:
    out = set()
    for p in range(len(columns) - 1):
        for s, _ in columns[p].terms:
            for t, _ in columns[p + 1].terms:
                if first_order_type(s, t):
                    out.add(Arrow(p, s, t, 1))
    return frozenset(out)


def to_complex(page: E1Page, cohomology_result: CohomologyResult | None = None, conjectural: bool = False) -> Complex:
    if not page.collapsed:
        raise NotCollapsed(page)
    columns = page.row(0)
    return Complex(page.n, columns, first_order_arrows(columns), cohomology_result or CohomologyResult(), conjectural)


def cancellable(c: Complex) -> list[tuple[int, Weight]]:
    """Every (column, label) whose label also occurs in the next column."""
    out = []
    for k in range(len(c.columns) - 1):
        nxt = c.columns[k + 1].counter()
        for w, _ in c.columns[k].terms:
            if nxt[w]:
                out.append((k, w))
    return out


def cancel_step(c: Complex, k: int, w: Weight) -> Complex:
    """Remove one copy of ``w`` from columns k and k+1, splicing in composite operators."""
    left, right = c.columns[k].counter(), c.columns[k + 1].counter()
    if not left[w] or not right[w]:
        raise PenroseError(f"{w} does not occur in both columns {k} and {k + 1}")
    arrows = set(c.arrows)
    into = [a for a in arrows if a.col == k and a.target == w and a.source != w]
    out_of = [a for a in arrows if a.col == k and a.source == w and a.target != w]
    left[w] -= 1
    right[w] -= 1
    for a in into:
        for b in out_of:
            if left[a.source] and right[b.target]:
                arrows.add(Arrow(k, a.source, b.target, a.order + b.order))
    if not left[w]:
        arrows = {a for a in arrows if not (a.col == k - 1 and a.target == w) and not (a.col == k and a.source == w)}
    if not right[w]:
        arrows = {a for a in arrows if not (a.col == k and a.target == w) and not (a.col == k + 1 and a.source == w)}
    columns = list(c.columns)
    columns[k] = BundleSum(columns[k].space, left)
    columns[k + 1] = BundleSum(columns[k + 1].space, right)
    done = Counter()
    for x in c.cancelled:
        done[(x.col, x.label)] += x.mult
    done[(k, w)] += 1
    cancelled = tuple(
        Cancellation(col, lab, m) for (col, lab), m in sorted(done.items(), key=lambda t: (t[0][0], t[0][1].sort_key()))
    )
    return replace(c, columns=columns, arrows=frozenset(arrows), cancelled=cancelled)


def cancel(c: Complex) -> Complex:
    """Cancel summands repeated in adjacent columns until none remain, leftmost first."""
    while True:
        todo = cancellable(c)
        if not todo:
            return c
        c = cancel_step(c, *todo[0])


def graded_cohomology(V: GradedInput) -> CohomologyResult:
    """Cohomology of a bundle from that of its composition factors.

    The pieces add up unless some irreducible occurs in degree q for a later
    grade and in degree q + 1 for an earlier one; only then can a connecting
    map be nonzero, and the result is flagged instead of guessed.
    """
    f = F(V.n)
    per_grade = []
    for grade in V.grades:
        entries = []
        for w, m in grade.terms:
            for e in cohomology(validate_bundle(f, w)).entries:
                entries.extend([e] * m)
        per_grade.append(entries)
    flagged = False
    for i, later in enumerate(per_grade):
        for earlier in per_grade[:i]:
            for e in later:
                if any(x.degree == e.degree + 1 and x.weight == e.weight for x in earlier):
                    flagged = True
    entries = sorted((e for es in per_grade for e in es), key=lambda e: (e.degree, e.weight.sort_key()))
    return CohomologyResult(tuple(entries), flagged)


def raw_complex(V: GradedInput) -> Complex:
    return to_complex(e1_page(V), graded_cohomology(V), V.conjectural)


def transform(V: GradedInput) -> Complex:
    """E1 page, collapse, cancellation.  Raises NotCollapsed (carrying the page) when q > 0 rows survive."""
    return cancel(raw_complex(V))


def merge(complexes: Iterable[Complex]) -> Complex:
    """Direct sum of complexes of equal length, columnwise."""
    complexes = list(complexes)
    n = complexes[0].n
    cols = [BundleSum(M(n)) for _ in complexes[0].columns]
    for c in complexes:
        cols = [a + b for a, b in zip(cols, c.columns)]
    return Complex(n, cols, first_order_arrows(cols))
