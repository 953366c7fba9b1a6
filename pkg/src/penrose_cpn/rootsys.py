"""Integer combinatorics of the A_n root system.

Weights are stored in Dynkin coordinates (coefficients against the
fundamental weights).  Most algorithms work on the equivalent "epsilon
sequence": the length n+1 vector whose consecutive differences are the Dynkin
coefficients, normalised so that the final entry is zero.  The Weyl group
S_{n+1} then acts by permuting entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedSegments, NodeOutOfRange, NotDominant, PenroseError, RankMismatch


@dataclass(frozen=True, order=False)
class Weight:
    """An integral weight of A_n in Dynkin coordinates."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise PenroseError(f"rank must be positive, got {self.n}")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.n:
            raise RankMismatch(f"weight {coeffs} has {len(coeffs)} coordinates, expected {self.n}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs: int) -> "Weight":
        return cls(len(coeffs), tuple(coeffs))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse the comma-separated form, e.g. ``-2,3,0``."""
        parts = [p.strip() for p in text.strip().split(",")]
        try:
            coeffs = tuple(int(p) for p in parts)
        except ValueError:
            raise PenroseError(f"cannot parse weight {text!r}: expected comma-separated integers") from None
        return cls(len(coeffs), coeffs)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"({self})"

    def __getitem__(self, node: int) -> int:
        """1-based access to the coefficient at ``node``."""
        if not 1 <= node <= self.n:
            raise NodeOutOfRange(node, self.n)
        return self.coeffs[node - 1]

    def __add__(self, other: "Weight") -> "Weight":
        _same_rank(self, other)
        return Weight(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        _same_rank(self, other)
        return Weight(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Weight":
        return Weight(self.n, tuple(-a for a in self.coeffs))

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def sort_key(self) -> tuple:
        """Total order used everywhere for determinism: epsilon-lexicographic, largest first."""
        return tuple(-e for e in to_epsilon(self))


def _same_rank(x: Weight, y: Weight) -> None:
    if x.n != y.n:
        raise RankMismatch(f"weights of rank {x.n} and {y.n} cannot be combined")


def zero(n: int) -> Weight:
    return Weight(n, (0,) * n)


def rho(n: int) -> Weight:
    if n < 1:
        raise PenroseError(f"rank must be positive, got {n}")
    return Weight(n, (1,) * n)


def simple_root(n: int, i: int) -> Weight:
    if not 1 <= i <= n:
        raise NodeOutOfRange(i, n)
    c = [0] * n
    c[i - 1] = 2
    if i > 1:
        c[i - 2] = -1
    if i < n:
        c[i] = -1
    return Weight(n, tuple(c))


def to_epsilon(w: Weight) -> tuple[int, ...]:
    """Epsilon sequence of ``w``: e_i = a_i + ... + a_n, with e_{n+1} = 0."""
    out = [0] * (w.n + 1)
    for i in range(w.n - 1, -1, -1):
        out[i] = out[i + 1] + w.coeffs[i]
    return tuple(out)


def from_epsilon(e: Sequence[int]) -> Weight:
    """Inverse of :func:`to_epsilon`; any global shift of ``e`` is ignored."""
    if len(e) < 2:
        raise PenroseError("an epsilon sequence needs at least two entries")
    return Weight(len(e) - 1, tuple(e[i] - e[i + 1] for i in range(len(e) - 1)))


def normalize_epsilon(e: Sequence[int]) -> tuple[int, ...]:
    last = e[-1]
    return tuple(x - last for x in e)


def simple_reflect(w: Weight, i: int) -> Weight:
    """The simple reflection s_i: w - <w, alpha_i> alpha_i."""
    if not 1 <= i <= w.n:
        raise NodeOutOfRange(i, w.n)
    a = w.coeffs[i - 1]
    if a == 0:
        return w
    alpha = simple_root(w.n, i)
    return Weight(w.n, tuple(x - a * y for x, y in zip(w.coeffs, alpha.coeffs)))


def segments_for(n: int, cuts: Iterable[int]) -> list[range]:
    """Partition the epsilon indices 0..n into consecutive ranges, cutting after each (1-based) node in ``cuts``."""
    bounds = sorted(set(cuts))
    for j in bounds:
        if not 1 <= j <= n:
            raise NodeOutOfRange(j, n)
    out, start = [], 0
    for j in bounds:
        out.append(range(start, j))
        start = j
    out.append(range(start, n + 1))
    return out


@dataclass(frozen=True)
class SortResult:
    regular: bool
    length: int = 0
    sorted: tuple[int, ...] | None = None


def sort_and_count(e: Sequence[int], segments: Sequence[range]) -> SortResult:
    """Sort ``e`` descending inside each segment, counting inversions.

    Singular (returns ``regular=False``) when two entries of one segment
    coincide.  Segments are 0-based index ranges that must tile ``e``.
    """
    e = tuple(e)
    pos = 0
    for seg in segments:
        if seg.step != 1 or seg.start != pos or seg.stop <= seg.start:
            raise MalformedSegments(f"segments {list(segments)} do not tile 0..{len(e) - 1} consecutively")
        pos = seg.stop
    if pos != len(e):
        raise MalformedSegments(f"segments {list(segments)} do not cover 0..{len(e) - 1}")

    out = list(e)
    length = 0
    for seg in segments:
        block = e[seg.start:seg.stop]
        if len(set(block)) < len(block):
            return SortResult(False)
        for a in range(len(block)):
            for b in range(a + 1, len(block)):
                if block[a] < block[b]:
                    length += 1
        out[seg.start:seg.stop] = sorted(block, reverse=True)
    return SortResult(True, length, tuple(out))


def weyl_dim(w: Weight) -> int:
    """Dimension of the irreducible sl(n+1) module with highest weight ``w``."""
    if not w.is_dominant():
        raise NotDominant(f"weyl_dim needs a dominant weight, got {w}")
    return _dim_from_epsilon(to_epsilon(w))


def _dim_from_epsilon(e: Sequence[int]) -> int:
    num, den = 1, 1
    m = len(e)
    for i in range(m):
        for j in range(i + 1, m):
            num *= e[i] - e[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def n_positive_roots(n: int) -> int:
    return n * (n + 1) // 2
