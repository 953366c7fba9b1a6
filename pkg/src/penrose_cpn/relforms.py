"""Relative forms of the correspondence fibration, the pullback, and tangent bundles."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .charlib import decompose, exterior_power
from .errors import PenroseError
from .flagspace import Bundle, BundleSum, FlagSpace, G, validate_bundle
from .rootsys import Weight, from_epsilon, simple_reflect


def _root_label(n: int, i: int, j: int) -> Weight:
    """Dynkin label of eps_i - eps_j (1-based indices)."""
    e = [0] * (n + 1)
    e[i - 1] += 1
    e[j - 1] -= 1
    return from_epsilon(e)


@dataclass(frozen=True)
class ParabolicPattern:
    """Block upper triangular matrix pattern: the allowed (row, column) entries."""

    n: int
    entries: frozenset

    @classmethod
    def standard(cls, space: FlagSpace) -> "ParabolicPattern":
        block = {}
        for k, seg in enumerate(space.segments()):
            for i in seg:
                block[i + 1] = k
        m = space.n + 1
        return cls(space.n, frozenset((r, c) for r in range(1, m + 1) for c in range(1, m + 1) if block[r] <= block[c]))

    def conjugate(self, perm: dict[int, int]) -> "ParabolicPattern":
        """Conjugate by a permutation matrix of the coordinates."""
        return ParabolicPattern(self.n, frozenset((perm.get(r, r), perm.get(c, c)) for r, c in self.entries))

    def contains_diagonal(self) -> bool:
        return all((i, i) in self.entries for i in range(1, self.n + 2))

    def render(self) -> str:
        m = self.n + 1
        return "\n".join(
            " ".join("*" if (r, c) in self.entries else "0" for c in range(1, m + 1)) for r in range(1, m + 1)
        )


def correspondence_pattern(n: int) -> ParabolicPattern:
    """Stabiliser of the basepoint of G: a 1x1 block, then the rest upper triangular in a 1 + (n-1) split."""
    m = n + 1
    entries = {(1, 1)}
    entries |= {(r, c) for r in range(2, m + 1) for c in range(2, m + 1) if r == 2 and c >= 2 or r >= 3 and c >= 3}
    return ParabolicPattern(n, frozenset(entries))


def twistor_pattern_swapped(n: int) -> ParabolicPattern:
    """Stabiliser of F written with the alternative basepoint: the standard one conjugated by swapping 1 and 2."""
    from .flagspace import F

    return ParabolicPattern.standard(F(n)).conjugate({1: 2, 2: 1})


def relative_cotangent_roots(n: int) -> list[Weight]:
    """Weights of the relative cotangent bundle of G -> F, in the label convention.

    These are the entries that the swapped twistor pattern has and the
    correspondence pattern lacks: row 1 against columns 3..n+1, and entry (2, 1).
    """
    big = twistor_pattern_swapped(n).entries
    small = correspondence_pattern(n).entries
    return [_root_label(n, r, c) for r, c in sorted(big - small)]


def relative_cotangent(n: int) -> BundleSum:
    if n < 2:
        raise PenroseError("relative cotangent bundle needs n >= 2")
    weights = [_root_label(n, 1, j) for j in range(3, n + 2)] + [_root_label(n, 2, 1)]
    return decompose(G(n), Counter(weights))


def relative_forms(n: int, p: int) -> BundleSum:
    if not 0 <= p <= n:
        raise PenroseError(f"form degree {p} outside 0..{n}")
    return exterior_power(G(n), relative_cotangent(n), p)


def pullback(b: Bundle) -> Bundle:
    """Pull a bundle on F back to G: reflect the label in the first node, no rho shift."""
    if b.space.tag != "F":
        raise PenroseError(f"pullback expects a bundle on F, got {b.space}")
    return validate_bundle(G(b.space.n), simple_reflect(b.label, 1))


def pullback_sum(x: BundleSum) -> BundleSum:
    if x.space.tag != "F":
        raise PenroseError(f"pullback expects bundles on F, got {x.space}")
    return BundleSum(G(x.space.n), [(simple_reflect(w, 1), m) for w, m in x.terms])


def crossed_height(space: FlagSpace, i: int, j: int) -> int:
    """Number of crossed simple roots in eps_i - eps_j (i < j)."""
    return sum(1 for k in range(i, j) if k in space.crossed)


def tangent_series(space: FlagSpace) -> list[BundleSum]:
    """Composition factors of the holomorphic tangent bundle, sub first."""
    m = space.n + 1
    grades: dict[int, Counter] = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            h = crossed_height(space, i, j)
            if h:
                grades.setdefault(h, Counter())[_root_label(space.n, i, j)] += 1
    return [decompose(space, grades[h]) for h in sorted(grades)]
