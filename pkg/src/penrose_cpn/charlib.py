"""Characters of Levi-irreducible representations.

A character is a multiset of A_n weights.  Characters of irreducibles are
built block by block: each Levi block is an A_k whose weight multiplicities
come from Freudenthal's formula, and the crossed coordinates ride along.
Tensor products multiply characters and exterior powers take elementary
symmetric layers of the weight multiset, so no plethysm is ever needed.
Decomposition back into irreducibles peels off highest weights.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import comb

from .errors import PeelingFailure, PenroseError
from .flagspace import BundleSum, FlagSpace, is_levi_dominant
from .rootsys import Weight, from_epsilon, to_epsilon


@dataclass
class LeviCharacter:
    space: FlagSpace
    weights: Counter = field(default_factory=Counter)

    def __len__(self) -> int:
        return sum(self.weights.values())

    def __mul__(self, other: "LeviCharacter") -> "LeviCharacter":
        _check_space(self.space, other.space)
        out: Counter = Counter()
        for w1, m1 in self.weights.items():
            for w2, m2 in other.weights.items():
                out[w1 + w2] += m1 * m2
        return LeviCharacter(self.space, out)

    def __add__(self, other: "LeviCharacter") -> "LeviCharacter":
        _check_space(self.space, other.space)
        return LeviCharacter(self.space, self.weights + other.weights)

    def is_orbit_stable(self) -> bool:
        """True when multiplicities are constant on orbits of the Levi Weyl group."""
        segs = [s for s in self.space.segments() if len(s) > 1]
        for w, m in self.weights.items():
            e = to_epsilon(w)
            for seg in segs:
                for i in range(seg.start, seg.stop - 1):
                    f = list(e)
                    f[i], f[i + 1] = f[i + 1], f[i]
                    if self.weights.get(from_epsilon(f), 0) != m:
                        return False
        return True


def _check_space(a: FlagSpace, b: FlagSpace) -> None:
    if a != b:
        raise PenroseError(f"characters live on different spaces: {a} and {b}")


# --- Freudenthal multiplicities for a single A_k block -------------------------

def _dominates(mu: tuple[int, ...], lam: tuple[int, ...]) -> bool:
    """Dominance order on non-increasing vectors with equal sums."""
    s = t = 0
    for a, b in zip(mu, lam):
        s += a
        t += b
        if s > t:
            return False
    return s == t


def _dominant_weights(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Non-increasing integer vectors dominated by ``lam`` (same length and sum)."""
    m = len(lam)
    lo = lam[-1]
    total = sum(lam)
    out = []

    def rec(prefix: list[int], remaining: int, cap: int):
        k = len(prefix)
        if k == m:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        slots = m - k
        # each later entry is >= lo and <= the value chosen here
        for v in range(min(cap, remaining - lo * (slots - 1)), lo - 1, -1):
            if v * slots < remaining:
                break
            if sum(prefix) + v > sum(lam[: k + 1]):
                continue
            rec(prefix + [v], remaining - v, v)

    rec([], total, lam[0])
    return out


def _norm2(v) -> int:
    return sum(x * x for x in v)


@lru_cache(maxsize=None)
def block_multiplicities(lam: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Dominant weight multiplicities of the GL_m irreducible ``lam`` (epsilon form).

    Freudenthal's recursion, run over dominant weights from the top down.
    Weights off the dominant chamber are read from their sorted representative.
    """
    lam = tuple(lam)
    m = len(lam)
    if any(lam[i] < lam[i + 1] for i in range(m - 1)):
        raise PenroseError(f"{lam} is not dominant for GL_{m}")
    rho = tuple(m - 1 - 2 * i for i in range(m))  # 2*rho, keeps everything integral
    doms = _dominant_weights(lam)
    # process in order of increasing depth below lam
    doms.sort(key=lambda mu: -sum((m - i) * x for i, x in enumerate(mu)))
    mult: dict[tuple[int, ...], int] = {}
    positive = [(i, j) for i in range(m) for j in range(i + 1, m)]

    def lookup(v):
        key = tuple(sorted(v, reverse=True))
        if not _dominates(key, lam):
            return 0
        return mult[key]

    top = _norm2(2 * a + r for a, r in zip(lam, rho))
    for mu in doms:
        if mu == lam:
            mult[mu] = 1
            continue
        acc = 0
        for i, j in positive:
            k = 1
            while True:
                v = list(mu)
                v[i] += k
                v[j] -= k
                mv = lookup(v)
                if mv == 0:
                    break
                acc += mv * (v[i] - v[j])
                k += 1
        # scaled by 4 because rho was doubled
        denom = top - _norm2(2 * a + r for a, r in zip(mu, rho))
        num = 8 * acc
        if denom <= 0 or num % denom:
            raise PenroseError(f"Freudenthal recursion broke down at {mu} in {lam}")
        mult[mu] = num // denom
    return mult


@lru_cache(maxsize=None)
def block_character(lam: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All weights of the GL_m irreducible ``lam`` with multiplicities."""
    out: Counter = Counter()
    for mu, k in block_multiplicities(lam).items():
        if k:
            for v in set(permutations(mu)):
                out[v] += k
    return tuple(sorted(out.items(), reverse=True))


def character_of_label(space: FlagSpace, label: Weight) -> LeviCharacter:
    e = to_epsilon(label)
    pieces = []
    for seg in space.segments():
        block = tuple(e[seg.start:seg.stop])
        if len(block) == 1:
            pieces.append(((block, 1),))
        else:
            pieces.append(block_character(block))
    weights: Counter = Counter()
    for combo in product(*pieces):
        vec, m = [], 1
        for part, k in combo:
            vec.extend(part)
            m *= k
        weights[from_epsilon(vec)] += m
    return LeviCharacter(space, weights)


def character_of(b) -> LeviCharacter:
    return character_of_label(b.space, b.label)


def character_of_sum(x: BundleSum) -> LeviCharacter:
    out = LeviCharacter(x.space, Counter())
    for w, m in x.terms:
        ch = character_of_label(x.space, w)
        for v, k in ch.weights.items():
            out.weights[v] += m * k
    return out


def decompose(space: FlagSpace, c: LeviCharacter | Counter) -> BundleSum:
    """Peel highest weights off a character until nothing is left."""
    weights = Counter(c.weights if isinstance(c, LeviCharacter) else c)
    weights = +weights
    result: Counter = Counter()
    while weights:
        candidates = [w for w in weights if is_levi_dominant(space, w)]
        if not candidates:
            raise PeelingFailure(f"no Levi-dominant weight left among {sorted(weights, key=Weight.sort_key)[:5]}")
        top = min(candidates, key=Weight.sort_key)
        k = weights[top]
        for v, m in character_of_label(space, top).weights.items():
            weights[v] -= k * m
            if weights[v] < 0:
                raise PeelingFailure(f"subtracting {k} x character of {top} leaves {v} negative")
            if weights[v] == 0:
                del weights[v]
        result[top] += k
    return BundleSum(space, result)


def tensor(space: FlagSpace, x: BundleSum, y: BundleSum) -> BundleSum:
    if x.space != space or y.space != space:
        raise PenroseError(f"tensor factors must live on {space}")
    return decompose(space, character_of_sum(x) * character_of_sum(y))


def exterior_layers(weights: Counter, top: int | None = None) -> list[Counter]:
    """Elementary symmetric layers of a weight multiset: layer p is the multiset of p-subset sums."""
    items = [w for w, m in weights.items() for _ in range(m)]
    top = len(items) if top is None else top
    if not items:
        return [Counter()]
    n = items[0].n
    layers: list[Counter] = [Counter({Weight(n, (0,) * n): 1})] + [Counter() for _ in range(top)]
    for w in items:
        for p in range(top, 0, -1):
            prev = layers[p - 1]
            if prev:
                cur = layers[p]
                for v, m in prev.items():
                    cur[v + w] += m
    return layers


def exterior_power(space: FlagSpace, x: BundleSum, p: int) -> BundleSum:
    r = x.rank
    if not 0 <= p <= r:
        raise PenroseError(f"exterior degree {p} outside 0..{r}")
    if p == 0:
        return BundleSum.trivial(space)
    layers = exterior_layers(character_of_sum(x).weights, p)
    out = decompose(space, layers[p])
    assert out.rank == comb(r, p)
    return out
