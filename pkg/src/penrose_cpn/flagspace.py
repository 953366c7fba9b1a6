"""Generalised flag manifolds of SL(n+1, C) and their irreducible homogeneous bundles.

A flag manifold is recorded by the set of crossed nodes of the A_n diagram.
The twistor space F, the correspondence space G and the complexified base M
are the three spaces of the double fibration; F and G share a crossed set but
are kept apart by a tag because their bundle labels differ by the pullback
reflection.

An irreducible homogeneous bundle is labelled by a weight that is
non-negative on every uncrossed node.  The label is minus the lowest weight of
the inducing representation of the parabolic, i.e. the highest weight of its
dual.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import BundleSyntaxError, NodeOutOfRange, PenroseError, RankMismatch, NotLeviDominant
from .rootsys import Weight, segments_for, to_epsilon, weyl_dim, zero


@dataclass(frozen=True)
class FlagSpace:
    n: int
    crossed: frozenset
    tag: str = ""

    def __post_init__(self):
        crossed = frozenset(int(j) for j in self.crossed)
        if not crossed:
            raise PenroseError("a flag space needs at least one crossed node")
        for j in crossed:
            if not 1 <= j <= self.n:
                raise NodeOutOfRange(j, self.n)
        object.__setattr__(self, "crossed", crossed)

    @property
    def uncrossed(self) -> list[int]:
        return [j for j in range(1, self.n + 1) if j not in self.crossed]

    @property
    def name(self) -> str:
        if self.tag:
            return self.tag
        return "X" + ".".join(str(j) for j in sorted(self.crossed))

    def segments(self) -> list[range]:
        """Epsilon index blocks of the Levi factor."""
        return segments_for(self.n, self.crossed)

    def levi_blocks(self) -> list[list[int]]:
        """Maximal runs of consecutive uncrossed nodes."""
        blocks, run = [], []
        for j in range(1, self.n + 1):
            if j in self.crossed:
                if run:
                    blocks.append(run)
                run = []
            else:
                run.append(j)
        if run:
            blocks.append(run)
        return blocks

    def dimension(self) -> int:
        """Complex dimension: the number of positive roots outside the Levi."""
        sizes = [len(s) for s in self.segments()]
        total = self.n + 1
        return (total * total - sum(s * s for s in sizes)) // 2

    def __str__(self) -> str:
        return f"{self.name}({self.n})"

    def __repr__(self) -> str:
        return str(self)


def F(n: int) -> FlagSpace:
    """The twistor space F_{1,2}(C^{n+1})."""
    if n < 2:
        raise PenroseError("F_{1,2}(C^{n+1}) needs n >= 2")
    return FlagSpace(n, frozenset({1, 2}), "F")


def G(n: int) -> FlagSpace:
    """The correspondence space of the double fibration."""
    if n < 2:
        raise PenroseError("the correspondence space needs n >= 2")
    return FlagSpace(n, frozenset({1, 2}), "G")


def M(n: int) -> FlagSpace:
    """The complexification of CP_n (pairs of a point and a hyperplane not through it)."""
    if n < 1:
        raise PenroseError("rank must be positive")
    return FlagSpace(n, frozenset({1}), "M")


_NAMED = {"F": F, "G": G, "M": M}


def space_named(name: str, n: int) -> FlagSpace:
    try:
        return _NAMED[name](n)
    except KeyError:
        raise PenroseError(f"unknown space {name!r}; expected one of F, G, M") from None


@dataclass(frozen=True)
class Bundle:
    space: FlagSpace
    label: Weight

    def __post_init__(self):
        validate_bundle(self.space, self.label)

    @property
    def rank(self) -> int:
        return rank(self)

    def __str__(self) -> str:
        return format_bundle(self)

    def __repr__(self) -> str:
        return f"Bundle({self})"


def validate_bundle(space: FlagSpace, label: Weight) -> Bundle:
    """Check Levi-dominance of ``label`` on ``space``; return the bundle."""
    if label.n != space.n:
        raise RankMismatch(f"label {label} has rank {label.n} but {space} has rank {space.n}")
    for j in space.uncrossed:
        if label[j] < 0:
            raise NotLeviDominant(j, label)
    # avoid recursion from Bundle.__post_init__
    b = object.__new__(Bundle)
    object.__setattr__(b, "space", space)
    object.__setattr__(b, "label", label)
    return b


def is_levi_dominant(space: FlagSpace, label: Weight) -> bool:
    return all(label[j] >= 0 for j in space.uncrossed)


def rank(b: Bundle) -> int:
    return label_rank(b.space, b.label)


def label_rank(space: FlagSpace, label: Weight) -> int:
    """Dimension of the inducing Levi representation: product of block Weyl dimensions."""
    e = to_epsilon(label)
    out = 1
    for seg in space.segments():
        if len(seg) > 1:
            block = e[seg.start:seg.stop]
            out *= weyl_dim(_block_weight(block))
    return out


def _block_weight(block) -> Weight:
    return Weight(len(block) - 1, tuple(block[i] - block[i + 1] for i in range(len(block) - 1)))


# --- text grammar: <space>:<n>:<labels> -------------------------------------

def parse_bundle(text: str) -> Bundle:
    parts = text.split(":")
    if len(parts) != 3:
        pos = len(text) if len(parts) < 3 else len(":".join(parts[:3]))
        raise BundleSyntaxError(text, pos, "expected <space>:<n>:<labels>")
    name, n_text, labels = parts
    if name not in _NAMED:
        raise BundleSyntaxError(text, 0, f"unknown space {name!r}")
    n_pos = len(name) + 1
    if not n_text.isdigit():
        raise BundleSyntaxError(text, n_pos, f"rank {n_text!r} is not a positive integer")
    n = int(n_text)
    pos = n_pos + len(n_text) + 1
    coeffs = []
    for piece in labels.split(","):
        try:
            coeffs.append(int(piece))
        except ValueError:
            raise BundleSyntaxError(text, pos, f"{piece!r} is not an integer") from None
        pos += len(piece) + 1
    if len(coeffs) != n:
        raise BundleSyntaxError(text, n_pos + len(n_text) + 1, f"expected {n} labels, got {len(coeffs)}")
    return validate_bundle(space_named(name, n), Weight(n, tuple(coeffs)))


def format_bundle(b: Bundle) -> str:
    return f"{b.space.name}:{b.space.n}:{b.label}"


def bundle_to_json(b: Bundle) -> dict:
    d = {"space": b.space.name, "n": b.space.n, "label": list(b.label.coeffs)}
    if b.space.name not in _NAMED:
        d["crossed"] = sorted(b.space.crossed)
    return d


def bundle_from_json(d: Mapping | str) -> Bundle:
    if isinstance(d, str):
        d = json.loads(d)
    n = int(d["n"])
    if "crossed" in d:
        space = FlagSpace(n, frozenset(d["crossed"]), d.get("space", "") if d.get("space") in _NAMED else "")
    else:
        space = space_named(d["space"], n)
    return validate_bundle(space, Weight(n, tuple(d["label"])))


# --- formal direct sums -------------------------------------------------------

class BundleSum:
    """A formal direct sum of irreducible bundles on one space.

    Terms are kept in the fixed epsilon-lexicographic order (largest first),
    so two sums are equal exactly when their term lists are.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: FlagSpace, terms: Iterable[tuple[Weight, int]] | Mapping[Weight, int] = ()):
        counts: Counter = Counter()
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, m in items:
            if m < 0:
                raise PenroseError(f"negative multiplicity {m} for {w}")
            if m:
                validate_bundle(space, w)
                counts[w] += m
        self.space = space
        self.terms: tuple[tuple[Weight, int], ...] = tuple(
            sorted(counts.items(), key=lambda t: t[0].sort_key())
        )

    @classmethod
    def of(cls, space: FlagSpace, *labels) -> "BundleSum":
        ws = [lab if isinstance(lab, Weight) else Weight(space.n, tuple(lab)) for lab in labels]
        return cls(space, Counter(ws))

    @classmethod
    def trivial(cls, space: FlagSpace) -> "BundleSum":
        return cls(space, [(zero(space.n), 1)])

    def counter(self) -> Counter:
        return Counter(dict(self.terms))

    def labels(self) -> list[Weight]:
        """Labels with repetition, in canonical order."""
        return [w for w, m in self.terms for _ in range(m)]

    def bundles(self) -> Iterator[Bundle]:
        for w, _ in self.terms:
            yield validate_bundle(self.space, w)

    def multiplicity(self, w: Weight) -> int:
        return dict(self.terms).get(w, 0)

    @property
    def rank(self) -> int:
        return sum(m * label_rank(self.space, w) for w, m in self.terms)

    def __len__(self) -> int:
        return sum(m for _, m in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "BundleSum") -> "BundleSum":
        if other.space != self.space:
            raise PenroseError(f"cannot add sums on {self.space} and {other.space}")
        return BundleSum(self.space, self.counter() + other.counter())

    def __sub__(self, other: "BundleSum") -> "BundleSum":
        c = self.counter()
        c.subtract(other.counter())
        if any(m < 0 for m in c.values()):
            raise PenroseError(f"{other} is not contained in {self}")
        return BundleSum(self.space, c)

    def __eq__(self, other) -> bool:
        return isinstance(other, BundleSum) and self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, m in self.terms:
            s = "(" + str(w) + ")"
            parts.append(s if m == 1 else f"{m}{s}")
        return " ⊕ ".join(parts)

    def __repr__(self) -> str:
        return f"BundleSum[{self.space}]({self})"

    def to_json(self) -> dict:
        return {
            "space": self.space.name,
            "n": self.space.n,
            "terms": [{"label": list(w.coeffs), "mult": m} for w, m in self.terms],
        }
