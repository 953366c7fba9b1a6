"""Bott-Borel-Weil cohomology and relative direct images between flag manifolds."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotNested, PenroseError
from .flagspace import Bundle, FlagSpace, validate_bundle
from .rootsys import Weight, from_epsilon, rho, segments_for, sort_and_count, to_epsilon, weyl_dim


@dataclass(frozen=True)
class CohomologyEntry:
    degree: int
    weight: Weight
    dim: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "label": list(self.weight.coeffs), "dim": self.dim}


@dataclass(frozen=True)
class CohomologyResult:
    """Cohomology as a list of (degree, SL(n+1) highest weight, dimension); empty means it all vanishes.

    ``flagged`` is set when the entries were assembled from a composition
    series whose pieces could interact, so they are only an upper bound.
    """

    entries: tuple[CohomologyEntry, ...] = ()
    flagged: bool = False

    @classmethod
    def from_json(cls, items, flagged=False) -> "CohomologyResult":
        entries = []
        for it in items:
            w = Weight(len(it["label"]), tuple(it["label"]))
            entries.append(CohomologyEntry(int(it["degree"]), w, int(it["dim"])))
        return cls(tuple(entries), flagged)

    @property
    def vanishes(self) -> bool:
        return not self.entries

    def in_degree(self, q: int) -> list[CohomologyEntry]:
        return [e for e in self.entries if e.degree == q]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    def __str__(self) -> str:
        if not self.entries:
            return "all cohomology vanishes"
        return "; ".join(f"H^{e.degree} = [{e.weight}] (dim {e.dim})" for e in self.entries)


def _shifted_sort(label: Weight, cuts) -> tuple[int, Weight] | None:
    shifted = label + rho(label.n)
    res = sort_and_count(to_epsilon(shifted), segments_for(label.n, cuts))
    if not res.regular:
        return None
    return res.length, from_epsilon(res.sorted) - rho(label.n)


def cohomology(b: Bundle) -> CohomologyResult:
    """Sheaf cohomology of an irreducible homogeneous bundle."""
    out = _shifted_sort(b.label, ())
    if out is None:
        return CohomologyResult()
    q, w = out
    return CohomologyResult((CohomologyEntry(q, w, weyl_dim(w)),))


@dataclass(frozen=True)
class DirectImage:
    degree: int
    bundle: Bundle


def direct_images(src: FlagSpace, dst: FlagSpace, b: Bundle) -> DirectImage | None:
    """The single non-vanishing direct image of ``b`` along ``src -> dst``, or None.

    The fibre is the flag manifold of the Levi factor of ``dst``, so relative
    BBW sorts the rho-shifted epsilon sequence inside each Levi block of ``dst``.
    """
    if src.n != dst.n:
        raise NotNested(f"{src} and {dst} have different rank")
    if not dst.crossed <= src.crossed:
        raise NotNested(f"crossed nodes of {dst} are not contained in those of {src}")
    if b.space != src:
        raise PenroseError(f"bundle lives on {b.space}, not {src}")
    out = _shifted_sort(b.label, dst.crossed)
    if out is None:
        return None
    q, w = out
    return DirectImage(q, validate_bundle(dst, w))
