"""Hermitian names for bundles on CP_n and text / JSON / LaTeX emitters."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .bbw import CohomologyResult
from .errors import PenroseError
from .flagspace import BundleSum, M, label_rank, validate_bundle
from .penrose import Arrow, Cancellation, Complex, E1Page
from .rootsys import Weight, from_epsilon, to_epsilon

# Fixed names for the bundles met in the reference complexes; (n, label) -> name.
PINNED_NAMES: dict[tuple[int, tuple[int, ...]], str] = {
    (3, (0, 0, 0)): "Λ^{0,0}",
    (3, (1, 0, 1)): "Λ^{0,1}",
    (3, (-2, 1, 0)): "Λ^{1,0}",
    (3, (2, 1, 0)): "Λ^{0,2}",
    (3, (-1, 1, 1)): "Λ^{1,1}_⊥",
    (3, (0, 2, 0)): "Λ^{1,2}_⊥",
    (3, (2, 0, 2)): "S²Λ^{0,1}",
    (3, (-4, 2, 0)): "S²Λ^{1,0}",
    (3, (3, 1, 1)): "S^{2,1}Λ^{0,1}",
    (3, (-2, 2, 2)): "S²Λ^{0,1}⊗_⊥S²Λ^{1,0}",
    (3, (-1, 3, 1)): "S^{2,1}Λ^{0,1}⊗_⊥S²Λ^{1,0}",
    (2, (0, 0)): "Λ^{0,0}",
    (2, (1, 1)): "Λ^{0,1}",
    (2, (-2, 1)): "Λ^{1,0}",
    (2, (-1, 2)): "Λ^{1,1}_⊥",
    (2, (2, 2)): "S²Λ^{0,1}",
    (2, (-4, 2)): "S²Λ^{1,0}",
    (2, (-2, 4)): "S²Λ^{0,1}⊗_⊥S²Λ^{1,0}",
}

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class Name:
    text: str
    source: str  # "table", "schur" or "raw"


def _schur_prefix(part: tuple[int, ...]) -> str:
    if part == (1,):
        return ""
    if len(part) == 1:
        return "S" + (str(part[0]).translate(_SUP) if part[0] < 10 else "^{%d}" % part[0])
    if all(x == 1 for x in part):
        return "Λ" + (str(len(part)).translate(_SUP) if len(part) < 10 else "^{%d}" % len(part))
    return "S^{" + ",".join(str(x) for x in part) + "}"


def schur_pair(label: Weight) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Smallest Young diagrams (λ, μ) with label = Cartan(S^λ Λ^{0,1}) + Cartan(S^μ Λ^{1,0}).

    S^λ Λ^{0,1} has highest weight |λ| e_1 - Σ λ_k e_{n+2-k} and S^μ Λ^{1,0}
    has Σ μ_k e_{k+1} - |μ| e_1, so the label fixes every difference
    μ_k - λ_{n+1-k}; taking positive and negative parts gives the unique
    minimal pair.  None when no pair exists (fractional charge).
    """
    n = label.n
    e = to_epsilon(label)
    total = sum(e)
    if total % (n + 1):
        return None
    t = -total // (n + 1)
    diffs = [x + t for x in e[1:]]
    mu = tuple(x for x in (max(d, 0) for d in diffs) if x)
    lam = tuple(x for x in (max(-d, 0) for d in reversed(diffs)) if x)
    return lam, mu


def cartan_label(n: int, lam: tuple[int, ...], mu: tuple[int, ...]) -> Weight:
    e = [0] * (n + 1)
    e[0] = sum(lam) - sum(mu)
    for k, x in enumerate(lam, start=1):
        e[n + 1 - k] -= x
    for k, x in enumerate(mu, start=1):
        e[k] += x
    return from_epsilon(e)


def hermitian_name_info(label: Weight) -> Name:
    validate_bundle(M(label.n), label)
    key = (label.n, label.coeffs)
    if key in PINNED_NAMES:
        return Name(PINNED_NAMES[key], "table")
    pair = schur_pair(label)
    if pair is None:
        return Name(f"({label})", "raw")
    lam, mu = pair
    parts = []
    if lam:
        parts.append(_schur_prefix(lam) + "Λ^{0,1}")
    if mu:
        parts.append(_schur_prefix(mu) + "Λ^{1,0}")
    return Name("⊗_⊥".join(parts) or "Λ^{0,0}", "schur")


def hermitian_name(b) -> str:
    label = b.label if hasattr(b, "label") else b
    return hermitian_name_info(label).text


def conjugate(label: Weight) -> Weight:
    """Label of the complex-conjugate bundle on CP_n: dualise the SL(n) block and negate the charge."""
    n = label.n
    a = label.coeffs
    return Weight(n, (-sum(a),) + tuple(reversed(a[1:])))


def to_latex_name(name: str) -> str:
    s = name
    for old, new in [
        ("⊗_⊥", r"\otimes_\perp "),
        ("_⊥", r"_\perp"),
        ("⊕", r"\oplus "),
        ("Λ", r"\Lambda"),
    ]:
        s = s.replace(old, new)
    sup = {v: k for k, v in zip("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")}
    out = []
    for ch in s:
        out.append("^{" + sup[ch] + "}" if ch in sup else ch)
    return "".join(out)


def operator_symbol(a: Arrow, latex: bool = False) -> str:
    d, db = a.d_count, a.dbar_count
    if latex:
        D, DB = r"\partial", r"\overline\partial"
    else:
        D, DB = "∂", "∂̄"

    def power(sym, k):
        if k == 0:
            return ""
        if k == 1:
            return sym
        return f"{sym}^{{({k})}}"

    return power(D, d) + power(DB, db)


# --- JSON ------------------------------------------------------------------------

TERM_SCHEMA = {
    "type": "object",
    "required": ["label", "rank", "name", "mult"],
    "properties": {
        "label": {"type": "array", "items": {"type": "integer"}},
        "rank": {"type": "integer", "minimum": 1},
        "name": {"type": "string"},
        "mult": {"type": "integer", "minimum": 1},
    },
}

COHOMOLOGY_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["degree", "label", "dim"],
        "properties": {
            "degree": {"type": "integer", "minimum": 0},
            "label": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "dim": {"type": "integer", "minimum": 1},
        },
    },
}

COMPLEX_SCHEMA = {
    "type": "object",
    "required": ["kind", "space", "n", "columns", "arrows", "cohomology", "conjectural"],
    "properties": {
        "kind": {"const": "complex"},
        "space": {"const": "M"},
        "n": {"type": "integer", "minimum": 2},
        "columns": {"type": "array", "items": {"type": "array", "items": TERM_SCHEMA}},
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["col", "from", "to", "order", "type"],
                "properties": {
                    "col": {"type": "integer", "minimum": 0},
                    "from": {"type": "integer", "minimum": 0},
                    "to": {"type": "integer", "minimum": 0},
                    "order": {"type": "integer", "minimum": 1},
                    "type": {"enum": ["d", "dbar", "mixed"]},
                },
            },
        },
        "cohomology": COHOMOLOGY_SCHEMA,
        "cohomology_flagged": {"type": "boolean"},
        "conjectural": {"type": "boolean"},
        "cancelled": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["col", "label", "mult"],
                "properties": {
                    "col": {"type": "integer", "minimum": 0},
                    "label": {"type": "array", "items": {"type": "integer"}},
                    "mult": {"type": "integer", "minimum": 1},
                },
            },
        },
    },
}

PAGE_SCHEMA = {
    "type": "object",
    "required": ["kind", "space", "n", "cells", "collapsed"],
    "properties": {
        "kind": {"const": "e1page"},
        "space": {"const": "M"},
        "n": {"type": "integer", "minimum": 2},
        "collapsed": {"type": "boolean"},
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["p", "q", "terms"],
                "properties": {
                    "p": {"type": "integer", "minimum": 0},
                    "q": {"type": "integer", "minimum": 0},
                    "terms": {"type": "array", "items": TERM_SCHEMA},
                },
            },
        },
    },
}


_LABEL = {"type": "array", "items": {"type": "integer"}}

BUNDLE_SCHEMA = {
    "type": "object",
    "required": ["space", "n", "label"],
    "properties": {
        "space": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "label": _LABEL,
    },
}

SUM_SCHEMA = {
    "type": "object",
    "required": ["space", "n", "terms"],
    "properties": {
        "space": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "mult"],
                "properties": {"label": _LABEL, "mult": {"type": "integer", "minimum": 1}},
            },
        },
    },
}

# Documents printed by the small CLI subcommands, keyed by their "kind".
DOC_SCHEMAS = {
    "complex": COMPLEX_SCHEMA,
    "e1page": PAGE_SCHEMA,
    "cohomology": {
        "type": "object",
        "required": ["kind", "bundle", "cohomology"],
        "properties": {"kind": {"const": "cohomology"}, "bundle": BUNDLE_SCHEMA, "cohomology": COHOMOLOGY_SCHEMA},
    },
    "direct_image": {
        "type": "object",
        "required": ["kind", "source", "target_space", "degree", "image"],
        "properties": {
            "kind": {"const": "direct_image"},
            "source": BUNDLE_SCHEMA,
            "target_space": {"type": "string"},
            "degree": {"type": ["integer", "null"], "minimum": 0},
            "image": {"oneOf": [BUNDLE_SCHEMA, {"type": "null"}]},
        },
    },
    "bundle": {"allOf": [BUNDLE_SCHEMA, {"properties": {"kind": {"const": "bundle"}}}]},
    "sum": {"allOf": [SUM_SCHEMA, {"properties": {"kind": {"const": "sum"}}}]},
    "relforms": {
        "type": "object",
        "required": ["kind", "n", "forms"],
        "properties": {
            "kind": {"const": "relforms"},
            "n": {"type": "integer", "minimum": 2},
            "forms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["p", "sum"],
                    "properties": {"p": {"type": "integer", "minimum": 0}, "sum": SUM_SCHEMA},
                },
            },
        },
    },
    "tangent": {
        "type": "object",
        "required": ["kind", "space", "n", "grades"],
        "properties": {"kind": {"const": "tangent"}, "grades": {"type": "array", "items": SUM_SCHEMA}},
    },
    "dim": {
        "type": "object",
        "required": ["kind", "weight", "dim"],
        "properties": {"kind": {"const": "dim"}, "weight": _LABEL, "dim": {"type": "integer", "minimum": 1}},
    },
}


def schema_for(doc: dict) -> dict:
    return DOC_SCHEMAS[doc["kind"]]


def _terms_json(s: BundleSum) -> list[dict]:
    return [
        {"label": list(w.coeffs), "rank": label_rank(s.space, w), "name": hermitian_name(w), "mult": m}
        for w, m in s.terms
    ]


def complex_to_json(c: Complex) -> dict:
    index = [{w: i for i, (w, _) in enumerate(col.terms)} for col in c.columns]
    arrows = [
        {"col": a.col, "from": index[a.col][a.source], "to": index[a.col + 1][a.target], "order": a.order, "type": a.type}
        for a in c.sorted_arrows()
    ]
    return {
        "kind": "complex",
        "space": "M",
        "n": c.n,
        "columns": [_terms_json(col) for col in c.columns],
        "arrows": arrows,
        "cohomology": c.cohomology.to_json(),
        "cohomology_flagged": c.cohomology.flagged,
        "conjectural": c.conjectural,
        "cancelled": [{"col": x.col, "label": list(x.label.coeffs), "mult": x.mult} for x in c.cancelled],
    }


def page_to_json(page: E1Page) -> dict:
    cells = [
        {"p": p, "q": q, "terms": _terms_json(s)}
        for (p, q), s in sorted(page.cells.items())
        if s
    ]
    return {"kind": "e1page", "space": "M", "n": page.n, "cells": cells, "collapsed": page.collapsed}


def _sum_from_terms(n: int, terms: list[dict]) -> BundleSum:
    return BundleSum(M(n), [(Weight(n, tuple(t["label"])), int(t["mult"])) for t in terms])


def parse(doc: str | dict) -> Complex | E1Page:
    d = json.loads(doc) if isinstance(doc, str) else doc
    n = int(d["n"])
    if d.get("space", "M") != "M":
        raise PenroseError("only complexes and pages on M are supported")
    if d["kind"] == "e1page":
        return E1Page(n, {(int(c["p"]), int(c["q"])): _sum_from_terms(n, c["terms"]) for c in d["cells"]})
    if d["kind"] != "complex":
        raise PenroseError(f"unknown document kind {d['kind']!r}")
    columns = [_sum_from_terms(n, col) for col in d["columns"]]
    arrows = set()
    for a in d["arrows"]:
        k = int(a["col"])
        arrow = Arrow(k, columns[k].terms[a["from"]][0], columns[k + 1].terms[a["to"]][0], int(a["order"]))
        if arrow.type != a["type"]:
            raise PenroseError(f"arrow type {a['type']!r} disagrees with the labels ({arrow.type})")
        arrows.add(arrow)
    coh = CohomologyResult.from_json(d["cohomology"], bool(d.get("cohomology_flagged", False)))
    cancelled = tuple(Cancellation(int(x["col"]), Weight(n, tuple(x["label"])), int(x["mult"])) for x in d.get("cancelled", []))
    return Complex(n, columns, frozenset(arrows), coh, bool(d["conjectural"]), cancelled)


# --- text and LaTeX -------------------------------------------------------------

def _sum_names(s: BundleSum, latex: bool = False) -> str:
    if not s:
        return "0"
    parts = []
    for w, m in s.terms:
        name = hermitian_name(w)
        if latex:
            name = to_latex_name(name)
        parts.append(name if m == 1 else (f"{m}\\,{name}" if latex else f"{m}·{name}"))
    return (r" \oplus " if latex else "⊕").join(parts)


def _complex_text(c: Complex) -> str:
    lines = []
    header = f"complex on CP_{c.n}"
    if c.conjectural:
        header += " (conjectural)"
    lines.append(header)
    lines.append("columns: " + " | ".join(_sum_names(col) for col in c.columns))
    for p, col in enumerate(c.columns):
        terms = ", ".join(f"{hermitian_name(w)} = ({w})" + (f" x{m}" if m > 1 else "") for w, m in col.terms)
        lines.append(f"  p={p} (rank {col.rank}): {terms}")
    lines.append("operators:")
    for a in c.sorted_arrows():
        lines.append(
            f"  p={a.col}: {hermitian_name(a.source)} --{operator_symbol(a)}--> {hermitian_name(a.target)}"
            f"  (order {a.order})"
        )
    if c.cancelled:
        lines.append("cancelled: " + ", ".join(
            f"({x.label}) at p={x.col},{x.col + 1}" + (f" x{x.mult}" if x.mult > 1 else "") for x in c.cancelled
        ))
    coh = str(c.cohomology)
    if c.cohomology.flagged:
        coh += "  [flagged: composition factors may interact]"
    lines.append("global cohomology: " + coh)
    return "\n".join(lines) + "\n"


def _page_text(page: E1Page) -> str:
    lines = [f"E1 page on CP_{page.n}" + ("" if page.collapsed else " (does not collapse)")]
    for q in range(page.max_q(), -1, -1):
        row = " | ".join(str(s) for s in page.row(q))
        lines.append(f"  q={q}: {row}")
    return "\n".join(lines) + "\n"


_LATEX_HEAD = "\\documentclass{article}\n\\usepackage{amsmath}\n\\begin{document}\n"
_LATEX_TAIL = "\\end{document}\n"


def _column_latex(col: BundleSum) -> str:
    if not col:
        return "0"
    rows = []
    for w, m in col.terms:
        name = to_latex_name(hermitian_name(w))
        rows.append(name if m == 1 else f"{m}\\,{name}")
    return "\\begin{array}{c}" + " \\\\ \\oplus \\\\ ".join(rows) + "\\end{array}"


def _complex_latex(c: Complex) -> str:
    body = [_LATEX_HEAD]
    if c.conjectural:
        body.append("Conjectural complex.\n\n")
    body.append("\\[\n0 \\to " + " \\to ".join(_column_latex(col) for col in c.columns) + " \\to 0\n\\]\n")
    if c.arrows:
        body.append("Operators:\n\\begin{itemize}\n")
        for a in c.sorted_arrows():
            body.append(
                f"\\item $p={a.col}$: ${to_latex_name(hermitian_name(a.source))} "
                f"\\xrightarrow{{{operator_symbol(a, latex=True)}}} {to_latex_name(hermitian_name(a.target))}$\n"
            )
        body.append("\\end{itemize}\n")
    coh = ", ".join(f"$H^{{{e.degree}}} = ({e.weight})$, $\\dim = {e.dim}$" for e in c.cohomology.entries)
    body.append("Global cohomology: " + (coh or "none") + ".\n")
    body.append(_LATEX_TAIL)
    return "".join(body)


def _page_latex(page: E1Page) -> str:
    cols = page.relative_dim + 1
    body = [_LATEX_HEAD, "\\[\n\\begin{array}{r|" + "c" * cols + "}\n"]
    for q in range(page.max_q(), -1, -1):
        cells = [_sum_names(s, latex=True) for s in page.row(q)]
        body.append(f"q={q} & " + " & ".join(cells) + " \\\\\n")
    body.append("\\hline\n & " + " & ".join(f"p={p}" for p in range(cols)) + "\n\\end{array}\n\\]\n")
    body.append(_LATEX_TAIL)
    return "".join(body)


def emit(x: Complex | E1Page, fmt: str = "text") -> str:
    if fmt == "json":
        d = complex_to_json(x) if isinstance(x, Complex) else page_to_json(x)
        return json.dumps(d, ensure_ascii=False, sort_keys=True) + "\n"
    if fmt == "text":
        return _complex_text(x) if isinstance(x, Complex) else _page_text(x)
    if fmt == "latex":
        return _complex_latex(x) if isinstance(x, Complex) else _page_latex(x)
    raise PenroseError(f"unknown format {fmt!r}")
