"""Print every complex in the fixture corpus, in text or LaTeX, plus the verify report.

    python scripts/reproduce_tables.py --format text
    python scripts/reproduce_tables.py --format latex --out build/
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from penrose_cpn.errors import NotCollapsed
from penrose_cpn.penrose import GradedInput, e1_page, raw_complex, transform
from penrose_cpn.render import emit
from penrose_cpn.rootsys import Weight
from penrose_cpn.cli import verify


@dataclass(frozen=True)
class Case:
    name: str
    graded: GradedInput
    raw: bool = False
    page: bool = False


def cases() -> list[Case]:
    single = lambda *c: GradedInput.single(Weight(len(c), c))  # noqa: E731
    return [
        Case("e1page_trivial_n3", GradedInput.trivial(3), page=True),
        Case("trivial_n2", GradedInput.trivial(2)),
        Case("trivial_n3", GradedInput.trivial(3)),
        Case("single_2_-1_0", single(2, -1, 0)),
        Case("single_-1_1_1", single(-1, 1, 1)),
        Case("single_1_0_1", single(1, 0, 1)),
        Case("theta_n3_raw", GradedInput.theta(3), raw=True),
        Case("theta_n3", GradedInput.theta(3)),
        Case("theta_n2", GradedInput.theta(2)),
        Case("conjecture_n3", GradedInput.conjecture(3)),
    ]


def render_case(case: Case, fmt: str) -> str:
    if case.page:
        return emit(e1_page(case.graded), fmt)
    try:
        c = raw_complex(case.graded) if case.raw else transform(case.graded)
    except NotCollapsed as exc:
        return emit(exc.page, fmt)
    return emit(c, fmt)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["text", "latex", "json"], default="text")
    ap.add_argument("--out", type=Path, help="write one file per case into this directory")
    args = ap.parse_args(argv)

    ext = {"text": "txt", "latex": "tex", "json": "json"}[args.format]
    for case in cases():
        doc = render_case(case, args.format)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{case.name}.{ext}").write_text(doc, encoding="utf-8")
        else:
            print(f"=== {case.name}")
            print(doc)
    ok, report = verify()
    print(report, end="")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
