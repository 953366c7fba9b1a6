"""Command-line interface and the fixture verification harness."""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fnmatch import fnmatch
from importlib import resources
from pathlib import Path

from . import render
from .bbw import cohomology, direct_images
from .charlib import tensor
from .errors import NotCollapsed, PenroseError
from .flagspace import BundleSum, F, bundle_to_json, space_named, validate_bundle
from .penrose import GradedInput, cancel, e1_page, raw_complex
from .relforms import pullback, relative_forms, tangent_series
from .rootsys import Weight, weyl_dim


def _weight(text: str, n: int) -> Weight:
    w = Weight.parse(text)
    if w.n != n:
        raise PenroseError(f"weight {text} has {w.n} coordinates but --n is {n}")
    return w


def _sum_arg(space, text: str) -> BundleSum:
    """A '+'-separated list of labels, e.g. ``1,0,1+-2,1,0``."""
    labels = [_weight(piece, space.n) for piece in text.split("+") if piece]
    return BundleSum.of(space, *labels)


def _out(obj, fmt: str, text: str) -> str:
    if fmt == "json":
        return json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n"
    return text + "\n"


def cmd_bbw(args) -> str:
    space = space_named(args.space, args.n)
    b = validate_bundle(space, _weight(args.weight, args.n))
    res = cohomology(b)
    return _out({"kind": "cohomology", "bundle": bundle_to_json(b), "cohomology": res.to_json()}, args.format, str(res))


def cmd_pushforward(args) -> str:
    src, dst = space_named(args.source, args.n), space_named(args.target, args.n)
    b = validate_bundle(src, _weight(args.weight, args.n))
    im = direct_images(src, dst, b)
    obj = {
        "kind": "direct_image",
        "source": bundle_to_json(b),
        "target_space": dst.name,
        "degree": None if im is None else im.degree,
        "image": None if im is None else bundle_to_json(im.bundle),
    }
    text = "all direct images vanish" if im is None else f"q={im.degree}: ({im.bundle.label}) on {dst}"
    return _out(obj, args.format, text)


def cmd_pullback(args) -> str:
    b = pullback(validate_bundle(F(args.n), _weight(args.weight, args.n)))
    return _out({"kind": "bundle", **bundle_to_json(b)}, args.format, f"({b.label})")


def cmd_relforms(args) -> str:
    ps = [args.p] if args.p is not None else list(range(args.n + 1))
    forms = [(p, relative_forms(args.n, p)) for p in ps]
    obj = {"kind": "relforms", "n": args.n, "forms": [{"p": p, "sum": s.to_json()} for p, s in forms]}
    if args.p is not None:
        text = str(forms[0][1])
    else:
        text = "\n".join(f"p={p}: {s}" for p, s in forms)
    return _out(obj, args.format, text)


def cmd_tensor(args) -> str:
    space = space_named(args.space, args.n)
    res = tensor(space, _sum_arg(space, args.left), _sum_arg(space, args.right))
    return _out({"kind": "sum", **res.to_json()}, args.format, str(res))


def cmd_tangent(args) -> str:
    space = space_named(args.space, args.n)
    grades = tangent_series(space)
    obj = {"kind": "tangent", "space": space.name, "n": space.n, "grades": [g.to_json() for g in grades]}
    text = "\n".join(f"grade {i}: {g}" for i, g in enumerate(grades, start=1))
    return _out(obj, args.format, text)


def cmd_dim(args) -> str:
    w = Weight.parse(args.weight)
    if w.n != args.n:
        raise PenroseError(f"weight {args.weight} has {w.n} coordinates but --n is {args.n}")
    d = weyl_dim(w)
    return _out({"kind": "dim", "weight": list(w.coeffs), "dim": d}, args.format, str(d))


def graded_input(args) -> GradedInput:
    if args.weight is not None:
        return GradedInput.single(_weight(args.weight, args.n))
    if args.theta:
        return GradedInput.theta(args.n)
    if args.trivial:
        return GradedInput.trivial(args.n)
    if args.conjecture:
        return GradedInput.conjecture(args.n)
    d = json.loads(Path(args.grades).read_text())
    if int(d["n"]) != args.n:
        raise PenroseError(f"grades file is for n={d['n']} but --n is {args.n}")
    return GradedInput.from_json(d)


def cmd_transform(args) -> str:
    V = graded_input(args)
    if args.page:
        return render.emit(e1_page(V), args.format)
    try:
        c = raw_complex(V)
    except NotCollapsed as exc:
        note = "" if args.format == "json" else "spectral sequence does not collapse; showing the E1 page\n"
        return note + render.emit(exc.page, args.format)
    if not args.raw:
        c = cancel(c)
    return render.emit(c, args.format)


# --- verification harness ---------------------------------------------------------

def load_corpus(path: str | None = None) -> list[dict]:
    if path:
        files = sorted(Path(path).glob("*.json"))
        return [json.loads(f.read_text()) for f in files]
    root = resources.files("penrose_cpn") / "fixtures"
    names = sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))
    return [json.loads((root / name).read_text(encoding="utf-8")) for name in names]


def mismatches(expected, actual, path: str = "$") -> list[str]:
    """Differences between ``expected`` and ``actual``; keys absent from ``expected`` are ignored."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {actual!r}"]
        out = []
        for k, v in expected.items():
            if k not in actual:
                out.append(f"{path}.{k}: missing")
            else:
                out.extend(mismatches(v, actual[k], f"{path}.{k}"))
        return out
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(actual) != len(expected):
            return [f"{path}: expected {json.dumps(expected, ensure_ascii=False)}, got {json.dumps(actual, ensure_ascii=False)}"]
        out = []
        for i, (e, a) in enumerate(zip(expected, actual)):
            out.extend(mismatches(e, a, f"{path}[{i}]"))
        return out
    if expected != actual:
        return [f"{path}: expected {json.dumps(expected, ensure_ascii=False)}, got {json.dumps(actual, ensure_ascii=False)}"]
    return []


def run_fixture(fx: dict) -> list[str]:
    buf = io.StringIO()
    err = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
            code = main(list(fx["argv"]) + ["--format", "json"])
    except Exception as exc:  # a broken build should show up as a failed fixture, not a crash
        return [f"raised {type(exc).__name__}: {exc}"]
    if code != 0:
        return [f"command exited with status {code}: {err.getvalue().strip()}"]
    try:
        actual = json.loads(buf.getvalue())
    except json.JSONDecodeError as exc:
        return [f"output is not JSON: {exc}"]
    return mismatches(fx["expected"], actual)


def verify(filter_pattern: str | None = None, corpus: str | None = None) -> tuple[bool, str]:
    fixtures = load_corpus(corpus)
    if filter_pattern:
        fixtures = [fx for fx in fixtures if fx["id"] == filter_pattern or fnmatch(fx["id"], filter_pattern)]
    lines, failed = [], 0
    for fx in fixtures:
        diffs = run_fixture(fx)
        if diffs:
            failed += 1
            lines.append(f"FAIL {fx['id']}  [{fx['provenance']}]")
            lines.extend("    " + d for d in diffs)
        else:
            lines.append(f"PASS {fx['id']}  [{fx['provenance']}]")
    lines.append(f"{len(fixtures) - failed}/{len(fixtures)} fixtures passed")
    return failed == 0 and bool(fixtures), "\n".join(lines) + "\n"


# --- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="penrose-cpn", description="Penrose transform for CP_n via F_{1,2}(C^{n+1}).")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("text", "json")):
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("bbw", help="Bott-Borel-Weil cohomology of an irreducible bundle")
    p.add_argument("--space", choices=["F", "G", "M"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    fmt(p)
    p.set_defaults(func=cmd_bbw)

    p = sub.add_parser("pushforward", help="direct image of a bundle along G -> M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--from", dest="source", choices=["F", "G", "M"], default="G")
    p.add_argument("--to", dest="target", choices=["F", "G", "M"], default="M")
    fmt(p)
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("pullback", help="pull a bundle on F back to G")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    fmt(p)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("relforms", help="relative forms of G -> F")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    fmt(p)
    p.set_defaults(func=cmd_relforms)

    p = sub.add_parser("tensor", help="tensor product of '+'-separated bundle sums")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--space", choices=["F", "G", "M"], required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    fmt(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("tangent", help="composition series of the tangent bundle")
    p.add_argument("--space", choices=["F", "G", "M"], required=True)
    p.add_argument("--n", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("transform", help="Penrose transform of a bundle on F")
    p.add_argument("--n", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--weight")
    src.add_argument("--theta", action="store_true")
    src.add_argument("--trivial", action="store_true")
    src.add_argument("--conjecture", action="store_true")
    src.add_argument("--grades", metavar="FILE")
    stage = p.add_mutually_exclusive_group()
    stage.add_argument("--page", action="store_true", help="emit the E1 page")
    stage.add_argument("--raw", action="store_true", help="skip the cancellation pass")
    fmt(p, ("text", "json", "latex"))
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("dim", help="Weyl dimension of an sl(n+1) module")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    fmt(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", help="run the embedded fixture corpus")
    p.add_argument("--filter", metavar="ID")
    p.add_argument("--corpus", metavar="PATH")
    p.set_defaults(func=None)
    return parser


_VALUE_OPTIONS = ("--weight", "--left", "--right")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--weight -2,3,0`` as ``--weight=-2,3,0`` so argparse does not read it as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1][:1] == "-" and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            ok, report = verify(args.filter, args.corpus)
            sys.stdout.write(report)
            return 0 if ok else 1
        sys.stdout.write(args.func(args))
    except PenroseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
