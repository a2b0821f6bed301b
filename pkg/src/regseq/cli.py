"""Command-line front end: ``regseq analyze|compare|plot-data|corpus``."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

from .constants import DEFAULT_N, TOL_IDX
from .fixtures import CORPUS, Fixture
from .growthfn import GrowthEvaluator, write_plot_data
from .indices import omega
from .report import analyze, serialize, timestamp_header
from .seqcore import (QuotientSpec, materialize, quotient_equivalent, read_table_file,
                      sequence_equivalent)

MIN_N = 64


class SpecError(ValueError):
    pass


_PARAMS = {
    "gevrey": ("alpha",),
    "gevrey-log": ("alpha", "beta"),
    "qgevrey": ("q",),
    "paper-example": (),
    "block": ("low", "high"),
}


def parse_spec(text: str) -> QuotientSpec:
    """Parse ``kind[:key=value[,key=value...]]``; ``file:PATH`` reads a table."""
    kind, _, rest = text.strip().partition(":")
    if kind == "file":
        if not rest:
            raise SpecError("file: needs a path")
        try:
            return read_table_file(rest)
        except OSError as exc:
            raise SpecError(f"cannot read {rest}: {exc}") from exc
    if kind not in _PARAMS:
        raise SpecError(f"unknown spec kind {kind!r}; expected one of {', '.join([*_PARAMS, 'file'])}")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq or key not in _PARAMS[kind]:
            raise SpecError(f"malformed parameter {item!r} for {kind}")
        try:
            params[key] = float(val)
        except ValueError as exc:
            raise SpecError(f"parameter {key} is not a number: {val!r}") from exc
        if not math.isfinite(params[key]):
            raise SpecError(f"parameter {key} must be finite")
    missing = [k for k in _PARAMS[kind] if k not in params and kind != "block"]
    if missing:
        raise SpecError(f"{kind} needs {', '.join(missing)}")
    if kind == "gevrey":
        if params["alpha"] <= 0:
            raise SpecError("alpha must be positive")
        return QuotientSpec.gevrey(params["alpha"])
    if kind == "gevrey-log":
        if params["alpha"] <= 0:
            raise SpecError("alpha must be positive")
        return QuotientSpec.gevrey_log(params["alpha"], params["beta"])
    if kind == "qgevrey":
        if params["q"] <= 1:
            raise SpecError("q must exceed 1")
        return QuotientSpec.q_gevrey(params["q"])
    if kind == "block":
        return QuotientSpec.block(**params)
    return QuotientSpec.paper_example()


def default_n() -> int:
    env = os.environ.get("REGSEQ_DEFAULT_N")
    if env:
        try:
            return int(env)
        except ValueError:
            print(f"regseq: ignoring non-integer REGSEQ_DEFAULT_N={env!r}", file=sys.stderr)
    return DEFAULT_N


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        _write_atomic(Path(out), text)


def cmd_analyze(spec: str, n: int, out: str | None) -> int:
    if n < MIN_N:
        raise SpecError(f"--n must be at least {MIN_N}")
    qs = parse_spec(spec)
    report = analyze(materialize(qs, n), fixture=spec)
    _emit(serialize(report, timestamp_header()), out)
    return 0


def cmd_compare(spec_a: str, spec_b: str, n: int, out: str | None = None) -> int:
    a = materialize(parse_spec(spec_a), n)
    b = materialize(parse_spec(spec_b), n)
    qe = quotient_equivalent(a, b)
    se = sequence_equivalent(a, b)
    notes = []
    implication = not (qe.status == "holds" and se.status != "holds")
    if not implication:
        notes.append("quotient equivalence holds but sequence equivalence does not")
    oa, ob = omega(a).value, omega(b).value
    if math.isfinite(oa) and math.isfinite(ob) and abs(oa - ob) < TOL_IDX:
        notes.append("omega estimates agree")
    doc = {
        "a": spec_a,
        "b": spec_b,
        "truncation": n,
        "quotient_equivalent": qe.to_dict(),
        "sequence_equivalent": se.to_dict(),
        "implication_holds": implication,
        "omega_a": "+inf" if math.isinf(oa) else oa,
        "omega_b": "+inf" if math.isinf(ob) else ob,
        "notes": notes,
    }
    _emit(json.dumps(doc, indent=2) + "\n", out)
    return 0


def cmd_plot_data(spec: str, n: int, out: str | None) -> int:
    if n < MIN_N:
        raise SpecError(f"--n must be at least {MIN_N}")
    ev = GrowthEvaluator.build(materialize(parse_spec(spec), n))
    if out in (None, "-"):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "plot.tsv"
            write_plot_data(ev, path, spec)
            sys.stdout.write(path.read_text(encoding="utf-8"))
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        write_plot_data(ev, out, spec)
    return 0


# ---------------------------------------------------------------------------
# Corpus and assertions
# ---------------------------------------------------------------------------

def _lookup(doc, path: str):
    cur = doc
    for seg in path.split("."):
        if isinstance(cur, list):
            if "=" in seg:
                key, _, val = seg.partition("=")
                cur = next(x for x in cur if str(x.get(key)) == val)
            else:
                cur = cur[int(seg)]
        else:
            cur = cur[seg]
    return cur


def _as_number(x):
    return {"+inf": math.inf, "-inf": -math.inf}.get(x, x) if isinstance(x, str) else x


def evaluate_assertion(doc: dict, a: dict) -> tuple[bool, str]:
    """Check one ``{"path", "op", "value"[, "tol"]}`` assertion against a report."""
    try:
        got = _as_number(_lookup(doc, a["path"]))
    except (KeyError, IndexError, StopIteration, TypeError, ValueError):
        return False, f"{a['path']}: missing"
    op, want = a["op"], _as_number(a.get("value"))
    if op == "eq":
        ok = got == want
    elif op == "approx":
        ok = isinstance(got, (int, float)) and abs(got - want) <= a["tol"]
    elif op == "le":
        ok = got <= want
    elif op == "ge":
        ok = got >= want
    elif op == "in":
        ok = got in want
    elif op == "approx-set":
        ok = len(got) == len(want) and all(abs(g - w) <= a["tol"] for g, w in zip(sorted(got), sorted(want)))
    else:
        return False, f"{a['path']}: unknown op {op!r}"
    return bool(ok), f"{a['path']} {op} {a.get('value')!r}: got {got!r}"


def load_assertions(path: str | None) -> dict:
    if path is None or path == "builtin":
        text = resources.files("regseq").joinpath("corpus_assertions.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def _run_fixture(f: Fixture) -> tuple[Fixture, str]:
    return f, serialize(analyze(f.table(), fixture=f.spec.label()))


def cmd_corpus(out_dir: str, assertions: str | None = None, fixtures=CORPUS, workers: int | None = None) -> int:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = tempfile.NamedTemporaryFile(dir=out, prefix=".probe.", delete=True)
        probe.close()
    except OSError as exc:
        print(f"regseq: output directory {out} is not writable: {exc}", file=sys.stderr)
        return 2
    checks = load_assertions(assertions) if assertions is not None else {}

    with ThreadPoolExecutor(max_workers=workers or min(len(fixtures), os.cpu_count() or 1)) as pool:
        results = list(pool.map(_run_fixture, fixtures))

    index = {"fixtures": [], "assertions": {"checked": 0, "failed": 0}}
    failed = 0
    for f, text in results:
        name = f"{f.name}.json"
        try:
            _write_atomic(out / name, text)
        except OSError as exc:
            print(f"regseq: cannot write {out / name}: {exc}", file=sys.stderr)
            return 2
        entry = {"fixture": f.name, "spec": f.spec.label(), "truncation": f.n, "report": name}
        if f.name in checks:
            doc = json.loads(text)
            res = [evaluate_assertion(doc, a) for a in checks[f.name]]
            bad = [msg for ok, msg in res if not ok]
            entry["assertions"] = {"checked": len(res), "failed": bad}
            index["assertions"]["checked"] += len(res)
            failed += len(bad)
            for msg in bad:
                print(f"FAIL {f.name}: {msg}", file=sys.stderr)
        index["fixtures"].append(entry)
    index["assertions"]["failed"] = failed
    try:
        _write_atomic(out / "index.json", json.dumps(index, indent=2) + "\n")
    except OSError as exc:
        print(f"regseq: cannot write index: {exc}", file=sys.stderr)
        return 2
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regseq", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    n_help = "truncation (default: $REGSEQ_DEFAULT_N or 100000)"

    a = sub.add_parser("analyze", help="write a JSON report for one sequence")
    a.add_argument("--spec", required=True)
    a.add_argument("--n", type=int, default=None, help=n_help)
    a.add_argument("--out", default=None, help="output path (default: stdout)")

    c = sub.add_parser("compare", help="test both equivalence relations between two sequences")
    c.add_argument("--spec", required=True)
    c.add_argument("--spec-b", required=True)
    c.add_argument("--n", type=int, default=None, help=n_help)
    c.add_argument("--out", default=None)

    p = sub.add_parser("plot-data", help="write (log t, M, d_M) as TSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, default=None, help=n_help)
    p.add_argument("--out", default=None)

    k = sub.add_parser("corpus", help="analyze the built-in fixtures")
    k.add_argument("--out", required=True, help="output directory")
    k.add_argument("--assert", dest="assertions", nargs="?", const="builtin", default=None,
                   help="check expectations (built-in set, or a JSON file); exit 1 on failure")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    n = getattr(args, "n", None) or default_n()
    try:
        if args.command == "analyze":
            return cmd_analyze(args.spec, n, args.out)
        if args.command == "compare":
            return cmd_compare(args.spec, args.spec_b, n, args.out)
        if args.command == "plot-data":
            return cmd_plot_data(args.spec, n, args.out)
        return cmd_corpus(args.out, args.assertions)
    except (SpecError, ValueError) as exc:
        print(f"regseq: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"regseq: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
