"""``uvlab`` command line.

Exit codes: 0 pass, 1 counterexample (or the checked property fails),
2 input error, 3 size limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import faults, limits
from ..applications import embed_bn, regular_partition, split_complete
from ..balg import FiniteBA, powerset_ba
from ..dictionary import (all_rows, atoms_row, canonical_extension, eta_row,
                          macneille, maximal_rows, meet_join_formulas,
                          principal_rows, relativization_row, uv_sum, zeta_row,
                          DictReport)
from ..duality import check_representation, uv_dual
from ..errors import CounterexampleError, InputError, SizeLimit, UvlabError
from ..uvspace import (FiniteSpace, coro, coro_algebra, is_homeomorphism,
                       is_p_morphism, is_spectral, is_spectral_map, is_uv_embedding,
                       is_uv_map, is_uv_space)
from . import io
from .dot import export_dot
from .enumerate import enumerate_posets, free_ba, random_subalgebra

LARGE = {"MAX_ATOMS": 10, "MAX_POSET_LABELED": 7, "MAX_POSET_ISO": 10, "MAX_HOMS": 10 ** 8}

DICT_ROWS = ("eta", "zeta", "principal", "maximal", "atoms", "relativization",
             "meet-join", "canonical-extension", "macneille", "all")


class Output:
    """Collects the result document; text mode prints a flat rendering."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, doc, text: str | None = None):
        if self.fmt == "json" or text is None:
            sys.stdout.write(io.dumps(doc))
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_doc(path: str):
    if path == "-":
        try:
            return json.load(sys.stdin), None
        except json.JSONDecodeError as exc:
            raise io.SchemaError(f"stdin: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    return io.load_json(path), Path(path).parent


def _is_ba_doc(doc) -> bool:
    return isinstance(doc, dict) and ("atoms" in doc or "carrier" in doc)


def _read_ba(path) -> FiniteBA:
    doc, _ = _read_doc(path)
    return io.parse_ba(doc)


def _read_space(path) -> FiniteSpace:
    """A space document, or an algebra document standing for its dual."""
    doc, _ = _read_doc(path)
    if _is_ba_doc(doc):
        return uv_dual(io.parse_ba(doc)).space
    return io.parse_space(doc)


def _space_text(X: FiniteSpace) -> str:
    lines = [f"points {X.n}: {' '.join(X.labels)}"]
    lines += [f"{X.labels[a]} < {X.labels[b]}" for a, b in sorted(X.order.covers)]
    return "\n".join(lines)


def _report_dir(args) -> Path | None:
    if not args.report_dir:
        return None
    d = Path(args.report_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _maybe_png(args, X: FiniteSpace, stem: str):
    if not args.png:
        return
    from .plotting import hasse_png
    d = _report_dir(args) or Path(".")
    hasse_png(X, d / f"{stem}.png")


# -- verbs --------------------------------------------------------------------

def cmd_gen(args, out: Output) -> int:
    if args.kind == "powerset":
        A = powerset_ba(args.size)
    elif args.kind == "free":
        A = free_ba(args.size)
    elif args.kind == "random-subalgebra":
        A = random_subalgebra(args.size, args.seed)
    else:
        docs = [io.emit_poset(P) for P in enumerate_posets(args.size, up_to_iso=args.iso,
                                                           min_n=args.size)]
        out.emit(docs, "\n".join(json.dumps(d, ensure_ascii=False) for d in docs))
        return 0
    doc = io.emit_ba(A)
    out.emit(doc, f"{A.name}: {A.k} atoms, {A.size} elements; atoms {' '.join(A.labels)}")
    return 0


def cmd_dual(args, out: Output) -> int:
    A = _read_ba(args.file)
    D = uv_dual(A)
    rep = check_representation(A)
    X = D.space
    _maybe_png(args, X, "dual")
    doc = io.emit_space(X)
    doc["hat"] = rep.as_dict()
    out.emit(doc, _space_text(X))
    return 0


def _report_lines(clauses: dict) -> str:
    return "\n".join(f"{k}: {'yes' if v else 'no'}" for k, v in clauses.items())


def cmd_check(args, out: Output) -> int:
    if args.what == "map":
        doc, base = _read_doc(args.file)
        f = io.parse_map(doc, base)
        clauses = {"spectral": is_spectral_map(f), "p-morphism": is_p_morphism(f),
                   "uv-map": is_uv_map(f), "uv-embedding": is_uv_embedding(f),
                   "homeomorphism": is_homeomorphism(f)}
        out.emit(clauses, _report_lines(clauses))
        return 0 if clauses["uv-map"] else 1
    X = _read_space(args.file)
    rep = is_spectral(X) if args.what == "spectral" else is_uv_space(X)
    d = rep.as_dict()
    text = _report_lines(d["clauses"])
    if d["failures"]:
        text += "\n" + "\n".join(d["failures"])
    out.emit(d, text)
    return 0 if rep else 1


def _rows_for(row: str, A: FiniteBA) -> list[DictReport]:
    if row == "all":
        return all_rows(A)
    D = uv_dual(A)
    X = D.space
    if row == "eta":
        return [eta_row(D)]
    if row == "zeta":
        return [zeta_row(D)]
    if row == "principal":
        return [principal_rows(D)]
    if row == "maximal":
        return [maximal_rows(D)]
    if row == "atoms":
        return [atoms_row(X)]
    if row == "relativization":
        return [relativization_row(X, U) for U in coro(X) if U]
    if row == "meet-join":
        fam = coro(X)
        return [meet_join_formulas(X, fam), meet_join_formulas(X, [])]
    if row == "canonical-extension":
        return [DictReport("canonical-extension", A.k, canonical_extension(X).k, {})]
    return [macneille(X)]


def cmd_dict(args, out: Output) -> int:
    doc, _ = _read_doc(args.file)
    A = io.parse_ba(doc) if _is_ba_doc(doc) else coro_algebra(io.parse_space(doc))
    reports = _rows_for(args.row, A)
    docs = [r.as_dict() for r in reports]
    text = "\n".join(f"{r.row}: {'PASS' if r.passed else 'FAIL'} ({r.left} / {r.right})"
                     for r in reports)
    out.emit(docs, text)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sum(args, out: Output) -> int:
    S = uv_sum(_read_space(args.left), _read_space(args.right))
    _maybe_png(args, S, "sum")
    out.emit(io.emit_space(S), _space_text(S))
    return 0


def cmd_partition(args, out: Output) -> int:
    X = _read_space(args.file)
    part = regular_partition(X, args.n)
    out.emit(io.emit_partition(X, part.blocks),
             "\n".join(" ".join(names) for names in part.names()))
    return 0


def cmd_embed(args, out: Output) -> int:
    X = _read_space(args.file)
    f, e = embed_bn(X, args.n)
    doc = io.emit_map(f)
    doc["hom"] = {e.dom.element_name(a): X.names(e.cod.origin[e.table[a]])
                  for a in e.dom.elements()}
    text = "\n".join(f"{x} -> {y}" for x, y in f.as_names().items())
    out.emit(doc, text)
    return 0


def cmd_complete_split(args, out: Output) -> int:
    X = _read_space(args.file)
    s = split_complete(X)
    doc = {"atomic": io.emit_space(s.atomic),
           "atomless": io.emit_space(s.atomless) if s.atomless is not None else None,
           "atomic_set": X.names(s.atomic_set), "trivial": s.trivial}
    text = (f"atomic part: {' '.join(X.names(s.atomic_set))}\n"
            f"atomless part: {'empty' if s.atomless is None else ' '.join(s.atomless.labels)}")
    out.emit(doc, text)
    return 0


def cmd_export_dot(args, out: Output) -> int:
    X = _read_space(args.file)
    sys.stdout.write(export_dot(X, args.name))
    _maybe_png(args, X, "hasse")
    return 0


def _write_run(args, run):
    d = _report_dir(args)
    if d is None:
        return
    with open(d / "records.jsonl", "w", encoding="utf-8") as fh:
        for r in run.jsonl_records():
            fh.write(json.dumps(r, ensure_ascii=False) + "\n")
    summary = {"bounds": run.bounds, "passed": run.passed, "seconds": round(run.seconds, 3),
               "theorems": run.per_theorem()}
    (d / "summary.json").write_text(io.dumps(summary), encoding="utf-8")
    from .plotting import timing_chart
    timing_chart(run, d / "timing.png")


def cmd_verify(args, out: Output) -> int:
    from .verify import verify_all
    run = verify_all(args.max_atoms, args.max_poset, args.theorem or None, jobs=args.jobs,
                     seed=args.seed, sample=args.sample, fault_names=faults.current())
    _write_run(args, run)
    if args.format == "json":
        for r in run.jsonl_records():
            sys.stdout.write(json.dumps(r, ensure_ascii=False) + "\n")
    else:
        for name, s in run.per_theorem().items():
            status = "PASS" if not s["failed"] else "FAIL"
            sys.stdout.write(f"{status} {name} ({s['instances']} instances, {s['failed']} failed)\n")
        for r in run.failures():
            sys.stdout.write("replay: " + json.dumps(r["replay"], ensure_ascii=False) + "\n")
    return 0 if run.passed else 1


def cmd_replay(args, out: Output) -> int:
    from .verify import CHECKS, replay
    text = args.payload
    if Path(text).is_file():
        payload = io.load_json(text)
    else:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise io.SchemaError(f"payload: {exc.msg}") from None
    if not isinstance(payload, dict) or payload.get("theorem") not in CHECKS \
            or "instance" not in payload:
        raise io.SchemaError("payload needs a known theorem and an instance")
    for name in payload.get("faults", ()):
        if name not in faults.KNOWN:
            raise io.SchemaError(f"unknown fault {name!r}", "/faults")
    r = replay(payload)
    r.pop("seconds", None)
    out.emit(r, ("PASS" if r["passed"] else "FAIL") + " " + json.dumps(r, ensure_ascii=False))
    return 0 if r["passed"] else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--allow-large", action="store_true",
                        help="lift the default size limits")
    common.add_argument("--report-dir", help="directory for figures and run records")
    common.add_argument("--png", action="store_true", help="also render a Hasse diagram")
    common.add_argument("--inject-fault", action="append", default=[], choices=faults.KNOWN,
                        help="deliberately break an operation (verifier self-test)")

    # shared flags live on each verb, so they go after the verb name
    p = argparse.ArgumentParser(prog="uvlab", description="Finite UV-duality workbench.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        s = sub.add_parser(name, help=help_, parents=[common])
        s.set_defaults(fn=fn)
        return s

    s = verb("gen", cmd_gen, "generate an algebra or a list of posets")
    s.add_argument("kind", choices=("powerset", "free", "random-subalgebra", "posets"))
    s.add_argument("size", type=int, help="atoms, generators, or poset size")
    s.add_argument("--iso", action="store_true", help="posets up to isomorphism")

    s = verb("dual", cmd_dual, "dual space of an algebra")
    s.add_argument("file")

    s = verb("check", cmd_check, "classify a space or a map")
    s.add_argument("what", choices=("spectral", "uv", "map"))
    s.add_argument("file")

    s = verb("dict", cmd_dict, "run a row of the duality dictionary")
    s.add_argument("row", choices=DICT_ROWS)
    s.add_argument("file")

    s = verb("sum", cmd_sum, "UV-sum of two spaces")
    s.add_argument("left")
    s.add_argument("right")

    s = verb("partition", cmd_partition, "regular partition into n+1 blocks")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("file")

    s = verb("embed", cmd_embed, "UV-map onto the dual of the n-atom algebra")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("file")

    s = verb("complete-split", cmd_complete_split, "atomless and atomic parts")
    s.add_argument("file")

    s = verb("export-dot", cmd_export_dot, "Hasse diagram as Graphviz DOT")
    s.add_argument("file")
    s.add_argument("--name")

    s = verb("verify", cmd_verify, "run every theorem check")
    s.add_argument("--max-atoms", type=int, default=3)
    s.add_argument("--max-poset", type=int, default=5)
    s.add_argument("--sample", type=int, default=200, help="posets sampled per size above 5")
    s.add_argument("--theorem", action="append", help="restrict to a theorem (repeatable)")

    s = verb("replay", cmd_replay, "re-run a failure payload")
    s.add_argument("payload", help="JSON text or a file holding it")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.allow_large:
        for k, v in LARGE.items():
            setattr(limits, k, v)
    out = Output(args.format)
    try:
        with faults.injected(*args.inject_fault):
            return args.fn(args, out)
    except CounterexampleError as exc:
        sys.stdout.write(io.dumps({"theorem": exc.theorem, "witness": exc.witness}))
        return 1
    except SizeLimit as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except UvlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
