"""Command-line front end: ``meshct <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import algebra as alg
from . import tilting as tl
from . import translation as tr
from .dynkin import UnsupportedType, folding_datum
from .linalg import default_field, field_from_name
from .matrices import (LabeledIntMatrix, OrbitPartitionSpec, fold_matrix, fz_mutate,
                       is_admissible, is_gamma_action, is_skew_symmetrizable, uw_factors)
from .mesh import VertexOutsideRectangle, hammock

log = logging.getLogger("meshct")


class UsageError(Exception):
    pass


def _field(args):
    if args.field:
        return field_from_name(args.field)
    return default_field()


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _meta(args, field) -> dict:
    return {"command": args.command, "seed": args.seed, "field": field.name}


def split_sequence(text: str) -> list:
    """Split ``"{1,2}@1,3_1"`` on commas outside braces."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_vertex(text: str):
    parts = text.strip().strip("()").split(",")
    if len(parts) != 2:
        raise UsageError(f"vertex must look like (i,v), got {text!r}")
    return int(parts[0]), int(parts[1])


def _start(tag, field):
    return tl.start_module(tr.fold(folding_datum(tag)), field)


# ---------------------------------------------------------------------------
# commands


def cmd_start(args) -> int:
    field = _field(args)
    T = _start(args.type, field)
    if args.format == "dot":
        q, _ = tl.end_quiver_and_cartan(T)
        _emit(args, q.to_dot())
    elif args.format == "json":
        data = T.to_json_dict(seed=args.seed)
        data["meta"] = _meta(args, field)
        _emit(args, json.dumps(data, indent=2) + "\n")
    else:
        lines = [f"type: {T.pres.spec.folded_type}  field: {field.name}  seed: {args.seed}",
                 f"summands: {len(T)}  orbits: {len(T.orbits)}"]
        for l, M in T.summands:
            flag = "P" if T.is_projective(l) else " "
            lines.append(f"  {flag} T({l}): {alg.loewy_diagram(M)}")
        lines.append("orbits: " + " ".join(T.orbit_names()))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def run_sequence(T, seq, seed, identities=True) -> tuple:
    """Mutate along ``seq``; returns (final module, per-step log records)."""
    steps = []
    for k, direction in enumerate(seq):
        try:
            orbit = tl.resolve_direction(T, direction)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        Bt, _, _ = tl.exchange_matrix(T)
        admissible = is_admissible(Bt, T.partition())
        Ts, rec = tl.mutate(T, orbit[0], seed=None if seed is None else seed + k)
        results = tl.identity_suite(T, Ts, orbit[0]) if identities else []
        step = {
            "step": k + 1,
            "orbit": rec.direction,
            "new_orbit": tl.orbit_name(Ts.orbits[T.orbits.index(orbit)]),
            "middle_term": rec.forward[0].middle_labels,
            "admissible": admissible,
            "identities": {r.name: r.status for r in results},
        }
        log.info("step %d: mutated %s -> %s, admissible=%s, identities=%s", k + 1,
                 step["orbit"], step["new_orbit"], admissible,
                 ",".join(f"{n}:{s}" for n, s in step["identities"].items()))
        steps.append(step)
        T = Ts
    return T, steps


def cmd_mutate(args) -> int:
    field = _field(args)
    T0 = _start(args.type, field)
    seq = split_sequence(args.seq)
    if not seq:
        raise UsageError("empty mutation sequence")
    T, steps = run_sequence(T0, seq, args.seed, identities=not args.no_identities)
    back = tl.summand_matching(T0, T) is not None
    failed = any(s == "fail" for st in steps for s in st["identities"].values())
    if args.format == "dot":
        q, _ = tl.end_quiver_and_cartan(T)
        _emit(args, q.to_dot())
    elif args.format == "json":
        data = T.to_json_dict(seed=args.seed)
        data["meta"] = _meta(args, field)
        data["steps"] = steps
        data["returns_to_start"] = back
        _emit(args, json.dumps(data, indent=2) + "\n")
    else:
        lines = [f"type: {T.pres.spec.folded_type}  field: {field.name}  seed: {args.seed}"]
        for st in steps:
            ids = " ".join(f"[{n}: {s}]" for n, s in st["identities"].items())
            lines.append(f"step {st['step']}: {st['orbit']} -> {st['new_orbit']}  "
                         f"middle: {' '.join(st['middle_term'])}  "
                         f"admissible: {'yes' if st['admissible'] else 'no'}  {ids}".rstrip())
        lines.append("orbits: " + " ".join(T.orbit_names()))
        lines.append(f"involution: {'ok' if back else 'no'}")
        _emit(args, "\n".join(lines) + "\n")
    return 1 if failed else 0


def _read_matrix(path: str) -> LabeledIntMatrix:
    text = Path(path).read_text()
    if path.endswith(".json"):
        return LabeledIntMatrix.from_json(text)
    return LabeledIntMatrix.from_csv(text)


def _write_matrix(args, A: LabeledIntMatrix) -> str:
    return A.to_json() + "\n" if args.format == "json" else A.to_csv()


def cmd_matrix(args) -> int:
    A = _read_matrix(args.file)
    part = None
    if args.partition:
        part = OrbitPartitionSpec.from_json(Path(args.partition).read_text())
    if args.action == "mutate":
        if args.at is None:
            raise UsageError("matrix mutate needs --at")
        k = int(args.at) if args.at.isdigit() and args.at not in A.row_labels else args.at
        if args.format == "json":
            U, W = uw_factors(A, k)
            data = {"mutated": json.loads(fz_mutate(A, k).to_json()),
                    "U": json.loads(U.to_json()), "W": json.loads(W.to_json())}
            _emit(args, json.dumps(data, indent=2) + "\n")
        else:
            _emit(args, fz_mutate(A, k).to_csv())
        return 0
    if args.action == "fold":
        if part is None:
            raise UsageError("matrix fold needs --partition")
        _emit(args, _write_matrix(args, fold_matrix(A, part)))
        return 0
    # check
    report = {"square": A.is_square()}
    if A.is_square():
        report["zero_diagonal"] = all(A.entries[i][i] == 0 for i in range(len(A.entries)))
        D = is_skew_symmetrizable(A)
        report["skew_symmetrizer"] = D
    if part is not None:
        report["gamma_action"] = is_gamma_action(A, part)
        if report["gamma_action"]:
            report["admissible"] = is_admissible(A, part)
    if args.format == "json":
        _emit(args, json.dumps(report, indent=2) + "\n")
    else:
        _emit(args, "".join(f"{k}: {v}\n" for k, v in report.items()))
    return 0


def cmd_hammock(args) -> int:
    spec = folding_datum(args.type)
    x = parse_vertex(args.vertex)
    if x[1] not in spec.base_vertices:
        raise UsageError(f"vertex {x[1]} not in {spec.folded_type}")
    h = hammock(spec, x)
    if args.format == "json":
        _emit(args, json.dumps(h.as_json_dict(), indent=2) + "\n")
    else:
        _emit(args, f"hammock of {x} in Z{spec.base_type}\n{h.as_text()}\n")
    return 0


def verify_suite(tag: str, suite: str, field_name: str, seed: int, steps: int) -> tuple:
    """Run one suite on one type; returns (tag, ok, lines)."""
    field = field_from_name(field_name)
    T = _start(tag, field)
    lines = []
    ok = True
    if suite == "rigidity":
        rng = random.Random(seed)
        bad = T.rigidity_failures()
        lines.append(f"start: {'rigid' if not bad else f'NOT rigid {bad[:3]}'}")
        ok = not bad
        for k in range(steps):
            cand = [o for o in T.orbits if not T.is_projective(o[0])]
            o = rng.choice(cand)
            T, _ = tl.mutate(T, o[0], seed=seed + k)
            bad = T.rigidity_failures()
            ok = ok and not bad
            lines.append(f"step {k + 1} at {tl.orbit_name(o)}: "
                         f"{'rigid' if not bad else 'NOT rigid'}")
    elif suite == "homprofile":
        p = tl.homological_profile(T)
        ok = p.gl_dim == 3 and p.dom_dim == 3
        lines.append(f"gl.dim: {p.gl_dim}  dom.dim: {p.dom_dim}")
        dual = tl.ext_duality_failures(T, p.table)
        ok = ok and not dual
        lines.append(f"Ext duality of simples: {'ok' if not dual else dual[:3]}")
    elif suite == "involution":
        for o in T.orbits:
            if T.is_projective(o[0]):
                continue
            Ts, _ = tl.mutate(T, o[0], seed=seed)
            T2, _ = tl.mutate(Ts, Ts.orbits[T.orbits.index(o)][0], seed=seed)
            good = tl.summand_matching(T, T2) is not None
            ok = ok and good
            lines.append(f"{tl.orbit_name(o)}: {'ok' if good else 'FAIL'}")
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return tag, ok, lines


def cmd_verify(args) -> int:
    field = _field(args)
    jobs = [(t, args.suite, field.name, args.seed, args.steps) for t in args.type]
    if len(jobs) > 1 and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(verify_suite, *zip(*jobs)))
    else:
        results = [verify_suite(*j) for j in jobs]
    out, all_ok = [], True
    for tag, ok, lines in results:
        all_ok = all_ok and ok
        out.append(f"{tag} {args.suite}: {'ok' if ok else 'FAIL'}  (seed {args.seed})")
        out.extend("  " + l for l in lines)
    if args.format == "json":
        data = {"meta": _meta(args, field),
                "results": [{"type": t, "ok": ok, "lines": ls} for t, ok, ls in results]}
        _emit(args, json.dumps(data, indent=2) + "\n")
    else:
        _emit(args, "\n".join(out) + "\n")
    return 0 if all_ok else 1


def cmd_example(args) -> int:
    from .golden import run_b3_example

    if args.type.lower() not in ("b3", "b(3)"):
        raise UsageError("only the b3 example is available")
    field = _field(args)
    run = run_b3_example(field, args.seed)
    report = run.report(args.seed, field.name)
    if args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, text in run.artifacts:
            (outdir / name).write_text(text)
        (outdir / "report.txt").write_text(report)
        sys.stdout.write(report)
    else:
        for name, text in run.artifacts:
            sys.stdout.write(f"# {name}\n{text}")
        sys.stdout.write(f"# report.txt\n{report}")
    return 0 if run.ok else 1


def cmd_export(args) -> int:
    field = _field(args)
    spec = folding_datum(args.type)
    if args.what == "quiver":
        q = tr.fold(spec).quiver()
    elif args.what == "window":
        lo, hi = args.levels
        q = tr.build_window(spec, lo, hi).bound_quiver()
    elif args.what == "start":
        T = _start(args.type, field)
        data = {"meta": _meta(args, field), "orbits": T.orbits,
                "summands": [{"label": l, **M.to_json_dict()} for l, M in T.summands]}
        _emit(args, json.dumps(data, indent=2) + "\n")
        return 0
    else:
        raise UsageError(f"unknown export target {args.what!r}")
    if args.format == "dot":
        _emit(args, tr.to_dot(q))
    else:
        _emit(args, tr.to_json(q) + "\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (recorded in output)")
    common.add_argument("--format", choices=["text", "json", "dot", "csv"], default="text")
    common.add_argument("--output", "-o", help="write to this path instead of stdout")
    common.add_argument("--field", choices=["rat", "fp32003"],
                        help="coefficient field (default: $MESHCT_FIELD or rat)")
    common.add_argument("-v", "--verbose", action="store_true", help="log mutation steps")

    p = argparse.ArgumentParser(prog="meshct", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("start", parents=[common], help="build the start module")
    s.add_argument("type")
    s.set_defaults(func=cmd_start)

    s = sub.add_parser("mutate", parents=[common], help="mutate the start module along a sequence")
    s.add_argument("type")
    s.add_argument("--seq", required=True,
                   help='orbits to mutate, e.g. "{1,2}@1,{1,2}@1" or labels like 1_1')
    s.add_argument("--no-identities", action="store_true",
                   help="skip the Cartan identity suite at each step")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("matrix", parents=[common], help="integer matrix operations")
    s.add_argument("action", choices=["mutate", "fold", "check"])
    s.add_argument("file")
    s.add_argument("--at", help="mutation direction (label or 0-based index)")
    s.add_argument("--partition", help="JSON orbit partition file")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("hammock", parents=[common], help="knitted Hom dimensions from a vertex")
    s.add_argument("type")
    s.add_argument("vertex", help="(i,v)")
    s.set_defaults(func=cmd_hammock)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("type", nargs="+")
    s.add_argument("--suite", required=True, choices=["rigidity", "homprofile", "involution"])
    s.add_argument("--steps", type=int, default=5, help="mutation steps for the rigidity suite")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("example", parents=[common], help="reproduce the worked B3 example")
    s.add_argument("type", nargs="?", default="b3")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("export", parents=[common], help="export quivers or the start module")
    s.add_argument("type")
    s.add_argument("--what", choices=["quiver", "window", "start"], default="quiver")
    s.add_argument("--levels", type=int, nargs=2, default=(0, 1), metavar=("LO", "HI"))
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, UnsupportedType, VertexOutsideRectangle, tr.EmptyRange,
            FileNotFoundError) as exc:
        print(f"meshct: error: {exc}", file=sys.stderr)
        return 2
    except tl.MutationAtProjective as exc:
        print(f"meshct: error: {exc}", file=sys.stderr)
        return 2
    except (tl.RigidityViolation, tl.NotInjective, tl.ResolutionCap) as exc:
        print(f"meshct: verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
