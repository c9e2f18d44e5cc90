"""Batch command-line interface.

    adsp decide INSTANCE... [--mode auto|general|nilpotent|generic]
    adsp rigid INSTANCE...
    adsp construct INSTANCE [--out PATH]
    adsp verify INSTANCE SOLUTION
    adsp roots INSTANCE...

Exactly one JSON document goes to stdout; diagnostics go to stderr.
Exit codes: 0 computed, 1 invalid input, 2 internal check failed,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .classdata import GENERIC_STATE_CAP, ClassTuple, is_generic, normalize, trace_condition
from .construct import MatrixSolution, construct_rigid, verify_solution
from .errors import InputError, InternalError, ResourceError
from .rootsys import BOX_CAP, build_instance, classify_root, defect_p, enumerate_Rlambda
from .sigma import classify_nilpotent, decide, decide_generic, is_rigid

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_RESOURCE = 0, 1, 2, 3
MODES = ("auto", "general", "nilpotent", "generic")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_instance(path: str) -> tuple[ClassTuple, str | None]:
    data = _read_json(path)
    t = ClassTuple.from_json(data)
    mode = data.get("mode")
    if mode is not None and mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    return t, mode


def _instance_json(t: ClassTuple):
    q, alpha, lam = build_instance([normalize(c) for c in t])
    head = {
        "arm_lengths": list(q.arm_lengths),
        "alpha": q.vector_to_json(alpha),
        "lambda": q.vector_to_json(lam, rational=True),
        "p_alpha": defect_p(q, alpha),
    }
    return (q, alpha, lam), head


def route(t: ClassTuple, lam, mode: str, state_cap: int) -> str:
    if mode != "auto":
        return mode
    if not any(lam):
        return "nilpotent"
    if trace_condition(t) and is_generic(t, state_cap):
        return "generic"
    return "general"


def cmd_decide(path: str, mode: str | None, box_cap: int, state_cap: int) -> dict:
    t, file_mode = load_instance(path)
    (q, alpha, lam), out = _instance_json(t)
    used = route(t, lam, mode or file_mode or "auto", state_cap)
    if used == "nilpotent":
        d = classify_nilpotent(q, alpha, lam)
    elif used == "generic":
        d = decide_generic(q, alpha, lam, t)
    else:
        d = decide(q, alpha, lam, box_cap)
    out.update(d.to_json(q))
    out["mode"] = used
    return out


def cmd_rigid(path: str, box_cap: int) -> dict:
    t, _ = load_instance(path)
    (q, alpha, lam), _ = _instance_json(t)
    return {"rigid": is_rigid(q, alpha, lam, box_cap)}


def cmd_roots(path: str, box_cap: int) -> dict:
    t, _ = load_instance(path)
    (q, alpha, lam), out = _instance_json(t)
    out["root_class"] = classify_root(q, alpha).value
    out["r_lambda_count"] = len(enumerate_Rlambda(q, alpha, lam, box_cap))
    return out


def cmd_construct(path: str, out_path: str | None, box_cap: int) -> dict:
    t, _ = load_instance(path)
    sol = construct_rigid(t, box_cap=box_cap)
    report = verify_solution(t, sol)
    if out_path is None:
        return {**sol.to_json(), "verify": report.to_json()}
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(sol.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise InputError(f"cannot write {out_path}: {exc.strerror}") from exc
    return {"out": out_path, "verify": report.to_json()}


def cmd_verify(path: str, solution_path: str) -> dict:
    t, _ = load_instance(path)
    sol = MatrixSolution.from_json(_read_json(solution_path))
    return verify_solution(t, sol).to_json()


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ResourceError):
        return EXIT_RESOURCE
    if isinstance(exc, InternalError):
        return EXIT_INTERNAL
    return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adsp", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p):
        p.add_argument("--box-cap", type=int, default=BOX_CAP, help="max lattice points enumerated (default %(default)s)")
        p.add_argument("--state-cap", type=int, default=GENERIC_STATE_CAP, help="max genericity DP states (default %(default)s)")

    p = sub.add_parser("decide", help="decide existence of an irreducible solution")
    p.add_argument("instances", nargs="+")
    p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--jobs", type=int, default=1)
    caps(p)

    p = sub.add_parser("rigid", help="is there a unique irreducible solution")
    p.add_argument("instances", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    caps(p)

    p = sub.add_parser("roots", help="root-system data of an instance")
    p.add_argument("instances", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    caps(p)

    p = sub.add_parser("construct", help="build the rigid solution")
    p.add_argument("instance")
    p.add_argument("--out", default=None)
    caps(p)

    p = sub.add_parser("verify", help="check a candidate solution")
    p.add_argument("instance")
    p.add_argument("solution")
    return parser


def _tasks(args):
    if args.command == "decide":
        return [lambda f=f: cmd_decide(f, args.mode, args.box_cap, args.state_cap) for f in args.instances]
    if args.command == "rigid":
        return [lambda f=f: cmd_rigid(f, args.box_cap) for f in args.instances]
    if args.command == "roots":
        return [lambda f=f: cmd_roots(f, args.box_cap) for f in args.instances]
    if args.command == "construct":
        return [lambda: cmd_construct(args.instance, args.out, args.box_cap)]
    return [lambda: cmd_verify(args.instance, args.solution)]


def _run(task):
    try:
        return task(), None
    except (InputError, InternalError, ResourceError) as exc:
        return None, exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    tasks = _tasks(args)
    jobs = max(1, getattr(args, "jobs", 1))
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, tasks))
    else:
        results = [_run(t) for t in tasks]
    for _, exc in results:
        if exc is not None:
            print(f"adsp: {type(exc).__name__}: {exc}", file=sys.stderr)
            return _exit_code(exc)
    if len(results) == 1:
        doc = results[0][0]
    else:
        doc = {"results": [{"file": f, **r} for f, (r, _) in zip(args.instances, results)]}
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
