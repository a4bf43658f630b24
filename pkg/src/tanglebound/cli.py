"""Command-line front end: JSON state I/O, invariant dumps, bound reports,
class tables, GHZ/W reference curves, comparison sweeps, and the selftest.

All numeric output is JSON on stdout; diagnostics go to stderr. Exit codes:
0 success, 1 input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import acceptance, bounds, classes, invariants, qstate, rank2
from .errors import DidNotConverge, TangleboundError


def parse_complex(text: str) -> complex:
    """Parse "re+imi" strings such as 2, 2+0i, 0.5-1.2i, -1.5i, i."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    if s.endswith("i"):
        body = s[:-1]
        # split into real and imaginary parts at the last sign that is not an exponent sign
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                re_part, im_part = body[:k], body[k:]
                break
        else:
            re_part, im_part = "", body or "+1"
        if im_part in ("+", "-"):
            im_part += "1"
        if not im_part:
            im_part = "1"
        return complex(float(re_part) if re_part else 0.0, float(im_part))
    return complex(float(s), 0.0)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(obj, output: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _thread_count() -> int:
    raw = os.environ.get("TANGLEBOUND_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _cmd_invariants(args) -> int:
    state = qstate.state_from_json(_load_json(args.state))
    if not isinstance(state, qstate.PureState4):
        raise TangleboundError("invariants needs a four-qubit state")
    state = qstate.normalize(state)
    inv = invariants.invariant_set(state, args.traced)
    _emit(invariants.invariants_to_json(inv), args.output)
    return 0


def _cmd_bound(args) -> int:
    state = qstate.state_from_json(_load_json(args.state))
    if not isinstance(state, qstate.PureState4):
        raise TangleboundError("bound needs a four-qubit state")
    state = qstate.normalize(state)
    report = bounds.best_bound(
        state, args.triple,
        n_theta=args.n_theta, n_phi=args.n_phi,
        refine_iters=args.refine_iters, zero_tol=args.zero_tol,
    )
    _emit(bounds.report_to_json(report), args.output)
    return 0


def _class_cell(spec: classes.ClassSpec, triple: str) -> dict:
    cell: dict = {
        "class": spec.id,
        "triple": triple,
        "params": {k: [v.real, v.imag] for k, v in spec.params().items()},
    }
    printed = classes.paper_bound(spec, triple)
    cell["paper_bound"] = printed
    literature = {}
    for source in ("regu", "osterloh"):
        try:
            literature[source] = classes.literature_bound(spec, triple, source)
        except TangleboundError:
            pass
    cell["literature"] = literature
    if triple == classes.FIXTURE_TRIPLE:
        cell["source"] = "fixture"   # triple excludes the focus qubit: never computed
        return cell
    report = bounds.best_bound(classes.representative(spec), triple)
    cell["best_bound"] = report.best
    cell["F"] = report.tightness_f
    cell["methods"] = bounds.report_to_json(report)["methods"]
    if printed is not None:
        cell["delta_vs_paper"] = report.best - printed
    for source, value in literature.items():
        cell[f"delta_vs_{source}"] = report.best - value
    return cell


def _cmd_classes(args) -> int:
    values = []
    for name in classes.CLASS_PARAMS[args.id]:
        raw = getattr(args, name)
        if raw is None:
            raise TangleboundError(f"class {args.id} requires --{name}")
        values.append(parse_complex(raw))
    for name in ("a", "b", "c", "d"):
        if name not in classes.CLASS_PARAMS[args.id] and getattr(args, name) is not None:
            raise TangleboundError(f"class {args.id} does not take --{name}")
    spec = classes.spec_from_values(args.id, *values)
    _emit(_class_cell(spec, args.triple), args.output)
    return 0


def _cmd_ghzw(args) -> int:
    p = args.p
    thr = rank2.ghzw_threshold()
    witness, deco = rank2.decompose_rank2(
        rank2.ghzw_rho(p), theta_samples=args.theta_samples, grid=args.grid
    )
    out = {
        "p": p,
        "threshold": thr,
        "x0": rank2.ghzw_x0(p) if p < 1.0 else None,
        "bound": rank2.ghzw_bound(p),
        "scan_bound": {"method": witness.method, "value": witness.value},
        "decomposition": _deco_json(deco),
    }
    _emit(out, args.output)
    return 0


def _cmd_decompose(args) -> int:
    rho = qstate.density_from_json(_load_json(args.rho))
    witness, deco = rank2.decompose_rank2(
        rho, theta_samples=args.theta_samples, grid=args.grid
    )
    out = {
        "bound": {
            "method": witness.method,
            "value": witness.value,
            "x": None if witness.witness_x is None
            else [witness.witness_x.real, witness.witness_x.imag],
        },
        "decomposition": _deco_json(deco),
    }
    _emit(out, args.output)
    return 0


def _deco_json(deco: rank2.Decomposition) -> dict:
    # member states use the standard wire format so they round-trip through
    # the state readers
    return {
        "members": [
            {
                "weight": w,
                "tangle": invariants.three_tangle_pure(s),
                "state": qstate.state_to_json(s),
            }
            for w, s in deco.members
        ]
    }


def _parse_grid_spec(text: str) -> dict[str, np.ndarray]:
    """a=0.2:2:10,b=0.2:2:10 -> name -> real grid values."""
    grids = {}
    for part in text.split(","):
        name, _, rng = part.partition("=")
        name = name.strip()
        pieces = rng.split(":")
        if name not in ("a", "b", "c", "d") or len(pieces) != 3:
            raise TangleboundError(f"bad grid spec { part!r}: want name=start:stop:count")
        start, stop, count = float(pieces[0]), float(pieces[1]), int(pieces[2])
        if count < 1:
            raise TangleboundError(f"bad grid count in {part!r}")
        grids[name] = np.linspace(start, stop, count)
    return grids


_DEFAULT_SWEEP_TRIPLE = {
    ("II", "regu"): "A1A2A3",
    ("III", "regu"): "A1A2A4",
    ("III", "osterloh"): "A1A2A4",
    ("IV", "regu"): "A1A2A3",
    ("V", "regu"): "A1A2A3",
    ("V", "osterloh"): "A1A2A4",
}


def _cmd_sweep(args) -> int:
    cid = args.class_id
    grids = _parse_grid_spec(args.param_grid)
    wanted = classes.CLASS_PARAMS[cid]
    if set(grids) != set(wanted):
        raise TangleboundError(
            f"class {cid} sweeps over parameters {wanted}, got {sorted(grids)}"
        )
    triple = args.triple or _DEFAULT_SWEEP_TRIPLE.get((cid, args.compare))
    if triple is None:
        raise TangleboundError(f"no default triple for class {cid} vs {args.compare}")
    names = list(wanted)
    meshes = np.meshgrid(*[grids[n] for n in names], indexing="ij")
    cells_in = []
    for flat_index in range(meshes[0].size):
        values = [complex(m.flat[flat_index]) for m in meshes]
        cells_in.append((flat_index, dict(zip(names, values))))

    def work(item):
        flat_index, params = item
        spec = classes.spec_from_values(cid, *[params[n] for n in names])
        best = bounds.best_bound(classes.representative(spec), triple).best
        cell = {
            "index": flat_index,
            "params": {k: v.real for k, v in params.items()},
            "best": best,
        }
        try:
            ref = classes.literature_bound(spec, triple, args.compare)
            cell["compare"] = ref
            cell["delta"] = best - ref
        except TangleboundError:
            cell["compare"] = None
        return cell

    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cells = list(pool.map(work, cells_in))
    else:
        cells = [work(item) for item in cells_in]
    cells.sort(key=lambda c: c["index"])
    _emit({"class": cid, "triple": triple, "compare": args.compare, "cells": cells},
          args.output)
    return 0


def _cmd_selftest(args) -> int:
    results = acceptance.run_acceptance(echo=lambda line: print(line, file=sys.stderr))
    # wall-clock timings stay on stderr so the JSON payload is byte-deterministic
    summary = {
        "ok": all(r["ok"] for r in results),
        "criteria": [{k: v for k, v in r.items() if k != "elapsed_s"} for r in results],
    }
    _emit(summary, args.output)
    return 0 if summary["ok"] else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanglebound",
        description="Three-tangle bounds for reduced states of four-qubit pure states",
    )
    parser.add_argument("--output", help="write JSON to this path instead of stdout")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("invariants", help="invariant set and correlation report")
    p.add_argument("--state", required=True, help="state JSON path")
    p.add_argument("--traced", required=True, choices=["A2", "A3", "A4"])
    p.set_defaults(fn=_cmd_invariants)

    p = sub.add_parser("bound", help="bound report for one qubit triple")
    p.add_argument("--state", required=True)
    p.add_argument("--triple", required=True, choices=list(invariants.TRIPLES))
    p.add_argument("--n-theta", type=int, default=256, help="sphere grid rows")
    p.add_argument("--n-phi", type=int, default=256, help="sphere grid columns")
    p.add_argument("--refine-iters", type=int, default=50, help="descent refinement steps")
    p.add_argument("--zero-tol", type=float, default=1e-10,
                   help="relative zero threshold for the pattern classifier")
    p.set_defaults(fn=_cmd_bound)

    p = sub.add_parser("classes", help="class representative bounds and comparisons")
    p.add_argument("--id", required=True, choices=list(classes.CLASS_IDS))
    for name in ("a", "b", "c", "d"):
        p.add_argument(f"--{name}", help=f"complex parameter {name}, e.g. 2+0i")
    p.add_argument("--triple", required=True, choices=list(classes.ALL_TRIPLES))
    p.set_defaults(fn=_cmd_classes)

    p = sub.add_parser("ghzw", help="GHZ/W mixture reference values")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--theta-samples", type=int, default=24)
    p.add_argument("--grid", type=int, default=128)
    p.set_defaults(fn=_cmd_ghzw)

    p = sub.add_parser("decompose", help="bound and decomposition for a rank-2 state")
    p.add_argument("--rho", required=True, help="density JSON path")
    p.add_argument("--theta-samples", type=int, default=24)
    p.add_argument("--grid", type=int, default=128)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("sweep", help="parameter sweep against a literature bound")
    p.add_argument("--class", dest="class_id", required=True,
                   choices=["II", "III", "IV", "V"])
    p.add_argument("--param-grid", required=True,
                   help="e.g. a=0.2:2:10,b=0.2:2:10 (real grids)")
    p.add_argument("--compare", default="regu", choices=["regu", "osterloh"])
    p.add_argument("--triple", choices=list(classes.SUPPORTED_TRIPLES))
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (DidNotConverge, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (TangleboundError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
