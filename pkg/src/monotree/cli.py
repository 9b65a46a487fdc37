"""Command line entry point: ``monotree <subcommand> ...``.

Exit codes: 0 success, 1 nothing found / search failed, 2 bad input,
3 a verified counterexample to a proven bound (the instance is saved and
its path printed).
"""

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from . import constructions as C
from . import oracles as O
from . import partitioners as P
from . import random_lab as R
from .bitset import to_mask
from .ecg import dumps_ecg, read_certificate, read_ecg, write_ecg
from .errors import CriticalViolation, InputError, SearchFailure
from .graph import (
    CoverCertificate,
    Graph,
    block_from_mask,
    largest_mono_component,
    verify_cover,
    verify_partition,
)

BUDGET_ENV = "MONOTREE_TIME_BUDGET"


class NotFound(Exception):
    """A search legitimately came back empty (exit 1)."""


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, obj):
    text = _dump(obj)
    if getattr(args, "out", None):
        _write(args.out, text)
        _manifest(args, [args.out])
    else:
        sys.stdout.write(text)


def _write(path, text):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _manifest(args, outputs):
    params = {k: v for k, v in vars(args).items() if k not in ("func", "argv", "started")}
    manifest = {
        "subcommand": args.command,
        "argv": args.argv,
        "parameters": params,
        "inputs": [p for p in (getattr(args, "input", None), getattr(args, "cert", None), getattr(args, "config", None)) if p],
        "outputs": list(outputs),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "wall_time": round(time.perf_counter() - args.started, 3),
    }
    _write(str(outputs[0]) + ".manifest.json", _dump(manifest))


def _limits():
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return O.DEFAULT_LIMITS
    try:
        budget = float(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV}={raw!r} is not a number") from None
    return O.OracleLimits(time_budget=budget)


def _millis(args, start):
    return 0 if args.no_timing else int(round((time.perf_counter() - start) * 1000))


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for this family")


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args):
    fam = args.family
    meta = {"family": fam}
    if fam == "ex35":
        _need(args, "r", "n")
        cg, m = C.build_example35(args.r, args.n)
        meta.update(m.to_json())
    elif fam == "ex37":
        _need(args, "r", "n")
        cg, m = C.build_example37(args.r, args.n)
        meta.update(m.to_json())
    elif fam == "affine":
        _need(args, "q")
        cg, m = C.build_affine_coloring(args.q, args.blowup)
        meta.update(m.to_json())
    elif fam in ("kn", "gnp"):
        _need(args, "n")
        r = args.r or 1
        if fam == "kn":
            g = Graph.complete(args.n)
        else:
            _need(args, "p")
            g = R.sample_gnp(args.n, args.p, (args.seed, 0))
        cg = R.random_coloring(g, r, (args.seed, 1))
        meta.update({"n": args.n, "r": r, "p": args.p, "seed": args.seed})
    else:  # obs32 / obs34 recolor a given graph around a vertex set
        _need(args, "input", "xs")
        g = read_ecg(args.input).graph
        xs = _int_list(args.xs)
        if fam == "obs32":
            cg = C.build_obs32_coloring(g, xs)
        else:
            _need(args, "r")
            cg = C.build_obs34_coloring(g, xs, args.r)
        meta.update({"xs": xs, "r": cg.r})
    write_ecg(cg, args.out, comment=f"family {fam}")
    meta_path = args.out + ".meta.json"
    _write(meta_path, _dump(meta))
    _manifest(args, [args.out, meta_path])
    return 0


def cmd_color(args):
    g = read_ecg(args.input).graph
    if args.scheme == "random":
        cg = R.random_coloring(g, args.r, args.seed)
    elif args.scheme == "planted":
        cg = R.planted_two_coloring(g, args.seed)
    else:
        cg = R.affine_projection_coloring(g, args.r - 1)
    write_ecg(cg, args.out)
    _manifest(args, [args.out])
    return 0


def cmd_solve(args):
    cg = read_ecg(args.input)
    limits = _limits()
    r = args.r or cg.r
    start = time.perf_counter()
    cert = None
    if args.mode == "tc":
        value, cert = O.tc_exact(cg, limits)
    elif args.mode == "tp":
        value, cert = O.tp_exact(cg, limits)
    elif args.mode == "tm":
        c, value, verts = largest_mono_component(cg)
        cert = CoverCertificate((block_from_mask(cg, c, to_mask(verts)),))
    elif args.mode == "tcr":
        value, worst = O.tm_graph_exact(cg.graph, r, limits)
    elif args.mode == "tcgraph":
        value, worst = O.tc_graph_exact(cg.graph, r, limits)
    else:
        found, cert = O.distinct_color_cover_exists(cg, limits)
        value = found
    out = {
        "mode": args.mode,
        "value": value,
        "certificate": cert.to_json() if cert is not None else None,
        "exact": True,
        "millis": _millis(args, start),
    }
    if args.mode in ("tcr", "tcgraph"):
        out["r"] = r
        out["worst_coloring"] = dumps_ecg(worst)
    _emit(args, out)
    if args.mode == "distinct" and not value:
        return 1
    return 0


def cmd_partition(args):
    cg = read_ecg(args.input)
    start = time.perf_counter()
    extra = {}
    if args.algo == "hk":
        cert = P.hk_partition(cg, mode=args.mode, seed=args.seed)
    elif args.algo == "mindeg":
        atp = P.mindeg_absorbing_partition(cg, args.eps, force=args.force, mode=args.mode, seed=args.seed)
        cert = P.complete_partition(atp, cg)
        extra = {"common_leaves": sorted(atp.leaf_set), "trees": [t.to_json() for t in atp.trees]}
    elif args.algo == "gnp2":
        cert = P.gnp_two_color_partition(cg, mode=args.mode, seed=args.seed)
    elif args.algo == "cover2":
        cert = P.two_color_cover(cg)
        if cert is None:
            raise NotFound("no cover by two monochromatic components")
    else:
        cert = P.aux_cover(cg)
    check = verify_cover if isinstance(cert, CoverCertificate) else verify_partition
    verdict = check(cg, cert)
    out = {
        "algo": args.algo,
        "parts": len(cert),
        "certificate": cert.to_json(),
        "verified": verdict.ok,
        "info": cert.info,
        "millis": _millis(args, start),
    }
    out.update(extra)
    _emit(args, out)
    return 0 if verdict.ok else 1


def cmd_witness(args):
    g = read_ecg(args.input).graph
    s = args.s or args.r
    res = R.adversarial_tc_lower_bound(g, args.r, s, budget=args.budget, seed=args.seed)
    if res is None:
        found = R.find_witness_set(g, args.r, s, args.budget, args.seed)
        sys.stdout.write(_dump({"witness": None, "exact": found.exact}))
        return 1
    if args.coloring_out:
        write_ecg(res.coloring, args.coloring_out)
    _emit(args, {"witness": sorted(res.witness), "bound": res.bound, "spare_vertex": res.spare, "r": args.r})
    return 0


def cmd_tm(args):
    st = R.tm_experiment(args.n, args.p, args.r, args.trials, args.seed, args.eps)
    _emit(args, {"values": st.values, "bound": st.bound, "minimum": st.minimum,
                 "flagged": [list(f) for f in st.flagged]})
    return 0


def cmd_check(args):
    if args.input:
        g = read_ecg(args.input).graph
    else:
        _need(args, "n", "p")
        g = R.sample_gnp(args.n, args.p, (args.seed, 0))
    if args.lemma == "common":
        _need(args, "p")
        st = R.check_common_neighborhoods(g, args.r, args.p, args.samples, args.seed)
        out = dict(st._asdict(), worst=list(st.worst))
        ok = st.violations == 0
    elif args.lemma == "connectivity":
        st = R.check_local_connectivity(g, args.r, args.samples, args.seed)
        out = dict(st._asdict(), failures=[list(f) for f in st.failures])
        ok = st.fraction == 1.0
    else:
        _need(args, "p", "leaf_size")
        import numpy as np

        l = np.random.default_rng((args.seed, 3)).choice(g.n, size=args.leaf_size, replace=False)
        st = R.check_leaf_degradation(g, l.tolist(), args.p)
        out = {"bad": st.bad, "warn": st.warn, "bound": st.bound}
        ok = len(st.bad) <= st.bound
    out["ok"] = ok
    _emit(args, out)
    return 0


def cmd_sweep(args):
    try:
        cfg = R.SweepConfig.from_json(json.loads(Path(args.config).read_text()))
    except (json.JSONDecodeError, TypeError) as exc:
        raise InputError(f"bad sweep config: {exc}") from None
    if args.no_timing:
        cfg.record_time = False
    report = R.threshold_sweep(cfg, jobs=args.jobs)
    _write(args.out, report.to_csv())
    _manifest(args, [args.out])
    return 0


def cmd_verify(args):
    cg = read_ecg(args.input)
    cert = read_certificate(args.cert)
    check = verify_cover if isinstance(cert, CoverCertificate) else verify_partition
    verdict = check(cg, cert)
    if verdict.ok:
        print(f"ok: {len(cert)} blocks")
        return 0
    print(f"violation: {verdict.violation}", file=sys.stderr)
    return 2


# -- parser ----------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="monotree", description="Monochromatic tree covers and partitions.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--no-timing", action="store_true",
                    help="report millis as 0 so outputs are byte-reproducible")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a colored graph")
    p.add_argument("--family", required=True, choices=["obs32", "obs34", "ex35", "ex37", "affine", "kn", "gnp"])
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--blowup", type=int, default=1)
    p.add_argument("--xs", help="comma-separated vertex set (obs32/obs34)")
    p.add_argument("--in", dest="input", help="base graph for obs32/obs34 (colors ignored)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("color", help="recolor the edges of a graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--scheme", choices=["random", "planted", "affine"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("solve", help="exact values on small instances")
    p.add_argument("--mode", required=True, choices=["tc", "tp", "tm", "tcr", "tcgraph", "distinct"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int, help="colors for tcr/tcgraph (default: the file's r)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("partition", help="constructive partitions and covers")
    p.add_argument("--algo", required=True, choices=["hk", "mindeg", "gnp2", "cover2", "aux"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--force", action="store_true", help="skip the n >= n0 check (mindeg)")
    p.add_argument("--mode", choices=["derandomized", "randomized"], default="derandomized")
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("witness", help="witness set and adversarial coloring")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=int)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coloring-out", help="write the adversarial coloring here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("tm", help="largest monochromatic components in G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tm)

    p = sub.add_parser("check", help="empirical random-graph lemma checks")
    p.add_argument("--lemma", required=True, choices=["common", "connectivity", "leaves"])
    p.add_argument("--in", dest="input")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--samples", type=int, default=10**4)
    p.add_argument("--leaf-size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="threshold sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)
    return ap


def _save_critical(exc, args):
    cg = exc.instance
    if cg is None:
        return None
    text = dumps_ecg(cg, comment=str(exc))
    name = "critical-" + hashlib.sha256(text.encode()).hexdigest()[:12] + ".ecg"
    base = Path(getattr(args, "out", None) or ".").resolve()
    folder = base.parent if getattr(args, "out", None) else base
    path = folder / name
    _write(str(path), text)
    return path


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    args.started = time.perf_counter()
    try:
        return args.func(args)
    except CriticalViolation as exc:
        path = _save_critical(exc, args)
        print(f"CRITICAL: {exc}", file=sys.stderr)
        if path is not None:
            print(f"instance saved to {path}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SearchFailure, NotFound) as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return 1


def rerun_manifest(path):
    """Run the command recorded in a manifest again (relative paths resolve
    against the current directory)."""
    manifest = json.loads(Path(path).read_text())
    return main(manifest["argv"])


if __name__ == "__main__":
    sys.exit(main())
