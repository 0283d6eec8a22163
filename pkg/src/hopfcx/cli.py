"""Command-line front end. Reports are JSON on stdout; ``--pretty`` adds a table on stderr."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from . import __version__
from .exceptions import HopfcxError, InvalidParameters, ValidationError
from .hopf import dual_module, trivial_module
from .modrep import projective_indecomposable, regular_module, simple_module
from .presets import SHIPPED, from_document, parse_text, preset, preset_path, resolve_source
from .presets import builders, dumps
from .rootsys import roots_report

THREADS_ENV = "HOPFCX_THREADS"


# -- helpers -----------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return round(float(x), 6)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _load(source, p=None):
    if p is None:
        return resolve_source(source)
    path = Path(source)
    if path.suffix == ".toml" and path.exists():
        from .presets import load
        return load(path, p=p)
    return preset(path.stem if path.suffix == ".toml" else source, p=p)


def _document(source):
    path = Path(source)
    if path.suffix == ".toml" and path.exists():
        return parse_text(path.read_text())
    stem = path.stem if path.suffix == ".toml" else str(source)
    if stem in SHIPPED:
        return parse_text(preset_path(stem).read_text())
    raise InvalidParameters(f"no presentation file or preset named {source!r}")


def build_module(alg, spec, depth_hint=None):
    """``k``, ``regular``, ``simple:j``, ``projective:j``, ``omega:n`` (n-th syzygy of k), ``dual:SPEC``."""
    spec = spec.strip()
    if spec.startswith("dual:"):
        return dual_module(alg, build_module(alg, spec[5:]))
    name, _, arg = spec.partition(":")
    if name in ("k", "trivial"):
        return trivial_module(alg)
    if name == "regular":
        return regular_module(alg)
    if name in ("simple", "projective"):
        try:
            j = int(arg)
        except ValueError:
            raise InvalidParameters(f"module spec {spec!r} needs an integer index") from None
        if not 0 <= j < alg.grouplike.order:
            raise InvalidParameters(f"character index {j} out of range 0..{alg.grouplike.order - 1}")
        return simple_module(alg, j) if name == "simple" else projective_indecomposable(alg, j)
    if name == "omega":
        from .homolog.resolution import resolve
        n = int(arg)
        return resolve(trivial_module(alg), max(n - 1, 0)).syzygies[n]
    raise InvalidParameters(f"unknown module spec {spec!r}")


def _report(command, alg, inputs, outputs):
    rep = {"command": command, "version": __version__, "inputs": inputs, "outputs": outputs}
    if alg is not None:
        rep["field"] = alg.field.as_dict()
        rep["algebra"] = {"name": getattr(alg, "name", "algebra"), "dim": alg.dim}
    return rep


# -- commands -----------------------------------------------------------------------

def cmd_roots(args):
    target = "full" if args.full else args.target
    out = roots_report(args.type, args.rank, args.ell, target)
    return _report("roots", None, {"type": args.type, "rank": args.rank, "ell": args.ell,
                                   "target": target}, out)


def cmd_check(args):
    from .hopf import HopfAlgebra
    from .rewrite import Presentation

    doc = _document(args.file)
    expected = doc.get("metadata", {}).get("expected_dim")
    gates = {}

    def gate(name, fn):
        try:
            detail = fn()
            gates[name] = {"ok": True, **({"detail": detail} if detail is not None else {})}
        except (HopfcxError, AssertionError) as exc:
            gates[name] = {"ok": False, "error": type(exc).__name__, "message": str(exc)}

    holder = {}

    def parse():
        holder["alg"] = from_document(_strip_expected(doc), p=args.p, check=False)

    gate("parse", parse)
    alg = holder.get("alg")
    if alg is not None:
        pres: Presentation = alg.presentation

        def confluence():
            bad = pres.check_local_confluence()
            if bad:
                raise ValidationError(f"{len(bad)} unresolved overlap ambiguities")
            return {"overlaps": len(pres.overlaps())}

        def dimension():
            if expected is not None and int(expected) != alg.dim:
                raise ValidationError(f"expected dimension {expected}, found {alg.dim}")
            return {"dim": alg.dim, "expected": expected}

        def characters():
            chars = alg.simple_characters
            if len(chars) != alg.grouplike.order:
                raise ValidationError(f"{len(chars)} simple characters for a group of order {alg.grouplike.order}")
            return {"count": len(chars)}

        gate("confluence", confluence)
        gate("dimension", dimension)
        gate("associativity", lambda: alg.validate(rng_seed=args.seed))
        gate("hopf_axioms", lambda: isinstance(alg, HopfAlgebra) and alg.validate_hopf(seed=args.seed) and None)
        gate("radical", lambda: {"dim": int(alg.radical.shape[0]), "semisimple_quotient": alg.check_semisimple_quotient()})
        gate("characters", characters)
    ok = all(g["ok"] for g in gates.values())
    rep = _report("check", alg, {"file": str(args.file), "p": args.p, "seed": args.seed},
                  {"gates": gates, "all_pass": ok})
    return rep, (0 if ok else 1)


def _strip_expected(doc):
    meta = dict(doc.get("metadata", {}))
    dim = meta.pop("expected_dim", None)
    out = dict(doc)
    out["metadata"] = meta
    if dim is not None and "p" not in out.get("field", {}):
        # keep the default field choice, which depends on the expected dimension
        from .ffield import PrimeField
        out["field"] = dict(out["field"], p=PrimeField.for_algebra(int(out["field"]["ell"]), int(dim)).p)
    return out


def cmd_resolve(args):
    from .homolog.resolution import resolve

    alg = _load(args.file, args.p)
    m = build_module(alg, args.module)
    tr = resolve(m, args.depth)
    checks = {"exactness": tr.check_exactness(), "minimality": tr.check_minimality(),
              "dimensions": tr.check_dimensions()}
    bt = tr.betti_table
    out = {"module_dim": m.dim, "betti": bt.as_dict(), "syzygy_dims": tr.syzygy_dims(),
           "checks": checks}
    return _report("resolve", alg, {"file": str(args.file), "module": args.module,
                                    "depth": args.depth, "p": args.p}, out)


def cmd_complexity(args):
    from .homolog.complexity import dual_estimates
    from .homolog.resolution import resolve

    alg = _load(args.file, args.p)
    m = build_module(alg, args.module)
    tr = resolve(m, args.depth)
    est = dual_estimates(tr, args.depth)
    out = {"betti": est["betti"], "ext_self": est["ext"],
           "betti_estimate": est["betti_estimate"].as_dict(),
           "ext_estimate": est["ext_estimate"].as_dict(),
           "complexity": est["betti_estimate"].complexity, "estimators_agree": est["agree"]}
    return _report("complexity", alg, {"file": str(args.file), "module": args.module,
                                       "depth": args.depth, "p": args.p}, out)


def cmd_cohomology(args):
    from .homolog.cohomology import cohomology_ring
    from .homolog.resolution import resolve

    alg = _load(args.file, args.p)
    D = args.max_degree
    ring = cohomology_ring(resolve(trivial_module(alg), D), D)
    out = {**ring.as_dict(), "graded_commutativity_failures": ring.graded_commutativity(),
           "odd_square_failures": ring.odd_squares_vanish(), "unit_ok": ring.unit_check(),
           "associativity_failures": ring.associativity(max_triples=args.assoc_samples)}
    return _report("cohomology", alg, {"file": str(args.file), "max_degree": D, "p": args.p}, out)


def cmd_carlson(args):
    from .homolog.carlson import (block_cut, carlson_module, random_class,
                                  tensor_theorem_check)
    from .homolog.cohomology import class_from_basis, class_positions
    from .homolog.complexity import module_complexity
    from .homolog.resolution import resolve

    alg = _load(args.file, args.p)
    n = args.degree
    tr = resolve(trivial_module(alg), n)
    h_dim = len(class_positions(tr, n))
    if args.class_index is not None:
        if not 0 <= args.class_index < h_dim:
            raise InvalidParameters(f"class index {args.class_index} out of range; dim H^{n} = {h_dim}")
        v = np.zeros(h_dim, dtype=np.int64)
        v[args.class_index] = 1
        zeta = class_from_basis(tr, n, v)
        choice = {"class_index": args.class_index}
    else:
        zeta = random_class(tr, n, args.seed)
        choice = {"seed": args.seed}
    lz = carlson_module(tr, zeta)
    cx_l, _ = module_complexity(lz.module, args.depth)
    out = {"degree": n, "dim_H": h_dim, "class": {**choice, "coeffs": zeta.coeffs},
           "dim_omega": lz.omega.dim, "dim_L": lz.module.dim,
           "dim_drop_ok": lz.module.dim == lz.omega.dim - 1,
           "cx_L": cx_l.as_dict()}
    if args.tensor_with:
        m = build_module(alg, args.tensor_with)
        out["tensor"] = tensor_theorem_check(alg, m, lz, args.depth).as_dict()
        if n % 2 == 0:
            out["block_cut"] = block_cut(alg, m, lz).as_dict()
    return _report("carlson", alg, {"file": str(args.file), "degree": n, "seed": args.seed,
                                    "class_index": args.class_index, "depth": args.depth,
                                    "tensor_with": args.tensor_with, "p": args.p}, out)


def cmd_verdict(args):
    from .homolog.complexity import module_complexity

    alg = _load(args.file, args.p)
    est, tr = module_complexity(trivial_module(alg), args.depth)
    wild = est.complexity >= 3
    out = {"betti": tr.betti_table.totals.tolist(), "estimate": est.as_dict(),
           "complexity": est.complexity,
           "verdict": "wild" if wild else "criterion inconclusive",
           "reason": ("a module of complexity >= 3 lies in the principal block" if wild
                      else "complexity <= 2 does not decide the representation type")}
    return _report("verdict", alg, {"file": str(args.file), "depth": args.depth, "p": args.p}, out)


_BUILDERS = {
    "taft": lambda a: builders.builder_taft(a.ell),
    "qea": lambda a: builders.builder_qea(a.rank, a.ell),
    "group": lambda a: builders.builder_group_algebra(a.rank, a.ell),
    "uqplus_sl2": lambda a: builders.builder_uqplus_sl2(a.ell, a.convention),
    "uqplus_sl3": lambda a: builders.builder_uqplus_sl3(a.ell, a.convention),
    "taft_x_group": lambda a: builders.builder_taft_times_group(a.ell),
}


def cmd_export(args):
    if args.name in _BUILDERS:
        text = dumps(_BUILDERS[args.name](args))
    elif args.name in SHIPPED:
        text = preset_path(args.name).read_text()
    else:
        raise InvalidParameters(f"unknown preset or builder {args.name!r}; "
                                f"known: {sorted(set(SHIPPED) | set(_BUILDERS))}")
    if args.out:
        Path(args.out).write_text(text)
        return _report("export", None, {"name": args.name, "out": args.out},
                       {"written": args.out, "bytes": len(text.encode())})
    sys.stdout.write(text)
    return None


# -- parser ----------------------------------------------------------------------------

def _default_threads():
    env = os.environ.get(THREADS_ENV)
    return int(env) if env else (os.cpu_count() or 1)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized routine")
    common.add_argument("--threads", type=int, default=None,
                        help=f"BLAS thread limit (default: ${THREADS_ENV} or all cores)")
    common.add_argument("--pretty", action="store_true", help="also print a table on stderr")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")

    ap = argparse.ArgumentParser(prog="hopfcx", description=__doc__)
    ap.add_argument("--version", action="version", version=f"hopfcx {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="presentation file or shipped preset name")
        sp.add_argument("--p", type=int, default=None, help="override the field characteristic")
        sp.set_defaults(func=fn)
        return sp

    sp = sub.add_parser("roots", parents=[common], help="root data, Phi_0^+, bound and verdict")
    sp.add_argument("--type", required=True, help="A1..E8 style label, or a letter with --rank")
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--target", choices=("borel", "full"), default="borel")
    sp.add_argument("--full", action="store_true", help="same as --target full")
    sp.set_defaults(func=cmd_roots)

    with_file("check", cmd_check, "run every validation gate")

    sp = with_file("resolve", cmd_resolve, "minimal resolution and Betti table")
    sp.add_argument("--module", default="k")
    sp.add_argument("--depth", type=int, default=10)

    sp = with_file("complexity", cmd_complexity, "Betti and Ext growth estimates")
    sp.add_argument("--module", default="k")
    sp.add_argument("--depth", type=int, default=10)

    sp = with_file("cohomology", cmd_cohomology, "truncated cohomology ring of k")
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--assoc-samples", type=int, default=2000)

    sp = with_file("carlson", cmd_carlson, "Carlson module of a cohomology class")
    sp.add_argument("--degree", type=int, default=2)
    sp.add_argument("--class-index", type=int, default=None)
    sp.add_argument("--tensor-with", default=None, help="module spec M for M (x) L and the block cut")
    sp.add_argument("--depth", type=int, default=10)

    sp = with_file("verdict", cmd_verdict, "wildness criterion from the complexity of k")
    sp.add_argument("--depth", type=int, default=10)

    sp = sub.add_parser("export", parents=[common], help="write a preset presentation file")
    sp.add_argument("name", help="shipped preset or builder name")
    sp.add_argument("--ell", type=int, default=3)
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--convention", choices=("A", "B"), default="A")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_export)
    return ap


def _pretty(rep, stream):
    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else str(k), x[k])
        else:
            stream.write(f"{prefix:<40} {json.dumps(x)}\n")

    walk("", rep)


def main(argv=None):
    args = build_parser().parse_args(argv)
    threads = args.threads or _default_threads()
    t0 = time.perf_counter()
    try:
        with threadpool_limits(limits=threads):
            res = args.func(args)
    except HopfcxError as exc:
        err = {"command": args.command, "version": __version__,
               "error": type(exc).__name__, "message": str(exc)}
        sys.stdout.write(json.dumps(err, sort_keys=True) + "\n")
        return 2
    code = 0
    if isinstance(res, tuple):
        res, code = res
    if res is None:
        return code
    if args.timings:
        res["timings"] = {"wall_seconds": round(time.perf_counter() - t0, 3)}
    res = _jsonable(res)
    sys.stdout.write(json.dumps(res, sort_keys=True) + "\n")
    if args.pretty:
        _pretty(res, sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
