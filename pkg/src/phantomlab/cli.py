"""``phantomlab`` command line.

Exit status: 0 on success, 1 when a verification finds a counterexample or a
solver cannot finish, 2 on bad input.  ``PHANTOMLAB_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

import numpy as np

from . import __version__
from . import extcalc as ec
from . import ffmatrix as ff
from . import nfrob as nf
from . import p1sheaves as p1
from . import phantomcat as pc
from . import quivalg as qa
from . import verify as vf
from .io import InputError, Loader


class Refuted(Exception):
    """A check failed; carries the report to print before exiting with 1."""

    def __init__(self, report: dict, message: str):
        super().__init__(message)
        self.report = report


def _plain(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, qa.Module):
        return obj.name or f"<{obj.dim}-dim module>"
    if isinstance(obj, ec.ExtClass):
        return obj.cocycle.tolist()
    if isinstance(obj, nf.Verdict):
        return obj.value
    return obj


def _name(m: qa.Module) -> str:
    return m.name or f"<{m.dim}-dim>"


# ---------------------------------------------------------------------------
# rendering


def _render_text(report: dict) -> str:
    if "sections" in report:
        lines = [f"suite {report['suite']}  seed {report['seed']}  {'PASS' if report['pass'] else 'FAIL'}"]
        width = max((len(c["name"]) for s in report["sections"] for c in s["checks"]), default=10)
        lines.append(f"{'section':<12} {'check':<{width}} {'result':<6} {'checked':>8} {'failed':>7}")
        for s in report["sections"]:
            for c in s["checks"]:
                lines.append(f"{s['suite']:<12} {c['name']:<{width}} {'pass' if c['pass'] else 'FAIL':<6} "
                             f"{c['counts'].get('checked', 0):>8} {c['counts'].get('failed', 0):>7}")
                for f in c["failures"]:
                    lines.append(f"    {f}")
                if "error" in c:
                    lines.append(f"    {c['error']}")
        return "\n".join(lines) + "\n"
    lines = []

    def walk(prefix: str, obj: Any) -> None:
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append((prefix, json.dumps(obj, ensure_ascii=False)))

    walk("", report)
    width = max((len(k) for k, _ in lines), default=0)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in lines)


def _emit(report: dict, args) -> None:
    report = _plain(report)
    text = _render_text(report) if args.format == "text" else vf.dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# helpers


def _seed(args) -> int:
    env = os.environ.get("PHANTOMLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"PHANTOMLAB_SEED={env!r} is not an integer") from None
    return args.seed


def _ctx(args, loader: Loader, required: bool = True):
    if not getattr(args, "ctx", None):
        if required:
            raise InputError("--ctx is required for this command")
        return None
    ctx = loader.context(args.ctx)
    if getattr(args, "zoo_bound", None) is not None:
        ctx.test_family = qa.module_zoo(ctx.algebra, args.zoo_bound, seed=ctx.seed, extra=list(ctx.registry))
    return ctx


def _modules_over(ctx, *mods) -> None:
    for m in mods:
        if ctx is not None and m.algebra is not ctx.algebra:
            raise InputError(f"module {_name(m)} is not over the context's algebra file")


def _coords(text: str | None, dim: int, what: str) -> np.ndarray:
    if text is None:
        raise InputError(f"{what}: coordinates are required")
    try:
        vals = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"{what}: coordinates must be integers") from None
    if len(vals) != dim:
        raise InputError(f"{what}: expected {dim} coordinates, got {len(vals)}")
    return np.array(vals, dtype=np.int64)


def _verdict(v: nf.PhantomVerdict) -> dict:
    out: dict = {"verdict": v.answer.value}
    if v.certificate:
        out["certificate"] = {k: val for k, val in v.certificate.items()}
    if v.witness:
        out["witness"] = {k: val for k, val in v.witness.items()}
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_algebra_check(args, loader):
    alg = loader.algebra(args.algebra)
    return {"algebra": alg.name, "p": alg.p, "dim": alg.dim, "vertices": alg.num_vertices,
            "radical_dim": int(alg.radical.shape[0]), "ok": True}


def cmd_module_check(args, loader):
    m = loader.module(args.module)
    m.check()
    return {"module": _name(m), "algebra": m.algebra.name, "dim": m.dim, "vertex_dims": list(m.vertex_dims()),
            "top": [v for v, _ in qa.top_generators(m)] if m.dim else [],
            "projective": qa.is_projective(m), "injective": qa.is_injective(m), "ok": True}


def cmd_hom(args, loader):
    m, n = loader.module(args.M), loader.module(args.N)
    basis = qa.hom_space(m, n)
    return {"M": _name(m), "N": _name(n), "dim": len(basis), "basis": [f.matrix for f in basis]}


def cmd_ext(args, loader):
    m, n = loader.module(args.M), loader.module(args.N)
    _modules_over(_ctx(args, loader, required=False), m, n)
    if args.deg < 0:
        raise InputError("--deg must be >= 0")
    space = ec.ext_space(m, n, args.deg)
    return {"M": _name(m), "N": _name(n), "degree": args.deg, "dim": space.dim,
            "basis_cocycles": [g.cocycle for g in space.basis()]}


def cmd_resolve(args, loader):
    m = loader.module(args.M)
    res = ec.resolution(m)
    terms = []
    for j in range(args.length + 1):
        pj = res.term(j)
        terms.append({"degree": j, "dim": pj.dim, "vertices": list(pj.proj_vertices or []),
                      "syzygy_dim": res.syzygy(j + 1).dim})
    return {"M": _name(m), "terms": terms}


def cmd_nproj(args, loader):
    ctx = _ctx(args, loader)
    m = loader.module(args.M)
    _modules_over(ctx, m)
    w = nf.n_projective_witness(m, ctx)
    return {"M": _name(m), "n": ctx.n, "n_projective": nf.is_n_projective(m, ctx).value,
            "n_injective": nf.is_n_injective(m, ctx).value, "ext_witness_simple": _name(w) if w is not None else None}


def cmd_phantom(args, loader):
    ctx = _ctx(args, loader)
    f = loader.morphism(args.f)
    _modules_over(ctx, f.source)
    out = {"f": f"{_name(f.source)}→{_name(f.target)}", "n": ctx.n}
    out.update(_verdict(nf.is_phantom(f, ctx)))
    routes = nf.phantom_routes(f, ctx)
    out["routes"] = {"member": routes["member"], "witness": routes["witness"]}
    if routes["conflict"]:
        raise Refuted(out, "phantom routes conflict: 𝔭-membership and an Ext witness both found")
    return out


def cmd_invertible(args, loader):
    ctx = _ctx(args, loader)
    f = loader.morphism(args.f)
    _modules_over(ctx, f.source)
    out = {"f": f"{_name(f.source)}→{_name(f.target)}", "n": ctx.n}
    out.update(_verdict(nf.is_invertible(f, ctx)))
    return out


def cmd_p_subspace(args, loader):
    ctx = _ctx(args, loader)
    m, n = loader.module(args.M), loader.module(args.N)
    _modules_over(ctx, m, n)
    a = nf.p_subspace(m, n, ctx, side="pullback")
    b = nf.p_subspace(m, n, ctx, side="pushout")
    out = {"M": _name(m), "N": _name(n), "n": ctx.n, "ext_dim": a.space.dim, "p_dim": a.dim,
           "pushout_p_dim": b.dim, "sides_agree": a.lift == b.lift, "complete": a.complete}
    if not out["sides_agree"]:
        raise Refuted(out, "𝔭 duality: pullback and pushout sides differ")
    return out


def _hom_report(space: pc.StableHomSpace) -> dict:
    return {"M": _name(space.M), "N": _name(space.N), "dim": space.dim,
            "basis_cocycles": [x.ext_class.cocycle for x in space.basis()]}


def cmd_stablehom(args, loader):
    ctx = _ctx(args, loader)
    m, n = loader.module(args.M), loader.module(args.N)
    _modules_over(ctx, m, n)
    return {"hom": _hom_report(pc.stable_hom(m, n, ctx)), "n": ctx.n}


def cmd_compose(args, loader):
    ctx = _ctx(args, loader)
    seed = _seed(args)
    rng = np.random.default_rng(seed) if args.paranoid else None
    if args.f and args.g:
        f, g = loader.morphism(args.f), loader.morphism(args.g)
        if f.target is not g.source:
            raise InputError("--f must end where --g starts")
        tg, tf = pc.functor_T(g, ctx), pc.functor_T(f, ctx)
        comp = pc.compose(tg, tf, rng=rng, paranoid=args.paranoid)
        direct = pc.functor_T(g @ f, ctx)
        out = {"M": _name(f.source), "K": _name(g.target), "coords": comp.coords(),
               "T_of_composite": direct.coords(), "functorial": comp.equals(direct)}
        if not out["functorial"]:
            raise Refuted(out, "T(g∘f) differs from T(g)∘T(f)")
        return out
    if not (args.M and args.N and args.K):
        raise InputError("compose needs --f/--g morphism files or --M --N --K with --x --y coordinates")
    m, n, k = loader.module(args.M), loader.module(args.N), loader.module(args.K)
    _modules_over(ctx, m, n, k)
    sx, sy = pc.stable_hom(m, n, ctx), pc.stable_hom(n, k, ctx)
    x = sx.element(_coords(args.x, sx.dim, "--x"))
    y = sy.element(_coords(args.y, sy.dim, "--y"))
    comp = pc.compose(y, x, rng=rng, paranoid=args.paranoid)
    return {"M": _name(m), "N": _name(n), "K": _name(k), "coords": comp.coords(), "cocycle": comp.ext_class.cocycle}


def cmd_T(args, loader):
    ctx = _ctx(args, loader)
    f = loader.morphism(args.f)
    _modules_over(ctx, f.source)
    t = pc.functor_T(f, ctx)
    return {"f": f"{_name(f.source)}→{_name(f.target)}", "hom_dim": t.space.dim, "coords": t.coords(),
            "is_zero": t.is_zero(), "is_iso": pc.is_iso_stable(t)}


def cmd_syz(args, loader):
    ctx = _ctx(args, loader)
    if args.f:
        f = loader.morphism(args.f)
        w = pc.syz_on_morphism(f, ctx)
        ok = pc.syz_morphism(pc.functor_T(f, ctx)).equals(w)
        out = {"f": f"{_name(f.source)}→{_name(f.target)}", "omega_coords": w.coords(), "syz_T_agrees": ok}
        if not ok:
            raise Refuted(out, "Syz(T f) differs from ω(f)")
        return out
    if not (args.M and args.N):
        raise InputError("syz needs --f or --M and --N")
    m, n = loader.module(args.M), loader.module(args.N)
    _modules_over(ctx, m, n)
    mat = pc.syz_matrix(m, n, ctx)
    d1, d2 = pc.stable_dim(m, n, ctx), pc.stable_dim(ec.syzygy(m), ec.syzygy(n), ctx)
    rank = ff.rank(mat, ctx.algebra.p) if mat.size else 0
    out = {"M": _name(m), "N": _name(n), "dim": d1, "syz_dim": d2, "matrix": mat, "bijective": d1 == d2 == rank}
    if args.x is not None:
        x = pc.stable_hom(m, n, ctx).element(_coords(args.x, d1, "--x"))
        out["image_coords"] = pc.syz_morphism(x).coords()
    if not out["bijective"]:
        raise Refuted(out, "Syz is not bijective on this stable hom space")
    return out


def cmd_cosyz(args, loader):
    ctx = _ctx(args, loader)
    m = loader.module(args.M)
    _modules_over(ctx, m)
    c = pc.cosyzygy(m, ctx)
    ok = pc.density_holds(m, ctx)
    out = {"M": _name(m), "cosyzygy_dim": c.dim, "cosyzygy_vertex_dims": list(c.vertex_dims()), "density": ok}
    if not ok:
        raise Refuted(out, "M is not stably isomorphic to Syz of its cosyzygy")
    return out


def cmd_verify(args, loader):
    ctx = _ctx(args, loader, required=False)
    report = vf.run_suite(args.suite, ctx, seed=_seed(args))
    if not report["pass"]:
        failed = [f"{s['suite']}/{c['name']} ({c['claim']})" for s in report["sections"]
                  for c in s["checks"] if not c["pass"]]
        raise Refuted(report, "failed: " + "; ".join(failed))
    return report


def _split_report(rep: p1.CoherentRep) -> dict:
    s = p1.birkhoff_split(rep)
    return {"bundle": rep.name, "p": rep.p, "rank": rep.rank, "type": list(s.type.degrees),
            "U": s.U.to_entries(), "L": s.L.to_entries(), "reassembles": (s.U @ s.D @ s.L) == rep.gluing}


def cmd_p1(args, loader):
    if args.p1_command == "split":
        return _split_report(loader.bundle(args.bundle))
    if args.p1_command in ("hom", "ext"):
        e, f = loader.bundle(args.E), loader.bundle(args.F)
        if e.p != f.p:
            raise InputError("bundles are over different fields")
        if args.p1_command == "hom":
            h = p1.hom_sheaves(e, f)
            return {"E": e.name, "F": f.name, "dim": h.dim,
                    "basis": [{"plus": a.to_entries(), "minus": b.to_entries()} for a, b in h.basis]}
        x = p1.ext1_sheaves(e, f)
        return {"E": e.name, "F": f.name, "dim": x.dim, "cocycles": [c.to_entries() for c in x.cocycles]}
    if args.p1_command == "embed":
        rep = loader.bundle(args.bundle)
        emb = p1.cogenerator_embed(rep)
        out = {"bundle": rep.name, "twists": emb.twists, "phi_plus": emb.phi_plus.to_entries(),
               "phi_minus": emb.phi_minus.to_entries(), "checks": emb.checks, "ok": emb.ok}
        if emb.cokernel is not None:
            out["cokernel_gluing"] = emb.cokernel.gluing.to_entries()
        if not emb.ok:
            raise Refuted(out, "cogenerator embedding postconditions failed")
        return out
    if args.p1_command == "verify":
        if args.bundle:
            samples = [loader.bundle(b) for b in args.bundle]
        else:
            rng = np.random.default_rng(_seed(args))
            samples = [p1.twist(n, args.p) for n in range(-2, 3)]
            samples += [p1.random_bundle(args.rank, args.p, rng)[0] for _ in range(args.samples)]
        rep = p1.verify_thm_A5(samples)
        if not rep["pass"]:
            raise Refuted(rep, "1-Frobenius checks failed on some sample")
        return rep
    raise InputError(f"unknown p1 command {args.p1_command!r}")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (PHANTOMLAB_SEED overrides)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--paranoid", action="store_true", help="recompute compositions with fresh random choices")
    common.add_argument("--zoo-bound", type=int, default=None, help="rebuild the context's test family with this bound")

    parser = argparse.ArgumentParser(prog="phantomlab", description="n-Frobenius categories and phantom stable categories")
    parser.add_argument("--version", action="version", version=f"phantomlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", parents=[common], help="algebra files")
    alg_sub = alg.add_subparsers(dest="sub", required=True)
    a = alg_sub.add_parser("check", parents=[common])
    a.add_argument("--algebra", required=True)
    a.set_defaults(func=cmd_algebra_check)

    mod = sub.add_parser("module", parents=[common], help="module files")
    mod_sub = mod.add_subparsers(dest="sub", required=True)
    a = mod_sub.add_parser("check", parents=[common])
    a.add_argument("--module", required=True)
    a.set_defaults(func=cmd_module_check)

    def with_ctx(name, func, help_text, *, mn=False, f=False, m=False, ctx_required=True):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("--ctx", required=ctx_required)
        if mn:
            s.add_argument("--M", required=True)
            s.add_argument("--N", required=True)
        if m:
            s.add_argument("--M", required=True)
        if f:
            s.add_argument("--f", required=True)
        s.set_defaults(func=func)
        return s

    s = sub.add_parser("hom", parents=[common], help="Hom(M, N)")
    s.add_argument("--M", required=True)
    s.add_argument("--N", required=True)
    s.set_defaults(func=cmd_hom)
    s = with_ctx("ext", cmd_ext, "Ext^k(M, N)", mn=True, ctx_required=False)
    s.add_argument("--deg", type=int, required=True)
    s = sub.add_parser("resolve", parents=[common], help="minimal projective resolution")
    s.add_argument("--M", required=True)
    s.add_argument("--length", type=int, default=3)
    s.set_defaults(func=cmd_resolve)
    with_ctx("nproj", cmd_nproj, "n-projective / n-injective recognition", m=True)
    with_ctx("phantom", cmd_phantom, "is f an n-Ext-phantom morphism", f=True)
    with_ctx("invertible", cmd_invertible, "is f n-Ext-invertible", f=True)
    with_ctx("p-subspace", cmd_p_subspace, "the 𝔭 subspace of Ext^n(M, N)", mn=True)
    with_ctx("stablehom", cmd_stablehom, "hom in the phantom stable category", mn=True)
    s = with_ctx("compose", cmd_compose, "composition in the phantom stable category")
    for flag in ("--f", "--g", "--M", "--N", "--K", "--x", "--y"):
        s.add_argument(flag)
    with_ctx("T", cmd_T, "the functor T", f=True)
    s = with_ctx("syz", cmd_syz, "syzygy functor on a morphism or a hom space")
    for flag in ("--f", "--M", "--N", "--x"):
        s.add_argument(flag)
    with_ctx("cosyz", cmd_cosyz, "cosyzygy and the density comparison", m=True)
    s = with_ctx("verify", cmd_verify, "run a verification suite", ctx_required=False)
    s.add_argument("--suite", choices=vf.SUITES + ("all",), required=True)

    p1p = sub.add_parser("p1", parents=[common], help="bundles on the projective line")
    p1_sub = p1p.add_subparsers(dest="p1_command", required=True)
    s = p1_sub.add_parser("split", parents=[common])
    s.add_argument("--bundle", required=True)
    for name in ("hom", "ext"):
        s = p1_sub.add_parser(name, parents=[common])
        s.add_argument("--E", required=True)
        s.add_argument("--F", required=True)
    s = p1_sub.add_parser("embed", parents=[common])
    s.add_argument("--bundle", required=True)
    s = p1_sub.add_parser("verify", parents=[common])
    s.add_argument("--bundle", action="append")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--samples", type=int, default=5)
    p1p.set_defaults(func=cmd_p1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    loader = Loader()
    try:
        report = args.func(args, loader)
    except Refuted as exc:
        _emit(exc.report, args)
        print(f"phantomlab: {exc}", file=sys.stderr)
        return 1
    except (InputError, qa.AlgebraError, nf.ContextError, p1.SheafError, OSError) as exc:
        print(f"phantomlab: input error: {exc}", file=sys.stderr)
        return 2
    except nf.SolverError as exc:
        print(f"phantomlab: {exc}", file=sys.stderr)
        return 1
    _emit(report, args)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
