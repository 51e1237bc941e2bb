"""Command-line front end: ideal files in, text or JSON reports out.

Exit codes: 0 success, 2 precondition failure, 3 parse error, 4 failed self-check.
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

import click

from . import __version__
from .core import AlgebraError, ParseError, PolyRing, format_polynomial, is_prime, parse_polynomial
from .homological import betti_of, local_cohomology_table
from .omega import quotient_of
from .modules import FPModule, hyperplane_section, ideal, ideal_generators, quotient_ring

SCHEMA = "buchsbaum-lab/1"
EXIT_PRECONDITION, EXIT_PARSE, EXIT_INVARIANT = 2, 3, 4


class InvariantViolation(RuntimeError):
    pass


# ------------------------------------------------------------------ ideal files

@dataclass
class IdealFile:
    ring: PolyRing
    generators: list
    name: str = ""
    expect: dict = field(default_factory=dict)
    digest: str = ""
    saturated: bool | None = None
    _ideal: FPModule | None = field(default=None, repr=False, compare=False)

    def ideal(self) -> FPModule:
        if self._ideal is None:
            self._ideal = ideal(self.ring, self.generators, name=self.name or None)
        return self._ideal


def parse_ideal_text(text: str, name: str = "") -> IdealFile:
    ring = None
    gens = []
    meta = {}
    expect = {}
    in_ideal = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, val = (s.strip() for s in body.split(":", 1))
                if key.startswith("expect "):
                    expect[key[7:].strip()] = val
                else:
                    meta[key] = val
            continue
        if ring is None:
            ring = _parse_header(line, lineno)
            continue
        if not in_ideal:
            if line != "ideal":
                raise ParseError("expected the keyword 'ideal'", lineno, 1)
            in_ideal = True
            continue
        col0 = raw.index(line[0]) if line else 0
        try:
            f = parse_polynomial(ring, line, lineno)
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], lineno,
                             (exc.col or 1) + col0) from None
        if f.is_zero():
            continue
        if not f.is_homogeneous():
            raise ParseError(f"generator {len(gens) + 1} is not homogeneous", lineno, col0 + 1)
        gens.append(f)
    if ring is None:
        raise ParseError("missing ring header", 1, 1)
    if not in_ideal:
        raise ParseError("missing 'ideal' section", None)
    if not gens:
        raise ParseError("zero ideal: codimension 0 is not supported", None)
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return IdealFile(ring, gens, meta.get("name", name), expect, digest)


def _parse_header(line: str, lineno: int) -> PolyRing:
    words = line.split()
    if len(words) < 5 or words[0] != "ring" or words[1] != "p" or words[3] != "vars":
        raise ParseError("header must read 'ring p <prime> vars <names...>'", lineno, 1)
    try:
        p = int(words[2])
    except ValueError:
        raise ParseError(f"bad characteristic {words[2]!r}", lineno, line.index(words[2]) + 1) from None
    if not is_prime(p):
        raise ParseError(f"{p} is not prime", lineno, line.index(words[2]) + 1)
    names = words[4:]
    if len(set(names)) != len(names):
        raise ParseError("repeated variable name", lineno, 1)
    return PolyRing(len(names), p, names)


def parse_ideal(path: str) -> IdealFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    f = parse_ideal_text(text, os.path.splitext(os.path.basename(path))[0])
    from .omega import is_saturated
    f.saturated = is_saturated(f.ideal())
    return f


def format_ideal(I: FPModule, name: str = "") -> str:
    ring = I.ring
    lines = []
    if name:
        lines.append(f"# name: {name}")
    lines.append(f"ring p {ring.p} vars " + " ".join(ring.names))
    lines.append("ideal")
    lines += [format_polynomial(g) for g in ideal_generators(I)]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ reports

@dataclass
class Report:
    command: str
    source: dict
    params: dict
    result: dict = field(default_factory=dict)
    text: list = field(default_factory=list)
    elapsed: float = 0.0

    def as_json(self) -> str:
        body = {"schema": SCHEMA, "command": self.command, "input": self.source,
                "params": self.params, "result": self.result}
        return json.dumps(_jsonable(body), sort_keys=True, indent=2, ensure_ascii=False)


def _jsonable(x):
    if isinstance(x, float):
        if x == float("inf"):
            return "inf"
        if x == float("-inf"):
            return "-inf"
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _yn(b) -> str:
    return "yes" if b else "no"


def _iso_error_bound(M: FPModule, trials: int) -> float:
    # a singular random map on generators has probability <= rank/p per trial
    return (max(M.F0.rank, 1) / M.ring.p) ** trials


def _cohomology_json(ct):
    return {"entries": ct.as_list(),
            "finite_length": {i: ct.finite_length[i] for i in ct.nonzero_rows},
            "window_limited": {i: ct.window_limited[i] for i in ct.nonzero_rows},
            "top": {i: ct.top[i] for i in ct.nonzero_rows}}


# ------------------------------------------------------------------ subcommands

def cmd_betti(f: IdealFile, opts) -> Report:
    rep = _report("betti", f, opts)
    I = f.ideal()
    A = quotient_of(I)
    bt = betti_of(A)
    rep.result = {"betti": bt.as_list(), "projdim": bt.projdim, "regularity": bt.regularity}
    rep.text += ["Betti table of R/I:", bt.render(), f"projdim {bt.projdim}, regularity {bt.regularity}"]
    return rep


def cmd_cohomology(f: IdealFile, opts) -> Report:
    rep = _report("cohomology", f, opts)
    I = f.ideal()
    A = quotient_of(I)
    ct = local_cohomology_table(A, opts["window"])
    rep.result = {"local_cohomology_quotient": _cohomology_json(ct)}
    rep.text += ["dim [H^i_m(R/I)]_t:", ct.render()]
    lim = [i for i in ct.nonzero_rows if ct.window_limited[i]]
    if lim:
        rep.text.append("rows extending beyond the window: " + ", ".join(f"H^{i}" for i in lim))
    return rep


def cmd_check(f: IdealFile, opts) -> Report:
    from .omega import (arith_buchsbaum_test, codim, index_of_speciality, quasi_buchsbaum_test,
                        sheaf_regularity)
    from .homological import ext_modules
    rep = _report("check", f, opts)
    I = f.ideal()
    N = I.ring.nvars
    A = quotient_of(I)
    d = int(A.krull_dim())
    ct = local_cohomology_table(A, opts["window"])
    depth = ct.depth
    res = {"saturated": f.saturated, "dim": d, "codim": N - d, "depth": depth}
    if not f.saturated:
        raise AlgebraError("ideal is not saturated; the Buchsbaum tests need a saturated ideal")
    res["reg"] = sheaf_regularity(I)
    res["e_X"] = index_of_speciality(I)
    res["aCM"] = depth == d
    exts = ext_modules(A)
    res["equidim_CM"] = all(exts[j].is_zero() or exts[j].krull_dim() <= 0
                            for j in range(N - d + 1, N + 1))
    qb = quasi_buchsbaum_test(I)
    res["quasi_buchsbaum"] = qb.verdict
    if qb.witness:
        i, v, k = qb.witness
        res["quasi_buchsbaum_witness"] = {"H": i, "variable": I.ring.names[v], "generator": k}
    c = N - d
    if 2 <= c <= N - 1:
        ab = arith_buchsbaum_test(I, trials=opts["trials"], seed=opts["seed"])
        res["arith_buchsbaum"] = ab.verdict
        res["arith_buchsbaum_certified"] = ab.certified or ab.verdict
        res["arith_buchsbaum_reason"] = ab.reason
        if ab.decomposition is not None:
            res["trials"] = ab.decomposition.trials
            if not ab.verdict and not ab.certified:
                res["error_bound"] = _iso_error_bound(ab.qp.E, opts["trials"])
    else:
        res["arith_buchsbaum"] = None
        res["arith_buchsbaum_reason"] = f"codimension {c} outside 2..{N - 1}"
    _consistency(res)
    rep.result = res
    for k in ("saturated", "dim", "depth", "reg", "e_X", "aCM", "equidim_CM", "quasi_buchsbaum",
              "arith_buchsbaum"):
        v = res[k]
        rep.text.append(f"{k.replace('_', '-')}: {_yn(v) if isinstance(v, bool) else v}")
    rep.text.append(f"arith-buchsbaum reason: {res['arith_buchsbaum_reason']}")
    return rep


def _consistency(res):
    if res.get("aCM") and res.get("arith_buchsbaum") is False:
        raise InvariantViolation("aCM input reported as not arithmetically Buchsbaum")
    if res.get("arith_buchsbaum") and not res.get("quasi_buchsbaum"):
        raise InvariantViolation("arithmetically Buchsbaum input failed the quasi-Buchsbaum test")


def cmd_omega(f: IdealFile, opts) -> Report:
    from .omega import arith_buchsbaum_test, mapping_cone_expand, raw_cone_betti, tor_tail_check
    rep = _report("omega", f, opts)
    I = f.ideal()
    ab = arith_buchsbaum_test(I, trials=opts["trials"], seed=opts["seed"])
    if not ab.verdict:
        raise AlgebraError(f"not arithmetically Buchsbaum: {ab.reason}")
    om = ab.omega
    rep.result = {"omega_resolution": om.as_dict(), "trials": ab.decomposition.trials}
    rep.text += ["Ω-resolution:", om.render()]
    if opts.get("expand"):
        ce = mapping_cone_expand(om)
        direct = betti_of(I)
        if ce.raw_betti.entries != raw_cone_betti(om).entries:
            raise InvariantViolation("raw cone disagrees with the Koszul count")
        if ce.minimal_betti.entries != direct.entries:
            raise InvariantViolation("minimalized cone differs from the direct Betti table")
        ok, pred, comp = tor_tail_check(om, I)
        if not ok:
            raise InvariantViolation("Tor tail prediction failed")
        rep.result["cone"] = {"raw": ce.raw_betti.as_list(), "minimal": ce.minimal_betti.as_list()}
        rep.result["tor_tail"] = sorted([i, j, b] for (i, j), b in pred.items())
        rep.text += ["raw mapping cone (Betti of I):", ce.raw_betti.render(),
                     "minimalized:", ce.minimal_betti.render()]
    return rep


def cmd_weak_omega(f: IdealFile, opts) -> Report:
    from .omega import weak_omega_resolution
    rep = _report("weak-omega", f, opts)
    w = weak_omega_resolution(f.ideal(), trials=opts["trials"], seed=opts["seed"])
    rep.result = {"weak_omega_resolution": w.as_dict()}
    rep.text += ["weak Ω-resolution:", w.render()]
    return rep


def cmd_qpres(f: IdealFile, opts) -> Report:
    from .qpres import is_minimal_qpres, q_presentation, verify_distribution
    rep = _report("qpres", f, opts)
    q = opts["q"]
    qp = q_presentation(f.ideal(), q)
    dr = verify_distribution(qp, opts["window"])
    if not dr.ok:
        raise InvariantViolation("distribution check failed: " + "; ".join(map(str, dr.failures[:3])))
    minimal = is_minimal_qpres(qp)
    rep.result = {"q": q, "trivial": qp.trivial, "P_generators": sorted(qp.P.F0.twists),
                  "P_betti": betti_of(qp.P).as_list(), "E_generators": sorted(qp.E.F0.twists),
                  "E_betti": betti_of(qp.E).as_list(), "minimal": minimal, "distribution_ok": dr.ok}
    rep.text += [f"{q}-presentation 0 → P → E → I → 0" + (" (trivial)" if qp.trivial else ""),
                 f"P generators: {sorted(qp.P.F0.twists)}", betti_of(qp.P).render(),
                 f"E generators: {sorted(qp.E.F0.twists)}", betti_of(qp.E).render(),
                 f"minimal: {_yn(minimal)}, distribution in window: ok"]
    return rep


def cmd_hyperplane(f: IdealFile, opts) -> Report:
    from .omega import (hyperplane_transform, omega_resolution, raw_cone_betti, reconcile_betti,
                        reconcile_free_levels)
    rep = _report("hyperplane", f, opts)
    I = f.ideal()
    om = omega_resolution(I, trials=opts["trials"], seed=opts["seed"])
    sym = hyperplane_transform(om)
    S, coeffs = hyperplane_section(I, seed=opts["seed"])
    direct = omega_resolution(S, trials=opts["trials"], seed=opts["seed"])
    counts = reconcile_free_levels(sym, direct)
    if counts is None:
        raise InvariantViolation("symbolic transform does not reduce to the section's resolution")
    bc = reconcile_betti(raw_cone_betti(sym), betti_of(S))
    if bc is None:
        raise InvariantViolation("Betti tables of transform and section do not reconcile")
    rep.result = {"transform": sym.as_dict(), "section": direct.as_dict(),
                  "cancelled": [{str(d): v for d, v in sorted(x.items())} for x in counts],
                  "section_betti": betti_of(S).as_list()}
    rep.text += ["symbolic transform:", sym.render(), "section:", direct.render(),
                 "cancelled pairs per level: " + str([dict(sorted(x.items())) for x in counts])]
    return rep


def cmd_surface_lift(f: IdealFile, opts) -> Report:
    from .surfaces import lifting_test, surface_presentation
    rep = _report("surface-lift", f, opts)
    I = f.ideal()
    sp = surface_presentation(I)
    r = lifting_test(I, trials=opts["trials"], seed=opts["seed"])
    rep.result = {"flags": sp.flags, "arith_buchsbaum": r.verdict,
                  "weak_omega_resolution": r.weak.as_dict(),
                  "obstructions": [[o.source, o.target] for o in r.obstructions]}
    rep.text.append(r.weak.render())
    if r.verdict:
        rep.text.append("arithmetically Buchsbaum: φ lifts through the free cover")
    elif r.obstructions:
        o = r.obstructions[0]
        rep.text.append(f"not arithmetically Buchsbaum: obstruction Hom({o.source}, {o.target}) = 0")
    else:
        rep.text.append(f"not arithmetically Buchsbaum: {r.reason}")
    return rep


def _report(cmd, f: IdealFile, opts) -> Report:
    src = {"name": f.name, "digest": f.digest, "saturated": f.saturated,
           "nvars": f.ring.nvars, "p": f.ring.p}
    params = {"seed": opts["seed"], "trials": opts["trials"], "window": list(opts["window"])}
    rep = Report(cmd, src, params)
    rep.text.append(f"{f.name or 'ideal'}: {len(f.generators)} generators in {f.ring.nvars} variables, "
                    f"saturated: {_yn(f.saturated)}")
    return rep


# ------------------------------------------------------------------ click wiring

def _window(ctx, param, value):
    try:
        a, b = (int(s) for s in value.split(":"))
    except ValueError:
        raise click.BadParameter("expected a:b") from None
    if a > b:
        raise click.BadParameter("empty window")
    return (a, b)


def common(fn):
    fn = click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")(fn)
    fn = click.option("--trials", default=20, show_default=True, type=click.IntRange(1))(fn)
    fn = click.option("--seed", default=0, show_default=True, type=int)(fn)
    fn = click.option("--window", default="-10:10", show_default=True, callback=_window,
                      help="Degree window a:b.")(fn)
    return fn


def _run(handler, path, opts):
    t0 = time.perf_counter()
    try:
        f = parse_ideal(path)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_PRECONDITION)
    try:
        rep = handler(f, opts)
    except InvariantViolation as exc:
        click.echo(f"self-check failed: {exc}", err=True)
        sys.exit(EXIT_INVARIANT)
    except AlgebraError as exc:
        _emit_error(opts, f, path, str(exc))
        sys.exit(EXIT_PRECONDITION)
    rep.elapsed = time.perf_counter() - t0
    _emit(rep, opts)


def _emit(rep: Report, opts):
    if opts["as_json"]:
        click.echo(rep.as_json())
    else:
        click.echo("\n".join(rep.text))
        click.echo(f"({rep.elapsed:.2f}s)")


def _emit_error(opts, f, path, msg):
    if opts["as_json"]:
        body = {"schema": SCHEMA, "input": {"name": f.name, "digest": f.digest}, "error": msg}
        click.echo(json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False))
    click.echo(f"error: {msg}", err=True)


@click.group()
@click.version_option(__version__)
def main():
    """Free resolutions, local cohomology and Buchsbaum tests for homogeneous ideals."""


def _simple(name, handler, doc):
    @main.command(name=name, help=doc)
    @click.argument("path", type=click.Path(dir_okay=False))
    @common
    def _cmd(path, **opts):
        _run(handler, path, opts)
    return _cmd


_simple("betti", cmd_betti, "Graded Betti table of R/I.")
_simple("cohomology", cmd_cohomology, "Local cohomology dimensions of R/I over the window.")
_simple("check", cmd_check, "Saturation, dimension, depth, regularity and the Buchsbaum verdicts.")
_simple("weak-omega", cmd_weak_omega, "Weak Ω-resolution of a quasi-Buchsbaum ideal.")
_simple("hyperplane", cmd_hyperplane, "Ω-resolution of a general hyperplane section, two ways.")
_simple("surface-lift", cmd_surface_lift, "Lifting test for arithmetic Buchsbaumness of a surface in P^4.")


@main.command(help="Ω-resolution of an arithmetically Buchsbaum ideal.")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--expand", is_flag=True, help="Also build and minimalize the mapping cone.")
@common
def omega(path, **opts):
    _run(cmd_omega, path, opts)


@main.command(help="Minimal q-presentation of I.")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--q", "q", default=1, show_default=True, type=click.IntRange(1))
@common
def qpres(path, **opts):
    _run(cmd_qpres, path, opts)


@main.command(help="Build an ideal from a resolution shape given as JSON.")
@click.argument("shape", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Write the ideal file here.")
@click.option("--attempts", default=16, show_default=True, type=click.IntRange(1))
@common
def construct(shape, out, attempts, **opts):
    from .surfaces import Shape, construct_from_shape
    try:
        with open(shape, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    try:
        sh = Shape.from_dict(data)
        con = construct_from_shape(sh, seed=opts["seed"], attempts=attempts)
    except AlgebraError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PRECONDITION)
    name = os.path.splitext(os.path.basename(shape))[0]
    text = format_ideal(con.ideal, name)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    result = {"shape": sh.as_dict(), "seed_used": con.seed, "attempts": con.attempts,
              "generators": [format_polynomial(g) for g in ideal_generators(con.ideal)],
              "cohomology": sorted([i, e, s] for (i, e), s in con.checks["cohomology"].items())}
    if opts["as_json"]:
        body = {"schema": SCHEMA, "command": "construct", "params": {"seed": opts["seed"]},
                "result": result}
        click.echo(json.dumps(_jsonable(body), sort_keys=True, indent=2, ensure_ascii=False))
    else:
        click.echo(text if not out else f"wrote {out} ({len(result['generators'])} generators, "
                                        f"seed {con.seed})")


if __name__ == "__main__":  # pragma: no cover
    main()
