"""Command-line front end: walk tables, moment tables, density samples,
component and isomorphism reports, and the verification suites.

Identical invocations produce byte-identical output: fixed formatting,
fixed ordering, no timestamps.  Every command echoes its resolved
parameters into the output header (CSV comment line or JSON "params").
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from math import comb

from . import elliptic, graphs, spectral, walks
from .errors import NumericalError, ResourceLimitError

#: walk-length caps by lattice dimension
CAP_3D = 24
CAP_12D = 40

ENV_BUDGET = "LATTICE_WALKS_BUDGET"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    if isinstance(v, (list, tuple)):
        return "|".join(_fmt(x) for x in v)
    if v is None:
        return "none"
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return _fmt(v) if v == v else "nan"
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def _resolve_budget(args) -> int:
    if getattr(args, "radius_budget", None) is not None:
        if args.radius_budget < 1:
            raise ValueError("--radius-budget must be positive")
        return args.radius_budget
    env = os.environ.get(ENV_BUDGET)
    if env:
        try:
            budget = int(env)
        except ValueError:
            raise ValueError(f"{ENV_BUDGET} must be an integer, got {env!r}") from None
        if budget < 1:
            raise ValueError(f"{ENV_BUDGET} must be positive")
        return budget
    return graphs.DEFAULT_VERTEX_BUDGET


def _csv(params: dict, header: str, rows: list[str]) -> str:
    echo = " ".join(f"{k}={_fmt(v)}" for k, v in params.items())
    return "\n".join([f"# params: {echo}", header] + rows) + "\n"


def _json_doc(params: dict, body: dict) -> str:
    doc = {"params": {k: _jsonable(v) for k, v in params.items()}}
    doc.update(body)
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def _run_walks(args) -> tuple[str, int]:
    budget = _resolve_budget(args)
    kind = walks.lattice_kind(args.kind)
    cap = CAP_3D if kind.dimension == 3 else CAP_12D
    if args.mmax < 0:
        raise ValueError("--mmax must be nonnegative")
    if args.mmax > cap:
        raise ValueError(
            f"mmax {args.mmax} exceeds the cap {cap} for {kind.dimension}-d "
            f"kind {kind.key!r}")
    graph, root = walks.build_lattice(args.kind, n=args.n, k=args.k, l=args.l)
    table = walks.walk_table(graph, root, args.mmax, budget)
    params = {"command": "walks", "kind": args.kind, "mmax": args.mmax,
              "n": args.n, "k": args.k, "l": args.l,
              "radius_budget": budget, "format": args.format}
    rows = []
    for m in range(args.mmax + 1):
        ball_count = table.counts[m]
        closed = walks.closed_form_walks(args.kind, m, n=args.n, k=args.k, l=args.l)
        rows.append((m, ball_count, closed, ball_count == closed))
    if args.format == "json":
        body = {"rows": [{"m": m, "ball_count": bc, "closed_form": cf, "match": ok}
                         for m, bc, cf, ok in rows]}
        return _json_doc(params, body), 0
    lines = [f"{m},{bc},{cf},{_fmt(ok)}" for m, bc, cf, ok in rows]
    return _csv(params, "m,ball_count,closed_form,match", lines), 0


_MOMENT_KINDS = ("arcsine", "semicircle", "aa", "wa", "ww",
                 "classical-aa", "classical-ww", "path")


def _moment_distribution(kind: str, n):
    if kind == "arcsine":
        return spectral.ArcSine()
    if kind == "semicircle":
        return spectral.Semicircle()
    if kind in ("aa", "wa", "ww"):
        return spectral.named_density(kind)
    if kind == "classical-aa":
        return spectral.classical_convolve(spectral.ArcSine(), spectral.ArcSine())
    if kind == "classical-ww":
        return spectral.classical_convolve(spectral.Semicircle(), spectral.Semicircle())
    if kind == "path":
        if n is None:
            raise ValueError("moment kind 'path' requires --n")
        return spectral.path_spectrum(n)
    raise ValueError(f"unknown moment kind {kind!r}; known: {', '.join(_MOMENT_KINDS)}")


def _run_moments(args) -> tuple[str, int]:
    if args.mmax < 0:
        raise ValueError("--mmax must be nonnegative")
    if args.mmax > CAP_12D:
        raise ValueError(f"mmax {args.mmax} exceeds the moment-table cap {CAP_12D}")
    dist = _moment_distribution(args.kind, args.n)
    params = {"command": "moments", "kind": args.kind, "mmax": args.mmax,
              "n": args.n, "format": args.format}
    values = [dist.moment(m) for m in range(args.mmax + 1)]
    if args.format == "json":
        body = {"rows": [{"m": m, "moment": v if isinstance(v, int) else float(f"{v:.15g}")}
                         for m, v in enumerate(values)]}
        return _json_doc(params, body), 0
    lines = [f"{m},{v}" if isinstance(v, int) else f"{m},{v:.15g}"
             for m, v in enumerate(values)]
    return _csv(params, "m,moment", lines), 0


def _run_density(args) -> tuple[str, int]:
    if args.kind not in ("aa", "wa", "ww"):
        raise ValueError(f"unknown density kind {args.kind!r}; known: aa, wa, ww")
    if args.grid < 2:
        raise ValueError("--grid needs at least 2 points")
    params = {"command": "density", "kind": args.kind, "grid": args.grid,
              "format": args.format}
    xs = [-4.0 + 8.0 * i / (args.grid - 1) for i in range(args.grid)]
    vals = [elliptic.density(args.kind, x) for x in xs]
    if args.format == "json":
        body = {"rows": [{"x": float(f"{x:.15g}"),
                          "density": "inf" if math.isinf(v) else float(f"{v:.15g}")}
                         for x, v in zip(xs, vals)]}
        return _json_doc(params, body), 0
    lines = [f"{x:.15g},{v:.15g}" for x, v in zip(xs, vals)]
    return _csv(params, "x,density", lines), 0


def _run_components(args) -> tuple[str, int]:
    budget = _resolve_budget(args)
    if args.kind not in ("kron", "cartesian"):
        raise ValueError("components --kind must be 'kron' or 'cartesian'")
    na = args.n if args.n is not None else 2
    nb = args.k if args.k is not None else 2
    g1, g2 = graphs.path_graph(na), graphs.path_graph(nb)
    prod = graphs.kronecker(g1, g2) if args.kind == "kron" else graphs.cartesian(g1, g2)
    comps = graphs.connected_components(prod)
    params = {"command": "components", "kind": args.kind, "n": na, "k": nb,
              "radius_budget": budget, "format": args.format}
    if args.format == "json":
        body = {"count": len(comps),
                "components": [{"index": i, "size": len(c),
                                "smallest_vertex": list(c.vertices[0])}
                               for i, c in enumerate(comps)]}
        return _json_doc(params, body), 0
    lines = [f"{i},{len(c)},\"{','.join(map(str, c.vertices[0]))}\""
             for i, c in enumerate(comps)]
    return _csv(params, "component,size,smallest_vertex", lines), 0


_ISO_RADII = {"plane": 8, "strip": 6, "halfplane": 6, "wedge": 6, "diamond": 6}


def _iso_map(kind: str, n, k, l):
    if kind == "plane":
        return graphs.plane_to_kron_map()
    if kind == "strip":
        if n is None:
            raise ValueError("iso kind 'strip' requires --n")
        return graphs.strip_to_kron_map(n)
    if kind == "halfplane":
        return graphs.halfplane_to_kron_map()
    if kind == "wedge":
        return graphs.wedge_to_kron_map()
    if kind == "diamond":
        if k is None or l is None:
            raise ValueError("iso kind 'diamond' requires --k and --l")
        return graphs.diamond_to_kron_map(k, l)
    raise ValueError(
        f"unknown iso kind {kind!r}; known: {', '.join(_ISO_RADII)}")


def _run_iso(args) -> tuple[str, int]:
    budget = _resolve_budget(args)
    iso = _iso_map(args.kind, args.n, args.k, args.l)
    radius = _ISO_RADII[args.kind]
    report = graphs.verify_isomorphism(iso, radius, budget)
    params = {"command": "iso", "kind": args.kind, "n": args.n, "k": args.k,
              "l": args.l, "radius_budget": budget, "format": args.format}
    code = 0 if report.ok else 1
    if args.format == "csv":
        line = (f"{iso.name},{radius},{_fmt(report.ok)},{report.detail},"
                f"{report.source_size},{report.target_size}")
        return _csv(params, "name,radius,ok,detail,source_size,target_size",
                    [line]), code
    body = {"name": iso.name, "radius": radius, "ok": report.ok,
            "detail": report.detail,
            "witness": _jsonable(report.witness),
            "source_size": report.source_size,
            "target_size": report.target_size}
    return _json_doc(params, body), code


# ---------------------------------------------------------------------------
# verification suites


def _check(name, expected, actual, tol, ok) -> dict:
    return {"name": name, "expected": expected, "actual": actual,
            "tol": tol, "pass": bool(ok)}


def _suite_identity() -> list[dict]:
    checks = []
    for m in range(31):
        lhs = sum(comb(2 * m, 2 * k) * comb(2 * k, k) * comb(2 * m - 2 * k, m - k)
                  for k in range(m + 1))
        rhs = comb(2 * m, m) ** 2
        checks.append(_check(f"binomial-identity m={m}", rhs, lhs, 0, lhs == rhs))
    return checks


def _suite_iso(budget: int) -> list[dict]:
    cases = [
        (graphs.plane_to_kron_map(), 8),
        (graphs.strip_to_kron_map(3), 6),
        (graphs.strip_to_kron_map(4), 6),
        (graphs.halfplane_to_kron_map(), 6),
        (graphs.wedge_to_kron_map(), 6),
        (graphs.diamond_to_kron_map(4, 4), 6),
    ]
    checks = []
    for iso, radius in cases:
        rep = graphs.verify_isomorphism(iso, radius, budget)
        actual = "ok" if rep.ok else f"fail: {rep.detail}"
        checks.append(_check(f"{iso.name} r={radius}", "ok", actual, 0, rep.ok))
    return checks


def _suite_coincidence(budget: int) -> list[dict]:
    checks = []
    g_a, o_a = walks.build_lattice("kkc3")
    g_b, o_b = walks.build_lattice("chamber3")
    rep = walks.moment_coincidence_report(g_a, o_a, g_b, o_b, 12, budget)
    for m, ca, cb in rep.entries:
        if m % 2:
            continue
        cf = walks.closed_form_walks("chamber3", m)
        checks.append(_check(f"triple-product-vs-chamber m={m}", cf, [ca, cb],
                             0, ca == cb == cf))
    hist_a = graphs.degree_histogram(graphs.ball(g_a, o_a, 6, budget), 4)
    hist_b = graphs.degree_histogram(graphs.ball(g_b, o_b, 6, budget), 4)
    checks.append(_check("product-interior-degree-2-count", 1,
                         hist_a.get(2, 0), 0, hist_a.get(2, 0) == 1))
    checks.append(_check("chamber-interior-degree-2-count", ">=2",
                         hist_b.get(2, 0), 0, hist_b.get(2, 0) >= 2))

    corner, corner_root = walks.build_lattice("zxzplus")
    kk = graphs.kronecker(graphs.half_line(), graphs.half_line())
    rep2 = walks.moment_coincidence_report(corner, corner_root, kk, (0, 1), 16, budget)
    for m, ca, cb in rep2.entries:
        if m % 2:
            continue
        cf = walks.closed_form_walks("zxzplus", m)
        checks.append(_check(f"corner-vs-shifted-ray-product m={m}", cf, [ca, cb],
                             0, ca == cb == cf))
    return checks


def _suite_density(sweep_tol: float) -> list[dict]:
    checks = []
    for kind in ("aa", "wa", "ww"):
        val = elliptic.density_moment(kind, 0)
        checks.append(_check(f"normalization {kind}", 1.0, val, 1e-8,
                             abs(val - 1.0) <= 1e-8))
    for kind in ("aa", "wa", "ww"):
        dist = spectral.named_density(kind)
        for m in (2, 4, 6, 8, 10):
            expected = dist.moment(m)
            actual = elliptic.density_moment(kind, m)
            ok = abs(actual - expected) <= 1e-6 * max(1.0, abs(expected))
            checks.append(_check(f"moment {kind} m={m}", expected, actual, 1e-6, ok))
    kernels = {"aa": (elliptic.arcsine_density, elliptic.arcsine_density),
               "wa": (elliptic.semicircle_density, elliptic.arcsine_density),
               "ww": (elliptic.semicircle_density, elliptic.semicircle_density)}
    xs = [0.2 + 3.6 * i / 19 for i in range(20)]
    for kind, (f, g) in kernels.items():
        dev = max(abs(elliptic.mellin_density_convolve(f, g, x, tol=1e-8)
                      - elliptic.density(kind, x)) for x in xs)
        checks.append(_check(f"mellin-convolution-sweep {kind} (20 pts)", 0.0,
                             dev, sweep_tol, dev <= sweep_tol))
    defect = 0.0
    for i in range(1, 100):
        k = i / 100.0
        kp = math.sqrt((1.0 - k) * (1.0 + k))
        pk, pkp = elliptic.elliptic_KE(k), elliptic.elliptic_KE(kp)
        defect = max(defect, abs(pk.K * pkp.E + pkp.K * pk.E
                                 - pk.K * pkp.K - math.pi / 2.0))
    checks.append(_check("legendre-relation defect (k=0.01..0.99)", 0.0,
                         defect, 1e-11, defect <= 1e-11))
    ks = [i / 100.0 for i in range(100)]
    pairs = [elliptic.elliptic_KE(k) for k in ks]
    mono = (all(a.K < b.K for a, b in zip(pairs, pairs[1:]))
            and all(a.E > b.E for a, b in zip(pairs, pairs[1:])))
    checks.append(_check("K increasing and E decreasing on [0,1)", True,
                         mono, 0, mono))
    return checks


def _golden_path4(m: int) -> float:
    s5 = math.sqrt(5.0)
    return ((5.0 - s5) / 10.0 * ((3.0 + s5) / 2.0) ** m
            + (5.0 + s5) / 10.0 * ((3.0 - s5) / 2.0) ** m)


def _suite_path_spectrum() -> list[dict]:
    checks = []
    for n in range(2, 13):
        ps = spectral.path_spectrum(n)
        dev = 0.0
        for m in range(2 * n + 1):
            exact = walks.path_closed_walks(n, m)
            dev = max(dev, abs(ps.moment(m) - exact) / max(1.0, exact))
        checks.append(_check(f"path-spectrum n={n} rel dev (m<=2n)", 0.0, dev,
                             1e-8, dev <= 1e-8))
    dev4 = max(abs(_golden_path4(m) - walks.path_closed_walks(4, 2 * m))
               for m in range(7))
    checks.append(_check("path4 golden-ratio closed form (m<=6)", 0.0,
                         dev4, 1e-9, dev4 <= 1e-9))
    return checks


_SUITES = ("identity", "iso", "coincidence", "density", "path-spectrum", "all")


def _run_verify(args) -> tuple[str, int]:
    budget = _resolve_budget(args)
    sweep_tol = args.tol if args.tol is not None else 1e-6
    if args.suite not in _SUITES:
        raise ValueError(f"unknown suite {args.suite!r}; known: {', '.join(_SUITES)}")
    runners = {
        "identity": lambda: _suite_identity(),
        "iso": lambda: _suite_iso(budget),
        "coincidence": lambda: _suite_coincidence(budget),
        "density": lambda: _suite_density(sweep_tol),
        "path-spectrum": lambda: _suite_path_spectrum(),
    }
    names = list(runners) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        checks.extend(runners[name]())
    all_pass = all(c["pass"] for c in checks)
    params = {"command": "verify", "suite": args.suite, "tol": sweep_tol,
              "radius_budget": budget, "format": args.format}
    code = 0 if all_pass else 1
    if args.format == "csv":
        lines = [",".join([c["name"], _fmt(c["expected"]), _fmt(c["actual"]),
                           _fmt(c["tol"]), _fmt(c["pass"])]) for c in checks]
        return _csv(params, "name,expected,actual,tol,pass", lines), code
    body = {"suite": args.suite,
            "checks": [{k: _jsonable(v) for k, v in c.items()} for c in checks],
            "pass": all_pass}
    return _json_doc(params, body), code


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, *, fmt_default="csv", kind=None, mmax=False, n=False,
                kk=False, ll=False, grid=False, suite=False, tol=False,
                budget=False):
    if kind is not None:
        sub.add_argument("--kind", required=kind == "required", help="named kind")
    if mmax:
        sub.add_argument("--mmax", type=int, required=True,
                         help="largest walk length / moment order")
    if n:
        sub.add_argument("--n", type=int, default=None)
    if kk:
        sub.add_argument("--k", type=int, default=None)
    if ll:
        sub.add_argument("--l", type=int, default=None)
    if grid:
        sub.add_argument("--grid", type=int, required=True,
                         help="number of sample points on [-4, 4]")
    if suite:
        sub.add_argument("--suite", required=True, choices=_SUITES)
    if tol:
        sub.add_argument("--tol", type=float, default=None,
                         help="override the convolution sweep tolerance")
    if budget:
        sub.add_argument("--radius-budget", type=int, default=None,
                         dest="radius_budget",
                         help=f"vertex budget for ball expansion "
                              f"(default {graphs.DEFAULT_VERTEX_BUDGET}, "
                              f"env {ENV_BUDGET})")
    sub.add_argument("--format", choices=("csv", "json"), default=fmt_default)
    sub.add_argument("--out", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticewalks",
        description="Exact closed-walk tables, spectral moments, and "
                    "product densities for graph products and restricted "
                    "integer lattices.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("walks", help="walk table with closed-form comparison")
    _add_common(sub, kind="required", mmax=True, n=True, kk=True, ll=True,
                budget=True)

    sub = subs.add_parser("moments", help="moment table of a distribution")
    _add_common(sub, kind="required", mmax=True, n=True)

    sub = subs.add_parser("density", help="sample a product density on a grid")
    _add_common(sub, kind="required", grid=True)

    sub = subs.add_parser("verify", help="run a verification suite")
    _add_common(sub, fmt_default="json", suite=True, tol=True, budget=True)

    sub = subs.add_parser("components", help="components of a product of paths")
    _add_common(sub, kind="optional", n=True, kk=True, budget=True)

    sub = subs.add_parser("iso", help="check a built-in lattice isomorphism")
    _add_common(sub, fmt_default="json", kind="required", n=True, kk=True,
                ll=True, budget=True)

    return parser


_RUNNERS = {
    "walks": _run_walks,
    "moments": _run_moments,
    "density": _run_density,
    "verify": _run_verify,
    "components": _run_components,
    "iso": _run_iso,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "components" and args.kind is None:
        args.kind = "kron"
    try:
        text, code = _RUNNERS[args.command](args)
    except (ValueError, ResourceLimitError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
