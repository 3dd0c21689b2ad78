"""Command-line interface: every derivation as a reproducible, seeded experiment.

Exit codes: 0 success, 1 a requested invariant check failed, 2 validation
error, 3 numerical failure. JSON is the canonical output (sorted keys, so
identical configs give byte-identical files); CSV is a convenience
projection of tabular results.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__, cfs, majorana, minimize as minimize_mod, potentials, witt
from .lattice import (
    LatticeSpec,
    MassData,
    aux_labels,
    aux_masses,
    build_vacuum_aux,
    build_vacuum_direct,
    dirac_residual,
    left_algebra_action,
    load_kernels,
    local_correlation,
    mode_onshell_residuals,
    save_kernels,
    to_octonionic,
)
from .mult_algebra import (
    SpanClosureError,
    chain,
    left_right_equality,
    left_unit,
    quadratic_relation_check,
    span_dimension,
)
from .octonion import (
    ComplexOctonion,
    Octonion,
    associator,
    conj,
    inv,
    mul,
    norm,
    projector,
    split,
    table_rows,
    unsplit,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class ValidationError(Exception):
    pass


class CheckFailure(Exception):
    pass


def _meta(args, command: str, **params) -> dict:
    return {
        "command": command,
        "version": __version__,
        "seed": getattr(args, "seed", None),
        "tolerance": getattr(args, "tol", None),
        "params": params,
    }


def _to_plain(obj):
    if isinstance(obj, dict):
        return {k: _to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _to_plain(obj.tolist())
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, payload: dict, rows=None, fields=None) -> None:
    """JSON payload, or a CSV projection of `rows` when --format csv."""
    if getattr(args, "format", "json") == "csv" and rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow(row)
        _write(args, buf.getvalue())
    else:
        _write(args, json.dumps(_to_plain(payload), indent=2, sort_keys=True) + "\n")


def _finish_checks(args, meta: dict, checks: list) -> int:
    payload = {"meta": meta, "checks": checks, "all_passed": all(c["passed"] for c in checks)}
    rows = [(c["name"], c["passed"], c["value"]) for c in checks]
    _emit(args, payload, rows=rows, fields=("check", "passed", "value"))
    return EXIT_OK if payload["all_passed"] else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- octonion

def cmd_octonion_table(args) -> int:
    rows = table_rows()
    payload = {"meta": _meta(args, "octonion table"), "basis": [f"e{i}" for i in range(8)], "table": rows}
    labeled = [[f"e{i}", *row] for i, row in enumerate(rows)]
    _emit(args, payload, rows=labeled, fields=["", *(f"e{j}" for j in range(8))])
    return EXIT_OK


def cmd_octonion_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    tol = args.tol if args.tol is not None else 1e-12
    checks = []
    from .octonion import FANO_LINES

    cyc = all(
        mul(Octonion.e(a), Octonion.e(b)) == Octonion.e(c)
        for line in FANO_LINES
        for a, b, c in (line, line[1:] + line[:1], line[2:] + line[:2])
    )
    checks.append({"name": "fano_lines_cyclic", "passed": bool(cyc), "value": None})
    e = Octonion.e
    na = mul(e(4), mul(e(7), e(6))) == -e(5) and mul(mul(e(4), e(7)), e(6)) == e(5)
    checks.append({"name": "nonassociative_pair_e4_e7_e6", "passed": bool(na), "value": None})
    worst = 0.0
    for _ in range(1000):
        x = Octonion(rng.standard_normal(8))
        y = Octonion(rng.standard_normal(8))
        worst = max(worst, abs(norm(mul(x, y)) - norm(x) * norm(y)) / max(1.0, norm(x) * norm(y)))
    checks.append({"name": "norm_multiplicative_1000", "passed": bool(worst < tol), "value": worst})
    worst_a = 0.0
    for _ in range(200):
        x = Octonion(rng.standard_normal(8))
        y = Octonion(rng.standard_normal(8))
        worst_a = max(worst_a, float(np.abs(associator(x, x, y).coeffs).max()))
    checks.append({"name": "alternativity_200", "passed": bool(worst_a < tol * 100), "value": worst_a})
    worst_inv = 0.0
    worst_split = 0.0
    worst_conj = 0.0
    for _ in range(100):
        x = Octonion(rng.standard_normal(8))
        y = Octonion(rng.standard_normal(8))
        worst_inv = max(worst_inv, float(np.abs((mul(inv(x), x) - e(0)).coeffs).max()))
        worst_split = max(worst_split, float(np.abs(unsplit(split(x)).coeffs - x.coeffs).max()))
        dev = mul(conj(x), conj(y)) - conj(mul(y, x))
        worst_conj = max(worst_conj, float(np.abs(dev.coeffs).max()))
    checks.append({"name": "inverse_100", "passed": bool(worst_inv < tol * 100), "value": worst_inv})
    checks.append({"name": "split_round_trip_100", "passed": worst_split == 0.0, "value": worst_split})
    checks.append({"name": "conj_antiautomorphism_100", "passed": bool(worst_conj < tol * 100), "value": worst_conj})
    rp, rm = projector(+1), projector(-1)
    proj_ok = (
        mul(rp, rp) == rp
        and mul(rm, rm) == rm
        and np.abs(mul(rp, rm).coeffs).max() == 0.0
        and np.abs((rp + rm).coeffs - ComplexOctonion.e(0).coeffs).max() == 0.0
    )
    checks.append({"name": "projectors_rho_pm", "passed": bool(proj_ok), "value": None})
    return _finish_checks(args, _meta(args, "octonion check"), checks)


# ---------------------------------------------------------------- clifford

def cmd_clifford_dim(args) -> int:
    real = span_dimension([left_unit(i) for i in range(1, 8)], field="real")
    cplx = span_dimension([left_unit(i).astype(complex) for i in range(1, 8)], field="complex")
    payload = {
        "meta": _meta(args, "clifford dim"),
        "real_dim": real.dimension,
        "complex_dim": cplx.dimension,
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_clifford_identities(args) -> int:
    rng = np.random.default_rng(args.seed)
    tol = args.tol if args.tol is not None else 1e-12
    checks = []
    chain_dev = float(np.abs(chain([1, 2, 3, 4, 5, 6]) - left_unit(7)).max())
    checks.append({"name": "chain_l1..l6_equals_l7", "passed": chain_dev == 0.0, "value": chain_dev})
    sq = max(float(np.abs(chain([a, a]) + np.eye(8)).max()) for a in range(1, 8))
    checks.append({"name": "squares_minus_identity", "passed": sq == 0.0, "value": sq})
    anti = max(
        float(np.abs(chain([a, b]) + chain([b, a])).max())
        for a in range(1, 8)
        for b in range(1, 8)
        if a != b
    )
    checks.append({"name": "letter_anticommutation", "passed": anti == 0.0, "value": anti})
    cl = 0.0
    for i in range(1, 7):
        for j in range(1, 7):
            dev = left_unit(i) @ left_unit(j) + left_unit(j) @ left_unit(i) + 2.0 * (i == j) * np.eye(8)
            cl = max(cl, float(np.abs(dev).max()))
    checks.append({"name": "clifford_cl06_relations", "passed": cl == 0.0, "value": cl})
    quad = 0.0
    for _ in range(200):
        x = Octonion(rng.standard_normal(8))
        y = Octonion(rng.standard_normal(8))
        quad = max(quad, quadratic_relation_check(x, y) / max(1.0, norm(x) * norm(y)))
    checks.append({"name": "quadratic_relation_200", "passed": quad < tol, "value": quad})
    rep = left_right_equality()
    checks.append({"name": "left_right_span_equality", "passed": bool(rep["equal"]), "value": rep["union_rank"]})
    return _finish_checks(args, _meta(args, "clifford identities"), checks)


# ---------------------------------------------------------------- ideals

def cmd_ideals_states(args) -> int:
    states = witt.ideal_basis("u") + witt.ideal_basis("d")
    ch = witt.charges(states)
    rows = [(s.label, s.ideal, s.grade, str(ch[s.label])) for s in states]
    payload = {
        "meta": _meta(args, "ideals states"),
        "states": [
            {"label": s.label, "ideal": s.ideal, "grade": s.grade, "charge": str(ch[s.label])}
            for s in states
        ],
    }
    _emit(args, payload, rows=rows, fields=("label", "ideal", "grade", "charge"))
    return EXIT_OK


def cmd_ideals_su3(args) -> int:
    gens = witt.su3_generators()
    f = witt.structure_constants(gens)
    rows = []
    for a in range(8):
        for b in range(8):
            for c in range(8):
                if abs(f[a, b, c]) > 1e-12:
                    rows.append((a + 1, b + 1, c + 1, round(float(f[a, b, c]), 12)))
    payload = {
        "meta": _meta(args, "ideals su3"),
        "convention": "[Lambda_a, Lambda_b] = 2i f_abc Lambda_c",
        "nonzero": [{"a": r[0], "b": r[1], "c": r[2], "f": r[3]} for r in rows],
    }
    _emit(args, payload, rows=rows, fields=("a", "b", "c", "f_abc"))
    return EXIT_OK


def cmd_ideals_casimir(args) -> int:
    payload = {
        "meta": _meta(args, "ideals casimir"),
        "u": witt.classify_representation(states=witt.ideal_basis("u")),
        "d": witt.classify_representation(states=witt.ideal_basis("d")),
    }
    _emit(args, payload)
    return EXIT_OK


# ---------------------------------------------------------------- cfs

def _load_measure(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return cfs.measure_from_json(obj)
    except (OSError, KeyError, ValueError, cfs.NotHermitian, cfs.SignatureViolation) as exc:
        raise ValidationError(f"cannot load measure file {path}: {exc}") from exc


def cmd_cfs_action(args) -> int:
    measure, cfg = _load_measure(args.measure)
    volume, trace = cfs.constraints(measure)
    payload = {
        "meta": _meta(args, "cfs action", measure=args.measure),
        "action": cfs.action(measure, cfg=cfg),
        "volume": volume,
        "trace": trace,
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_cfs_classify(args) -> int:
    try:
        with open(args.pairs) as fh:
            obj = json.load(fh)
        cfg = cfs.SystemConfig(
            f=int(obj["config"]["f"]),
            n=int(obj["config"]["n"]),
            kappa=float(obj["config"]["kappa"]),
        )
        points = [cfs.validate_point(cfs.complex_matrix_from_json(p), cfg) for p in obj["points"]]
        pairs = obj.get("pairs") or [
            [i, j] for i in range(len(points)) for j in range(i + 1, len(points))
        ]
    except (OSError, KeyError, ValueError, cfs.NotHermitian, cfs.SignatureViolation) as exc:
        raise ValidationError(f"cannot load pairs file {args.pairs}: {exc}") from exc
    rng = np.random.default_rng(args.seed)
    spins = [cfs.spin_space(p) for p in points]
    results = []
    rows = []
    for i, j in pairs:
        lam = cfs.product_spectrum(points[i], points[j], cfg)
        cls = cfs.causal_class(points[i], points[j], cfg)
        a_chain = cfs.closed_chain(spins[i], spins[j])
        chain_tr_dev = abs(np.trace(a_chain) - lam.sum())
        phi = rng.standard_normal(cfg.f) + 1j * rng.standard_normal(cfg.f)
        entry = {
            "pair": [i, j],
            "class": cls,
            "spectrum": [[z.real, z.imag] for z in lam],
            "closed_chain_trace_residual": float(chain_tr_dev),
            "completeness_residual": cfs.completeness_check(points[i], points[j], phi),
        }
        if args.geometry:
            try:
                d = cfs.spin_connection(spins[i], spins[j])
                entry["spin_connection_unitarity"] = float(
                    np.linalg.norm(d.conj().T @ spins[i].gram @ d - spins[j].gram)
                )
            except cfs.NotSpinConnectable as exc:
                entry["spin_connection_unitarity"] = f"not spin-connectable: {exc}"
        results.append(entry)
        rows.append((i, j, cls))
    payload = {"meta": _meta(args, "cfs classify", pairs=args.pairs), "results": results}
    if args.geometry and len(points) >= 3:
        try:
            r = cfs.holonomy(spins[0], spins[1], spins[2])
            r_back = cfs.holonomy(spins[0], spins[2], spins[1])
            payload["holonomy_012_loop_residual"] = float(
                np.abs(r @ r_back - np.eye(spins[0].dim)).max()
            )
        except cfs.NotSpinConnectable as exc:
            payload["holonomy_012_loop_residual"] = f"not spin-connectable: {exc}"
    _emit(args, payload, rows=rows, fields=("i", "j", "class"))
    return EXIT_OK


def cmd_cfs_minimize(args) -> int:
    try:
        with open(args.family) as fh:
            spec = json.load(fh)
        cfg = cfs.SystemConfig(
            f=int(spec["config"]["f"]),
            n=int(spec["config"]["n"]),
            kappa=args.kappa if args.kappa is not None else float(spec["config"]["kappa"]),
        )
        family, x0 = minimize_mod.make_family(spec["family"], cfg)
    except (OSError, KeyError, ValueError) as exc:
        raise ValidationError(f"cannot load family file {args.family}: {exc}") from exc
    options = minimize_mod.MinimizeOptions(seed=args.seed)
    try:
        measure, report = minimize_mod.minimize(family, cfg, x0, options)
    except minimize_mod.InfeasibleStart as exc:
        raise ValidationError(str(exc)) from exc
    except (minimize_mod.LineSearchFailure, minimize_mod.MaxIterations) as exc:
        raise CheckFailure(f"optimizer failed: {exc}") from exc
    payload = {
        "meta": _meta(args, "cfs minimize", family=args.family, kappa=cfg.kappa),
        "measure": cfs.measure_to_json(measure, cfg),
        "report": {
            "action": report.action,
            "volume": report.volume,
            "trace": report.trace,
            "s_posthoc": report.s_posthoc,
            "ell_support": report.ell_support,
            "ell_spread": report.ell_spread,
            "off_support_max_neg_ell": report.off_support_max_neg_ell,
            "mu_final": report.mu_final,
            "n_outer": report.n_outer,
            "converged": report.converged,
        },
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_cfs_el_residual(args) -> int:
    measure, cfg = _load_measure(args.measure)
    if args.s is not None:
        cfg = cfs.SystemConfig(f=cfg.f, n=cfg.n, kappa=cfg.kappa, s=args.s)
    ells = [cfs.ell(x, measure, cfg) for x in measure.points]
    payload = {
        "meta": _meta(args, "cfs el-residual", measure=args.measure, s=cfg.s),
        "ell": ells,
        "spread": max(ells) - min(ells) if ells else 0.0,
    }
    _emit(args, payload, rows=list(enumerate(ells)), fields=("point", "ell"))
    return EXIT_OK


# ---------------------------------------------------------------- vacuum

def _parse_masses(text: str, count: int = 3):
    vals = [float(v) for v in text.split(",")]
    if len(vals) != count:
        raise ValidationError(f"expected {count} comma-separated masses, got {text!r}")
    return tuple(vals)


def cmd_vacuum_build(args) -> int:
    try:
        spec = LatticeSpec(L=args.L, T=args.T, a=args.a, epsilon=args.eps, dims=args.dims)
        md = MassData(
            charged_masses=_parse_masses(args.masses),
            neutrino_masses=_parse_masses(args.neutrino_masses),
            tau_reg=args.tau,
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    aux = build_vacuum_aux(md, spec)
    direct = build_vacuum_direct(md, spec)
    kernels = {f"aux_{name}": k for name, k in zip(aux_labels(), aux)}
    kernels.update({f"e{i}": k for i, k in enumerate(direct)})
    save_kernels(args.out, spec, md, kernels)
    onshell = max(float(mode_onshell_residuals(m, spec).max()) for m in set(md.charged_masses + md.neutrino_masses))
    payload = {
        "meta": _meta(args, "vacuum build", out=args.out),
        "lattice": spec.to_json(),
        "masses": md.to_json(),
        "sectors": sorted(kernels.keys()),
        "onshell_residual_max": onshell,
        "hermiticity_residual_max": max(k.hermiticity_residual() for k in direct),
    }
    # --out names the kernel container; the report goes to stdout
    _emit(args_no_out(args), payload)
    return EXIT_OK


def _load_container(path):
    try:
        return load_kernels(path)
    except (OSError, KeyError, ValueError) as exc:
        raise ValidationError(f"cannot load kernel container {path}: {exc}") from exc


def cmd_vacuum_residual(args) -> int:
    header, kernels = _load_container(args.infile)
    md = MassData.from_json(header["masses"])
    aux = [kernels[f"aux_{name}"] for name in aux_labels()]
    res = dirac_residual(aux, aux_masses(md))
    rows = list(zip(aux_labels(), (float(r) for r in res)))
    payload = {
        "meta": _meta(args, "vacuum residual", infile=args.infile),
        "residuals": {name: float(r) for name, r in zip(aux_labels(), res)},
        "max": float(res.max()),
    }
    _emit(args, payload, rows=rows, fields=("summand", "residual"))
    return EXIT_OK


def cmd_vacuum_localize(args) -> int:
    header, _ = _load_container(args.infile)
    spec = LatticeSpec.from_json(header["lattice"])
    md = MassData.from_json(header["masses"])
    point = tuple(int(v) for v in args.point.split(","))
    if len(point) != 1 + spec.spatial_dims:
        raise ValidationError(f"--point needs {1 + spec.spatial_dims} comma-separated coordinates")
    try:
        f_nu = local_correlation(list(md.neutrino_masses), spec, point, tau_reg=md.tau_reg)
        f_ch = local_correlation(list(md.charged_masses), spec, point)
    except cfs.SignatureViolation as exc:
        raise CheckFailure(f"local correlation violates the signature bound: {exc}") from exc
    def describe(f):
        w = np.sort(f.eigenvalues)
        cut = 1e-9 * max(1.0, np.abs(w).max(initial=0.0))
        return {
            "eigenvalues": [float(v) for v in w],
            "n_positive": int(np.sum(w > cut)),
            "n_negative": int(np.sum(w < -cut)),
            "rank": int(np.sum(np.abs(w) > cut)),
        }
    payload = {
        "meta": _meta(args, "vacuum localize", infile=args.infile, point=list(point)),
        "neutrino_sector": describe(f_nu),
        "charged_sector": describe(f_ch),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_vacuum_act(args) -> int:
    header, kernels = _load_container(args.infile)
    spec = LatticeSpec.from_json(header["lattice"])
    md = MassData.from_json(header["masses"])
    try:
        word = [int(v) for v in args.op.split(",")]
        op = chain(word).astype(complex)
    except ValueError as exc:
        raise ValidationError(f"--op must be a comma-separated word of indices 0..7: {exc}") from exc
    direct = [kernels[f"e{i}"] for i in range(8)]
    acted = left_algebra_action(op, to_octonionic(direct))
    out_kernels = {f"e{i}": acted.coefficient(i) for i in range(8)}
    if args.out:
        save_kernels(args.out, spec, md, out_kernels)
    payload = {
        "meta": _meta(args, "vacuum act", infile=args.infile, op=word, out=args.out),
        "sector_norms": {f"e{i}": float(np.abs(acted.coefficient(i).rel).max()) for i in range(8)},
    }
    _emit(args_no_out(args), payload)
    return EXIT_OK


def args_no_out(args):
    """The --out of `vacuum act` names the kernel container, not the report."""
    class _A:
        out = None
        format = getattr(args, "format", "json")
    return _A()


# ---------------------------------------------------------------- majorana

def cmd_majorana_check(args) -> int:
    rep = majorana.check_report(seed=args.seed, variant=args.variant)
    payload = {"meta": _meta(args, "majorana check", variant=args.variant), "report": rep}
    _emit(args, payload)
    ok = (
        rep["clifford_residual_majorana"] == 0.0
        and rep["reality_majorana"]["max_imag_overall"] == 0.0
        and rep["derived_factorization_max_residual"] < 1e-12
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- potentials

def cmd_potentials_scan(args) -> int:
    try:
        params = json.loads(args.params)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"--params must be a JSON object: {exc}") from exc
    if args.tree:
        try:
            p = potentials.TreeParams(**params)
        except (TypeError, ValueError) as exc:
            raise ValidationError(str(exc)) from exc
        pts = potentials.tree_stationary_points(p)
        rows = [
            (q.kind, q.sL, q.sR, q.value, q.classification, q.is_global) for q in pts
        ]
        regime = (
            "parity_violating" if p.mu2 > 0 and p.lambda2 > 2 * p.lambda1
            else "symmetric" if p.mu2 > 0 else "unbroken"
        )
        payload = {
            "meta": _meta(args, "potentials scan", mode="tree", params=params),
            "stationary_points": [
                {
                    "kind": q.kind,
                    "sL": q.sL,
                    "sR": q.sR,
                    "value": q.value,
                    "classification": q.classification,
                    "is_global": q.is_global,
                }
                for q in pts
            ],
            "regime": regime,
        }
        _emit(args, payload, rows=rows, fields=("kind", "sL", "sR", "value", "classification", "is_global"))
        return EXIT_OK
    try:
        p = potentials.LoopParams(**params)
    except (TypeError, ValueError) as exc:
        raise ValidationError(str(exc)) from exc
    rep = potentials.one_loop_vacuum(p)
    rows = [(k, v) for k, v in sorted(rep.items())]
    payload = {"meta": _meta(args, "potentials scan", mode="loop", params=params), "vacuum": rep}
    _emit(args, payload, rows=rows, fields=("quantity", "value"))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octo-cfs",
        description="Octonion multiplication algebras, Clifford ideals, and causal fermion systems",
    )
    parser.add_argument("--version", action="version", version=f"octo-cfs {__version__}")
    sub = parser.add_subparsers(dest="group", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    g = sub.add_parser("octonion").add_subparsers(dest="verb", required=True)
    common(g.add_parser("table"))
    common(g.add_parser("check"))

    g = sub.add_parser("clifford").add_subparsers(dest="verb", required=True)
    common(g.add_parser("dim"))
    common(g.add_parser("identities"))

    g = sub.add_parser("ideals").add_subparsers(dest="verb", required=True)
    common(g.add_parser("states"))
    common(g.add_parser("su3"))
    common(g.add_parser("casimir"))

    g = sub.add_parser("cfs").add_subparsers(dest="verb", required=True)
    p = g.add_parser("action")
    common(p)
    p.add_argument("--measure", required=True)
    p = g.add_parser("classify")
    common(p)
    p.add_argument("--pairs", required=True)
    p.add_argument("--geometry", action="store_true",
                   help="add spin-connection and holonomy residuals")
    p = g.add_parser("minimize")
    common(p)
    p.add_argument("--family", required=True)
    p.add_argument("--kappa", type=float, default=None)
    p = g.add_parser("el-residual")
    common(p)
    p.add_argument("--measure", required=True)
    p.add_argument("--s", type=float, default=None)

    g = sub.add_parser("vacuum").add_subparsers(dest="verb", required=True)
    p = g.add_parser("build")
    common(p)
    p.add_argument("--L", type=int, default=8)
    p.add_argument("--T", type=int, default=8)
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--dims", choices=("1+1", "1+3"), default="1+1")
    p.add_argument("--masses", default="0.5,0.7,0.9")
    p.add_argument("--neutrino-masses", dest="neutrino_masses", default="0.1,0.2,0.3")
    p.add_argument("--tau", type=float, default=1.0)
    p.set_defaults(out="vacuum.okn")
    p = g.add_parser("residual")
    common(p)
    p.add_argument("--infile", required=True)
    p = g.add_parser("localize")
    common(p)
    p.add_argument("--infile", required=True)
    p.add_argument("--point", required=True)
    p = g.add_parser("act")
    common(p)
    p.add_argument("--infile", required=True)
    p.add_argument("--op", required=True)

    g = sub.add_parser("majorana").add_subparsers(dest="verb", required=True)
    p = g.add_parser("check")
    common(p)
    p.add_argument("--variant", choices=("paper", "derived", "both"), default="both")

    g = sub.add_parser("potentials").add_subparsers(dest="verb", required=True)
    p = g.add_parser("scan")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--tree", action="store_true")
    mode.add_argument("--loop", action="store_true")
    p.add_argument("--params", required=True)

    return parser


_DISPATCH = {
    ("octonion", "table"): cmd_octonion_table,
    ("octonion", "check"): cmd_octonion_check,
    ("clifford", "dim"): cmd_clifford_dim,
    ("clifford", "identities"): cmd_clifford_identities,
    ("ideals", "states"): cmd_ideals_states,
    ("ideals", "su3"): cmd_ideals_su3,
    ("ideals", "casimir"): cmd_ideals_casimir,
    ("cfs", "action"): cmd_cfs_action,
    ("cfs", "classify"): cmd_cfs_classify,
    ("cfs", "minimize"): cmd_cfs_minimize,
    ("cfs", "el-residual"): cmd_cfs_el_residual,
    ("vacuum", "build"): cmd_vacuum_build,
    ("vacuum", "residual"): cmd_vacuum_residual,
    ("vacuum", "localize"): cmd_vacuum_localize,
    ("vacuum", "act"): cmd_vacuum_act,
    ("majorana", "check"): cmd_majorana_check,
    ("potentials", "scan"): cmd_potentials_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _DISPATCH[(args.group, args.verb)]
    try:
        return handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (cfs.EigensolverError, SpanClosureError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
