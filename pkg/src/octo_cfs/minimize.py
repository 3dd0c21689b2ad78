"""Constrained minimization of the causal action over parametrized discrete measures.

Weights live on the probability simplex through a softmax reparametrization,
so the volume constraint is exact by construction; the trace constraint is
enforced by a quadratic penalty with an increasing multiplier. Gradients of
the inner unconstrained problems are central finite differences (the
Lagrangian is only piecewise smooth in the eigenvalue moduli).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from . import cfs


class InfeasibleStart(RuntimeError):
    pass


class LineSearchFailure(RuntimeError):
    pass


class MaxIterations(RuntimeError):
    pass


@dataclass
class MeasureFamily:
    """Points as differentiable functions of shape parameters, plus simplex weights.

    `point_fn` maps a parameter vector of length `n_params` to a list of
    `n_points` Hermitian f x f matrices.
    """

    n_points: int
    n_params: int
    point_fn: callable


@dataclass
class MinimizeOptions:
    mu_init: float = 10.0
    mu_growth: float = 10.0
    mu_max: float = 1e10
    inner_maxiter: int = 400
    fd_step: float = 1e-6
    constraint_tol: float = 1e-10
    seed: int = 0
    probe_samples: int = 200


@dataclass
class MinimizeReport:
    action: float
    volume: float
    trace: float
    s_posthoc: float
    ell_support: list
    ell_spread: float
    off_support_max_neg_ell: float
    mu_final: float
    n_outer: int
    converged: bool
    inner_status: str = ""


def softmax(z: np.ndarray) -> np.ndarray:
    e = np.exp(z - z.max())
    return e / e.sum()


def _central_gradient(fun, v, step):
    g = np.zeros_like(v)
    for i in range(len(v)):
        h = step * max(1.0, abs(v[i]))
        vp = v.copy()
        vm = v.copy()
        vp[i] += h
        vm[i] -= h
        g[i] = (fun(vp) - fun(vm)) / (2.0 * h)
    return g


def _unpack(family: MeasureFamily, v: np.ndarray):
    theta = v[: family.n_params]
    logits = v[family.n_params :]
    return family.point_fn(theta), softmax(logits)


def minimize(
    family: MeasureFamily,
    cfg: cfs.SystemConfig,
    x0: np.ndarray,
    options: MinimizeOptions | None = None,
):
    """Penalty-method minimization of the causal action within the family.

    Returns (DiscreteMeasure, MinimizeReport). The report carries the
    Euler-Lagrange residuals on the support (with the post-hoc Lagrange
    parameter that makes their weighted mean vanish) and the largest
    violation of ell >= 0 over a random probe set; the latter is reported,
    not asserted, since family-restricted optima need not satisfy the
    global inequality.
    """
    opt = options or MinimizeOptions()
    v = np.asarray(x0, dtype=float)
    if v.shape != (family.n_params + family.n_points,):
        raise InfeasibleStart(
            f"x0 must have length n_params + n_points = {family.n_params + family.n_points}"
        )
    try:
        points0, _ = _unpack(family, v)
        for p in points0:
            cfs.validate_point(p, cfg)
    except (cfs.NotHermitian, cfs.SignatureViolation) as exc:
        raise InfeasibleStart(f"initial family point invalid: {exc}") from exc

    def objective(mu):
        def f(vv):
            points, w = _unpack(family, vv)
            a = cfs.action(points, w, cfg)
            _, trace = cfs.constraints(points, w)
            return a + mu * (trace - 1.0) ** 2

        return f

    mu = opt.mu_init
    n_outer = 0
    converged = False
    status = ""
    while True:
        n_outer += 1
        f = objective(mu)
        res = scipy.optimize.minimize(
            f,
            v,
            method="BFGS",
            jac=lambda vv: _central_gradient(f, vv, opt.fd_step),
            options={"maxiter": opt.inner_maxiter, "gtol": 1e-10},
        )
        if not np.all(np.isfinite(res.x)):
            raise LineSearchFailure(f"inner solve diverged at mu={mu:.1e}")
        v = res.x
        status = res.message
        points, w = _unpack(family, v)
        _, trace = cfs.constraints(points, w)
        if abs(trace - 1.0) <= opt.constraint_tol:
            converged = True
            break
        if mu >= opt.mu_max:
            break
        mu *= opt.mu_growth

    points, w = _unpack(family, v)
    if not converged and abs(cfs.constraints(points, w)[1] - 1.0) > 1e-6:
        raise MaxIterations(
            f"trace constraint not met after mu={mu:.1e}: trace={cfs.constraints(points, w)[1]}"
        )

    validated = [cfs.validate_point(p, cfg) for p in points]
    merged_pts, merged_w = cfs.merge_duplicates(validated, w)
    merged_w = merged_w / merged_w.sum()
    measure = cfs.DiscreteMeasure(points=merged_pts, weights=merged_w)

    a_val = cfs.action(measure, cfg=cfg)
    volume, trace = cfs.constraints(measure)
    row = np.array(
        [
            sum(
                wj * cfs.lagrangian(xi, xj, cfg)
                for wj, xj in zip(measure.weights, measure.points)
            )
            for xi in measure.points
        ]
    )
    s_posthoc = float(np.dot(measure.weights, row))
    ell_support = (row - s_posthoc).tolist()
    ell_spread = float(row.max() - row.min())
    off_max = _probe_off_support(measure, cfg, s_posthoc, opt)

    report = MinimizeReport(
        action=float(a_val),
        volume=volume,
        trace=trace,
        s_posthoc=s_posthoc,
        ell_support=ell_support,
        ell_spread=ell_spread,
        off_support_max_neg_ell=off_max,
        mu_final=mu,
        n_outer=n_outer,
        converged=converged,
        inner_status=str(status),
    )
    return measure, report


def _perturbed_point(rng, point: cfs.OperatorPoint, cfg, rel=0.05):
    """Signature-preserving random perturbation of a support point."""
    w, vecs = np.linalg.eigh(point.matrix)
    cut = 1e-9 * max(1.0, np.abs(w).max(initial=0.0))
    keep = np.abs(w) > cut
    w2 = w.copy()
    w2[keep] *= 1.0 + rel * rng.standard_normal(int(keep.sum()))
    g = rng.standard_normal((cfg.f, cfg.f)) + 1j * rng.standard_normal((cfg.f, cfg.f))
    h = rel * 0.5 * (g + g.conj().T) / np.sqrt(cfg.f)
    u = scipy.linalg.expm(1j * h)
    m = (u @ (vecs * w2)) @ vecs.conj().T @ u.conj().T
    return cfs.validate_point(0.5 * (m + m.conj().T), cfg)


def _probe_off_support(measure, cfg, s_posthoc, opt: MinimizeOptions) -> float:
    """max(-ell) over random perturbations of the support plus random points."""
    rng = np.random.default_rng(opt.seed)
    worst = -np.inf
    cfg_s = cfs.SystemConfig(f=cfg.f, n=cfg.n, kappa=cfg.kappa, s=s_posthoc)
    for i in range(opt.probe_samples):
        if i % 2 == 0:
            base = measure.points[int(rng.integers(len(measure.points)))]
            z = _perturbed_point(rng, base, cfg)
        else:
            z = cfs.random_point(rng, cfg)
        worst = max(worst, -cfs.ell(z, measure, cfg_s))
    return float(worst)


def make_family(spec: dict, cfg: cfs.SystemConfig) -> tuple:
    """Built-in families for the CLI. Returns (MeasureFamily, default_x0).

    type 'diagonal': each point is diagonal; entry (i, j) of point i is
    sign[i][j] * theta^2 for the matching parameter. Signs validate
    against the spin dimension.
    type 'mirror_pair' (f = 2): two points diag(p, -q) and diag(-q, p)
    with p = u^2, q = v^2.
    """
    kind = spec.get("type")
    if kind == "mirror_pair":
        if cfg.f != 2:
            raise ValueError("mirror_pair family needs f = 2")

        def point_fn(theta):
            p, q = theta[0] ** 2, theta[1] ** 2
            return [
                np.diag([p, -q]).astype(complex),
                np.diag([-q, p]).astype(complex),
            ]

        fam = MeasureFamily(n_points=2, n_params=2, point_fn=point_fn)
        x0 = np.array(spec.get("init", [1.2, 0.4, 0.1, -0.1]), dtype=float)
        return fam, x0
    if kind == "diagonal":
        signs = np.asarray(spec["signs"], dtype=float)
        n_points, f = signs.shape
        if f != cfg.f:
            raise ValueError("sign template width must equal f")
        for row in signs:
            if np.sum(row > 0) > cfg.n or np.sum(row < 0) > cfg.n:
                raise ValueError("sign template violates the signature bound")

        def point_fn(theta):
            t = theta.reshape(n_points, f)
            return [np.diag(signs[i] * t[i] ** 2).astype(complex) for i in range(n_points)]

        fam = MeasureFamily(n_points=n_points, n_params=n_points * f, point_fn=point_fn)
        default = np.concatenate([np.full(n_points * f, 0.8), np.zeros(n_points)])
        x0 = np.array(spec.get("init", default), dtype=float)
        return fam, x0
    raise ValueError(f"unknown family type: {kind!r}")
