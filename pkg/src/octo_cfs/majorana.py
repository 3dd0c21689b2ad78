"""Majorana-representation reality checks and the two-point distribution p_m.

The Dirac operator with scalar mass m and pseudo-scalar mass n is
i d-slash + i gamma5 n - m; in the Majorana representation all its matrix
entries are real, so it admits real-valued solutions. Two conventions for
the pseudo-scalar term of the p_m momentum factor are carried ('paper':
gamma5 n, 'derived': i gamma5 n); only the latter cancels against the
operator on shell, so both residuals are measured and reported.
"""

from __future__ import annotations

import numpy as np

from .gammas import GammaSet, clifford_residual, dirac_rep, majorana_rep
from .lattice import LatticeSpec, SectorKernel, dirac_apply

VARIANTS = ("paper", "derived")


def gamma_majorana() -> GammaSet:
    """The Majorana-representation gamma matrices assembled from Pauli blocks."""
    return majorana_rep()


def reality_check(m: float, n: float, gammas: GammaSet = None) -> dict:
    """Entrywise imaginary parts of i gamma^mu and i gamma5.

    All vanish in the Majorana representation, so the operator of the
    generalized Dirac equation (with real m, n) maps real 4-vectors to
    real 4-vectors.
    """
    gs = gammas or majorana_rep()
    per_matrix = {}
    for mu in range(4):
        per_matrix[f"i_gamma{mu}"] = float(np.abs((1j * gs.gamma[mu]).imag).max())
    per_matrix["i_gamma5"] = float(np.abs((1j * gs.gamma5).imag).max())
    worst = max(per_matrix.values())
    op_real = worst == 0.0 and float(m) == float(m) and float(n) == float(n)
    return {
        "representation": gs.name,
        "max_imag": per_matrix,
        "max_imag_overall": worst,
        "operator_real": bool(op_real and worst == 0.0),
    }


def _factor(k, m: float, n: float, variant: str, gs: GammaSet) -> np.ndarray:
    kslash = gs.slash(k)
    if variant == "paper":
        return kslash + n * gs.gamma5 + m * np.eye(4)
    if variant == "derived":
        return kslash + 1j * n * gs.gamma5 + m * np.eye(4)
    raise ValueError(f"variant must be one of {VARIANTS}")


def momentum_residual(k, m: float, n: float, variant: str, gammas: GammaSet = None) -> np.ndarray:
    """Op(k) F(k) with Op(k) = kslash + i gamma5 n - m.

    For the derived variant the product is (k^2 - n^2 - m^2) * identity
    exactly; for the paper variant it generally is not, even on shell.
    """
    gs = gammas or majorana_rep()
    op = gs.slash(k) + 1j * n * gs.gamma5 - m * np.eye(4)
    return op @ _factor(k, m, n, variant, gs)


def factorization_residual(k, m: float, n: float, variant: str, gammas: GammaSet = None) -> float:
    """Max-norm distance of Op(k) F(k) from (k^2 - n^2 - m^2) * identity."""
    k = np.asarray(k, dtype=float)
    k2 = k[0] ** 2 - np.sum(k[1:] ** 2)
    target = (k2 - n * n - m * m) * np.eye(4)
    return float(np.abs(momentum_residual(k, m, n, variant, gammas) - target).max())


def p_m_kernel(spec: LatticeSpec, m: float, n: float, variant: str,
               gammas: GammaSet = None):
    """Two-point distribution over the full shell k^2 = n^2 + m^2 (both k0 signs).

    Returns (SectorKernel, report). The report carries the lattice residual
    of the generalized Dirac operator applied to the kernel, the per-mode
    momentum-space residual, and the measured maximum imaginary fraction of
    the position-space kernel (reported, no threshold asserted).
    """
    if m * m + n * n <= 0.0:
        raise ValueError("p_m needs m^2 + n^2 > 0")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    gs = gammas or majorana_rep()
    kvecs = spec.momenta()
    omegas = np.sqrt(np.sum(kvecs * kvecs, axis=1) + m * m + n * n)
    weights = np.exp(-spec.epsilon * omegas) / (2.0 * omegas)

    mats = []
    mode_resid = 0.0
    for k, w, wt in zip(kvecs, omegas, weights):
        for sign in (+1.0, -1.0):
            k4 = np.concatenate([[sign * w], k])
            f = _factor(k4, m, n, variant, gs)
            op = gs.slash(k4) + 1j * n * gs.gamma5 - m * np.eye(4)
            mode_resid = max(mode_resid, float(np.abs(op @ f).max()) * wt)
            mats.append((k4, wt * f))

    dts = np.arange(-(spec.T - 1), spec.T) * spec.a
    dxs = np.arange(spec.L) * spec.a
    shape = (2 * spec.T - 1,) + (spec.L,) * spec.spatial_dims + (4, 4)
    rel = np.zeros(shape, dtype=complex)
    k4s = np.array([k4 for k4, _ in mats])
    fs = np.array([f for _, f in mats])
    time_phase = np.exp(-1j * np.outer(dts, k4s[:, 0]))  # e^{-i k0 dt}
    if spec.spatial_dims == 1:
        space_phase = np.exp(1j * np.outer(dxs, k4s[:, 1]))
        rel = np.einsum("tk,xk,kab->txab", time_phase, space_phase, fs)
    else:
        phases = [np.exp(1j * np.outer(dxs, k4s[:, 1 + j])) for j in range(3)]
        rel = np.einsum("tk,xk,yk,zk,kab->txyzab", time_phase, phases[0], phases[1], phases[2], fs)
    rel /= (spec.L * spec.a) ** spec.spatial_dims
    kernel = SectorKernel(spec, rel, mass=m, gammas=gs)

    position_resid = float(np.abs(dirac_apply(kernel, m, pseudo=n)).max())
    scale = float(np.abs(rel).max())
    max_imag = float(np.abs(rel.imag).max()) / scale if scale > 0 else 0.0
    report = {
        "variant": variant,
        "mode_residual_max": mode_resid,
        "position_residual_max": position_resid,
        "max_imag_fraction": max_imag,
        "kernel_scale": scale,
    }
    return kernel, report


def check_report(seed: int = 0, n_random: int = 1000, variant: str = "both") -> dict:
    """Full module report: Clifford relations, reality, factorization, and p_m residuals."""
    rng = np.random.default_rng(seed)
    gs = majorana_rep()
    out = {
        "clifford_residual_majorana": clifford_residual(gs),
        "clifford_residual_dirac": clifford_residual(dirac_rep()),
        "reality_majorana": reality_check(1.0, 0.5, gs),
        "reality_dirac_control": reality_check(1.0, 0.5, dirac_rep()),
    }
    worst_derived = 0.0
    paper_onshell = []
    for _ in range(n_random):
        k = rng.standard_normal(4)
        m, n = rng.random() + 0.1, rng.random()
        worst_derived = max(worst_derived, factorization_residual(k, m, n, "derived", gs))
    for _ in range(16):
        m, n = rng.random() + 0.1, rng.random() + 0.1
        kvec = rng.standard_normal(3)
        k0 = np.sqrt(np.sum(kvec**2) + m * m + n * n)
        k = np.concatenate([[k0], kvec])
        paper_onshell.append(float(np.abs(momentum_residual(k, m, n, "paper", gs)).max()))
    out["derived_factorization_max_residual"] = worst_derived
    out["paper_variant_onshell_residuals"] = {
        "max": max(paper_onshell),
        "min": min(paper_onshell),
    }
    spec = LatticeSpec(L=8, T=6, a=0.5, epsilon=1.0)
    variants = VARIANTS if variant == "both" else (variant,)
    out["p_m"] = {}
    for v in variants:
        _, rep = p_m_kernel(spec, m=0.8, n=0.4, variant=v)
        out["p_m"][v] = rep
    return out
