"""Lattice-regularized Dirac-sea kernels and the eight-sector octonionic vacuum.

Spatial momenta live on the discrete Brillouin zone of a periodic spatial
grid; the on-shell frequencies omega = sqrt(k^2 + m^2) are kept in the
continuum, so kernels are stored over signed time displacements on a
finite window (no time wrap; see the hermiticity identity below). Each
momentum mode is damped by the soft ultraviolet cutoff exp(-eps * omega).
"""

from __future__ import annotations

import io
import json
import zipfile
from dataclasses import dataclass

import numpy as np

from . import __version__
from .gammas import GammaSet, dirac_rep

#: Recorded Gram convention for the local correlation operators.
LOCAL_CORRELATION_CONVENTION = (
    "unit-normalized modes on the finite lattice, per-mode weight exp(-eps*omega) "
    "split as sqrt factors, contraction -psi^dag gamma0 psi"
)


@dataclass(frozen=True)
class LatticeSpec:
    """Sites per spatial dimension L, time slices T, spacing a, cutoff eps, dims tag."""

    L: int
    T: int
    a: float
    epsilon: float
    dims: str = "1+1"

    def __post_init__(self):
        if self.L < 2 or self.L % 2:
            raise ValueError("L must be an even positive integer")
        if self.T < 3:
            raise ValueError("T must be at least 3")
        if self.a <= 0:
            raise ValueError("lattice spacing must be positive")
        if self.epsilon < self.a:
            raise ValueError("cutoff scale epsilon must be >= the lattice spacing")
        if self.dims not in ("1+1", "1+3"):
            raise ValueError("dims must be '1+1' or '1+3'")

    @property
    def spatial_dims(self) -> int:
        return 1 if self.dims == "1+1" else 3

    @property
    def n_spatial(self) -> int:
        return self.L**self.spatial_dims

    def momenta(self) -> np.ndarray:
        """All spatial grid momenta, shape (n_spatial, spatial_dims)."""
        ns = np.arange(-self.L // 2, self.L // 2)
        axes = np.meshgrid(*([ns] * self.spatial_dims), indexing="ij")
        grid = np.stack([ax.ravel() for ax in axes], axis=1)
        return 2.0 * np.pi * grid / (self.L * self.a)

    def to_json(self) -> dict:
        return {"L": self.L, "T": self.T, "a": self.a, "epsilon": self.epsilon, "dims": self.dims}

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeSpec":
        return cls(L=int(obj["L"]), T=int(obj["T"]), a=float(obj["a"]),
                   epsilon=float(obj["epsilon"]), dims=str(obj["dims"]))


def chiral_sandwich(tau: float, gammas: GammaSet):
    """Left/right factors scaling the right-handed mode components by tau."""
    a = gammas.chiral_left() + tau * gammas.chiral_right()
    b = gammas.gamma[0] @ a @ gammas.gamma[0]
    return a, b


def _mode_matrices(mass: float, spec: LatticeSpec, gammas: GammaSet, tau_reg=None):
    """Per-mode (kvecs, omegas, weights, matrices (kslash+m)/(2 omega) * weight)."""
    kvecs = spec.momenta()
    omegas = np.sqrt(np.sum(kvecs * kvecs, axis=1) + mass * mass)
    weights = np.exp(-spec.epsilon * omegas)
    mats = np.empty((len(kvecs), 4, 4), dtype=complex)
    for i, (k, w) in enumerate(zip(kvecs, omegas)):
        if w == 0.0:
            # exactly null mode of the massless sea: measure zero in the
            # continuum integral, dropped on the lattice
            mats[i] = 0.0
            continue
        kslash = gammas.slash(np.concatenate([[-w], k]))
        mats[i] = (kslash + mass * np.eye(4)) / (2.0 * w)
    if tau_reg is not None and tau_reg != 1.0:
        a, b = chiral_sandwich(tau_reg, gammas)
        mats = np.einsum("ab,kbc,cd->kad", a, mats, b)
    return kvecs, omegas, weights, mats * weights[:, None, None]


class SectorKernel:
    """Octonion-sector two-point kernel stored over lattice displacements.

    `rel` has shape (2T-1, L, ..., 4, 4); time index it encodes the signed
    displacement dt = it - (T-1), spatial axes are periodic. The kernel
    satisfies gamma0 K(y,x)^dag gamma0 = K(x,y).
    """

    def __init__(self, spec: LatticeSpec, rel: np.ndarray, mass=None, gammas: GammaSet = None):
        self.spec = spec
        self.rel = rel
        self.mass = mass
        self.gammas = gammas or dirac_rep()
        expect = (2 * spec.T - 1,) + (spec.L,) * spec.spatial_dims + (4, 4)
        if rel.shape != expect:
            raise ValueError(f"rel must have shape {expect}")

    def at(self, x, y) -> np.ndarray:
        """K(x, y) for lattice points x = (t, x1, ...), y likewise."""
        dt = int(x[0]) - int(y[0])
        if abs(dt) > self.spec.T - 1:
            raise ValueError("time displacement outside the lattice window")
        idx = (dt + self.spec.T - 1,) + tuple(
            (int(x[1 + j]) - int(y[1 + j])) % self.spec.L
            for j in range(self.spec.spatial_dims)
        )
        return self.rel[idx]

    def __add__(self, other: "SectorKernel") -> "SectorKernel":
        if other.spec != self.spec:
            raise ValueError("kernels live on different lattices")
        return SectorKernel(self.spec, self.rel + other.rel, mass=None, gammas=self.gammas)

    def __mul__(self, c) -> "SectorKernel":
        return SectorKernel(self.spec, self.rel * c, mass=self.mass, gammas=self.gammas)

    __rmul__ = __mul__

    def copy(self) -> "SectorKernel":
        return SectorKernel(self.spec, self.rel.copy(), mass=self.mass, gammas=self.gammas)

    def operator_norm_distance(self, other: "SectorKernel") -> float:
        return float(np.abs(self.rel - other.rel).max())

    def hermiticity_residual(self) -> float:
        """Max-norm residual of gamma0 K(-d)^dag gamma0 = K(d)."""
        g0 = self.gammas.gamma[0]
        flipped = self.rel[::-1]
        for ax in range(1, 1 + self.spec.spatial_dims):
            flipped = np.flip(flipped, axis=ax)
            flipped = np.roll(flipped, 1, axis=ax)
        mirrored = np.einsum("ab,...cb,cd->...ad", g0, np.conj(flipped), g0)
        return float(np.abs(mirrored - self.rel).max())


def sea_kernel(mass: float, spec: LatticeSpec, tau_reg=None, gammas: GammaSet = None) -> SectorKernel:
    """Negative-energy mode sum (kslash + m)/(2 omega) e^{-ik(x-y)} with k0 = -omega.

    Every mode carries the regularization factor exp(-eps * omega); for
    tau_reg < 1 the right-handed mode components are scaled by tau_reg
    (the chiral-symmetry-breaking neutrino regularization).
    """
    if mass < 0:
        raise ValueError("mass must be non-negative")
    gammas = gammas or dirac_rep()
    kvecs, omegas, _, mats = _mode_matrices(mass, spec, gammas, tau_reg)
    dts = np.arange(-(spec.T - 1), spec.T) * spec.a
    time_phase = np.exp(1j * np.outer(dts, omegas))  # e^{+i omega dt}
    dxs = np.arange(spec.L) * spec.a
    rel = np.zeros((2 * spec.T - 1,) + (spec.L,) * spec.spatial_dims + (4, 4), dtype=complex)
    if spec.spatial_dims == 1:
        space_phase = np.exp(1j * np.outer(dxs, kvecs[:, 0]))  # e^{+i k dx}
        rel = np.einsum("tk,xk,kab->txab", time_phase, space_phase, mats)
    else:
        phases = [np.exp(1j * np.outer(dxs, kvecs[:, j])) for j in range(3)]
        rel = np.einsum(
            "tk,xk,yk,zk,kab->txyzab", time_phase, phases[0], phases[1], phases[2], mats
        )
    # (dk / 2 pi)^d per mode: the kernel approximates the continuum integral
    # and stays put when the grid is refined at fixed physical box size
    rel /= (spec.L * spec.a) ** spec.spatial_dims
    return SectorKernel(spec, rel, mass=mass, gammas=gammas)


def mode_onshell_residuals(mass: float, spec: LatticeSpec, gammas: GammaSet = None) -> np.ndarray:
    """Per-mode max-norm of (kslash - m)(kslash + m), zero on the mass shell."""
    gammas = gammas or dirac_rep()
    kvecs = spec.momenta()
    omegas = np.sqrt(np.sum(kvecs * kvecs, axis=1) + mass * mass)
    out = np.empty(len(kvecs))
    for i, (k, w) in enumerate(zip(kvecs, omegas)):
        kslash = gammas.slash(np.concatenate([[-w], k]))
        out[i] = np.abs((kslash - mass * np.eye(4)) @ (kslash + mass * np.eye(4))).max()
    return out


def mode_dirac_residuals(mass: float, spec: LatticeSpec, gammas: GammaSet = None) -> np.ndarray:
    """Momentum-space (kslash - m) applied per mode: the time-continuum variant."""
    gammas = gammas or dirac_rep()
    _, _, _, mats = _mode_matrices(mass, spec, gammas)
    kvecs = spec.momenta()
    omegas = np.sqrt(np.sum(kvecs * kvecs, axis=1) + mass * mass)
    out = np.empty(len(kvecs))
    for i, (k, w) in enumerate(zip(kvecs, omegas)):
        kslash = gammas.slash(np.concatenate([[-w], k]))
        out[i] = np.abs((kslash - mass * np.eye(4)) @ mats[i]).max()
    return out


def dirac_apply(kernel: SectorKernel, mass: float, pseudo: float = 0.0) -> np.ndarray:
    """(i d-slash + i gamma5 n - m) K with central differences, on interior time offsets."""
    spec, g = kernel.spec, kernel.gammas
    rel = kernel.rel
    dt = (rel[2:] - rel[:-2]) / (2.0 * spec.a)
    out = 1j * np.einsum("ab,...bc->...ac", g.gamma[0], dt)
    inner = rel[1:-1]
    for j in range(spec.spatial_dims):
        ax = 1 + j
        dj = (np.roll(inner, -1, axis=ax) - np.roll(inner, 1, axis=ax)) / (2.0 * spec.a)
        out += 1j * np.einsum("ab,...bc->...ac", g.gamma[1 + j], dj)
    mass_term = mass * np.eye(4) - 1j * pseudo * g.gamma5
    out -= np.einsum("ab,...bc->...ac", mass_term, inner)
    return out


def dirac_residual_single(kernel: SectorKernel, mass: float, pseudo: float = 0.0) -> float:
    """Max-norm lattice Dirac residual of one kernel."""
    return float(np.abs(dirac_apply(kernel, mass, pseudo)).max())


def dirac_residual(kernels, masses) -> np.ndarray:
    """Per-summand residuals of (i d-slash - mY) P^aux = 0."""
    return np.array(
        [dirac_residual_single(k, m) for k, m in zip(kernels, masses)]
    )


@dataclass(frozen=True)
class MassData:
    """Three charged masses, three neutrino masses, tau_reg, and a reference mass."""

    charged_masses: tuple
    neutrino_masses: tuple
    tau_reg: float = 1.0
    m_ref: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "charged_masses", tuple(float(m) for m in self.charged_masses))
        object.__setattr__(self, "neutrino_masses", tuple(float(m) for m in self.neutrino_masses))
        if len(self.charged_masses) != 3 or len(self.neutrino_masses) != 3:
            raise ValueError("exactly three masses per sector")
        if any(m < 0 for m in self.neutrino_masses):
            raise ValueError("neutrino masses must be non-negative")
        if sum(1 for m in self.neutrino_masses if m == 0.0) > 2:
            raise ValueError("at most two of the neutrino masses may vanish")
        if not 0.0 < self.tau_reg <= 1.0:
            raise ValueError("tau_reg must lie in (0, 1]")

    def to_json(self) -> dict:
        return {
            "charged_masses": list(self.charged_masses),
            "neutrino_masses": list(self.neutrino_masses),
            "tau_reg": self.tau_reg,
            "m_ref": self.m_ref,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MassData":
        return cls(
            charged_masses=obj["charged_masses"],
            neutrino_masses=obj["neutrino_masses"],
            tau_reg=float(obj.get("tau_reg", 1.0)),
            m_ref=float(obj.get("m_ref", 1.0)),
        )


def aux_masses(md: MassData) -> np.ndarray:
    """The 25 diagonal masses of mY: (m~1, m~2, m~3, 0) + 7 x (m1, m2, m3)."""
    return np.array(list(md.neutrino_masses) + [0.0] + list(md.charged_masses) * 7)


def aux_labels() -> list:
    labels = ["nu_1", "nu_2", "nu_3", "nu_he"]
    for a in range(1, 8):
        labels += [f"c{a}_{b}" for b in (1, 2, 3)]
    return labels


def build_vacuum_aux(md: MassData, spec: LatticeSpec, gammas: GammaSet = None) -> list:
    """The 25-summand auxiliary kernel: 4 neutrino slots (last one zero) + 21 charged."""
    gammas = gammas or dirac_rep()
    out = [sea_kernel(m, spec, gammas=gammas) for m in md.neutrino_masses]
    zero = np.zeros((2 * spec.T - 1,) + (spec.L,) * spec.spatial_dims + (4, 4), dtype=complex)
    out.append(SectorKernel(spec, zero, mass=0.0, gammas=gammas))
    charged = [sea_kernel(m, spec, gammas=gammas) for m in md.charged_masses]
    for _ in range(7):
        out.extend(k.copy() for k in charged)
    return out


def build_vacuum_direct(md: MassData, spec: LatticeSpec, gammas: GammaSet = None) -> list:
    """Eight sector kernels: the asymmetry-regularized neutrino sector plus 7 charged copies."""
    gammas = gammas or dirac_rep()
    nu = None
    for m in md.neutrino_masses:
        k = sea_kernel(m, spec, tau_reg=md.tau_reg, gammas=gammas)
        nu = k if nu is None else nu + k
    charged = None
    for m in md.charged_masses:
        k = sea_kernel(m, spec, gammas=gammas)
        charged = k if charged is None else charged + k
    return [nu] + [charged.copy() for _ in range(7)]


def chiral_asymmetry(tau_reg: float, gammas: GammaSet = None) -> np.ndarray:
    """Block operator X = (1 + 1 + 1 + tau_reg chi_R) + 7 x (1, 1, 1), shape (25, 4, 4)."""
    if not 0.0 < tau_reg <= 1.0:
        raise ValueError("tau_reg must lie in (0, 1]")
    gammas = gammas or dirac_rep()
    blocks = np.tile(np.eye(4, dtype=complex), (25, 1, 1))
    blocks[3] = tau_reg * gammas.chiral_right()
    return blocks


def mass_matrix(md: MassData) -> np.ndarray:
    """Block-diagonal mY: the 4 + 21 diagonal mass blocks, shape (25, 4, 4)."""
    return aux_masses(md)[:, None, None] * np.eye(4, dtype=complex)


def apply_blocks(blocks: np.ndarray, kernels) -> list:
    """Apply a 25-block operator summand-wise from the left."""
    if len(blocks) != len(kernels):
        raise ValueError("block count must match summand count")
    return [
        SectorKernel(k.spec, np.einsum("ab,...bc->...ac", b, k.rel), mass=k.mass, gammas=k.gammas)
        for b, k in zip(blocks, kernels)
    ]


@dataclass
class OctonionKernel:
    """Octonion-valued kernel: e0 carries the neutrino sector, e1..e7 the charged ones."""

    neutrino: SectorKernel
    charged: tuple

    def __post_init__(self):
        self.charged = tuple(self.charged)
        if len(self.charged) != 7:
            raise ValueError("an octonion kernel needs exactly 7 charged sectors")

    def coefficient(self, i: int) -> SectorKernel:
        return self.neutrino if i == 0 else self.charged[i - 1]

    def stacked(self) -> np.ndarray:
        return np.stack([self.neutrino.rel] + [k.rel for k in self.charged])


def to_octonionic(direct) -> OctonionKernel:
    """Relabel the 8 direct summands as octonion coefficients (sector a -> e_a)."""
    if len(direct) != 8:
        raise ValueError("expected 8 sector kernels")
    return OctonionKernel(neutrino=direct[0], charged=tuple(direct[1:]))


def to_direct(ok: OctonionKernel) -> list:
    """Inverse relabeling; the round trip is the identity."""
    return [ok.neutrino, *ok.charged]


def left_algebra_action(op: np.ndarray, ok: OctonionKernel) -> OctonionKernel:
    """Apply an element of the left multiplication algebra to the coefficient vector.

    The new coefficient vector at every (x, y) is op @ (old coefficients).
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (8, 8):
        raise ValueError("op must be an 8x8 matrix")
    stacked = ok.stacked()
    new = np.einsum("ij,j...->i...", op, stacked)
    spec, gammas = ok.neutrino.spec, ok.neutrino.gammas
    kernels = [SectorKernel(spec, new[i], mass=None, gammas=gammas) for i in range(8)]
    return OctonionKernel(neutrino=kernels[0], charged=tuple(kernels[1:]))


@dataclass
class SeaMode:
    omega: float
    kvec: np.ndarray
    spinor: np.ndarray  # unit-normalized over the spacetime lattice
    weight: float  # exp(-eps * omega)


def occupied_modes(masses, spec: LatticeSpec, tau_reg: float = 1.0, gammas: GammaSet = None) -> list:
    """Negative-energy mode family of the seas with the given masses.

    Two spinor modes per grid momentum per mass, extracted as the non-null
    eigendirections of the Hermitian matrix (kslash + m) gamma0.
    """
    gammas = gammas or dirac_rep()
    g0 = gammas.gamma[0]
    a_tau = gammas.chiral_left() + tau_reg * gammas.chiral_right()
    n_sites = spec.T * spec.n_spatial
    modes = []
    for mass in masses:
        kvecs = spec.momenta()
        omegas = np.sqrt(np.sum(kvecs * kvecs, axis=1) + mass * mass)
        for k, w in zip(kvecs, omegas):
            kslash = gammas.slash(np.concatenate([[-w], k]))
            h = (kslash + mass * np.eye(4)) @ g0
            vals, vecs = np.linalg.eigh(h)
            cut = 1e-9 * np.abs(vals).max()
            for r in np.nonzero(np.abs(vals) > cut)[0]:
                u = a_tau @ vecs[:, r]
                nrm = np.linalg.norm(u)
                if nrm < 1e-14:
                    continue
                modes.append(
                    SeaMode(
                        omega=float(w),
                        kvec=k.copy(),
                        spinor=u / (nrm * np.sqrt(n_sites)),
                        weight=float(np.exp(-spec.epsilon * w)),
                    )
                )
    return modes


def local_correlation(masses, spec: LatticeSpec, x, tau_reg: float = 1.0,
                      gammas: GammaSet = None, cfg=None):
    """Local correlation operator F(x): Gram matrix of the occupied modes at x.

    F_ij = - <psi_i(x) | gamma0 psi_j(x)> with sqrt(exp(-eps omega)) weights
    on each side; at most 2 positive and 2 negative eigenvalues per Dirac
    sector. Returns a validated cfs.OperatorPoint.
    """
    from . import cfs

    gammas = gammas or dirac_rep()
    modes = occupied_modes(masses, spec, tau_reg=tau_reg, gammas=gammas)
    x = tuple(int(v) for v in x)
    if len(x) != 1 + spec.spatial_dims:
        raise ValueError("point must have one time and spatial_dims space coordinates")
    psi = np.empty((4, len(modes)), dtype=complex)
    for j, mode in enumerate(modes):
        phase = mode.omega * x[0] + float(np.dot(mode.kvec, np.asarray(x[1:], dtype=float)))
        psi[:, j] = np.sqrt(mode.weight) * mode.spinor * np.exp(1j * phase * spec.a)
    f_mat = -psi.conj().T @ gammas.gamma[0] @ psi
    cfg = cfg or cfs.SystemConfig(f=max(len(modes), 1), n=2, kappa=1.0)
    if len(modes) == 0:
        return cfs.OperatorPoint(matrix=np.zeros((0, 0), dtype=complex), eigenvalues=np.zeros(0))
    return cfs.validate_point(f_mat, cfg)


def vacuum_local_correlation(md: MassData, spec: LatticeSpec, x, gammas: GammaSet = None):
    """Block-diagonal F(x) over the eight sectors (n = 2 per Dirac sector)."""
    import scipy.linalg

    from . import cfs

    gammas = gammas or dirac_rep()
    nu = local_correlation(md.neutrino_masses, spec, x, tau_reg=md.tau_reg, gammas=gammas)
    ch = local_correlation(md.charged_masses, spec, x, gammas=gammas)
    blocks = [nu.matrix] + [ch.matrix] * 7
    full = scipy.linalg.block_diag(*blocks)
    cfg = cfs.SystemConfig(f=full.shape[0], n=16, kappa=1.0)
    return cfs.validate_point(full, cfg)


def save_kernels(path, spec: LatticeSpec, md: MassData, kernels: dict) -> None:
    """Chunked container: a JSON header plus one binary chunk per sector kernel."""
    header = {
        "version": __version__,
        "lattice": spec.to_json(),
        "masses": md.to_json(),
        "epsilon": spec.epsilon,
        "tau_reg": md.tau_reg,
        "sectors": sorted(kernels.keys()),
        "local_correlation_convention": LOCAL_CORRELATION_CONVENTION,
    }
    with zipfile.ZipFile(path, "w", zipfile.ZIP_DEFLATED) as zf:
        # fixed timestamps keep the container byte-identical across runs
        info = zipfile.ZipInfo("header.json", date_time=(1980, 1, 1, 0, 0, 0))
        zf.writestr(info, json.dumps(header, indent=2, sort_keys=True))
        for name in sorted(kernels.keys()):
            buf = io.BytesIO()
            np.save(buf, kernels[name].rel)
            info = zipfile.ZipInfo(f"{name}.npy", date_time=(1980, 1, 1, 0, 0, 0))
            zf.writestr(info, buf.getvalue())


def load_kernels(path):
    """Inverse of save_kernels: (header, {sector name: SectorKernel})."""
    with zipfile.ZipFile(path, "r") as zf:
        header = json.loads(zf.read("header.json"))
        spec = LatticeSpec.from_json(header["lattice"])
        kernels = {}
        for name in header["sectors"]:
            rel = np.load(io.BytesIO(zf.read(f"{name}.npy")))
            kernels[name] = SectorKernel(spec, rel)
    return header, kernels
