"""Octonion and complex-octonion arithmetic over the Fano-plane multiplication table.

The seven imaginary units multiply according to the oriented Fano lines
123, 145, 176, 246, 257, 347, 365; each line is cyclic and together with
e0 closes into a quaternion subalgebra.
"""

from __future__ import annotations

import numbers

import numpy as np

#: Oriented quaternionic triples (a, b, c): e_a e_b = e_c cyclically.
FANO_LINES = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
)


def _build_epsilon():
    eps = np.zeros((8, 8, 8))
    for a, b, c in FANO_LINES:
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            eps[i, j, k] = 1.0
            eps[j, i, k] = -1.0
            eps[i, k, j] = -1.0
            eps[k, j, i] = -1.0
            eps[k, i, j] = 1.0
            eps[j, k, i] = 1.0
    return eps


#: Fully antisymmetric sign tensor on {1..7}^3 (zero slices at index 0).
EPSILON = _build_epsilon()


def epsilon(i, j, k):
    """Completely antisymmetric structure sign epsilon_ijk on indices 1..7."""
    if not all(1 <= t <= 7 for t in (i, j, k)):
        raise ValueError("epsilon indices must lie in 1..7")
    return float(EPSILON[i, j, k])


def _build_structure_tensor():
    # C[i, j, k]: coefficient of e_k in e_i e_j.
    C = np.zeros((8, 8, 8))
    C[0, :, :] = np.eye(8)
    C[:, 0, :] = np.eye(8)
    for i in range(1, 8):
        C[i, i, :] = 0.0
        C[i, i, 0] = -1.0
        for j in range(1, 8):
            if i != j:
                C[i, j, :] = EPSILON[i, j, :]
    return C


#: Structure tensor of the algebra: (x y)_k = sum_ij C[i,j,k] x_i y_j.
STRUCTURE = _build_structure_tensor()


def _mul_coeffs(a, b):
    return np.einsum("ijk,i,j->k", STRUCTURE, a, b)


class Octonion:
    """Real octonion x = x0 e0 + ... + x7 e7."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (8,):
            raise ValueError("an octonion needs exactly 8 coefficients")
        if not np.all(np.isfinite(c)):
            raise ValueError("octonion coefficients must be finite")
        self.coeffs = c

    @classmethod
    def e(cls, i):
        c = np.zeros(8)
        c[i] = 1.0
        return cls(c)

    @classmethod
    def zero(cls):
        return cls(np.zeros(8))

    def as_complex(self):
        return ComplexOctonion(self.coeffs.astype(complex))

    def __add__(self, other):
        return Octonion(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return Octonion(self.coeffs - other.coeffs)

    def __neg__(self):
        return Octonion(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return Octonion(_mul_coeffs(self.coeffs, other.coeffs))
        if isinstance(other, numbers.Real):
            return Octonion(self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Octonion(self.coeffs * float(other))
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, Octonion) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"Octonion({self.coeffs.tolist()})"

    def conj(self):
        c = self.coeffs.copy()
        c[1:] = -c[1:]
        return Octonion(c)

    def norm(self):
        return float(np.sqrt(np.dot(self.coeffs, self.coeffs)))

    def inv(self):
        n2 = float(np.dot(self.coeffs, self.coeffs))
        if n2 == 0.0:
            raise ZeroDivisionError("the zero octonion has no inverse")
        return Octonion(self.conj().coeffs / n2)

    def to_json(self):
        return self.coeffs.tolist()

    @classmethod
    def from_json(cls, obj):
        return cls(obj)


class ComplexOctonion:
    """Element of C (x) O: eight complex coefficients over e0..e7.

    Three involutions are exposed: `conj_octonion` flips e1..e7,
    `conj_complex` conjugates the coefficients, and `dagger` is their
    composition (the adjoint used by the Witt construction).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != (8,):
            raise ValueError("a complex octonion needs exactly 8 coefficients")
        if not np.all(np.isfinite(c)):
            raise ValueError("complex octonion coefficients must be finite")
        self.coeffs = c

    @classmethod
    def e(cls, i):
        c = np.zeros(8, dtype=complex)
        c[i] = 1.0
        return cls(c)

    @classmethod
    def zero(cls):
        return cls(np.zeros(8, dtype=complex))

    def __add__(self, other):
        return ComplexOctonion(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return ComplexOctonion(self.coeffs - other.coeffs)

    def __neg__(self):
        return ComplexOctonion(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, ComplexOctonion):
            return ComplexOctonion(_mul_coeffs(self.coeffs, other.coeffs))
        if isinstance(other, numbers.Complex):
            return ComplexOctonion(self.coeffs * complex(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Complex):
            return ComplexOctonion(self.coeffs * complex(other))
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, ComplexOctonion) and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __repr__(self):
        return f"ComplexOctonion({self.coeffs.tolist()})"

    def conj_octonion(self):
        c = self.coeffs.copy()
        c[1:] = -c[1:]
        return ComplexOctonion(c)

    def conj_complex(self):
        return ComplexOctonion(np.conj(self.coeffs))

    def dagger(self):
        return self.conj_octonion().conj_complex()

    def to_json(self):
        return [[float(z.real), float(z.imag)] for z in self.coeffs]

    @classmethod
    def from_json(cls, obj):
        return cls([complex(re, im) for re, im in obj])


def mul(a, b):
    """Product a*b; both operands must share the coefficient field."""
    if isinstance(a, Octonion) and isinstance(b, Octonion):
        return a * b
    if isinstance(a, ComplexOctonion) and isinstance(b, ComplexOctonion):
        return a * b
    raise TypeError("mul requires two octonions over the same field")


def conj(a):
    """Octonion conjugate (flips the sign of e1..e7)."""
    if isinstance(a, Octonion):
        return a.conj()
    if isinstance(a, ComplexOctonion):
        return a.conj_octonion()
    raise TypeError("conj expects an Octonion or ComplexOctonion")


def norm(a: Octonion) -> float:
    return a.norm()


def inv(a: Octonion) -> Octonion:
    return a.inv()


def associator(a, b, c):
    """a*(b*c) - (a*b)*c; vanishes whenever two arguments coincide."""
    return mul(a, mul(b, c)) - mul(mul(a, b), c)


def projector(sign) -> ComplexOctonion:
    """rho_+- = (1 +- i e4)/2, the mutually annihilating projectors of C (x) O."""
    s = 1.0 if sign in (1, "+", "plus") else -1.0 if sign in (-1, "-", "minus") else None
    if s is None:
        raise ValueError("sign must be +1 or -1")
    c = np.zeros(8, dtype=complex)
    c[0] = 0.5
    c[4] = 0.5j * s
    return ComplexOctonion(c)


def split(a):
    """Four complex components (z0, z1, z2, z3) of the e4-splitting.

    z0 = x0 + i x4, z1 = x1 - i x5, z2 = x2 - i x6, z3 = x3 - i x7.
    Defined on real-coefficient octonions (the splitting is an R-linear
    bijection O ~ C^4 realizing the lepton-quark decomposition C + C^3).
    """
    if isinstance(a, Octonion):
        c = a.coeffs
    elif isinstance(a, ComplexOctonion):
        if np.max(np.abs(a.coeffs.imag)) > 1e-12 * max(1.0, np.max(np.abs(a.coeffs))):
            raise ValueError("split is defined on real-coefficient octonions")
        c = a.coeffs.real
    else:
        raise TypeError("split expects an Octonion or ComplexOctonion")
    return np.array(
        [
            c[0] + 1j * c[4],
            c[1] - 1j * c[5],
            c[2] - 1j * c[6],
            c[3] - 1j * c[7],
        ]
    )


def unsplit(z) -> ComplexOctonion:
    """Inverse of `split`: reassemble the octonion from its four complex slots."""
    z = np.asarray(z, dtype=complex)
    if z.shape != (4,):
        raise ValueError("unsplit expects four complex numbers")
    c = np.zeros(8, dtype=complex)
    c[0], c[4] = z[0].real, z[0].imag
    c[1], c[5] = z[1].real, -z[1].imag
    c[2], c[6] = z[2].real, -z[2].imag
    c[3], c[7] = z[3].real, -z[3].imag
    return ComplexOctonion(c)


def basis_product(i, j):
    """(k, sign) with e_i e_j = sign * e_k."""
    col = STRUCTURE[i, j]
    k = int(np.argmax(np.abs(col)))
    return k, float(col[k])


def table_rows():
    """Rows of the 8x8 basis multiplication table as signed unit names."""
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            k, s = basis_product(i, j)
            row.append(("-" if s < 0 else "") + f"e{k}")
        rows.append(row)
    return rows
