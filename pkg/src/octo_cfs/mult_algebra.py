"""Left/right multiplication endomorphisms of the octonions and their generated algebras.

Octonions are written as column vectors of coefficients over e0..e7, so a
left (right) multiplication is an 8x8 matrix. Composing these matrices
generates the associative multiplication algebras O_L and O_R.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .octonion import STRUCTURE, ComplexOctonion, Octonion

#: Relative singular-value tolerance used for span independence decisions.
SPAN_TOL = 1e-9


class SpanClosureError(RuntimeError):
    """The generated span kept growing past the configured product-length bound."""


def _coeffs(a):
    if isinstance(a, (Octonion, ComplexOctonion)):
        return a.coeffs
    c = np.asarray(a)
    if c.shape != (8,):
        raise ValueError("expected an octonion or an 8-vector of coefficients")
    return c


def left_matrix(a) -> np.ndarray:
    """Matrix of L_a: x -> a x acting on coefficient column vectors."""
    c = _coeffs(a)
    return np.einsum("i,ijk->kj", c, STRUCTURE.astype(c.dtype))


def right_matrix(a) -> np.ndarray:
    """Matrix of R_a: x -> x a acting on coefficient column vectors."""
    c = _coeffs(a)
    return np.einsum("i,jik->kj", c, STRUCTURE.astype(c.dtype))


def left_unit(i) -> np.ndarray:
    """L_{e_i} as a real 8x8 matrix."""
    return left_matrix(Octonion.e(i))


def right_unit(i) -> np.ndarray:
    return right_matrix(Octonion.e(i))


def chain(word, side="left") -> np.ndarray:
    """Product of per-letter multiplication matrices, leftmost letter outermost.

    `word` is a sequence of basis indices 0..7.
    """
    if len(word) == 0:
        raise ValueError("chain needs a non-empty word")
    unit = left_unit if side == "left" else right_unit
    out = unit(word[0])
    for letter in word[1:]:
        out = out @ unit(letter)
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    """Adjoint on End8: the conjugate transpose.

    Agrees with the algebraic adjoint (complex conjugation composed with
    octonion conjugation) on the generators, hence on the whole algebra.
    """
    return np.conj(m).T


@dataclass
class AlgebraSpan:
    """Linearly independent basis of a multiplicatively generated matrix span."""

    basis: list
    field: str
    dimension: int
    orthonormal: np.ndarray  # rows: orthonormalized vectorized basis elements


def _try_add(vec, ortho_rows, tol_scale):
    v = vec.copy()
    for q in ortho_rows:
        v -= (np.conj(q) @ v) * q
    # second pass guards against loss of orthogonality
    for q in ortho_rows:
        v -= (np.conj(q) @ v) * q
    nrm = np.linalg.norm(v)
    if nrm > SPAN_TOL * tol_scale:
        ortho_rows.append(v / nrm)
        return True
    return False


def span_dimension(generators, field="real", max_passes=8) -> AlgebraSpan:
    """Associative algebra generated by the given 8x8 matrices under product and span.

    Breadth-first closure over products of the current basis with the
    generators; stops at a fixed point. Raises SpanClosureError if the span
    is still growing after `max_passes` passes (product length bound).
    """
    if field not in ("real", "complex"):
        raise ValueError("field must be 'real' or 'complex'")
    if len(generators) == 0:
        raise ValueError("span_dimension needs at least one generator")
    dtype = float if field == "real" else complex
    gens = [np.asarray(g, dtype=dtype) for g in generators]
    tol_scale = max(np.linalg.norm(g) for g in gens)

    ortho: list = []
    basis: list = []
    frontier: list = []
    for g in gens:
        if _try_add(g.ravel(), ortho, tol_scale):
            basis.append(g)
            frontier.append(g)

    for _ in range(max_passes):
        if not frontier:
            break
        new_frontier = []
        for b in frontier:
            for g in gens:
                m = b @ g
                if _try_add(m.ravel(), ortho, tol_scale):
                    basis.append(m)
                    new_frontier.append(m)
        frontier = new_frontier
    if frontier:
        raise SpanClosureError(
            f"span still growing after {max_passes} passes (dimension {len(basis)})"
        )
    return AlgebraSpan(
        basis=basis, field=field, dimension=len(basis), orthonormal=np.array(ortho)
    )


def in_span(m: np.ndarray, span: AlgebraSpan) -> float:
    """Relative residual of m after projection onto the span (0 means member)."""
    v = m.ravel().astype(complex if span.field == "complex" else float)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        return 0.0
    r = v.copy()
    for q in span.orthonormal:
        r -= (np.conj(q) @ r) * q
    return float(np.linalg.norm(r) / nrm)


def end8_to_json(m: np.ndarray) -> dict:
    """Row-major nested-array serialization with an explicit field tag."""
    m = np.asarray(m)
    if np.iscomplexobj(m):
        return {
            "field": "complex",
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
        }
    return {"field": "real", "entries": [[float(v) for v in row] for row in m]}


def end8_from_json(obj: dict) -> np.ndarray:
    if obj["field"] == "complex":
        return np.array([[complex(re, im) for re, im in row] for row in obj["entries"]])
    return np.array(obj["entries"], dtype=float)


def octonion_inner(x: Octonion, y: Octonion) -> float:
    """<x, y> = (x conj(y) + y conj(x)) / 2, read off the e0 component."""
    s = x * y.conj() + y * x.conj()
    return 0.5 * float(s.coeffs[0])


def quadratic_relation_check(x: Octonion, y: Octonion) -> float:
    """Residual norm of L_x L_{conj(y)} 1 + L_y L_{conj(x)} 1 - 2 <x,y> 1."""
    one = np.zeros(8)
    one[0] = 1.0
    lhs = left_matrix(x) @ (left_matrix(y.conj()) @ one) + left_matrix(y) @ (
        left_matrix(x.conj()) @ one
    )
    rhs = 2.0 * octonion_inner(x, y) * one
    return float(np.linalg.norm(lhs - rhs))


def left_right_equality() -> dict:
    """Span comparison of the generated left and right multiplication algebras."""
    left_span = span_dimension([left_unit(i) for i in range(1, 8)], field="real")
    right_span = span_dimension([right_unit(i) for i in range(1, 8)], field="real")
    union_rows = np.vstack(
        [
            np.array([b.ravel() for b in left_span.basis]),
            np.array([b.ravel() for b in right_span.basis]),
        ]
    )
    union_rank = int(np.linalg.matrix_rank(union_rows, tol=SPAN_TOL * np.abs(union_rows).max()))
    return {
        "left_dim": left_span.dimension,
        "right_dim": right_span.dimension,
        "union_rank": union_rank,
        "equal": union_rank == left_span.dimension == right_span.dimension,
    }
