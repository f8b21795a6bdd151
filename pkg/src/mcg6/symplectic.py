"""Integer symplectic matrices, quadratic refinements and the mod-2 cocycle.

Conventions: J = [[0, I], [-I, 0]]. Homology classes are column vectors and
A acts by x -> Ax; cohomology classes (the a, b coordinates of extension
elements and the cocycle values) are row vectors acted on by b -> bA. With
these choices s(A)(x) = ψ(Ax) - ψ(x) satisfies s(AB) = s(A)B + s(B), which is
exactly what makes {b ≡ s(A) mod 2} closed under the semidirect product law.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import CoordinateError, DimensionError, DomainError, InternalConsistencyError
from .exactlin import IntMatrix


def standard_form(g: int) -> IntMatrix:
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    return IntMatrix.from_rows(rows, cols=n)


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)


def is_symplectic(g: int, A) -> bool:
    A = _as_matrix(A)
    if A.rows != 2 * g or A.cols != 2 * g:
        raise DimensionError(f"expected a {2 * g}x{2 * g} matrix, got {A.rows}x{A.cols}")
    J = standard_form(g)
    return A.transpose() @ J @ A == J


@dataclass(frozen=True)
class SymplecticMatrix:
    g: int
    entries: IntMatrix

    def __post_init__(self):
        if not is_symplectic(self.g, self.entries):
            raise DomainError("matrix does not preserve the standard symplectic form")

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        return cls(g, IntMatrix.identity(2 * g))

    @classmethod
    def of(cls, A) -> "SymplecticMatrix":
        A = _as_matrix(A)
        if A.rows != A.cols or A.rows % 2:
            raise DimensionError(f"symplectic matrices are square of even size, got {A.rows}x{A.cols}")
        return cls(A.rows // 2, A)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.g != other.g:
            raise DimensionError("genus mismatch")
        return SymplecticMatrix(self.g, self.entries @ other.entries)

    def inverse(self) -> "SymplecticMatrix":
        # A^T J A = J gives A^{-1} = -J A^T J
        J = standard_form(self.g)
        m = J @ self.entries.transpose() @ J
        return SymplecticMatrix(self.g, IntMatrix(m.rows, m.cols, tuple(-x for x in m.entries)))

    def to_rows(self) -> list[list[int]]:
        return self.entries.to_rows()


def transvection(g: int, v: Sequence[int]) -> SymplecticMatrix:
    """x -> x + ω(v, x) v with ω(v, x) = v^T J x."""
    n = 2 * g
    if len(v) != n:
        raise DimensionError(f"vector of length {len(v)} for genus {g}")
    vJ = [sum(v[i] * standard_form(g)[i, j] for i in range(n)) for j in range(n)]
    rows = [[int(i == j) + v[i] * vJ[j] for j in range(n)] for i in range(n)]
    return SymplecticMatrix(g, IntMatrix.from_rows(rows, cols=n))


def generator_vectors(g: int) -> list[tuple[str, tuple[int, ...]]]:
    """Named vectors whose transvections mirror the twists along a_i, b_j and b_i + b_{i+1}."""
    n = 2 * g

    def unit(*idx):
        return tuple(int(j in idx) for j in range(n))

    out = [(f"f_{i + 1}^e", unit(i)) for i in range(g)]
    out += [(f"f^{j + 1}_e", unit(g + j)) for j in range(g)]
    out += [(f"f_{{{i + 1},{i + 2}}}^e", unit(g + i, g + i + 1)) for i in range(g - 1)]
    return out


def standard_generators(g: int) -> list[SymplecticMatrix]:
    """3g - 1 transvections generating Sp(2g, Z); empty for g = 0."""
    if g < 0:
        raise DomainError("negative genus")
    return [transvection(g, v) for _, v in generator_vectors(g)]


# -- quadratic refinements ----------------------------------------------------

@dataclass(frozen=True)
class QuadraticRefinement:
    """ψ(x) = Σ x_i x_{g+i} + Σ linear_part_j x_j (mod 2)."""

    g: int
    linear_part: tuple[int, ...]

    def __post_init__(self):
        lp = tuple(int(x) % 2 for x in self.linear_part)
        if len(lp) != 2 * self.g:
            raise DimensionError(f"linear part of length {len(lp)} for genus {self.g}")
        object.__setattr__(self, "linear_part", lp)

    @classmethod
    def base(cls, g: int) -> "QuadraticRefinement":
        return cls(g, (0,) * (2 * g))

    @classmethod
    def from_bits(cls, bits: str) -> "QuadraticRefinement":
        bits = bits.strip()
        if len(bits) % 2 or any(c not in "01" for c in bits):
            raise DomainError(f"refinement bits must be an even-length 0/1 string, got {bits!r}")
        return cls(len(bits) // 2, tuple(int(c) for c in bits))

    def bits(self) -> str:
        return "".join(str(x) for x in self.linear_part)

    def __call__(self, x: Sequence[int]) -> int:
        g = self.g
        q = sum(x[i] * x[g + i] for i in range(g))
        q += sum(c * xi for c, xi in zip(self.linear_part, x))
        return q % 2


def all_refinements(g: int) -> list[QuadraticRefinement]:
    return [QuadraticRefinement(g, bits) for bits in itertools.product((0, 1), repeat=2 * g)]


def mod2_pairing(g: int, x: Sequence[int], y: Sequence[int]) -> int:
    return sum(x[i] * y[g + i] + x[g + i] * y[i] for i in range(g)) % 2


def _apply(A: IntMatrix, x: Sequence[int]) -> list[int]:
    rows = A.to_rows()
    return [sum(a * b for a, b in zip(r, x)) % 2 for r in rows]


_LINEARITY_CHECK_MAX_DIM = 16


def cocycle(psi: QuadraticRefinement, A: SymplecticMatrix) -> tuple[int, ...]:
    """Coefficient vector of the linear functional x -> ψ(Ax) - ψ(x) (mod 2)."""
    if psi.g != A.g:
        raise DimensionError("refinement and matrix have different genus")
    n = 2 * psi.g
    M = A.entries

    def s(x):
        return (psi(_apply(M, x)) - psi(x)) % 2

    units = [[int(i == j) for j in range(n)] for i in range(n)]
    coeffs = tuple(s(e) for e in units)
    if n <= _LINEARITY_CHECK_MAX_DIM:
        # s has degree <= 2 over F_2 with s(0) = 0, so additivity on pairs of
        # basis vectors already forces linearity
        for i in range(n):
            for j in range(i + 1, n):
                x = [units[i][t] + units[j][t] for t in range(n)]
                if s(x) != (coeffs[i] + coeffs[j]) % 2:
                    raise InternalConsistencyError("ψ∘A - ψ is not linear")
    return coeffs


# -- extension by (H x H)/Δ ---------------------------------------------------

def _vec_times(v: Sequence[int], A: IntMatrix) -> tuple[int, ...]:
    n = A.rows
    return tuple(sum(v[i] * A[i, j] for i in range(n)) for j in range(A.cols))


@dataclass(frozen=True)
class ExtElement:
    """((a, b), A) in ((Z^2g x Z^2g) / Δ_{d,m}) ⋊ Sp(2g, Z), Δ_{d,m} = {(du, mu)}."""

    g: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    A: SymplecticMatrix
    slope: tuple[int, int]

    def __post_init__(self):
        n = 2 * self.g
        if len(self.a) != n or len(self.b) != n or self.A.g != self.g:
            raise DimensionError("ExtElement components do not match the genus")
        d, m = self.slope
        a, b = list(self.a), list(self.b)
        for i in range(n):
            if d:
                q = a[i] // abs(d) * (1 if d > 0 else -1)
                a[i] -= q * d
                b[i] -= q * m
            elif m:
                b[i] %= abs(m)
        object.__setattr__(self, "a", tuple(a))
        object.__setattr__(self, "b", tuple(b))
        object.__setattr__(self, "slope", (int(d), int(m)))

    @classmethod
    def identity(cls, g: int, slope: tuple[int, int]) -> "ExtElement":
        z = (0,) * (2 * g)
        return cls(g, z, z, SymplecticMatrix.identity(g), slope)

    def inverse(self) -> "ExtElement":
        Ai = self.A.inverse()
        a = tuple(-x for x in _vec_times(self.a, Ai.entries))
        b = tuple(-x for x in _vec_times(self.b, Ai.entries))
        return ExtElement(self.g, a, b, Ai, self.slope)


def ext_multiply(e1: ExtElement, e2: ExtElement) -> ExtElement:
    if e1.slope != e2.slope:
        raise DomainError(f"slope mismatch {e1.slope} vs {e2.slope}")
    if e1.g != e2.g:
        raise DimensionError("genus mismatch")
    M = e2.A.entries
    a = tuple(x + y for x, y in zip(_vec_times(e1.a, M), e2.a))
    b = tuple(x + y for x, y in zip(_vec_times(e1.b, M), e2.b))
    return ExtElement(e1.g, a, b, e1.A @ e2.A, e1.slope)


def image_membership(e: ExtElement, psi: QuadraticRefinement) -> bool:
    """True iff b ≡ s(A) (mod 2); needs an even second slope to be well defined."""
    if e.slope[1] % 2:
        raise CoordinateError(f"b mod 2 is not well defined on cosets of Δ with slope {e.slope}")
    return tuple(x % 2 for x in e.b) == cocycle(psi, e.A)


# -- Sp(π3) ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpPi3Element:
    """(t, A) in (Z/d)^2g ⋊ Sp(2g, Z) with (t, A)(t', A') = (tA' + t', AA')."""

    g: int
    d: int
    t: tuple[int, ...]
    A: SymplecticMatrix

    def __post_init__(self):
        if self.d < 0:
            raise DomainError("negative modulus")
        if len(self.t) != 2 * self.g or self.A.g != self.g:
            raise DimensionError("SpPi3Element components do not match the genus")
        t = tuple(x % self.d if self.d else x for x in self.t)
        object.__setattr__(self, "t", t)

    @classmethod
    def identity(cls, g: int, d: int) -> "SpPi3Element":
        return cls(g, d, (0,) * (2 * g), SymplecticMatrix.identity(g))

    def inverse(self) -> "SpPi3Element":
        Ai = self.A.inverse()
        return SpPi3Element(self.g, self.d, tuple(-x for x in _vec_times(self.t, Ai.entries)), Ai)


def sp_pi3_multiply(x: SpPi3Element, y: SpPi3Element) -> SpPi3Element:
    if x.d != y.d:
        raise DomainError(f"modulus mismatch {x.d} vs {y.d}")
    if x.g != y.g:
        raise DimensionError("genus mismatch")
    t = tuple(p + q for p, q in zip(_vec_times(x.t, y.A.entries), y.t))
    return SpPi3Element(x.g, x.d, t, x.A @ y.A)


def center_sp_pi3(g: int, d: int) -> str:
    """'trivial', '±I' or 'undetermined' for the center of (Z/d)^2g ⋊ Sp(2g, Z)."""
    if g < 1:
        raise DomainError("center_sp_pi3 needs g >= 1")
    if d == 1:
        # (Z/1)^2g is trivial, so the group is Sp(2g, Z) with center {±I}
        return "±I"
    if d > 0 and ((g == 1 and d % 2) or (g >= 2 and d != 2)):
        return "trivial"
    if g >= 2 and d == 2:
        return "±I"
    return "undetermined"
