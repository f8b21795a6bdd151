"""Exact integer linear algebra.

Smith normal form with unimodular witnesses, column Hermite form for lattice
membership, canonical finitely generated abelian groups and element orders in
lattice quotients. Everything uses Python integers, so there is no overflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionError, InternalConsistencyError

INFINITE = math.inf
"""Marker returned by :func:`element_order` for elements of infinite order."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        """Matrix whose columns are ``columns``; ``rows`` fixes the height when empty."""
        for c in columns:
            if len(c) != rows:
                raise DimensionError(f"column of length {len(c)} in a matrix with {rows} rows")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(c) for c in self.columns()], cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else [()] * other.cols
        out = [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]
        return IntMatrix.from_rows(out, cols=other.cols)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        n = self.rows
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1

    def is_empty(self) -> bool:
        return self.rows == 0 or self.cols == 0


def parse_matrix(text: str) -> IntMatrix:
    """Parse the matrix text format or a JSON array of arrays.

    Text format: first line ``rows cols``, then the entries in row-major order,
    separated by arbitrary whitespace.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        data = json.loads(stripped)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise DimensionError("JSON matrix must be an array of arrays")
        for r in data:
            for e in r:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise DimensionError(f"non-integer matrix entry {e!r}")
        return IntMatrix.from_rows(data)
    tokens = stripped.split()
    if len(tokens) < 2:
        raise DimensionError("matrix text must start with 'rows cols'")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise DimensionError(f"non-integer token in matrix text: {exc}") from None
    rows, cols = nums[0], nums[1]
    return IntMatrix(rows, cols, tuple(nums[2:]))


def format_matrix(m: IntMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += [" ".join(str(e) for e in r) for r in m.to_rows()]
    return "\n".join(lines) + "\n"


# -- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Diagonalize ``A`` as ``U @ A @ V == D`` with unimodular ``U`` and ``V``.

    Pivots are the smallest nonzero magnitude in the remaining block, ties broken
    by lowest row and then lowest column, so transforms are reproducible.
    """
    if A.is_empty():
        raise DimensionError("Smith normal form of an empty matrix")
    m, n = A.rows, A.cols
    a = A.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in v:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    D = IntMatrix.from_rows(a, cols=n)
    divisors = tuple(a[i][i] for i in range(min(m, n)))
    return SmithForm(IntMatrix.from_rows(u, cols=m), D, IntMatrix.from_rows(v, cols=n), divisors)


# -- canonical abelian groups -------------------------------------------------

def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Normalize cyclic orders into a divisibility chain without factoring."""
    chain: list[int] = []
    for o in orders:
        o = abs(int(o))
        if o == 0:
            raise ValueError("zero order; count it as free rank instead")
        if o == 1:
            continue
        chain.append(o)
    changed = True
    while changed:
        changed = False
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                x, y = chain[i], chain[j]
                gd = math.gcd(x, y)
                lo, hi = gd, x // gd * y
                if (lo, hi) != (x, y):
                    chain[i], chain[j] = lo, hi
                    changed = True
    return tuple(sorted(o for o in chain if o != 1))


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group ``Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tn``.

    ``torsion`` is a divisibility chain of integers ≥ 2, so equality of
    instances is isomorphism of groups.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a canonical divisibility chain; use from_orders")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, orders: Iterable[int] = (), free_rank: int = 0) -> "FinAbGroup":
        """Group ``Z^free_rank ⊕ ⊕ Z/o``; orders of 1 are dropped, 0 means a free factor."""
        orders = list(orders)
        free = free_rank + sum(1 for o in orders if o == 0)
        return cls(free, _invariant_factors(o for o in orders if o != 0))

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls.from_orders([n])

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | float:
        return INFINITE if self.free_rank else math.prod(self.torsion)

    def exponent(self) -> int | float:
        if self.free_rank:
            return INFINITE
        return self.torsion[-1] if self.torsion else 1

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_orders(self.torsion + other.torsion, self.free_rank + other.free_rank)

    def p_part(self, p: int) -> "FinAbGroup":
        """Torsion p-primary part (free summands are dropped)."""
        parts = []
        for t in self.torsion:
            q = 1
            while t % p == 0:
                t //= p
                q *= p
            parts.append(q)
        return FinAbGroup.from_orders(parts)

    def p_partition(self, p: int) -> list[int]:
        """Exponents of the p-primary cyclic factors, largest first."""
        out = []
        for t in self.torsion:
            e = 0
            while t % p == 0:
                t //= p
                e += 1
            if e:
                out.append(e)
        return sorted(out, reverse=True)

    def primes(self) -> list[int]:
        return sorted({p for t in self.torsion for p in _prime_factors(t)})

    def to_json(self):
        """Torsion chain as a list, with the free rank only when nonzero."""
        if self.free_rank:
            return {"free_rank": self.free_rank, "torsion": list(self.torsion)}
        return list(self.torsion)

    def __str__(self) -> str:
        """Direct sum notation; runs longer than three factors use exponents."""
        runs: list[tuple[str, int]] = []
        if self.free_rank:
            runs.append(("Z", self.free_rank))
        for t in self.torsion:
            if runs and runs[-1][0] == f"Z/{t}":
                runs[-1] = (runs[-1][0], runs[-1][1] + 1)
            else:
                runs.append((f"Z/{t}", 1))
        parts = []
        for name, count in runs:
            if count > 3:
                parts.append(f"{name}^{count}" if name == "Z" else f"({name})^{count}")
            else:
                parts += [name] * count
        return " ⊕ ".join(parts) if parts else "0"


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_quotient_of(G: FinAbGroup, H: FinAbGroup) -> bool:
    """True iff there is a surjection ``H -> G``.

    Prime by prime, the partition of G's p-part must fit inside H's, where each
    surplus free summand of H counts as an unbounded cyclic factor.
    """
    if G.free_rank > H.free_rank:
        return False
    spare = H.free_rank - G.free_rank
    for p in G.primes():
        g_parts = G.p_partition(p)
        h_parts = H.p_partition(p)
        h_parts = [math.inf] * spare + h_parts
        if len(g_parts) > len(h_parts):
            return False
        if any(x > y for x, y in zip(g_parts, h_parts)):
            return False
    return True


# -- lattices and quotients ---------------------------------------------------

def _column_hermite(n: int, columns: Sequence[Sequence[int]]) -> list[tuple[int, tuple[int, ...]]]:
    """Echelon basis of the column span: list of (pivot row, column) pairs.

    Pivot rows strictly increase, pivots are positive, and entries of earlier
    columns in a later pivot row are reduced into ``[0, pivot)``.
    """
    cols = [list(c) for c in columns if any(c)]
    basis: list[tuple[int, list[int]]] = []
    for r in range(n):
        active = [c for c in cols if c[r] != 0]
        rest = [c for c in cols if c[r] == 0]
        if not active:
            cols = rest
            continue
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[r]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[r] // piv[r]
                c = [x - q * y for x, y in zip(c, piv)]
                if c[r]:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            active = nxt
        piv = active[0]
        if piv[r] < 0:
            piv = [-x for x in piv]
        basis.append((r, piv))
        cols = rest
    for idx, (r, piv) in enumerate(basis):
        for j in range(idx):
            r0, c0 = basis[j]
            q = c0[r] // piv[r]
            if q:
                basis[j] = (r0, [x - q * y for x, y in zip(c0, piv)])
    return [(r, tuple(c)) for r, c in basis]


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^n spanned by the columns of ``generators``."""

    n: int
    generators: IntMatrix

    def __post_init__(self):
        if self.generators.rows != self.n:
            raise DimensionError(f"generator matrix has {self.generators.rows} rows, expected {self.n}")

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[Sequence[int]]) -> "Lattice":
        return cls(n, IntMatrix.from_columns(list(columns), n))

    @cached_property
    def hermite(self) -> list[tuple[int, tuple[int, ...]]]:
        return _column_hermite(self.n, self.generators.columns())

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise DimensionError(f"vector of length {len(v)} tested against a lattice in Z^{self.n}")
        r = list(v)
        for row, col in self.hermite:
            if r[row] % col[row]:
                return False
            q = r[row] // col[row]
            if q:
                r = [x - q * y for x, y in zip(r, col)]
        return not any(r)

    def rank(self) -> int:
        return len(self.hermite)

    @cached_property
    def smith(self) -> SmithForm | None:
        return None if self.generators.is_empty() else smith_normal_form(self.generators)

    def quotient(self) -> FinAbGroup:
        if self.smith is None:
            return FinAbGroup(self.n)
        divs = list(self.smith.divisors) + [0] * (self.n - len(self.smith.divisors))
        return FinAbGroup.from_orders(divs)


def lattice_quotient(n: int, L: IntMatrix) -> FinAbGroup:
    """Canonical form of ``Z^n / L`` where the columns of ``L`` span the sublattice."""
    if L.rows != n:
        raise DimensionError(f"lattice matrix has {L.rows} rows, expected {n}")
    if L.cols == 0:
        return FinAbGroup(n)
    return Lattice(n, L).quotient()


@dataclass(frozen=True)
class QuotientElement:
    coset: tuple[int, ...]
    presentation: Lattice

    def __post_init__(self):
        object.__setattr__(self, "coset", tuple(int(x) for x in self.coset))
        if len(self.coset) != self.presentation.n:
            raise DimensionError(
                f"coset of length {len(self.coset)} in a quotient of Z^{self.presentation.n}"
            )

    def __eq__(self, other):
        if not isinstance(other, QuotientElement) or other.presentation.n != self.presentation.n:
            return NotImplemented
        diff = [x - y for x, y in zip(self.coset, other.coset)]
        return self.presentation.contains(diff)

    def __hash__(self):  # equality is coset equality, so only hash the ambient data
        return hash(self.presentation.n)

    def scaled(self, c: int) -> "QuotientElement":
        return QuotientElement(tuple(c * x for x in self.coset), self.presentation)


def element_order(v: QuotientElement) -> int | float:
    """Smallest ``m > 0`` with ``m*v`` in the lattice, or :data:`INFINITE`."""
    lat = v.presentation
    if not any(v.coset):
        return 1
    if lat.smith is None:
        return INFINITE
    sf = lat.smith
    w = [sum(sf.U[i, j] * v.coset[j] for j in range(lat.n)) for i in range(lat.n)]
    order = 1
    for i, wi in enumerate(w):
        di = sf.divisors[i] if i < len(sf.divisors) else 0
        if di == 0:
            if wi:
                return INFINITE
            continue
        part = di // math.gcd(di, wi)
        order = order * part // math.gcd(order, part)
    if not lat.contains([order * x for x in v.coset]):
        raise InternalConsistencyError("element order postcondition failed")
    return order
