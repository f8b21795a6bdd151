"""Characteristic-number lattices and the finite kernel K(M).

Spin case: K(M) = Z^3 / L(M) in the reduced coordinates (s1/8, s2/2, s3).
Non-spin case: the σ-columns are pushed through λ = σ1 + 3σ2 + σ3 and
μ = 6σ1 + 10σ2 + 3σ3, and K(M) is the cyclic subgroup generated by [(1, 2)]
in Z^2 / L(M), coordinates (μ/4, λ).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .errors import AnalysisError, CaseError, DomainError, InternalConsistencyError
from .exactlin import FinAbGroup, IntMatrix, Lattice, QuotientElement, element_order, lattice_quotient
from .manifold import ManifoldInvariants

THETA7_ORDER = 28
"""Order of the group of homotopy 7-spheres (Kervaire-Milnor)."""

NONSPIN_IMAGE_ORDER = 6 * THETA7_ORDER
"""Order of the cyclic group mapping onto the non-spin kernel."""

Kind = Literal["spin-s", "nonspin-sigma", "spin-reduced", "nonspin-mu-lambda"]
_LENGTHS = {"spin-s": 3, "nonspin-sigma": 3, "spin-reduced": 3, "nonspin-mu-lambda": 2}


@dataclass(frozen=True)
class SInvariantTriple:
    kind: Kind
    values: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _LENGTHS:
            raise DomainError(f"unknown invariant kind {self.kind!r}")
        vals = tuple(int(v) for v in self.values)
        if len(vals) != _LENGTHS[self.kind]:
            raise DomainError(f"{self.kind} needs {_LENGTHS[self.kind]} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def reduced(self) -> "SInvariantTriple":
        """Spin (s1, s2, s3) -> (s1/8, s2/2, s3); σ-triple -> (μ/4, λ)."""
        if self.kind == "spin-s":
            s1, s2, s3 = self.values
            if s1 % 8 or s2 % 2:
                raise InternalConsistencyError(f"spin triple {self.values} is not reducible")
            return SInvariantTriple("spin-reduced", (s1 // 8, s2 // 2, s3))
        if self.kind == "nonspin-sigma":
            return SInvariantTriple("nonspin-mu-lambda", sigma_to_mu_lambda(self.values))
        return self

    @property
    def lam(self) -> int:
        if self.kind != "nonspin-mu-lambda":
            raise CaseError("λ is only defined for non-spin invariants")
        return self.values[1]

    @property
    def mu(self) -> int:
        if self.kind != "nonspin-mu-lambda":
            raise CaseError("μ is only defined for non-spin invariants")
        return 4 * self.values[0]


@dataclass(frozen=True)
class DehnTwistParam:
    """Class in π3 SO(4) with Euler number ``chi`` and half Pontryagin class chi - 2b."""

    chi: int
    b: int


@dataclass(frozen=True)
class LatticeModel:
    case: Literal["spin", "nonspin"]
    generators: IntMatrix
    source: ManifoldInvariants | None

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.generators.rows, self.generators)

    def quotient(self) -> FinAbGroup:
        return lattice_quotient(self.generators.rows, self.generators)

    def element(self, v) -> QuotientElement:
        return QuotientElement(tuple(v), self.lattice)


# -- spin lattices -------------------------------------------------------------

def _require_spin(inv: ManifoldInvariants):
    if not inv.spin:
        raise CaseError("spin lattice requested for non-spin invariants")


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den:
        raise InternalConsistencyError(f"{what}: {num} not divisible by {den}")
    return num // den


def spin_lattice(inv: ManifoldInvariants) -> LatticeModel:
    """Generators of L(M) in reduced coordinates (s1/8, s2/2, s3)."""
    _require_spin(inv)
    d, k = inv.d, inv.k
    cols = [
        (-28, 0, 0),
        (0, 12, 0),
        (0, 0, 2),
        (_exact_div(k * k - 2 * k, 8, "e4 s1"), _exact_div(d * d - d * (k - 1), 2, "e4 s2"), d * (k - 1)),
        (_exact_div(k * k, 4, "e5 s1"), d * d - d * k, 2 * d * k),
        (0, _exact_div(k, 2, "e6 s2") - d, -k),
    ]
    return LatticeModel("spin", IntMatrix.from_columns(cols, 3), inv)


def spin_lattice_raw(inv: ManifoldInvariants) -> LatticeModel:
    """Generators of the closed-manifold value lattice in raw (s1, s2, s3)."""
    _require_spin(inv)
    d, k = inv.d, inv.k
    rows = [
        [-8 * THETA7_ORDER, 0, 0, k * k - 2 * k, 2 * k * k, 0],
        [0, 24, 0, d * d - d * (k - 1), 2 * d * d - 2 * d * k, k - 2 * d],
        [0, 0, -2, -d * (k - 1), -2 * d * k, k],
    ]
    return LatticeModel("spin", IntMatrix.from_rows(rows), inv)


def raw_to_reduced(m: IntMatrix) -> IntMatrix:
    """Coordinate change (s1, s2, s3) -> (s1/8, s2/2, -s3) on a 3-row matrix."""
    rows = m.to_rows()
    if any(x % 8 for x in rows[0]) or any(x % 2 for x in rows[1]):
        raise InternalConsistencyError("raw lattice entries not divisible by (8, 2)")
    return IntMatrix.from_rows([[x // 8 for x in rows[0]], [x // 2 for x in rows[1]], [-x for x in rows[2]]], cols=m.cols)


S2S4_RAW = IntMatrix.from_rows([[-224, 0, 0], [0, 24, 0], [0, 0, -2]])
"""Closed-manifold value lattice for S^2 x S^4 in raw coordinates."""

S2S4_REDUCED = IntMatrix.from_rows([[-28, 0, 0], [0, 12, 0], [0, 0, 2]])
"""The same lattice in reduced coordinates; also the first three spin columns."""


# -- non-spin lattice ------------------------------------------------------------

def sigma_to_mu_lambda(sigma) -> tuple[int, int]:
    """(σ1, σ2, σ3) -> (μ/4, λ); μ must be divisible by 4."""
    s1, s2, s3 = sigma
    lam = s1 + 3 * s2 + s3
    mu = 6 * s1 + 10 * s2 + 3 * s3
    if mu % 4:
        raise InternalConsistencyError(f"μ = {mu} not divisible by 4 for σ = {tuple(sigma)}")
    return mu // 4, lam


def nonspin_sigma_columns(inv: ManifoldInvariants) -> IntMatrix:
    """The six σ-columns e1..e6 of the closed-manifold value lattice (non-spin)."""
    if inv.spin:
        raise CaseError("non-spin lattice requested for spin invariants")
    d = inv.d
    K = d + 24 * inv.l  # equals k
    cols = [
        (0, 0, -8 * THETA7_ORDER),
        (6, -6, 8),
        (1, -3, 8),
        (d * d, -d * (K - 1), (K - 1) ** 2 - 1),
        (2 * d * d, -2 * d * K, 2 * K * K),
        (-2 * d, 3 * d + 24 * inv.l, -4 * K),
    ]
    return IntMatrix.from_columns(cols, 3)


def nonspin_lattice(inv: ManifoldInvariants) -> LatticeModel:
    sig = nonspin_sigma_columns(inv)
    cols = [sigma_to_mu_lambda(c) for c in sig.columns()]
    return LatticeModel("nonspin", IntMatrix.from_columns(cols, 2), inv)


def nonspin_printed_simplified(inv: ManifoldInvariants) -> IntMatrix:
    """Five-column simplified (μ/4, λ) table as printed in the source, δ = d/2.

    Kept as data for comparison only. Its third and fourth columns do not agree
    with the images of the σ-columns (the δl and l^2 coefficients differ), which
    changes the 7-primary part; see :func:`nonspin_lattice` for the computed one.
    """
    if inv.spin:
        raise CaseError("non-spin table requested for spin invariants")
    t, l = inv.delta, inv.l
    cols = [
        (6 * THETA7_ORDER, 0),
        (0, -4),
        (-t * t - 48 * t * l + 2 * t + 432 * l * l - 36 * l, -4 * t * t - 96 * t * l + 2 * t + 576 * l * l - 48 * l),
        (-2 * (t * t + 96 * t * l - 864 * l * l), -2 * (4 * t * t + 48 * t * l - 576 * l * l)),
        (3 * (t - 4 * l), 6 * (t - 4 * l)),
    ]
    return IntMatrix.from_columns(cols, 2)


NONSPIN_GENERATOR = (1, 2)
"""Coset (μ/4, λ) whose order is |K(M)| in the non-spin case."""


def kernel_group(inv: ManifoldInvariants) -> FinAbGroup:
    if inv.spin:
        return spin_lattice(inv).quotient()
    model = nonspin_lattice(inv)
    order = element_order(model.element(NONSPIN_GENERATOR))
    if NONSPIN_IMAGE_ORDER % order:
        raise InternalConsistencyError(f"non-spin kernel order {order} does not divide {NONSPIN_IMAGE_ORDER}")
    return FinAbGroup.cyclic(order)


def kernel_lattice(inv: ManifoldInvariants) -> LatticeModel:
    return spin_lattice(inv) if inv.spin else nonspin_lattice(inv)


# -- invariants of model manifolds and diffeomorphisms ---------------------------

def model_nk_invariants(case: str, k: int) -> SInvariantTriple:
    """Invariants of the sphere bundles N_k.

    Spin: raw (s1, s2, s3). Non-spin: (μ/4, λ) with λ = 4k^2 + 6k (in Z/4) and
    μ = 12k^2 + 16k (in Z/24), returned as integers before reduction.
    """
    if case == "spin":
        return SInvariantTriple("spin-s", (4 * k * (k + 3), -2 * (k + 1), 2 * k + 3))
    if case == "nonspin":
        lam = 4 * k * k + 6 * k
        mu = 12 * k * k + 16 * k
        return SInvariantTriple("nonspin-mu-lambda", (mu // 4, lam))
    raise CaseError(f"unknown case {case!r}")


def dehn_twist_invariants(case: str, p: DehnTwistParam) -> SInvariantTriple:
    """Spin: reduced (0, χ - b, χ mod 2). Non-spin: μ/4 = -χ + 5b.

    The non-spin value lives in a cyclic group on which λ ≡ 2·(μ/4) (mod 4),
    so the element is returned as (μ/4, λ) = (m, 2m).
    """
    if case == "spin":
        return SInvariantTriple("spin-reduced", (0, p.chi - p.b, p.chi % 2))
    if case == "nonspin":
        m = -p.chi + 5 * p.b
        return SInvariantTriple("nonspin-mu-lambda", (m, 2 * m))
    raise CaseError(f"unknown case {case!r}")


def local_diffeo_invariants() -> SInvariantTriple:
    """Generator of the diffeomorphisms supported in a disk: raw (-8, 0, 0), reduced (-1, 0, 0)."""
    return SInvariantTriple("spin-s", (-8, 0, 0)).reduced()


def nonspin_boundary() -> SInvariantTriple:
    return SInvariantTriple("nonspin-sigma", (0, 0, 0))


def commutator_invariants(case: str, which: str = "A1'B1") -> SInvariantTriple:
    """Invariants of the Torelli commutators.

    Spin: ``which="A1'B1"`` -> (0, -1, 0); ``which="AiBi"`` -> the local
    diffeomorphism (-1, 0, 0). Non-spin: μ/4 = 5, a unit in the kernel.
    """
    if case == "spin":
        if which == "A1'B1":
            return SInvariantTriple("spin-reduced", (0, -1, 0))
        if which == "AiBi":
            return local_diffeo_invariants()
        raise DomainError(f"unknown commutator {which!r}")
    if case == "nonspin":
        return SInvariantTriple("nonspin-mu-lambda", (5, 10))
    raise CaseError(f"unknown case {case!r}")


# -- boundary diffeomorphism ---------------------------------------------------

def boundary_s_values(d: int, k: int, lam: int, mu: int) -> tuple[Fraction, Fraction, Fraction]:
    """(S1, S2, S3) in Q/Z, each reduced into [0, 1)."""
    s1 = Fraction(k * (mu - lam * k) + k * mu, 32 * 7)
    s2 = Fraction(-(d * d * lam + d * (mu - lam * k)), 8 * 3)
    s3 = Fraction(-(4 * d * d * lam + d * (mu - lam * k)), 2 * 3)
    return tuple(s % 1 for s in (s1, s2, s3))


@dataclass(frozen=True)
class BoundaryReport:
    d: int
    k: int
    l: int
    initial: tuple[Fraction, Fraction, Fraction]
    framing: tuple[int, int] | None
    final: tuple[Fraction, Fraction, Fraction] | None
    branch: str | None

    @property
    def resolved(self) -> bool:
        return self.framing is not None or self.branch is not None

    def to_json(self) -> dict:
        def fr(vals):
            return None if vals is None else [str(v) for v in vals]

        return {
            "d": self.d,
            "k": self.k,
            "l": self.l,
            "initial": fr(self.initial),
            "framing": None if self.framing is None else {"a": self.framing[0], "b": self.framing[1]},
            "final": fr(self.final),
            "branch": self.branch,
        }


RECOGNIZED_BRANCH = "l odd, d ≡ 0 mod 4"

# The zero conditions depend on (λ, μ) only modulo lcm(224, 24, 6) = 672, so
# framings with |a| <= 336 and |b| <= 672 already cover every residue.
_A_PERIOD, _B_PERIOD = 336, 672


def _signed_range(n: int):
    yield 0
    for i in range(1, n + 1):
        yield -i
        yield i


def boundary_case_analysis(inv: ManifoldInvariants, lambda0: int, mu0: int, window: int | None = None) -> BoundaryReport:
    """Search a framing change (a, b) killing the boundary S-invariants.

    A framing change sends μ to μ + b and λ to λ + 2a + b. The search runs over
    |a|, |b| <= window (default 4(|λ0| + |μ0| + |k| + 2)), smallest |b| first.
    """
    if not inv.spin:
        raise CaseError("boundary analysis is for spin invariants; use nonspin_boundary")
    d, k = inv.d, inv.k
    if window is None:
        window = 4 * (abs(lambda0) + abs(mu0) + abs(k) + 2)
    initial = boundary_s_values(d, k, lambda0, mu0)
    for b in _signed_range(min(window, _B_PERIOD)):
        mu = mu0 + b
        for a in _signed_range(min(window, _A_PERIOD)):
            lam = lambda0 + 2 * a + b
            if (2 * k * mu - k * k * lam) % 224:
                continue
            if (d * d * lam + d * mu - d * k * lam) % 24:
                continue
            if (4 * d * d * lam + d * mu - d * k * lam) % 6:
                continue
            final = boundary_s_values(d, k, lam, mu)
            if any(final):
                raise InternalConsistencyError("integer zero test disagrees with Q/Z values")
            return BoundaryReport(d, k, inv.l, initial, (a, b), final, None)
    if d % 4 == 0 and inv.l % 2:
        return BoundaryReport(d, k, inv.l, initial, None, None, RECOGNIZED_BRANCH)
    raise AnalysisError(
        f"no zeroing framing for d={d}, k={k}, λ0={lambda0}, μ0={mu0} within window {window}"
    )
