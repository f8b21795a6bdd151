"""Classifying invariants (spin, d, k, g) of 6-manifolds with H^2 = Z·x.

``d`` is |<x^3, [M]>|, ``k`` the divisibility datum of the first Pontryagin
class (p1 = 2ky when spin, p1 + x^2 = 2ky otherwise, with y = x^2/d), ``g``
half the third Betti number and ``l`` the derived integer
(k - 2d)/12 (spin) or (k - d)/24 (non-spin).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

from .errors import ClassificationError, DomainError, UnknownNameError


@dataclass(frozen=True)
class ManifoldInvariants:
    spin: bool
    d: int
    k: int
    g: int
    l: int

    @property
    def delta(self) -> int:
        """d/2; only meaningful in the non-spin case, where d is even."""
        return self.d // 2

    def to_json(self) -> dict:
        return asdict(self)

    def label(self) -> str:
        kind = "spin" if self.spin else "non-spin"
        return f"{kind}, d={self.d}, k={self.k}, g={self.g}, l={self.l}"


def validate(spin: bool, d: int, k: int, g: int) -> ManifoldInvariants:
    if d < 0:
        raise DomainError(f"d must be nonnegative, got {d}")
    if g < 0:
        raise DomainError(f"g must be nonnegative, got {g}")
    if spin:
        if (k - 2 * d) % 12:
            raise ClassificationError("k - 2d ≡ 0 (mod 12)", f"spin invariants need 12 | k - 2d; k - 2d = {k - 2 * d}")
        return ManifoldInvariants(True, d, k, g, (k - 2 * d) // 12)
    if d == 0:
        # The non-spin construction divides by d = 2δ throughout; no meaning is assigned at d = 0.
        raise DomainError("non-spin invariants with d = 0 are not supported")
    if d % 2:
        raise ClassificationError("d ≡ 0 (mod 2)", f"non-spin invariants need d even; d = {d}")
    if (k - d) % 24:
        raise ClassificationError("k - d ≡ 0 (mod 24)", f"non-spin invariants need 24 | k - d; k - d = {k - d}")
    return ManifoldInvariants(False, d, k, g, (k - d) // 24)


def from_l(spin: bool, d: int, l: int, g: int = 0) -> ManifoldInvariants:
    """Invariants with k recovered from l: k = 2d + 12l (spin) or d + 24l."""
    k = 2 * d + 12 * l if spin else d + 24 * l
    return validate(spin, d, k, g)


@dataclass(frozen=True)
class ChernData:
    c1: int
    c2: int
    c3: int
    degree: int


def _truncated_mul(a: list[int], b: list[int]) -> list[int]:
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(4)]


def chern_data(degrees: Sequence[int]) -> ChernData:
    """Total Chern class (1+x)^(4+r) / prod(1 + d_i x), kept up to x^3."""
    if not degrees:
        raise DomainError("empty degree list")
    if any(int(x) < 1 for x in degrees):
        raise DomainError(f"degrees must be positive, got {list(degrees)}")
    degs = sorted(int(x) for x in degrees if int(x) != 1)
    r = len(degs)
    series = [math.comb(4 + r, i) for i in range(4)]
    for di in degs:
        series = _truncated_mul(series, [(-di) ** i for i in range(4)])
    return ChernData(series[1], series[2], series[3], math.prod(degs))


def ci_invariants(degrees: Sequence[int]) -> ManifoldInvariants:
    """Invariants of the complete intersection of multidegree ``degrees`` in CP^(3+r)."""
    c = chern_data(degrees)
    d = c.degree
    spin = c.c1 % 2 == 0
    p1 = c.c1 ** 2 - 2 * c.c2  # coefficient of x^2, and x^2 = d·y
    twice_k = p1 * d if spin else (p1 + 1) * d
    if twice_k % 2:
        raise ClassificationError("p1 divisible by 2y", f"odd 2k = {twice_k} for degrees {list(degrees)}")
    euler = c.c3 * d
    if (4 - euler) % 2 or euler > 4:
        raise ClassificationError("b3 = 4 - χ even and nonnegative", f"χ = {euler}")
    return validate(spin, d, twice_k // 2, (4 - euler) // 2)


_CI_NAMES = {
    "X5": (5,),
    "X24": (2, 4),
    "X33": (3, 3),
    "X223": (2, 2, 3),
    "X2222": (2, 2, 2, 2),
}

NAMED_EXAMPLES = ("CP3", "X5", "X24", "X33", "X223", "X2222", "S2xS4")


def named_example(name: str) -> ManifoldInvariants:
    """Registered examples; ``S2xS4`` is the d = 0 spin reference with k = 0, g = 0."""
    if name == "CP3":
        return validate(True, 1, 2, 0)
    if name == "S2xS4":
        return validate(True, 0, 0, 0)
    if name in _CI_NAMES:
        return ci_invariants(_CI_NAMES[name])
    raise UnknownNameError(f"unknown example {name!r}; known: {', '.join(NAMED_EXAMPLES)}")
