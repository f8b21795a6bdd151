"""Bookkeeping on an E2 page with declared d2 effects, giving order bounds.

Differentials are not computed; each fixture declares which d2 maps are zero,
isomorphisms or surjections, and this module only tracks what survives to E3
along an antidiagonal. Higher differentials and extensions are not resolved,
so the product of surviving orders is an upper bound, upgraded to an exact
group only when the surviving pieces have pairwise coprime orders.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

from .errors import FixtureError
from .exactlin import INFINITE, FinAbGroup

EFFECTS = ("zero", "iso", "surjective")
Cell = tuple[int, int]


@dataclass(frozen=True)
class E2Page:
    entries: dict
    coefficients: tuple[FinAbGroup, ...] = ()
    base_homology: tuple[FinAbGroup, ...] = ()
    citations: dict = field(default_factory=dict)

    def get(self, cell: Cell) -> FinAbGroup | None:
        return self.entries.get(cell)


@dataclass(frozen=True)
class D2Spec:
    kind: str
    actions: tuple[tuple[Cell, Cell, str], ...]

    def validate(self, page: E2Page):
        for src, dst, effect in self.actions:
            if effect not in EFFECTS:
                raise FixtureError(f"unknown d2 effect {effect!r}")
            if dst != (src[0] - 2, src[1] + 1):
                raise FixtureError(f"d2 from {src} must land in {(src[0] - 2, src[1] + 1)}, not {dst}")
            for c in (src, dst):
                if c not in page.entries:
                    raise FixtureError(f"d2 effect references absent cell {c}")


def tensor(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    orders = [0] * (A.free_rank * B.free_rank)
    orders += list(A.torsion) * B.free_rank + list(B.torsion) * A.free_rank
    orders += [math.gcd(a, b) for a in A.torsion for b in B.torsion]
    return FinAbGroup.from_orders(orders)


def tor(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    return FinAbGroup.from_orders([math.gcd(a, b) for a in A.torsion for b in B.torsion])


def uct_cell(base_homology, coefficients, p: int, q: int) -> FinAbGroup:
    """H_p(X; G_q) = H_p ⊗ G_q ⊕ Tor(H_{p-1}, G_q)."""
    G = coefficients[q]
    out = tensor(base_homology[p], G)
    if p >= 1:
        out = out + tor(base_homology[p - 1], G)
    return out


def _order(G: FinAbGroup | None):
    return INFINITE if G is None or G.free_rank else G.order()


def _is_squarefree(n: int) -> bool:
    return all(n % (p * p) for p in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class OrderBound:
    bound: int | float
    exact: FinAbGroup | None
    survivors: dict

    def to_json(self) -> dict:
        return {
            "bound": "infinite" if self.bound == INFINITE else self.bound,
            "exact": None if self.exact is None else self.exact.to_json(),
            "survivors": {f"{p},{q}": (None if g is None else str(g)) for (p, q), g in sorted(self.survivors.items())},
        }


def e3_cell(page: E2Page, d2: D2Spec, cell: Cell) -> tuple[int | float, FinAbGroup | None]:
    """Order and, when forced, isomorphism type of the E3 term at ``cell``."""
    G = page.entries[cell]
    order = _order(G)
    touched = False
    for src, dst, effect in d2.actions:
        if effect == "zero":
            continue
        if src == cell:  # outgoing: keep only the kernel
            touched = True
            image = _order(page.entries[dst]) if effect == "surjective" else order
            if effect == "iso" and _order(page.entries[dst]) != order:
                raise FixtureError(f"d2 {src} -> {dst} declared iso between groups of different order")
            if image == INFINITE:
                if order != INFINITE or effect == "iso":
                    return 1, FinAbGroup.trivial()
                raise FixtureError(f"surjection {src} -> {dst} onto an infinite group is not tracked")
            if order != INFINITE:
                if order % image:
                    raise FixtureError(f"d2 {src} -> {dst} cannot be surjective: {order} not divisible by {image}")
                order //= image
        if dst == cell:  # incoming: the target is exhausted
            touched = True
            return 1, FinAbGroup.trivial()
    if not touched:
        return order, G
    if order == INFINITE:
        return order, None
    if order == 1:
        return 1, FinAbGroup.trivial()
    return order, (FinAbGroup.cyclic(order) if _is_squarefree(order) else None)


def order_bound(page: E2Page, d2: D2Spec, total_degree: int) -> OrderBound:
    d2.validate(page)
    survivors = {}
    bound: int | float = 1
    for cell in sorted(page.entries):
        if sum(cell) != total_degree:
            continue
        order, group = e3_cell(page, d2, cell)
        if order == 1:
            continue
        survivors[cell] = group
        bound = INFINITE if order == INFINITE or bound == INFINITE else bound * order
    exact = None
    if bound != INFINITE:
        groups = list(survivors.values())
        orders = [g.order() if g is not None else None for g in groups]
        if all(o is not None for o in orders) and all(
            math.gcd(a, b) == 1 for i, a in enumerate(orders) for b in orders[i + 1:]
        ):
            exact = FinAbGroup.trivial()
            for g in groups:
                exact = exact + g
    return OrderBound(bound, exact, survivors)


# -- fixtures ----------------------------------------------------------------------

def _group_from_json(obj) -> FinAbGroup:
    return FinAbGroup.from_orders(obj.get("group", []), obj.get("rank", 0))


def load_fixture_json(data: dict) -> tuple[E2Page, D2Spec]:
    try:
        entries = {}
        for c in data["cells"]:
            cell = (int(c["p"]), int(c["q"]))
            if cell in entries:
                raise FixtureError(f"duplicate cell {cell}")
            entries[cell] = _group_from_json(c)
        coeffs = tuple(_group_from_json(g) for g in data.get("coefficients", []))
        base = tuple(_group_from_json(g) for g in data.get("base_homology", []))
        actions = tuple((tuple(s), tuple(t), e) for s, t, e in data.get("effects", []))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FixtureError):
            raise
        raise FixtureError(f"malformed fixture: {exc}") from None
    page = E2Page(entries, coeffs, base, data.get("citations", {}))
    spec = D2Spec(data.get("kind", "custom"), actions)
    spec.validate(page)
    return page, spec


def builtin_fixture(kind: str) -> tuple[E2Page, D2Spec]:
    if kind not in ("untwisted", "twisted"):
        raise FixtureError(f"unknown fixture kind {kind!r}")
    text = resources.files("mcg6").joinpath("data", f"ahss_{kind}.json").read_text(encoding="utf-8")
    return load_fixture_json(json.loads(text))


def page_matches_uct(page: E2Page) -> list[Cell]:
    """Cells whose entry differs from the universal-coefficient assembly."""
    bad = []
    for (p, q), G in page.entries.items():
        if p < len(page.base_homology) and q < len(page.coefficients):
            if uct_cell(page.base_homology, page.coefficients, p, q) != G:
                bad.append((p, q))
        else:
            bad.append((p, q))
    return sorted(bad)
