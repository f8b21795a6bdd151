"""Assembly of the structure report for the mapping class group.

Pulls together the finite kernel, center, abelianization, splitting data, the
presentation of the subgroup acting trivially on π3, and the Dehn twist
generator inventory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exactlin import FinAbGroup, IntMatrix, element_order, lattice_quotient
from .kslattice import (
    DehnTwistParam,
    dehn_twist_invariants,
    kernel_group,
    kernel_lattice,
    local_diffeo_invariants,
)
from .manifold import ManifoldInvariants
from .tables import load_fixture

SCHEMA = "mcg6/1"

CITED_FACTS = {
    "residually_finite_mod_center": "cited: the quotient by the center is residually finite",
    "virtually_torsion_free_mod_center": "cited: the quotient by the center is virtually torsion free",
}


def center_of(inv: ManifoldInvariants) -> str:
    if inv.g == 0:
        return "whole-group"
    if inv.g >= 2 or inv.d % 2:
        return "equals-kernel"
    return "undetermined"


# -- abelianization ----------------------------------------------------------------

def symplectic_h1(g: int) -> FinAbGroup:
    """H_1(Sp(2g, Z)) for g >= 1."""
    if g == 1:
        return FinAbGroup.cyclic(12)
    if g == 2:
        return FinAbGroup.cyclic(2)
    return FinAbGroup.trivial()


def torelli_coefficients(inv: ManifoldInvariants) -> FinAbGroup:
    """A = Z^2 / <(d, k/2)>, so that (H x H)/Δ_{d,k/2} = H ⊗ A."""
    return lattice_quotient(2, IntMatrix.from_columns([(inv.d, inv.k // 2)], 2))


def torelli_abelianization(inv: ManifoldInvariants) -> FinAbGroup:
    """(Z^2g x Z^2g)/Δ_{d,k/2}, plus Z/2 when spin with d even."""
    A = torelli_coefficients(inv)
    total = FinAbGroup.trivial()
    for _ in range(2 * inv.g):
        total = total + A
    if inv.spin and inv.d % 2 == 0:
        total = total + FinAbGroup.cyclic(2)
    return total


def torelli_abelianization_direct(inv: ManifoldInvariants) -> FinAbGroup:
    """Same group by a Smith form of the 4g x 2g generator matrix of Δ (small g only)."""
    n = 2 * inv.g
    cols = []
    for i in range(n):
        c = [0] * (2 * n)
        c[i], c[n + i] = inv.d, inv.k // 2
        cols.append(c)
    G = lattice_quotient(2 * n, IntMatrix.from_columns(cols, 2 * n)) if n else FinAbGroup.trivial()
    if inv.spin and inv.d % 2 == 0:
        G = G + FinAbGroup.cyclic(2)
    return G


def coinvariants_standard_tensor(g: int, A: FinAbGroup) -> FinAbGroup:
    """(Z^2g ⊗ A) coinvariants under Sp(2g, Z): A/2A for g = 1, zero for g >= 2."""
    if g >= 2:
        return FinAbGroup.trivial()
    orders = [2] * A.free_rank + [2 for t in A.torsion if t % 2 == 0]
    return FinAbGroup.from_orders(orders)


def e2_01(inv: ManifoldInvariants) -> FinAbGroup:
    """Coinvariants of the Torelli abelianization under Sp(2g, Z)."""
    G = coinvariants_standard_tensor(inv.g, torelli_coefficients(inv))
    if inv.spin and inv.d % 2 == 0:
        G = G + FinAbGroup.cyclic(2)  # trivial module, survives coinvariants
    return G


def abelianization(inv: ManifoldInvariants) -> FinAbGroup:
    """E^2_{0,1} ⊕ H_1(Sp(2g, Z)); for g = 0 the group is abelian and equals the kernel."""
    if inv.g == 0:
        return kernel_group(inv)
    return e2_01(inv) + symplectic_h1(inv.g)


def abelianization_table_cell(spin: bool, parity_param: int, g: int) -> FinAbGroup:
    """Entry of the encoded abelianization tables.

    The row is the parity of d for spin and of δ = d/2 for non-spin (d is
    always even there, so the table rows can only refer to δ).
    """
    tab = load_fixture("abelianization_tables.json")
    case = tab["spin" if spin else "nonspin"]
    row = case["rows"][parity_param % 2 == 0]
    col = tab["columns"][min(g, 3) - 1]
    return FinAbGroup.from_orders(case["cells"][row][col])


def abelianization_cells() -> list[tuple[str, ManifoldInvariants]]:
    """One representative manifold per table cell, in table order."""
    from .manifold import from_l

    reps = []
    for spin in (True, False):
        for parity in (1, 0):
            for g in (1, 2, 3):
                if spin:
                    inv = from_l(True, 3 if parity else 2, 0, g)
                    label = f"spin, d {'odd' if parity else 'even'}, g {'= ' + str(g) if g < 3 else '≥ 3'}"
                else:
                    inv = from_l(False, 2 if parity else 4, 0, g)
                    label = f"non-spin, δ {'odd' if parity else 'even'}, g {'= ' + str(g) if g < 3 else '≥ 3'}"
                reps.append((label, inv))
    return reps


def check_abelianization_tables(extra_g=(4, 5, 7)) -> list[str]:
    mismatches = []
    for label, inv in abelianization_cells():
        for g in (inv.g,) + (tuple(extra_g) if inv.g == 3 else ()):
            inv_g = ManifoldInvariants(inv.spin, inv.d, inv.k, g, inv.l)
            got = abelianization(inv_g)
            param = inv.d if inv.spin else inv.delta
            want = abelianization_table_cell(inv.spin, param, g)
            if got != want:
                mismatches.append(f"cell ({label}) at g={g}: expected {want}, computed {got}")
    return mismatches


def abelianization_table_markdown() -> str:
    """Computed abelianizations laid out like the encoded tables."""
    tab = load_fixture("abelianization_tables.json")
    cells = dict(abelianization_cells())
    out = []
    for case in ("spin", "non-spin"):
        par = "d" if case == "spin" else "δ"
        out += [case, "", "| | " + " | ".join(tab["columns"]) + " |", "|---|---|---|---|"]
        for parity in ("odd", "even"):
            row = [str(abelianization(cells[f"{case}, {par} {parity}, g {c}"])) for c in ("= 1", "= 2", "≥ 3")]
            out.append(f"| {par} {parity} | " + " | ".join(row) + " |")
        out.append("")
    return "\n".join(out)


# -- splitting and presentation -------------------------------------------------------

def splitting(inv: ManifoldInvariants) -> str:
    if inv.g == 0:
        return "n/a"
    if inv.g == 1 or (not inv.spin and inv.delta % 2 == 1):
        return "splits"
    return "non-split"


def image_description(inv: ManifoldInvariants) -> dict:
    split = splitting(inv)
    if split == "non-split":
        return {
            "text": "image is the subgroup {((a, b), A) : b ≡ s(A) mod 2} of (H x H)/Δ_{d,k} ⋊ Sp(2g, Z)",
            "index_log2": 2 * inv.g,
            "index": f"2^{2 * inv.g}",
        }
    if split == "splits":
        return {"text": "(H x H)/Δ_{d,k/2} ⋊ Sp(2g, Z)", "index_log2": 0, "index": "1"}
    return {"text": "no symplectic part (g = 0)", "index_log2": None, "index": None}


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[str, ...]
    orders: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relations": list(self.relations), "orders": dict(self.orders)}


def sm_presentation(inv: ManifoldInvariants) -> Presentation:
    g = inv.g
    es = [f"e{i}" for i in range(1, g + 1)]
    fs = [f"f{i}" for i in range(1, g + 1)]
    model = kernel_lattice(inv)
    if inv.spin:
        r = element_order(model.element(local_diffeo_invariants().values))
        p = element_order(model.element(dehn_twist_invariants("spin", DehnTwistParam(1, 0)).values))
        q = element_order(model.element(dehn_twist_invariants("spin", DehnTwistParam(0, 1)).values))
        rels = [f"[{e},{f}]=a" for e, f in zip(es, fs)]
        rels += ["all other commutators trivial", f"a^{r}=1", f"b^{p}=1", f"c^{q}=1"]
        return Presentation(("a", "b", "c", *es, *fs), tuple(rels), {"a": r, "b": p, "c": q})
    r = kernel_group(inv).order()
    rels = [f"[{e},{f}]=c^6" for e, f in zip(es, fs)]
    rels += ["all other commutators trivial", f"c^{r}=1"]
    return Presentation(("c", *es, *fs), tuple(rels), {"c": r})


def generator_inventory(inv: ManifoldInvariants) -> list[str]:
    g = inv.g
    if g == 0:
        return ["f_c", "f_0^e", "f_0^p"] if inv.spin else ["f_0^p"]
    names = ["f0"] if inv.spin and inv.d % 2 == 0 else []
    names += [f"f_{i}^e" for i in range(1, g + 1)]
    names += [f"f_{i}^p" for i in range(1, g + 1)]
    names += [f"f^{j}_e" for j in range(1, g + 1)]
    names += [f"f^{j}_p" for j in range(1, g + 1)]
    names += [f"f_{{{i},{i + 1}}}^e" for i in range(1, g)]
    names += [f"phi_{i}" for i in range(1, g + 1)]
    names += [f"phi^{i}" for i in range(1, g + 1)]
    return names


# -- report ------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    invariants: ManifoldInvariants
    kernel: FinAbGroup
    center: str
    center_group: FinAbGroup | None
    abelianization: FinAbGroup
    torelli_abelianization: FinAbGroup
    split: str
    image_description: dict
    presentation: Presentation
    generator_inventory: tuple[str, ...]
    h2_rational_rank: int | None
    residually_finite_mod_center: bool
    virtually_torsion_free_mod_center: bool

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "invariants": self.invariants.to_json(),
            "kernel": self.kernel.to_json(),
            "center": self.center,
            "center_group": None if self.center_group is None else self.center_group.to_json(),
            "abelianization": self.abelianization.to_json(),
            "torelli_abelianization": self.torelli_abelianization.to_json(),
            "split": self.split,
            "image_description": self.image_description,
            "presentation": self.presentation.to_json(),
            "generator_inventory": list(self.generator_inventory),
            "h2_rational_rank": self.h2_rational_rank,
            "residually_finite_mod_center": self.residually_finite_mod_center,
            "virtually_torsion_free_mod_center": self.virtually_torsion_free_mod_center,
            "cited": CITED_FACTS,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False, indent=2)

    def to_markdown(self) -> str:
        inv = self.invariants
        lines = [
            f"# Mapping class group ({inv.label()})",
            "",
            "## Finite kernel",
            f"K(M) = {self.kernel}",
            "",
            "## Center",
            f"{self.center}" + (f": {self.center_group}" if self.center_group is not None else ""),
            "",
            "## Extension",
            f"{self.split}; {self.image_description['text']}"
            + (f" (index {self.image_description['index']})" if self.split == "non-split" else ""),
            f"Torelli abelianization: {self.torelli_abelianization}",
            "",
            "## Generators",
            f"{len(self.generator_inventory)} Dehn twists: " + _abbrev(self.generator_inventory, ", "),
            "",
            "## Presentation of the subgroup acting trivially on π3",
            "generators: " + _abbrev(self.presentation.generators, ", "),
            "relations: " + _abbrev(self.presentation.relations, "; "),
            "",
            "## Abelianization",
            str(self.abelianization),
            "",
            "## Homology and cited properties",
            f"rank of H_2 with rational coefficients: {self.h2_rational_rank if self.h2_rational_rank is not None else 'not stated (g < 3)'}",
            f"residually finite modulo center: {self.residually_finite_mod_center} (cited)",
            f"virtually torsion free modulo center: {self.virtually_torsion_free_mod_center} (cited)",
        ]
        return "\n".join(lines) + "\n"


def _abbrev(items, sep: str, keep: int = 6) -> str:
    """Shorten long lists for human output; JSON keeps every entry."""
    items = list(items)
    if len(items) <= 3 * keep:
        return sep.join(items)
    return sep.join(items[:keep]) + f"{sep}… ({len(items) - 2 * keep} more){sep}" + sep.join(items[-keep:])


def full_report(inv: ManifoldInvariants) -> StructureReport:
    K = kernel_group(inv)
    center = center_of(inv)
    center_group = K if center in ("equals-kernel",) else (abelianization(inv) if center == "whole-group" else None)
    return StructureReport(
        invariants=inv,
        kernel=K,
        center=center,
        center_group=center_group,
        abelianization=abelianization(inv),
        torelli_abelianization=torelli_abelianization(inv),
        split=splitting(inv),
        image_description=image_description(inv),
        presentation=sm_presentation(inv),
        generator_inventory=tuple(generator_inventory(inv)),
        h2_rational_rank=2 if inv.g >= 3 else None,
        residually_finite_mod_center=True,
        virtually_torsion_free_mod_center=True,
    )
