"""Expected closed-form tables and their regeneration from the lattices.

The expected tables are fixture data (``data/*.json``); this module only knows
how to index them by residue class and how to compare them with computed
kernels over a grid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .exactlin import FinAbGroup
from .kslattice import kernel_group
from .manifold import from_l


@lru_cache(maxsize=None)
def load_fixture(name: str) -> dict:
    return json.loads(resources.files("mcg6").joinpath("data", name).read_text(encoding="utf-8"))


def residue_column(n: int) -> int:
    """Column index for the classes odd, 2 mod 4, 4 mod 8, 0 mod 8."""
    if n % 2:
        return 0
    if n % 4 == 2:
        return 1
    return 2 if n % 8 == 4 else 3


def parity_row(l: int) -> str:
    return "l odd" if l % 2 else "l even"


# -- spin ----------------------------------------------------------------------

def _spin_ab(l: int) -> tuple[int, int]:
    tab = load_fixture("kernel_tables.json")["spin"]
    m = 12 * l  # k - 2d
    if m % 24:
        return tab["a"]["k-2d ≢ 0 mod 24"], tab["b"]["k-2d ≢ 0 mod 24"]
    a_key = "k-2d ≡ 0 mod 48" if m % 48 == 0 else "k-2d ≡ 24 mod 48"
    return tab["a"][a_key], tab["b"]["k-2d ≡ 0 mod 24"]


def spin_cell(d: int, l: int) -> str:
    tab = load_fixture("kernel_tables.json")["spin"]
    return f"{tab['columns'][residue_column(d)]}, {parity_row(l)}"


def spin_two_part(d: int, l: int) -> FinAbGroup:
    tab = load_fixture("kernel_tables.json")["spin"]
    symbols = tab["two_part"][tab["columns"][residue_column(d)]][parity_row(l)]
    a, b = _spin_ab(l)
    return FinAbGroup.from_orders([{"a": a, "b": b}.get(s) or int(s) for s in symbols])


def spin_closed_form(d: int, l: int) -> FinAbGroup:
    orders = list(spin_two_part(d, l).torsion)
    if d % 3 == 0:
        orders.append(3)
    if (d - l) % 7 == 0:
        orders.append(7)
    return FinAbGroup.from_orders(orders)


# -- non-spin --------------------------------------------------------------------

SEVEN_RULES = {
    "d ≡ l ≡ 0 mod 7": lambda d, l: d % 7 == 0 and l % 7 == 0,
    "d - l ≡ 0 mod 7": lambda d, l: (d - l) % 7 == 0,
}


def nonspin_cell(delta: int, l: int) -> str:
    tab = load_fixture("kernel_tables.json")["nonspin"]
    return f"{tab['columns'][residue_column(delta)]}, {parity_row(l)}"


def nonspin_two_exponent(delta: int, l: int) -> int:
    tab = load_fixture("kernel_tables.json")["nonspin"]
    return tab["two_exponent"][tab["columns"][residue_column(delta)]][parity_row(l)]


def nonspin_closed_form_order(delta: int, l: int, seven_rule: str | None = None) -> int:
    """2^a 3^b 7^c; ``seven_rule`` defaults to the condition stored in the fixture."""
    d = 2 * delta
    rule = seven_rule or load_fixture("kernel_tables.json")["nonspin"]["seven"]
    order = 2 ** nonspin_two_exponent(delta, l)
    if d % 3 == 0:
        order *= 3
    if SEVEN_RULES[rule](d, l):
        order *= 7
    return order


# -- grid comparison ---------------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    cell: str
    d: int
    l: int
    expected: str
    computed: str

    def __str__(self) -> str:
        return f"cell ({self.cell}) at d={self.d}, l={self.l}: expected {self.expected}, computed {self.computed}"


SPIN_D_RANGE = range(0, 24)
NONSPIN_DELTA_RANGE = range(1, 25)
L_RANGE = range(0, 28)


def check_spin_table(d_range=SPIN_D_RANGE, l_range=L_RANGE) -> list[Mismatch]:
    out = []
    for d in d_range:
        for l in l_range:
            got = kernel_group(from_l(True, d, l))
            want = spin_closed_form(d, l)
            if got != want:
                out.append(Mismatch(spin_cell(d, l), d, l, str(want), str(got)))
    return out


def check_nonspin_table(delta_range=NONSPIN_DELTA_RANGE, l_range=L_RANGE, seven_rule: str | None = None) -> list[Mismatch]:
    out = []
    for t in delta_range:
        for l in l_range:
            got = kernel_group(from_l(False, 2 * t, l)).order()
            want = nonspin_closed_form_order(t, l, seven_rule)
            if got != want:
                out.append(Mismatch(nonspin_cell(t, l), 2 * t, l, f"order {want}", f"order {got}"))
    return out


def _markdown(header: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def spin_table_markdown(d_range=SPIN_D_RANGE, l_range=L_RANGE) -> str:
    """2-primary parts computed over the grid, in the closed-form table layout.

    A cell lists every distinct group met in its residue class (the a, b entries
    vary with l mod 4 inside a parity row).
    """
    tab = load_fixture("kernel_tables.json")["spin"]
    seen: dict[tuple[int, str], list[str]] = {}
    for d in d_range:
        for l in l_range:
            g = str(kernel_group(from_l(True, d, l)).p_part(2))
            cell = seen.setdefault((residue_column(d), parity_row(l)), [])
            if g not in cell:
                cell.append(g)
    rows = [[r] + [" / ".join(seen.get((c, r), ["-"])) for c in range(4)] for r in tab["rows"]]
    return _markdown(["2-primary part"] + tab["columns"], rows)


def nonspin_table_markdown(delta_range=NONSPIN_DELTA_RANGE, l_range=L_RANGE) -> str:
    """Exponent a of the 2-part of the non-spin kernel, computed over the grid."""
    tab = load_fixture("kernel_tables.json")["nonspin"]
    seen: dict[tuple[int, str], list[str]] = {}
    for t in delta_range:
        for l in l_range:
            order = kernel_group(from_l(False, 2 * t, l)).order()
            a = 0
            while order % 2 == 0:
                order //= 2
                a += 1
            cell = seen.setdefault((residue_column(t), parity_row(l)), [])
            if str(a) not in cell:
                cell.append(str(a))
    rows = [[r] + [" / ".join(seen.get((c, r), ["-"])) for c in range(4)] for r in tab["rows"]]
    return _markdown(["a"] + tab["columns"], rows)
