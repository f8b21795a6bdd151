import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mcg6.errors import CoordinateError, DimensionError, DomainError
from mcg6.exactlin import IntMatrix
from mcg6.symplectic import (
    ExtElement,
    QuadraticRefinement,
    SpPi3Element,
    SymplecticMatrix,
    all_refinements,
    center_sp_pi3,
    cocycle,
    ext_multiply,
    generator_vectors,
    image_membership,
    is_symplectic,
    mod2_pairing,
    sp_pi3_multiply,
    standard_form,
    standard_generators,
    transvection,
)


def random_word(g: int, length: int, rng: random.Random) -> SymplecticMatrix:
    gens = standard_generators(g)
    gens = gens + [x.inverse() for x in gens]
    A = SymplecticMatrix.identity(g)
    for _ in range(length):
        A = A @ rng.choice(gens)
    return A


def row_times(v, A: SymplecticMatrix):
    M = A.entries
    return tuple(sum(v[i] * M[i, j] for i in range(M.rows)) % 2 for j in range(M.cols))


# -- matrices ------------------------------------------------------------------------

def test_standard_form():
    J = standard_form(2)
    assert J.to_rows() == [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert is_symplectic(2, J)


def test_non_symplectic_rejected():
    with pytest.raises(DomainError):
        SymplecticMatrix.of([[2, 0], [0, 1]])
    with pytest.raises(DimensionError):
        is_symplectic(1, IntMatrix.identity(3))
    with pytest.raises(DimensionError):
        SymplecticMatrix.of(IntMatrix.identity(3))


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_generator_count(g):
    assert len(standard_generators(g)) == (3 * g - 1 if g else 0)
    assert len({name for name, _ in generator_vectors(g)}) == len(generator_vectors(g))


def test_transvection_formula():
    T = transvection(1, (1, 0))
    assert T.to_rows() == [[1, 1], [0, 1]]
    x = (3, 5)
    v = (1, 0)
    omega = sum(v[i] * standard_form(1)[i, j] * x[j] for i in range(2) for j in range(2))
    Tx = [sum(T.entries[i, j] * x[j] for j in range(2)) for i in range(2)]
    assert Tx == [x[i] + omega * v[i] for i in range(2)]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32))
def test_inverse(g, seed):
    A = random_word(g, 12, random.Random(seed))
    assert (A @ A.inverse()).entries == IntMatrix.identity(2 * g)


def census(g: int, p: int) -> int:
    """Order of the subgroup of GL(2g, F_p) generated by the reduced generators."""
    n = 2 * g
    gens = [tuple(x % p for x in G.entries.entries) for G in standard_generators(g)]

    def mul(a, b):
        return tuple(
            sum(a[i * n + k] * b[k * n + j] for k in range(n)) % p for i in range(n) for j in range(n)
        )

    ident = tuple(int(i == j) for i in range(n) for j in range(n))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = mul(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("g,p,order", [(1, 2, 6), (1, 3, 24), (1, 5, 120), (2, 2, 720), (2, 3, 51840)])
def test_generators_reach_full_finite_symplectic_group(g, p, order):
    # |Sp(2g, F_p)| = p^(g^2) prod (p^(2i) - 1)
    want = p ** (g * g)
    for i in range(1, g + 1):
        want *= p ** (2 * i) - 1
    assert want == order
    assert census(g, p) == order


# -- quadratic refinements and the cocycle ----------------------------------------------

@pytest.mark.parametrize("g", [1, 2, 3])
def test_refinement_count_and_law(g):
    refs = all_refinements(g)
    assert len(refs) == 2 ** (2 * g)
    assert len({r.bits() for r in refs}) == len(refs)
    vecs = list(itertools.product((0, 1), repeat=2 * g))
    for psi in refs[:: max(1, len(refs) // 8)]:
        for x in vecs:
            for y in vecs:
                s = [(a + b) % 2 for a, b in zip(x, y)]
                assert psi(s) == (psi(x) + psi(y) + mod2_pairing(g, x, y)) % 2


def test_from_bits():
    assert QuadraticRefinement.from_bits("0110").linear_part == (0, 1, 1, 0)
    with pytest.raises(DomainError):
        QuadraticRefinement.from_bits("012")
    with pytest.raises(DomainError):
        QuadraticRefinement.from_bits("101")


def test_cocycle_of_basic_transvection():
    # x -> Ax with A = [[1, 1], [0, 1]]: ψ(A e_2) - ψ(e_2) = ψ(1, 1) = 1
    A = SymplecticMatrix.of([[1, 1], [0, 1]])
    assert cocycle(QuadraticRefinement.base(1), A) == (0, 1)
    assert cocycle(QuadraticRefinement.base(1), SymplecticMatrix.identity(1)) == (0, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32))
def test_cocycle_identity(g, seed):
    rng = random.Random(seed)
    A, B = random_word(g, rng.randrange(0, 10), rng), random_word(g, rng.randrange(0, 10), rng)
    psi = QuadraticRefinement(g, tuple(rng.randrange(2) for _ in range(2 * g)))
    lhs = cocycle(psi, A @ B)
    rhs = tuple((x + y) % 2 for x, y in zip(row_times(cocycle(psi, A), B), cocycle(psi, B)))
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32))
def test_cocycle_linear_on_all_vectors(g, seed):
    rng = random.Random(seed)
    A = random_word(g, 8, rng)
    psi = QuadraticRefinement(g, tuple(rng.randrange(2) for _ in range(2 * g)))
    c = cocycle(psi, A)
    for x in itertools.product((0, 1), repeat=2 * g):
        Ax = [sum(A.entries[i, j] * x[j] for j in range(2 * g)) % 2 for i in range(2 * g)]
        assert (psi(Ax) - psi(x)) % 2 == sum(a * b for a, b in zip(c, x)) % 2


def test_cocycle_dimension_mismatch():
    with pytest.raises(DimensionError):
        cocycle(QuadraticRefinement.base(2), SymplecticMatrix.identity(1))


# -- extension group and image subgroup ----------------------------------------------------

def random_ext(g, slope, rng, psi=None):
    A = random_word(g, rng.randrange(0, 6), rng)
    a = tuple(rng.randrange(-9, 10) for _ in range(2 * g))
    if psi is None:
        b = tuple(rng.randrange(-9, 10) for _ in range(2 * g))
    else:
        b = tuple(2 * rng.randrange(-5, 5) + s for s in cocycle(psi, A))
    return ExtElement(g, a, b, A, slope)


@pytest.mark.parametrize("slope", [(5, -50), (2, 6), (0, 4)])
def test_ext_group_laws(slope):
    rng = random.Random(1)
    for _ in range(30):
        x, y, z = (random_ext(2, slope, rng) for _ in range(3))
        assert ext_multiply(ext_multiply(x, y), z) == ext_multiply(x, ext_multiply(y, z))
        e = ExtElement.identity(2, slope)
        assert ext_multiply(x, e) == x == ext_multiply(e, x)
        assert ext_multiply(x, x.inverse()) == e


def test_ext_normalization():
    A = SymplecticMatrix.identity(1)
    # (5u, -50u) lies in Δ, so shifting a by 5 and b by -50 is the same coset
    assert ExtElement(1, (6, 0), (0, 0), A, (5, -50)) == ExtElement(1, (1, 0), (50, 0), A, (5, -50))
    with pytest.raises(DomainError):
        ext_multiply(ExtElement.identity(1, (5, -50)), ExtElement.identity(1, (2, 6)))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_image_subgroup_closure(g):
    rng = random.Random(g)
    slope = (5, -50)
    for _ in range(60):
        psi = QuadraticRefinement(g, tuple(rng.randrange(2) for _ in range(2 * g)))
        x, y = random_ext(g, slope, rng, psi), random_ext(g, slope, rng, psi)
        assert image_membership(x, psi) and image_membership(y, psi)
        assert image_membership(ext_multiply(x, y), psi)
        assert image_membership(x.inverse(), psi)


def test_image_membership_example():
    A = SymplecticMatrix.of([[1, 1], [0, 1]])
    psi = QuadraticRefinement.base(1)
    assert not image_membership(ExtElement(1, (0, 0), (0, 0), A, (1, 2)), psi)
    assert image_membership(ExtElement(1, (0, 0), (0, 1), A, (1, 2)), psi)
    with pytest.raises(CoordinateError):
        image_membership(ExtElement(1, (0, 0), (0, 1), A, (1, 3)), psi)


# -- Sp(π3) ---------------------------------------------------------------------------------

def test_sp_pi3_laws():
    rng = random.Random(4)
    for d in (1, 2, 5):
        for _ in range(20):
            xs = [
                SpPi3Element(2, d, tuple(rng.randrange(d) for _ in range(4)), random_word(2, 5, rng))
                for _ in range(3)
            ]
            x, y, z = xs
            assert sp_pi3_multiply(sp_pi3_multiply(x, y), z) == sp_pi3_multiply(x, sp_pi3_multiply(y, z))
            assert sp_pi3_multiply(x, x.inverse()) == SpPi3Element.identity(2, d)
    # d = 1: the translation part vanishes
    assert SpPi3Element(1, 1, (3, 4), SymplecticMatrix.identity(1)).t == (0, 0)


def brute_center(g: int, d: int) -> int:
    """Number of central elements; they must map to ±I in Sp(2g, Z)."""
    gens = [SpPi3Element(g, d, (0,) * (2 * g), A) for A in standard_generators(g)]
    gens += [
        SpPi3Element(g, d, tuple(int(i == j) for j in range(2 * g)), SymplecticMatrix.identity(g))
        for i in range(2 * g)
    ]
    minus = SymplecticMatrix.of(IntMatrix.from_rows([[-int(i == j) for j in range(2 * g)] for i in range(2 * g)]))
    count = 0
    for A in (SymplecticMatrix.identity(g), minus):
        for t in itertools.product(range(d), repeat=2 * g):
            z = SpPi3Element(g, d, t, A)
            if all(sp_pi3_multiply(z, s) == sp_pi3_multiply(s, z) for s in gens):
                count += 1
    return count


@pytest.mark.parametrize("g,d", [(1, 1), (1, 3), (1, 5), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_center_matches_brute_force(g, d):
    label = center_sp_pi3(g, d)
    assert label in ("trivial", "±I")
    assert brute_center(g, d) == (1 if label == "trivial" else 2)


def test_center_undetermined_and_domain():
    assert center_sp_pi3(1, 2) == "undetermined"
    assert center_sp_pi3(2, 0) == "undetermined"
    with pytest.raises(DomainError):
        center_sp_pi3(0, 3)
