import itertools

import pytest

from ringcodes.constacyclic import (
    ConstacyclicCode,
    counts,
    enumerate_all,
    from_divisor,
    poly_to_vector,
    single_generator,
    twisted_shift,
    vector_to_poly,
)
from ringcodes.errors import (
    BudgetExceededError,
    GcdViolationError,
    NotCoprimeError,
    NotDivisorError,
)
from ringcodes.linear import LinearCode
from ringcodes.polys import RingPoly, binomial_xn_minus, factor_xn_minus_lambda
from ringcodes.rings import make_ring

Z4 = make_ring(2, 2)
Z9 = make_ring(3, 2)
F2 = make_ring(2, 1)
F3 = make_ring(3, 1)


def P(ring, *ints):
    return RingPoly.from_int_coeffs(ring, ints)


def brute_ideal(ring, n, lam, gens):
    """Independent oracle: the module span of all twisted shifts of the
    generators (an ideal is exactly that); returns the codeword set."""
    lam = ring.elem(lam)
    shift_gens = []
    for g in gens:
        w = tuple(g)
        for _ in range(n):
            shift_gens.append(w)
            w = tuple(twisted_shift(list(w), lam))
    words = {tuple([ring.zero] * n)}
    scalars = list(ring.elements())
    for g in shift_gens:
        words = {
            tuple(a + s * b for a, b in zip(w, g))
            for w in words
            for s in scalars
        }
    return words


def test_from_divisor_examples():
    c = from_divisor(P(Z4, 1, 1, 1), 3, 1, Z4)
    assert c.rank == 1
    words = set(c.linear.codewords())
    assert words == {tuple(Z4.elem(t) for _ in range(3)) for t in range(4)}
    assert c.linear.min_distance() == 3
    full = from_divisor(RingPoly.one(Z4), 3, 1, Z4)
    assert full.linear == LinearCode.full(Z4, 3)
    zero = from_divisor(binomial_xn_minus(Z4, 3, 1), 3, 1, Z4)
    assert zero.cardinality == 1
    with pytest.raises(NotDivisorError):
        from_divisor(P(Z4, 1, 1), 3, 1, Z4)  # x+1 does not divide x^3-1 over Z_4


def test_linear_view_matches_ideal_closure():
    for ring, n, lam in [(Z4, 3, 1), (Z9, 2, -1), (Z9, 4, 1), (make_ring(2, 3), 5, 1)]:
        fs = factor_xn_minus_lambda(n, lam, ring)
        for exps in itertools.product(range(ring.e + 1), repeat=fs.b):
            code = ConstacyclicCode(fs, exps)
            if code.cardinality > 512:
                continue
            gens = [
                poly_to_vector(g * ring.gamma_power(j), n)
                for j, g in code.generator_family()
                if g.degree < n
            ]
            oracle = brute_ideal(ring, n, lam, gens)
            assert set(code.linear.codewords()) == oracle
            assert code.cardinality == len(oracle)


def test_shift_closure():
    for ring, n, lam in [(Z4, 3, 1), (Z9, 2, -1), (Z9, 4, -1)]:
        for code in enumerate_all(n, lam, ring):
            assert code.is_shift_closed()
            lin = code.linear
            if lin.cardinality <= 512:
                for w in lin.codewords():
                    assert lin.contains(twisted_shift(list(w), code.lam))


def test_enumerate_all_examples():
    codes = enumerate_all(3, 1, Z4)
    assert len(codes) == 9  # (e+1)^b = 3^2
    codes = enumerate_all(2, -1, Z9)
    assert len(codes) == 3
    codes = enumerate_all(1, 1, F3)
    assert len(codes) == 2
    with pytest.raises(BudgetExceededError):
        enumerate_all(3, 1, Z4, budget=4)


def test_counts_examples():
    assert counts(3, 1, Z4) == (9, 4)
    assert counts(2, -1, Z9) == (3, 2)
    assert counts(5, 1, F2) == (4, 4)  # e = 1: total = free = 2^b
    with pytest.raises(GcdViolationError):
        counts(6, 1, Z4)


def test_free_codes_are_divisor_generated():
    for ring, n, lam in [(Z4, 3, 1), (Z9, 4, 1), (Z9, 2, -1)]:
        codes = enumerate_all(n, lam, ring)
        free = [c for c in codes if c.is_free]
        assert len(free) == 2 ** codes[0].fs.b
        for c in free:
            f = c.divisor()
            assert c.linear.rank == n - int(f.degree) if not f.is_zero else True
            rebuilt = from_divisor(f, n, lam, ring)
            assert rebuilt == c


def test_single_generator_examples():
    # n = 3 over Z_4: family (x^2+x+1, x+3, 1) -> |C| = 4, the rank-1 code
    fs = factor_xn_minus_lambda(3, 1, Z4)
    fam = [P(Z4, 1, 1, 1), P(Z4, 3, 1), RingPoly.one(Z4)]
    gen, card, code = single_generator(fam, 3, 1, Z4)
    assert card == 4
    assert code == from_divisor(P(Z4, 1, 1, 1), 3, 1, Z4)
    # family F_0 = x^n - lambda: zero code
    gen, card, code = single_generator(
        [binomial_xn_minus(Z4, 3, 1), RingPoly.one(Z4), RingPoly.one(Z4)], 3, 1, Z4
    )
    assert card == 1 and gen.is_zero
    # family F_1 = x^n - lambda: full space
    gen, card, code = single_generator(
        [RingPoly.one(Z4), binomial_xn_minus(Z4, 3, 1), RingPoly.one(Z4)], 3, 1, Z4
    )
    assert card == 4 ** 3
    with pytest.raises(NotCoprimeError):
        single_generator([P(Z4, 1, 1, 1), P(Z4, 1, 1, 1), RingPoly.one(Z4)], 3, 1, Z4)


def test_single_generator_covers_all_ideals():
    # every exponent vector arises from a family; products check out
    fs = factor_xn_minus_lambda(3, 1, Z9)
    e = Z9.e
    for exps in itertools.product(range(e + 1), repeat=fs.b):
        fam = []
        for j in range(e + 1):
            F = RingPoly.one(Z9)
            for m, pi in zip(exps, fs.factors):
                owner = 0 if m == e else m + 1
                if owner == j:
                    F = F * pi
            fam.append(F)
        gen, card, code = single_generator(fam, 3, 1, Z9)
        assert code.exponents == exps
        assert card == code.cardinality


def test_dual_examples():
    # cyclic dual is cyclic; negacyclic dual is negacyclic
    c = from_divisor(P(Z4, 1, 1, 1), 3, 1, Z4)
    d = c.dual()
    assert d.lam == Z4.one
    assert d.rank == 2
    assert d.linear == c.linear.dual()
    assert d.dual() == c
    neg = enumerate_all(2, -1, Z9)[1]
    nd = neg.dual()
    assert nd.lam == Z9.elem(-1)
    assert nd.dual() == neg


def test_dual_twist_inversion_grid():
    for ring, n, lam in [(Z4, 3, 1), (Z9, 2, -1), (Z9, 4, 1)]:
        for code in enumerate_all(n, lam, ring):
            d = code.dual()
            assert d.lam == ring.elem(lam).inverse()
            assert d.linear == code.linear.dual()
            assert d.dual() == code


def test_projection_examples():
    c = from_divisor(P(F2, 1, 1, 1), 3, 1, F2).lift(2)
    assert c.ring == Z4
    assert str(c.divisor()) == "x^2+x+1"
    assert c.linear.min_distance() == 3
    assert c.project(1).linear.min_distance() == 3
    # projections of all Z_4 cyclic codes of length 3 land in the 4 F_2 codes
    field_codes = {c.linear for c in enumerate_all(3, 1, F2)}
    for code in enumerate_all(3, 1, Z4):
        assert code.project(1).linear in field_codes
    assert c.map_precision(2) is c  # identity at equal precision


def test_lift_project_roundtrip_and_type():
    for code in enumerate_all(3, 1, Z4):
        up = code.lift(3)
        assert up.project(2) == code
        assert up.cardinality >= code.cardinality
    # free MDS input lifts with equal distance
    base = from_divisor(P(F3, 2, 1), 4, -1, F3)  # negacyclic [4, 3] over F_3
    assert base.linear.classify().is_mds
    up = base.lift(2)
    assert up.linear.classify().is_mds
    assert up.linear.min_distance() == base.linear.min_distance()


def test_dual_projection_commutes_for_free_codes():
    # dual of projection equals projection of dual on free codes
    for code in enumerate_all(3, 1, Z4):
        if not code.is_free:
            continue
        lifted = code.lift(3)
        assert lifted.dual().project(2).linear == lifted.project(2).dual().linear


def test_ideal_count_small_grid():
    for p, e in [(2, 2), (3, 2), (2, 3)]:
        ring = make_ring(p, e)
        for n in range(1, 8):
            if n % p == 0:
                continue
            for lam in (1, -1):
                fs = factor_xn_minus_lambda(n, lam, ring)
                total = (e + 1) ** fs.b
                if total > 2048:
                    continue
                codes = enumerate_all(n, lam, ring)
                assert len(codes) == total
                assert len({c.linear for c in codes}) == total
