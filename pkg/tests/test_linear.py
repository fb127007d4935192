import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ringcodes.errors import BudgetExceededError, UnsupportedError
from ringcodes.linear import CodeType, LinearCode, dot, verify_distance
from ringcodes.rings import make_ring

from conftest import random_code

Z4 = make_ring(2, 2)
Z9 = make_ring(3, 2)
Z27 = make_ring(3, 3)
F3 = make_ring(3, 1)
F3G2 = make_ring(3, 2, "fpgamma")

TETRACODE = LinearCode(F3, 4, [[1, 0, 1, 1], [0, 1, 1, 2]])


def brute_span(code):
    """Independent oracle: span by closing the generator set under + and scalars."""
    ring = code.ring
    words = {tuple(ring.zero for _ in range(code.n))}
    frontier = True
    while frontier:
        frontier = False
        for row in code.rows:
            for s in ring.elements():
                scaled = tuple(s * x for x in row)
                for w in list(words):
                    cand = tuple(a + b for a, b in zip(w, scaled))
                    if cand not in words:
                        words.add(cand)
                        frontier = True
    return words


def test_standard_form_examples():
    c = LinearCode.gamma_identity(Z9, 4, 1)  # 3*I_4 over Z_9
    perm, mat, ctype = c.standard_form()
    assert ctype.k_vector(2) == (0, 4)
    c2 = LinearCode(F3, 4, [[1, 0, 1, 1], [0, 1, 1, 2]])
    _, mat2, t2 = c2.standard_form()
    assert t2.k_vector(1) == (2,)
    assert [row[:2] for row in mat2] == [(F3.one, F3.zero), (F3.zero, F3.one)]
    c3 = LinearCode(Z9, 2, [[3, 3], [0, 3]])
    _, _, t3 = c3.standard_form()
    assert t3.k_vector(2) == (0, 2)
    with pytest.raises(ValueError):
        LinearCode(Z9, 2, []).standard_form()


def test_standard_form_preserves_code():
    rng = random.Random(11)
    for _ in range(100):
        ring = rng.choice([Z4, Z9, Z27, F3G2])
        code = random_code(ring, rng.randrange(1, 6), rng)
        perm, mat, ctype = code.standard_form()
        permuted = LinearCode(ring, code.n, [[row[p] for p in perm] for row in code.rows])
        assert LinearCode(ring, code.n, mat) == permuted
        # type is permutation invariant: shuffle columns and recompute
        shuffle = list(range(code.n))
        rng.shuffle(shuffle)
        shuffled = LinearCode(ring, code.n, [[row[p] for p in shuffle] for row in code.rows])
        assert shuffled.type == ctype


def test_invariants_examples():
    c = LinearCode.gamma_identity(Z9, 4, 1)
    card, rank, free_rank, is_free = c.invariants()
    assert (card, rank, free_rank, is_free) == (81, 4, 0, False)
    assert len(brute_span(c)) == 81  # enumerate all 81 words
    assert TETRACODE.invariants() == (9, 2, 2, True)
    assert len(brute_span(TETRACODE)) == 9
    # type 1^1 g^1 over Z_9, n = 4: |C| = 9 * 3 = 27
    c3 = LinearCode(Z9, 4, [[1, 0, 1, 2], [0, 3, 3, 0]])
    assert c3.cardinality == 27 == len(brute_span(c3))
    assert c3.type.k_vector(2) == (1, 1)


def test_cardinality_matches_bruteforce_random():
    rng = random.Random(5)
    for _ in range(60):
        ring = rng.choice([Z4, Z9, F3G2])
        code = random_code(ring, rng.randrange(1, 5), rng)
        assert code.cardinality == len(brute_span(code))


def test_enumerate_codewords():
    zero = LinearCode.zero(Z4, 3)
    assert list(zero.codewords()) == [(Z4.zero,) * 3]
    c = LinearCode(Z4, 3, [[1, 1, 1]])
    words = list(c.codewords())
    assert len(words) == 4 == len(set(words))
    assert set(words) == {tuple(Z4.elem(t) for _ in range(3)) for t in range(4)}
    words = list(TETRACODE.codewords())
    assert len(words) == 9 == len(set(words))
    span = brute_span(TETRACODE)
    assert set(words) == span
    with pytest.raises(BudgetExceededError) as ei:
        list(LinearCode.full(Z27, 6).codewords(budget=100))
    assert ei.value.cardinality == 27 ** 6


def test_enumeration_matches_span_random():
    rng = random.Random(17)
    for _ in range(40):
        ring = rng.choice([Z4, Z9, F3G2])
        code = random_code(ring, rng.randrange(1, 4), rng)
        assert set(code.codewords()) == brute_span(code)


def test_min_distance_examples():
    assert TETRACODE.min_distance() == 3
    assert LinearCode(Z4, 3, [[1, 1, 1]]).min_distance() == 3
    assert LinearCode(Z4, 2, [[2, 2]]).min_distance() == 2
    # brute-force oracle on the tetracode: min weight over 8 nonzero words
    assert min(sum(1 for x in w if not x.is_zero) for w in brute_span(TETRACODE) if any(map(bool, w))) == 3


def test_min_distance_matches_bruteforce_random():
    rng = random.Random(23)
    for _ in range(60):
        ring = rng.choice([Z4, Z9, F3G2])
        code = random_code(ring, rng.randrange(2, 5), rng)
        if code.cardinality == 1:
            continue
        oracle = min(
            sum(1 for x in w if not x.is_zero)
            for w in brute_span(code)
            if any(not x.is_zero for x in w)
        )
        assert code.min_distance() == oracle


def test_dual_examples():
    c = LinearCode.gamma_identity(Z9, 4, 1)
    assert c.dual() == c  # trivial self-dual gamma^(e/2) I_n
    assert TETRACODE.dual() == TETRACODE
    full = LinearCode.full(Z9, 3)
    assert full.dual() == LinearCode.zero(Z9, 3)
    assert LinearCode.zero(Z9, 3).dual() == full


def test_duality_product_on_corpus(corpus):
    for code in corpus:
        dual = code.dual()
        p, e, n = code.ring.p, code.ring.e, code.n
        assert code.cardinality * dual.cardinality == p ** (e * n)
        assert dual.dual() == code


def test_torsion_examples():
    c = LinearCode.gamma_identity(Z9, 4, 1)
    assert c.torsion(0) == LinearCode.zero(F3, 4)
    assert c.torsion(1) == LinearCode.full(F3, 4)
    lifted = TETRACODE.lift_to(2)
    assert lifted.torsion(0).cardinality == 9
    # free code: Tor_i = Tor_0 for all i
    for i in range(2):
        assert lifted.torsion(i) == lifted.torsion(0)
    with pytest.raises(ValueError):
        c.torsion(2)


def test_torsion_structure_on_corpus(corpus):
    for code in corpus:
        p, e = code.ring.p, code.ring.e
        kvec = code.type.k_vector(e)
        prev = None
        for i in range(e):
            tor = code.torsion(i)
            assert tor.cardinality == p ** sum(kvec[: i + 1])
            if prev is not None:
                assert prev.is_subcode_of(tor)
            prev = tor
        if code.is_self_orthogonal:
            assert code.torsion(e - 1).is_subcode_of(code.torsion(0).dual())


def test_quotient_tower(corpus):
    for code in corpus[:80]:
        e = code.ring.e
        prev = None
        for i in range(e):
            q = code.quotient_by_gamma_power(i)
            if prev is not None:
                assert prev.is_subcode_of(q)
            prev = q
        assert code.quotient_by_gamma_power(0) == code


def test_classify_examples():
    rep = TETRACODE.classify()
    assert rep.is_mds and rep.is_mdr and rep.is_self_dual and rep.is_free
    rep = LinearCode.gamma_identity(Z4, 2, 1).classify()
    assert rep.is_self_dual and not rep.is_mds and rep.d == 1
    rep = LinearCode(F3, 10, [[1] * 10]).classify()
    assert rep.is_mds and rep.d == 10


def test_mds_implies_free_on_corpus(corpus):
    for code in corpus:
        if code.cardinality == 1 or code.cardinality - 1 > 2 ** 16:
            continue
        rep = code.classify()
        if rep.is_mds:
            assert rep.is_free
            # all torsion codes coincide and are MDS over the residue field
            tors = {code.torsion(i) for i in range(code.ring.e)}
            assert len(tors) == 1
            t = tors.pop()
            if t.cardinality > 1:
                trep = t.classify()
                assert trep.is_mds


def test_selfdual_halfrank_is_free(corpus):
    # self-orthogonality plus rank n/2 alone does NOT force freeness:
    # <(3, 0)> over Z_9 is a standing counterexample.  The cardinality
    # count does force it once the code is self-dual.
    bad = LinearCode(Z9, 2, [[3, 0]])
    assert bad.is_self_orthogonal and 2 * bad.rank == bad.n and not bad.is_free
    for code in corpus:
        if code.is_self_dual and 2 * code.rank == code.n:
            assert code.is_free
            tors = {code.torsion(i) for i in range(code.ring.e)}
            assert len(tors) == 1
            assert tors.pop().is_self_dual


def test_lift_project_roundtrip():
    lifted = TETRACODE.lift_to(2)
    assert lifted.ring == Z9
    assert lifted.is_free and lifted.rank == 2
    assert lifted.min_distance() == 3
    assert lifted.classify().is_mds
    assert lifted.project_to(1) == TETRACODE
    # non-free lift keeps its type through the round trip
    c = LinearCode.gamma_identity(Z9, 4, 1)
    up = c.lift_to(3)
    assert up.ring == Z27
    assert up.project_to(2) == c
    assert up.type == c.type


def test_lift_preserves_distance_for_free_mds(corpus):
    # any free digit-padding lift of an MDS code stays MDS with the same d
    lifted = TETRACODE.lift_to(3)
    assert lifted.min_distance() == 3
    assert lifted.classify().is_mds


def test_selfdual_lift_tetracode():
    up = TETRACODE.selfdual_lift(2)
    assert up.ring == Z9
    assert up.is_self_dual
    assert all(x.is_zero for row in up.gram() for x in row)
    assert up.project_to(1) == TETRACODE
    assert up.min_distance() == 3 and up.classify().is_mds
    up3 = TETRACODE.selfdual_lift(3)
    assert up3.is_self_dual and up3.min_distance() == 3
    chained = up.selfdual_lift(3)
    assert chained.is_self_dual and chained.project_to(2) == up


def test_selfdual_lift_trivial_branch():
    c = LinearCode.gamma_identity(Z9, 4, 1)
    up = c.selfdual_lift(4)
    assert up == LinearCode.gamma_identity(make_ring(3, 4), 4, 2)
    assert up.is_self_dual


def test_selfdual_lift_rejects():
    with pytest.raises(UnsupportedError):
        LinearCode.gamma_identity(Z4, 2, 1).selfdual_lift(3)  # p = 2
    with pytest.raises(UnsupportedError):
        LinearCode.full(Z9, 3).selfdual_lift(3)  # not self-dual


def test_contains_and_membership():
    assert TETRACODE.contains([1, 0, 1, 1])
    assert TETRACODE.contains([2, 0, 2, 2])
    assert not TETRACODE.contains([1, 0, 0, 0])
    c = LinearCode(Z4, 2, [[2, 1]])
    for w in brute_span(c):
        assert c.contains(w)
    assert not c.contains([1, 0])


def test_howell_is_span_invariant():
    rng = random.Random(31)
    for _ in range(80):
        ring = rng.choice([Z4, Z9, Z27, F3G2])
        code = random_code(ring, rng.randrange(1, 6), rng)
        rows = [list(r) for r in code.rows]
        # random invertible row operations plus a redundant combination
        for _ in range(6):
            i, j = rng.randrange(len(rows)), rng.randrange(len(rows))
            if i != j:
                c = ring.from_index(rng.randrange(ring.size))
                rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
            u = ring.from_index(rng.randrange(ring.size))
            if u.is_unit:
                rows[i] = [u * x for x in rows[i]]
        rows.append([sum_elems(ring, col) for col in zip(*rows)])
        assert LinearCode(ring, code.n, rows) == code


def sum_elems(ring, xs):
    acc = ring.zero
    for x in xs:
        acc = acc + x
    return acc


def test_verify_distance_bounded_path():
    # [10, 9] parity-check code over a field too big to enumerate
    F47 = make_ring(47, 1)
    rows = [[1 if i == j else 0 for j in range(9)] + [-1] for i in range(9)]
    code = LinearCode(F47, 10, rows)
    assert code.cardinality - 1 > 2 ** 22
    witness = [1, 46] + [0] * 8
    assert verify_distance(code, 2, witness=witness)
    assert not verify_distance(code, 3, witness=witness)


def test_distance_bounds_when_over_budget():
    code = LinearCode.full(Z27, 6)
    with pytest.raises(BudgetExceededError) as ei:
        code.min_distance(budget=100)
    lo, hi = ei.value.bounds
    assert lo >= 1 and hi <= 6 and lo <= hi


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dual_orthogonality_property(data):
    ring = data.draw(st.sampled_from([Z4, Z9, F3G2]))
    n = data.draw(st.integers(1, 5))
    k = data.draw(st.integers(1, n))
    rows = [
        [ring.from_index(data.draw(st.integers(0, ring.size - 1))) for _ in range(n)]
        for _ in range(k)
    ]
    code = LinearCode(ring, n, rows)
    dual = code.dual()
    for u in code.howell:
        for v in dual.howell:
            assert dot(u, v).is_zero
