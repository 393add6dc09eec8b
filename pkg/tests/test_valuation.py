import random

import pytest

from srlab.errors import MissingSignError, UnsupportedAngleError
from srlab.field import FieldCfg, TitsField
from srlab.groups import TElem
from srlab.roots import get_system
from srlab.scalar import ExtVal, QuadExt
from srlab.valuation import (
    LatticeOrderValuation,
    PhiAssignment,
    TAdicValuation,
    ambient_system,
    check_double_reflection,
    check_embedding_hom,
    check_embedding_rho,
    check_rho_invariance,
    check_v1,
    check_v2_pair,
    check_v3,
    collect,
    commutator_factors,
    default_signs,
    embedding_word,
    m_sigma_conj,
    moufang_phi,
    nu_from_phi,
    resolve_assignment,
    solve_suzuki_word,
    word_rho,
    words_agree,
)


def hahn(char):
    return TitsField(FieldCfg(char=char, mode="hahn", m=1))


def g2():
    return ambient_system("G")


def b2():
    return ambient_system("B")


def test_commutator_trivial_for_narrow_angles():
    f = hahn(3)
    sys2 = g2()
    s = f.monomial(QuadExt(1), 1)
    t = f.monomial(QuadExt(2), 1)
    i = sys2.position_root(1).idx
    j = sys2.position_root(2).idx
    assert commutator_factors("G", sys2, i, s, j, t) == []


def test_commutator_opposite_raises():
    f = hahn(3)
    sys2 = g2()
    s = f.monomial(QuadExt(1), 1)
    i = sys2.position_root(1).idx
    with pytest.raises(UnsupportedAngleError):
        commutator_factors("G", sys2, i, s, sys2.negate_idx(i), s)


def test_hexagon_full_relation():
    """The extreme positive pair produces the four middle factors with the
    printed parameters."""
    f = hahn(3)
    sys2 = g2()
    s = f.monomial(QuadExt(1), 1)
    t = f.monomial(QuadExt(0, 1, 3), 1)
    i1 = sys2.position_root(1).idx
    i6 = sys2.position_root(6).idx
    got = collect("G", sys2, [(6, t), (1, s)])
    want = [
        (1, s),
        (2, s.theta() * t),
        (3, s * s * t.theta()),
        (4, s.theta() * t * t),
        (5, -(s * t.theta())),
        (6, t),
    ]
    assert words_agree(got, want)


def test_square_full_relation():
    f = hahn(2)
    sys4 = b2()
    s = f.monomial(QuadExt(1), 1)
    t = f.monomial(QuadExt(0, 1, 2), 1)
    got = collect("B", sys4, [(4, t), (1, s)])
    want = [
        (1, s),
        (2, s.theta() * t),
        (3, s * t.theta()),
        (4, t),
    ]
    assert words_agree(got, want)


def test_collect_merges_and_drops():
    f = hahn(3)
    sys2 = g2()
    a = f.monomial(QuadExt(0), 1)
    b = f.monomial(QuadExt(0), 2)
    assert collect("G", sys2, [(2, a), (2, b)]) == []
    m = f.monomial(QuadExt(1), 1)
    got = collect("G", sys2, [(3, m), (3, m)])
    assert len(got) == 1 and got[0][0] == 3 and got[0][1].agrees(m + m)


def test_collect_confluent_over_shuffles():
    f = hahn(3)
    sys2 = g2()
    rng = random.Random(17)
    factors = [
        (pos, f.monomial(f.unlat((rng.randint(-2, 2), rng.randint(-1, 1))), rng.randrange(1, 3)))
        for pos in (5, 2, 6, 1, 3)
    ]
    base = collect("G", sys2, factors)
    for _ in range(6):
        shuffled = factors[:]
        rng.shuffle(shuffled)
        # collecting any shuffle of commuting-prefix variants must agree
        got = collect("G", sys2, shuffled)
        alt = collect("G", sys2, got)
        assert words_agree(alt, got)
    assert words_agree(collect("G", sys2, base), base)


def test_strict_signs_raise_on_unforced():
    signs = default_signs("G", strict=True)
    f = hahn(3)
    sys2 = g2()
    s = f.monomial(QuadExt(1), 1)
    t = f.monomial(QuadExt(2), 1)
    i1 = sys2.position_root(1).idx
    i5 = sys2.position_root(5).idx
    # the printed entries cover (1,6); (1,5) has one printed factor, others default
    with pytest.raises(MissingSignError):
        for i, j in ((i1, i5), (i5, i1)):
            commutator_factors("G", sys2, i, s, j, t, signs)


def test_torus_reflection_shift():
    f = hahn(3)
    sys2 = g2()
    nu = TAdicValuation()
    phi = PhiAssignment("G", sys2, nu, twisted_class=1)
    alpha = sys2.position_root(1).idx
    u = f.monomial(QuadExt(1), 1)
    g = f.monomial(QuadExt(2), 2)
    image, gp = m_sigma_conj("G", sys2, alpha, u, alpha, g)
    assert image == sys2.negate_idx(alpha) or image == alpha
    # shift at the mirror root itself equals -2 phi(u)
    res = check_v3(phi, alpha, alpha, u, [g, f.monomial(QuadExt(-1), 1)])
    assert res.ok
    assert res.data["constant"] == str(-(phi.phi(alpha, u).finite * QuadExt(2)))


def test_double_reflection_positive_shift():
    f = hahn(3)
    sys2 = g2()
    phi = PhiAssignment("G", sys2, TAdicValuation(), twisted_class=1)
    alpha = sys2.position_root(1).idx
    u = f.monomial(QuadExt(3), 1)
    w = f.one()
    gs = [f.monomial(QuadExt(k), 1) for k in (-1, 0, 2)]
    res = check_double_reflection(phi, alpha, u, w, gs)
    assert res.ok
    assert res.data["shift"] == str(phi.phi(alpha, u).finite * QuadExt(2))


def test_v1_v2_both_cases():
    for case, char in (("B", 2), ("G", 3)):
        f = hahn(char)
        system = ambient_system(case)
        rng = random.Random(23)
        phi = PhiAssignment(case, system, TAdicValuation(), twisted_class=1)
        pairs = [
            (
                f.monomial(f.unlat((rng.randint(-3, 3), rng.randint(-1, 1))), rng.randrange(1, char)),
                f.monomial(f.unlat((rng.randint(-3, 3), rng.randint(-1, 1))), rng.randrange(1, char)),
            )
            for _ in range(30)
        ] + [(f.zero(), f.one())]
        for idx in range(system.count):
            assert check_v1(phi, idx, pairs).ok
        for i in range(system.count):
            for j in range(system.count):
                if i == j or system.angle_deg(i, j) == 180 or not system.interval(i, j):
                    continue
                assert check_v2_pair(phi, i, j, pairs[:20]).ok


def test_both_assignments_pass_containment():
    """The flip symmetry makes the two class-to-rule assignments equally
    consistent; resolution reports both as passing."""
    f = hahn(3)
    rng = random.Random(5)

    def sample_pairs(i, j):
        return [
            (
                f.monomial(f.unlat((rng.randint(-3, 3), rng.randint(-1, 1))), rng.randrange(1, 3)),
                f.monomial(f.unlat((rng.randint(-3, 3), rng.randint(-1, 1))), rng.randrange(1, 3)),
            )
            for _ in range(20)
        ]

    system = g2()
    pair_list = [
        (i, j)
        for i in range(system.count)
        for j in range(system.count)
        if i != j and system.angle_deg(i, j) != 180 and system.interval(i, j)
    ]
    res = resolve_assignment("G", TAdicValuation(), sample_pairs, pair_list[:12])
    assert res.passes[0] and res.passes[1]
    assert res.chosen == 0
    assert not res.exactly_one


def test_skew_order_breaks_flip_invariance():
    f = hahn(3)
    system = g2()
    params = [f.monomial(QuadExt(k), 1 + (k % 2)) for k in range(1, 6)]
    good = PhiAssignment("G", system, TAdicValuation(), twisted_class=1)
    assert check_rho_invariance(good, params).ok
    skew = PhiAssignment("G", system, LatticeOrderValuation(QuadExt(0, 2, 3)), twisted_class=1)
    assert not check_rho_invariance(skew, params).ok


def test_moufang_phi_round_trip():
    f = hahn(3)
    nu = TAdicValuation()
    phi = moufang_phi("G", nu)
    for exp in (QuadExt(0), QuadExt(2), QuadExt(0, 1, 3), QuadExt(-3, 1, 3)):
        t = f.monomial(exp, 1)
        assert nu_from_phi("G", phi, t) == ExtVal.of(exp)
    f2 = hahn(2)
    phi2 = moufang_phi("B", nu)
    for exp in (QuadExt(0), QuadExt(1), QuadExt(0, -1, 2)):
        t = f2.monomial(exp, 1)
        assert nu_from_phi("B", phi2, t) == ExtVal.of(exp)


def test_ree_word_shape():
    f = TitsField(FieldCfg(char=3, mode="finite", m=1))
    a = TElem(f.from_coeff(1), f.from_coeff(2), f.from_coeff(2))
    word = embedding_word("G", a)
    assert [pos for pos, _ in word] == [1, 2, 3, 4, 5, 6]
    flipped = word_rho(g2(), word)
    assert [pos for pos, _ in flipped] == [6, 5, 4, 3, 2, 1]
    # zero factors are dropped
    b = TElem(f.from_coeff(1), f.from_coeff(2), f.from_coeff(1))
    assert [pos for pos, _ in embedding_word("G", b)] == [1, 2, 5, 6]


def test_embedding_hom_finite_sample():
    f = TitsField(FieldCfg(char=3, mode="finite", m=3))
    rng = random.Random(2)
    elems = [
        TElem(f.from_coeff(rng.randrange(27)), f.from_coeff(rng.randrange(27)), f.from_coeff(rng.randrange(27)))
        for _ in range(12)
    ]
    for a in elems:
        assert check_embedding_rho("G", a).ok
        for b in elems[:6]:
            assert check_embedding_hom("G", a, b).ok


def test_suzuki_recipe_unique():
    lam, mu = solve_suzuki_word()
    assert (lam, mu) == ((1, 1), (1, 0))


def test_suzuki_word_checks():
    f = TitsField(FieldCfg(char=2, mode="finite", m=3))
    rng = random.Random(8)
    from srlab.groups import SElem

    elems = [
        SElem(f.from_coeff(rng.randrange(8)), f.from_coeff(rng.randrange(8)))
        for _ in range(10)
    ]
    for a in elems:
        assert check_embedding_rho("B", a).ok
        for b in elems[:5]:
            assert check_embedding_hom("B", a, b).ok
