from fractions import Fraction

import pytest

from srlab.errors import UnsupportedAngleError
from srlab.roots import QuadExt, angle_from_cos, dot, get_system, vec_neg


def test_angle_lookup():
    assert angle_from_cos(QuadExt(0)) == 90
    assert angle_from_cos(QuadExt(0, Fraction(-1, 2), 3)) == 150
    with pytest.raises(UnsupportedAngleError):
        angle_from_cos(QuadExt(Fraction(1, 3)))


def test_b2_reflection_examples():
    b2 = get_system("B2")
    # the mirror root is sent to its negative
    assert b2.reflect_idx(0, 0) == 4
    # perpendicular roots are fixed
    assert b2.reflect_idx(0, 2) == 2
    assert b2.reflect_idx(2, 0) == 0


def test_reflection_weyl_properties():
    for kind in ("A1", "B2", "G2", "F4"):
        system = get_system(kind)
        for i in range(system.count):
            assert system.reflect_idx(i, i) == system.negate_idx(i)
            for j in range(system.count):
                k = system.reflect_idx(i, j)
                assert system.reflect_idx(i, k) == j
                assert system.length_class(k) == system.length_class(j)
                if system.angle_deg(i, j) == 90:
                    assert k == j


def test_negation_units():
    for kind in ("B2", "G2", "F4"):
        system = get_system(kind)
        for i in range(system.count):
            assert system.unit(system.negate_idx(i)) == vec_neg(system.unit(i))


def test_chamber_involution_swaps_classes():
    for kind in ("B2", "G2", "F4"):
        system = get_system(kind)
        for i in range(system.count):
            ti = system.chamber_involution_idx(i)
            assert system.chamber_involution_idx(ti) == i
            assert system.length_class(ti) != system.length_class(i)


def test_involution_preserves_angles():
    g2 = get_system("G2")
    tau = g2.chamber_involution_idx
    for i in range(g2.count):
        for j in range(g2.count):
            assert g2.angle_deg(tau(i), tau(j)) == g2.angle_deg(i, j)


def test_b2_interval():
    b2 = get_system("B2")
    assert b2.angle_deg(0, 3) == 135
    got = b2.interval(0, 3)
    r2 = QuadExt.sqrt(2)
    assert [(b2.angle_deg(0, k), p, q) for k, p, q in got] == [
        (45, r2, QuadExt(1)),
        (90, QuadExt(1), r2),
    ]


def test_g2_interval():
    g2 = get_system("G2")
    assert g2.angle_deg(0, 5) == 150
    got = g2.interval(0, 5)
    r3 = QuadExt.sqrt(3)
    assert [(g2.angle_deg(0, k), p, q) for k, p, q in got] == [
        (30, r3, QuadExt(1)),
        (60, QuadExt(2), r3),
        (90, r3, QuadExt(2)),
        (120, QuadExt(1), r3),
    ]


def test_interval_empty_for_adjacent():
    g2 = get_system("G2")
    assert g2.interval(0, 1) == []


def test_position_maps():
    for kind in ("B2", "G2"):
        system = get_system(kind)
        seen = set()
        for pos in range(1, system.n + 1):
            idx = system.position_root(pos).idx
            assert system.root_position(idx) == pos
            seen.add(idx)
        assert len(seen) == system.n


def test_f4_shape():
    f4 = get_system("F4")
    assert f4.count == 48
    for cls in (0, 1):
        assert sum(1 for i in range(48) if f4.length_class(i) == cls) == 24
    for i in range(48):
        assert dot(f4.unit(i), f4.unit(i)) == QuadExt(1)


def test_fold_counts():
    assert get_system("B2").fold().count == 2
    assert get_system("G2").fold().count == 2
    assert get_system("F4").fold().count == 16


def test_f4_fold_geometry():
    folded = get_system("F4").fold()
    want = QuadExt(Fraction(1, 2), Fraction(1, 4), 2)
    for k in range(folded.count):
        assert folded.cos2_between(k, (k + 1) % folded.count) == want
    mults = [folded.multiplicity(k) for k in range(folded.count)]
    assert sorted(set(mults)) == [2, 4]
    for k in range(folded.count):
        assert mults[k] != mults[(k + 1) % folded.count]
    assert sum(mults) == 48


def test_fold_preimages_partition():
    for kind in ("B2", "G2", "F4"):
        system = get_system(kind)
        folded = system.fold()
        all_idx = sorted(i for k in range(folded.count) for i in folded.preimages(k))
        assert all_idx == list(range(system.count))


def test_folded_reflection_involutive():
    folded = get_system("F4").fold()
    for i in range(folded.count):
        for j in range(folded.count):
            assert folded.reflect_idx(i, folded.reflect_idx(i, j)) == j
