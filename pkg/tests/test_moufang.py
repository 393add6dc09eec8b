import random

import pytest

from srlab.errors import ConfigError, ResourceBoundError
from srlab.field import FieldCfg, TitsField
from srlab.groups import TElem
from srlab.moufang import (
    enumerate_group,
    omega_point,
    rho_identity_check,
    rho_map,
    rho_scalar_check,
    translate,
)
from srlab.scalar import QuadExt


def f3():
    return TitsField(FieldCfg(char=3, mode="finite", m=1))


def f27():
    return TitsField(FieldCfg(char=3, mode="finite", m=3))


def test_translate_fixes_infinity():
    field = f3()
    a = TElem.center(field.one())
    assert translate(a, None) is None
    assert translate(a, TElem.identity(field)).agrees(a)


def test_omega_point_swaps_zero_and_infinity():
    field = f3()
    assert omega_point(field, None).is_identity()
    assert omega_point(field, TElem.identity(field)) is None
    a = TElem.center(field.one())
    back = omega_point(field, omega_point(field, a))
    assert back is not None and back.agrees(a)


def test_rho_map_needs_nonzero():
    field = f3()
    with pytest.raises(ConfigError):
        rho_map(TElem.identity(field))


def test_rho_scalar_and_identity():
    field = f27()
    rng = random.Random(12)
    elems = [
        TElem(
            field.from_coeff(rng.randrange(27)),
            field.from_coeff(rng.randrange(27)),
            field.from_coeff(rng.randrange(27)),
        )
        for _ in range(25)
    ]
    sample = [e for e in elems if not e.is_identity()][:20]
    a = sample[0]
    assert rho_scalar_check(a, sample).ok
    assert rho_identity_check(field, sample).ok


def test_rho_unit_fixes_points_exhaustively():
    field = f3()
    one = TElem.center(field.one())
    act = rho_map(one)
    q = field.q
    for r in range(q):
        for s in range(q):
            for t in range(q):
                x = TElem(field.from_coeff(r), field.from_coeff(s), field.from_coeff(t))
                img = act(x)
                assert img is not None and img.agrees(x)


def test_enumerate_group_shape():
    stats = enumerate_group(f3())
    assert stats.npoints == 28
    assert stats.order == 1512
    assert stats.transitivity == 2
    assert stats.point_stab == 54
    assert stats.two_point_stab == 2


def test_enumerate_group_bound():
    with pytest.raises(ResourceBoundError):
        enumerate_group(f3(), max_order=100)


def test_enumerate_needs_finite_mode():
    hf = TitsField(FieldCfg(char=3, mode="hahn", m=1))
    with pytest.raises(ConfigError):
        enumerate_group(hf)


def test_rho_scalar_hahn_single_slot():
    hf = TitsField(FieldCfg(char=3, mode="hahn", m=1))
    points = [
        TElem(hf.monomial(QuadExt(1), 1), hf.zero(), hf.zero()),
        TElem(hf.zero(), hf.monomial(QuadExt(-1), 2), hf.zero()),
        TElem(hf.zero(), hf.zero(), hf.monomial(QuadExt(0, 1, 3), 1)),
    ]
    a = TElem(hf.zero(), hf.zero(), hf.monomial(QuadExt(2), 2))
    assert rho_scalar_check(a, points).ok
