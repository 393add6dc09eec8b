"""End-to-end acceptance battery.

Nine numbered criteria, each implemented as one test that prints a single
`criterion N: PASS` or `criterion N: FAIL` line to the terminal before
asserting.  Every comparison is exact: quadratic scalars and extended
valuations are compared with `==`, field and group elements through their
certified `agrees` predicate.  Stated wall-clock bounds are asserted.

Criterion 5 carries a uniqueness clause (exactly one of the two
class-to-rule assignments should survive the containment bound) that the
library does not reproduce: both assignments pass every axiom.  The final
assertion of that test states this and is expected to fail.
"""

import random
import time
from fractions import Fraction

from srlab.cli import main
from srlab.field import FieldCfg, TitsField
from srlab.groups import SElem, TElem, val_norm_exact_S, val_norm_exact_T
from srlab.moufang import enumerate_group
from srlab.roots import get_system
from srlab.scalar import QuadExt, ext_min
from srlab.suites import (
    RunConfig,
    _finite_elems_s,
    _finite_elems_t,
    _hahn_field,
    _interval_pairs,
    _lat_mul_quad,
    _rand_monomial,
    _rand_s,
    _rand_short,
    _rand_t,
    _tie_samples_t,
)
from srlab.valuation import (
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
    moufang_phi,
    nu_from_phi,
    resolve_assignment,
)

_CFG = RunConfig()


def _report(capsys, n: int, ok: bool, elapsed: float | None = None) -> None:
    tag = "PASS" if ok else "FAIL"
    extra = f" ({elapsed:.2f}s)" if elapsed is not None else ""
    with capsys.disabled():
        print(f"criterion {n}: {tag}{extra}")


def test_criterion_1_folded_directions(capsys):
    t0 = time.perf_counter()
    b2 = get_system("B2").fold()
    g2 = get_system("G2").fold()
    f4 = get_system("F4").fold()
    target = QuadExt(Fraction(1, 2), Fraction(1, 4), 2)
    cos_ok = all(f4.cos2_between(k, (k + 1) % 16) == target for k in range(16))
    elapsed = time.perf_counter() - t0
    ok = b2.count == 2 and g2.count == 2 and f4.count == 16 and cos_ok
    _report(capsys, 1, ok and elapsed < 1.0, elapsed)
    assert b2.count == 2
    assert g2.count == 2
    assert f4.count == 16
    assert cos_ok, "consecutive squared cosines of the 16 directions are not all (2+r2)/4"
    assert elapsed < 1.0


def test_criterion_2_omega_involution(capsys):
    t0 = time.perf_counter()
    f3 = TitsField(FieldCfg(char=3, mode="finite", m=1))
    small = [a for a in _finite_elems_t(f3) if not a.is_identity()]
    ok3 = all(a.omega().omega().agrees(a) for a in small)
    f27 = TitsField(FieldCfg(char=3, mode="finite", m=3))
    big = [a for a in _finite_elems_t(f27) if not a.is_identity()]
    ok27 = all(a.omega().omega().agrees(a) for a in big)
    hf = _hahn_field(_CFG, 3)
    rng = random.Random(20)
    ok_hahn = all(a.omega().omega().agrees(a) for a in (_rand_t(hf, rng) for _ in range(1000)))
    elapsed = time.perf_counter() - t0
    ok = len(small) == 26 and len(big) == 19682 and ok3 and ok27 and ok_hahn
    _report(capsys, 2, ok and elapsed < 30.0, elapsed)
    assert len(small) == 26 and ok3
    assert len(big) == 19682 and ok27
    assert ok_hahn
    assert elapsed < 30.0


def test_criterion_3_norm_valuation_formula(capsys):
    t0 = time.perf_counter()
    rng = random.Random(3)
    hf2 = _hahn_field(_CFG, 2)
    pre_ok = True
    for k in range(10**4):
        if k % 10 == 0:  # engineered collision of the two levels
            gs = (rng.randint(-4, 4), rng.randint(-2, 2))
            gt = _lat_mul_quad(gs, 1, 1, 2)
            a = SElem(hf2.monomial(hf2.unlat(gs)), hf2.monomial(hf2.unlat(gt)))
        else:
            a = SElem(_rand_monomial(hf2, rng), _rand_monomial(hf2, rng))
        expect = ext_min(
            a.s.val().scale(QuadExt(2, 1, 2)),
            a.t.val().scale(QuadExt(0, 1, 2)),
        )
        if a.norm().val() != expect or expect != val_norm_exact_S(a):
            pre_ok = False
            break

    hf3 = _hahn_field(_CFG, 3)
    ties = 60
    samples = _tie_samples_t(hf3, rng, ties)
    while len(samples) < 1000:
        samples.append(_rand_t(hf3, rng))
    t_ok = True
    for a in samples:
        expect = ext_min(
            a.r.val().scale(QuadExt(4, 2, 3)),
            a.s.val().scale(QuadExt(1, 1, 3)),
            a.t.val().scale(QuadExt(2)),
        )
        if a.norm().val() != expect or expect != val_norm_exact_T(a):
            t_ok = False
            break
    elapsed = time.perf_counter() - t0
    ok = pre_ok and t_ok
    _report(capsys, 3, ok and elapsed < 30.0, elapsed)
    assert pre_ok, "two-slot norm level formula failed its pre-validation battery"
    assert ties >= 50
    assert t_ok, "three-slot norm level differs from the weighted minimum"
    assert elapsed < 30.0


def test_criterion_4_norm_ultrametric(capsys):
    rng = random.Random(4)
    hf3 = _hahn_field(_CFG, 3)
    hf2 = _hahn_field(_CFG, 2)
    t_ok = True
    for _ in range(1000):
        a, b = _rand_t(hf3, rng), _rand_t(hf3, rng)
        if (a * b).norm().val() < ext_min(a.norm().val(), b.norm().val()):
            t_ok = False
            break
    s_ok = True
    for _ in range(1000):
        a, b = _rand_s(hf2, rng), _rand_s(hf2, rng)
        if (a * b).norm().val() < ext_min(a.norm().val(), b.norm().val()):
            s_ok = False
            break
    _report(capsys, 4, t_ok and s_ok)
    assert t_ok, "three-slot norm level of a product undercuts the pair minimum"
    assert s_ok, "two-slot norm level of a product undercuts the pair minimum"


def test_criterion_5_valuation_axioms(capsys):
    rng = random.Random(5)
    n = 100
    fields = {"B": _hahn_field(_CFG, 2), "G": _hahn_field(_CFG, 3)}
    nu = TAdicValuation()
    v1_ok = True
    v3_ok = True
    refl_ok = True
    resolutions = {}
    for case in ("B", "G"):
        field = fields[case]
        system = ambient_system(case)
        phi = PhiAssignment(case, system, nu, twisted_class=1)
        pairs = [
            (_rand_short(field, rng, rng.randint(1, 2)), _rand_short(field, rng, 1))
            for _ in range(n)
        ] + [(field.zero(), field.one())]
        if not all(check_v1(phi, idx, pairs).ok for idx in range(system.count)):
            v1_ok = False

        def sample_pairs(i, j, field=field):
            return [
                (_rand_monomial(field, rng), _rand_monomial(field, rng))
                for _ in range(n)
            ]

        resolutions[case] = resolve_assignment(case, nu, sample_pairs, _interval_pairs(system))

        for alpha_pos in range(1, system.n + 1):
            for beta_pos in range(1, system.n + 1):
                alpha = system.position_root(alpha_pos).idx
                beta = system.position_root(beta_pos).idx
                u = _rand_monomial(field, rng)
                if not check_v3(phi, alpha, beta, u, [_rand_monomial(field, rng) for _ in range(20)]):
                    v3_ok = False
        alpha = system.position_root(1).idx
        if not check_double_reflection(
            phi, alpha, _rand_monomial(field, rng), field.one(),
            [_rand_monomial(field, rng) for _ in range(20)],
        ):
            refl_ok = False

    f4 = ambient_system("F")
    phi4 = PhiAssignment("F", f4, nu, twisted_class=1)
    f4_pairs = _interval_pairs(f4)
    field = fields["B"]
    f4_ok = True
    for _ in range(100):
        i, j = f4_pairs[rng.randrange(len(f4_pairs))]
        sample = [(_rand_monomial(field, rng), _rand_monomial(field, rng)) for _ in range(n)]
        if not check_v2_pair(phi4, i, j, sample):
            f4_ok = False
            break

    chosen_ok = all(res.chosen is not None for res in resolutions.values())
    unique_ok = all(res.exactly_one for res in resolutions.values())
    ok = v1_ok and v3_ok and refl_ok and f4_ok and chosen_ok and unique_ok
    _report(capsys, 5, ok)
    assert v1_ok, "one-root group valuation axiom failed"
    assert chosen_ok, "no class-to-rule assignment survives the containment bound"
    assert f4_ok, "containment bound failed on a sampled rank-2 pair of the large system"
    assert v3_ok, "conjugation shift is not constant or differs from -2*phi on the diagonal"
    assert refl_ok, "double reflection does not shift phi by exactly 2*phi(u)"
    assert unique_ok, (
        "both candidate class-to-rule assignments satisfy the containment bound on "
        "every interval pair "
        f"(B passes: {resolutions['B'].passes}, G passes: {resolutions['G'].passes}); "
        "expected exactly one to survive"
    )


def test_criterion_6_embedding_words(capsys):
    rng = random.Random(6)
    f3 = TitsField(FieldCfg(char=3, mode="finite", m=1))
    t_all = _finite_elems_t(f3)
    hom_f3 = all(check_embedding_hom("G", a, b).ok for a in t_all for b in t_all)
    flip_f3 = all(check_embedding_rho("G", a).ok for a in t_all)
    hf3 = _hahn_field(_CFG, 3)
    hom_hahn = all(
        check_embedding_hom("G", _rand_t(hf3, rng), _rand_t(hf3, rng)).ok
        for _ in range(200)
    )
    flip_hahn = all(check_embedding_rho("G", _rand_t(hf3, rng)).ok for _ in range(50))
    ok = hom_f3 and flip_f3 and hom_hahn and flip_hahn
    _report(capsys, 6, ok)
    assert hom_f3, "word image fails the homomorphism identity on the small field"
    assert hom_hahn, "word image fails the homomorphism identity on series samples"
    assert flip_f3 and flip_hahn, "collected word images are not flip invariant"


def test_criterion_7_group_enumeration(capsys):
    t0 = time.perf_counter()
    stats = enumerate_group(TitsField(FieldCfg(char=3, mode="finite", m=1)))
    elapsed = time.perf_counter() - t0
    ok = (
        stats.order == 1512
        and stats.npoints == 28
        and stats.transitivity == 2
        and stats.point_stab == 54
        and stats.two_point_stab == 2
    )
    _report(capsys, 7, ok and elapsed < 60.0, elapsed)
    assert stats.order == 1512
    assert stats.npoints == 28
    assert stats.transitivity == 2
    assert stats.point_stab == 54
    assert stats.two_point_stab == 2
    assert elapsed < 60.0


def test_criterion_8_phi_roundtrip_and_flip(capsys):
    rng = random.Random(8)
    nu = TAdicValuation()
    round_ok = True
    for case, char in (("G", 3), ("B", 2)):
        field = _hahn_field(_CFG, char)
        phi = moufang_phi(case, nu)
        for _ in range(100):
            t = _rand_monomial(field, rng)
            if nu_from_phi(case, phi, t) != nu.of(t):
                round_ok = False
    g_field = _hahn_field(_CFG, 3)
    system = ambient_system("G")
    assignment = PhiAssignment("G", system, nu, twisted_class=1)
    flip = check_rho_invariance(assignment, [_rand_monomial(g_field, rng) for _ in range(30)])
    ok = round_ok and flip.ok
    _report(capsys, 8, ok)
    assert round_ok, "recovering the field valuation from phi on central elements failed"
    assert flip.ok, "phi with the positive-direction valuation is not flip invariant"


def test_criterion_9_deterministic_reports(capsys, tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    code_a = main(["run", "--seed", "123", "--out", str(first)])
    code_b = main(["run", "--seed", "123", "--out", str(second)])
    ok = code_a == 0 and code_b == 0 and first.read_bytes() == second.read_bytes()
    _report(capsys, 9, ok)
    assert code_a == 0 and code_b == 0
    assert first.read_bytes() == second.read_bytes(), "same-seed reports differ"
