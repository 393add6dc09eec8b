"""Named check suites behind the command line runner.

Each suite draws from its own deterministic random stream (derived from
the run seed and the suite name), builds its fields and samples, runs a
batch of exact checks and returns a JSON-safe payload.  Sample counts
follow the documented defaults unless the run configuration overrides
them.
"""

from __future__ import annotations

import hashlib
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ConfigError
from .field import FieldCfg, FieldElem, TitsField
from .groups import (
    SElem,
    TElem,
    h_action_S,
    h_action_T,
    val_norm_exact_S,
    val_norm_exact_T,
)
from .moufang import enumerate_group, rho_identity_check, rho_map, rho_scalar_check
from .report import check_entry
from .roots import FoldedSystem, QuadExt, dot, get_system
from .scalar import INFINITY, ExtVal, ext_min, parse_quad
from .valuation import (
    CheckResult,
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
    moufang_phi,
    nu_from_phi,
    resolve_assignment,
    solve_suzuki_word,
    word_rho,
    words_agree,
)

SUITE_NAMES = [
    "scalars",
    "roots",
    "folding",
    "field",
    "groups",
    "appendix",
    "valuation-axioms",
    "embedding",
    "moufang",
]


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by all suites; None keeps a suite's documented default."""

    case: str = "G"
    samples: int | None = None
    seed: int = 0
    precision: int = 40
    denom: int = 2
    support_cap: int = 64
    timings: bool = False


def suite_seed(seed: int, suite: str) -> int:
    digest = hashlib.sha256(f"{seed}:{suite}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _hahn_field(cfg: RunConfig, char: int) -> TitsField:
    return TitsField(
        FieldCfg(
            char=char,
            mode="hahn",
            m=1,
            denom=cfg.denom,
            precision=cfg.precision,
            support_cap=cfg.support_cap,
        )
    )


def _rand_lat(rng: random.Random, span: int = 6) -> tuple[int, int]:
    return (rng.randint(-span, span), rng.randint(-2, 2))


def _rand_monomial(field: TitsField, rng: random.Random, span: int = 6) -> FieldElem:
    exp = field.unlat(_rand_lat(rng, span))
    return field.monomial(exp, rng.randrange(1, field.q))


def _rand_short(
    field: TitsField, rng: random.Random, terms: int = 2, span: int = 6
) -> FieldElem:
    out = field.zero()
    for _ in range(terms):
        out = out + _rand_monomial(field, rng, span)
    if out.is_zero():
        out = field.one()
    return out


def _biased_component(field: TitsField, rng: random.Random) -> FieldElem:
    """Mostly monomials, sometimes short sums, occasionally zero."""
    roll = rng.random()
    if roll < 0.10:
        return field.zero()
    if roll < 0.80:
        return _rand_monomial(field, rng)
    return _rand_short(field, rng, terms=2)


def _rand_t(field: TitsField, rng: random.Random) -> TElem:
    a = TElem(
        _biased_component(field, rng),
        _biased_component(field, rng),
        _biased_component(field, rng),
    )
    if a.is_identity():
        return TElem.center(field.one())
    return a


def _rand_s(field: TitsField, rng: random.Random) -> SElem:
    a = SElem(_biased_component(field, rng), _biased_component(field, rng))
    if a.is_identity():
        return SElem.center(field.one())
    return a


def _finite_elems_t(field: TitsField) -> list[TElem]:
    q = field.q
    return [
        TElem(field.from_coeff(r), field.from_coeff(s), field.from_coeff(t))
        for r in range(q)
        for s in range(q)
        for t in range(q)
    ]


def _finite_elems_s(field: TitsField) -> list[SElem]:
    q = field.q
    return [
        SElem(field.from_coeff(s), field.from_coeff(t))
        for s in range(q)
        for t in range(q)
    ]


def _rand_quad(rng: random.Random, p: int | None) -> QuadExt:
    a = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
    if p is None:
        return QuadExt(a)
    b = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
    return QuadExt(a, b, p)


# --- scalars ---


def _suite_scalars(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    n = cfg.samples or 200
    for p in (None, 2, 3):
        ok_ring = True
        ok_ord = True
        ok_inv = True
        for _ in range(n):
            x, y, z = (_rand_quad(rng, p) for _ in range(3))
            if (x + y) * z != x * z + y * z or x * y != y * x:
                ok_ring = False
            if (x + y) + z != x + (y + z):
                ok_ring = False
            d = x - y
            if (d.sign() > 0) != (x > y) or (d.sign() == 0) != (x == y):
                ok_ord = False
            if x != QuadExt(0) and (x * x.inv()) != QuadExt(1):
                ok_inv = False
        tag = "rational" if p is None else f"sqrt{p}"
        checks.append(check_entry(f"ring-laws-{tag}", ok_ring))
        checks.append(check_entry(f"ordering-vs-sign-{tag}", ok_ord))
        checks.append(check_entry(f"inverse-roundtrip-{tag}", ok_inv))
    for p in (2, 3):
        r = QuadExt.sqrt(p)
        checks.append(check_entry(f"sqrt{p}-squares", r * r == QuadExt(p)))
        ok_parse = True
        for _ in range(n // 2):
            q = _rand_quad(rng, p)
            if parse_quad(str(q), radicand=p) != q:
                ok_parse = False
        checks.append(check_entry(f"parse-roundtrip-sqrt{p}", ok_parse))
    ok_ext = True
    vals = [ExtVal.of(_rand_quad(rng, 3)) for _ in range(20)] + [INFINITY]
    for a in vals:
        for b in vals:
            if ext_min(a, b) != ext_min(b, a):
                ok_ext = False
            if (a + b).is_infinite != (a.is_infinite or b.is_infinite):
                ok_ext = False
    checks.append(check_entry("extended-min-and-infinity", ok_ext))
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}


# --- roots ---

_B2_INTERVAL = [(45, "0+1r2", "1"), (90, "1", "0+1r2")]
_G2_INTERVAL = [
    (30, "0+1r3", "1"),
    (60, "2", "0+1r3"),
    (90, "0+1r3", "2"),
    (120, "1", "0+1r3"),
]


def _interval_shape(system, i: int, j: int) -> list[tuple[int, str, str]]:
    return [
        (system.angle_deg(i, k), str(pc), str(qc)) for k, pc, qc in system.interval(i, j)
    ]


def _suite_roots(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    for kind in ("A1", "B2", "G2", "F4"):
        system = get_system(kind)
        ok_reflect = True
        ok_perp = True
        ok_invol = True
        for i in range(system.count):
            if system.reflect_idx(i, i) != system.negate_idx(i):
                ok_reflect = False
            for j in range(system.count):
                if system.angle_deg(i, j) == 90 and system.reflect_idx(i, j) != j:
                    ok_perp = False
                if system.reflect_idx(i, system.reflect_idx(i, j)) != j:
                    ok_invol = False
        checks.append(check_entry(f"{kind}-reflection-negates-mirror", ok_reflect))
        checks.append(check_entry(f"{kind}-reflection-fixes-perpendicular", ok_perp))
        checks.append(check_entry(f"{kind}-reflection-involutive", ok_invol))
        ok_tau = True
        swaps = 0
        for i in range(system.count):
            ti = system.chamber_involution_idx(i)
            if system.chamber_involution_idx(ti) != i:
                ok_tau = False
            if kind != "A1" and system.length_class(ti) != system.length_class(i):
                swaps += 1
        want_swaps = 0 if kind == "A1" else system.count
        checks.append(
            check_entry(f"{kind}-involution-swaps-length-classes", ok_tau and swaps == want_swaps)
        )
    b2 = get_system("B2")
    i, j = 0, 3
    assert b2.angle_deg(i, j) == 135
    checks.append(
        check_entry("B2-interval-coefficients", _interval_shape(b2, i, j) == _B2_INTERVAL)
    )
    g2 = get_system("G2")
    i, j = 0, 5
    assert g2.angle_deg(i, j) == 150
    checks.append(
        check_entry("G2-interval-coefficients", _interval_shape(g2, i, j) == _G2_INTERVAL)
    )
    ok_pos = True
    for kind in ("B2", "G2"):
        system = get_system(kind)
        for pos in range(1, system.n + 1):
            if system.root_position(system.position_root(pos).idx) != pos:
                ok_pos = False
    checks.append(check_entry("position-map-roundtrip", ok_pos))
    f4 = get_system("F4")
    per_class = [sum(1 for i in range(48) if f4.length_class(i) == c) for c in (0, 1)]
    checks.append(check_entry("F4-root-counts", per_class == [24, 24]))
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}


# --- folding ---


def _suite_folding(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    t0 = time.perf_counter()
    folded: dict[str, FoldedSystem] = {k: get_system(k).fold() for k in ("B2", "G2", "F4")}
    elapsed = time.perf_counter() - t0
    counts = {k: f.count for k, f in folded.items()}
    checks.append(check_entry("B2-direction-count", counts["B2"] == 2))
    checks.append(check_entry("G2-direction-count", counts["G2"] == 2))
    checks.append(check_entry("F4-direction-count", counts["F4"] == 16))
    f4f = folded["F4"]
    want = QuadExt(Fraction(1, 2), Fraction(1, 4), 2)
    ok_cos = all(
        f4f.cos2_between(k, (k + 1) % f4f.count) == want for k in range(f4f.count)
    )
    checks.append(check_entry("F4-consecutive-cos2", ok_cos))
    mults = [f4f.multiplicity(k) for k in range(f4f.count)]
    ok_mult = sorted(set(mults)) == [2, 4] and all(
        mults[k] != mults[(k + 1) % f4f.count] for k in range(f4f.count)
    )
    checks.append(check_entry("F4-multiplicities-alternate", ok_mult))
    ok_pre = all(
        sum(len(f.preimages(k)) for k in range(f.count)) == get_system(kind).count
        for kind, f in folded.items()
    )
    checks.append(check_entry("preimages-partition-roots", ok_pre))
    ok_refl = True
    for f in folded.values():
        for i in range(f.count):
            for j in range(f.count):
                if f.reflect_idx(i, f.reflect_idx(i, j)) != j:
                    ok_refl = False
    checks.append(check_entry("folded-reflections-involutive", ok_refl))
    return {
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
        "stats": {"direction_counts": counts},
        "timing": {"fold_seconds": round(elapsed, 4)},
    }


# --- field ---


def _suite_field(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    for char, m in ((2, 1), (2, 3), (2, 5), (3, 1), (3, 3), (3, 5)):
        field = TitsField(FieldCfg(char=char, mode="finite", m=m))
        cf = field.coeff
        ok_theta = all(cf.theta(cf.theta(x)) == cf.frobf[x] for x in range(field.q))
        ok_mul = all(
            cf.theta(cf.mul(x, y)) == cf.mul(cf.theta(x), cf.theta(y))
            for x in range(field.q)
            for y in range(field.q)
        )
        checks.append(check_entry(f"F{field.q}-twist-squares-to-frobenius", ok_theta))
        checks.append(check_entry(f"F{field.q}-twist-multiplicative", ok_mul))
    n = cfg.samples or 120
    for char in (2, 3):
        field = _hahn_field(cfg, char)
        ok_ring = True
        ok_inv = True
        ok_theta = True
        ok_val = True
        ok_parse = True
        for _ in range(n):
            a = _rand_short(field, rng, terms=rng.randint(1, 3))
            b = _rand_short(field, rng, terms=rng.randint(1, 2))
            c = _rand_monomial(field, rng)
            if not ((a + b) * c).agrees(a * c + b * c):
                ok_ring = False
            if not (a * b).agrees(b * a):
                ok_ring = False
            if not (a * a.inv()).agrees(field.one()):
                ok_inv = False
            if not (a * b).theta().agrees(a.theta() * b.theta()):
                ok_theta = False
            if not a.theta().theta().agrees(a.frob()):
                ok_theta = False
            if (a * b).val() != a.val() + b.val():
                ok_val = False
            if not field.parse(a.emit()).agrees(a):
                ok_parse = False
        tag = f"hahn-char{char}"
        checks.append(check_entry(f"{tag}-ring-laws", ok_ring))
        checks.append(check_entry(f"{tag}-inverse-roundtrip", ok_inv))
        checks.append(check_entry(f"{tag}-twist-ring-map", ok_theta))
        checks.append(check_entry(f"{tag}-valuation-additive", ok_val))
        checks.append(check_entry(f"{tag}-parse-roundtrip", ok_parse))
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}


# --- groups ---


def _suite_groups(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    stats: dict = {}
    timing: dict = {}

    f2 = TitsField(FieldCfg(char=2, mode="finite", m=1))
    s_all = _finite_elems_s(f2)
    ok = all(((a * b) * c).agrees(a * (b * c)) for a in s_all for b in s_all for c in s_all)
    ok = ok and all((a * a.inverse()).is_identity() for a in s_all)
    checks.append(check_entry("S-F2-group-laws", ok))

    f3 = TitsField(FieldCfg(char=3, mode="finite", m=1))
    t_all = _finite_elems_t(f3)
    ok = all(((a * b) * c).agrees(a * (b * c)) for a in t_all for b in t_all for c in t_all)
    ok = ok and all((a * a.inverse()).is_identity() for a in t_all)
    cz = TElem.center(f3.one())
    ok = ok and all((a * cz).agrees(cz * a) for a in t_all)
    checks.append(check_entry("T-F3-group-laws-and-center", ok))

    t0 = time.perf_counter()
    ok = all(a.omega().omega().agrees(a) for a in t_all if not a.is_identity())
    checks.append(check_entry("omega-squared-F3", ok))
    f27 = TitsField(FieldCfg(char=3, mode="finite", m=3))
    t27 = _finite_elems_t(f27)
    ok = all(a.omega().omega().agrees(a) for a in t27 if not a.is_identity())
    checks.append(check_entry("omega-squared-F27", ok))
    timing["omega_finite_seconds"] = round(time.perf_counter() - t0, 3)

    n = cfg.samples or 1000
    hf = _hahn_field(cfg, 3)
    t0 = time.perf_counter()
    ok = True
    for _ in range(n):
        a = _rand_t(hf, rng)
        if not a.omega().omega().agrees(a):
            ok = False
            break
    checks.append(check_entry("omega-squared-hahn", ok))
    timing["omega_hahn_seconds"] = round(time.perf_counter() - t0, 3)
    stats["omega_hahn_samples"] = n

    ok = all(a.norm().is_zero() == a.is_identity() for a in t_all)
    ok = ok and all(a.norm().is_zero() == a.is_identity() for a in t27)
    checks.append(check_entry("T-norm-anisotropic", ok))
    f8 = TitsField(FieldCfg(char=2, mode="finite", m=3))
    ok = all(a.norm().is_zero() == a.is_identity() for a in _finite_elems_s(f8))
    checks.append(check_entry("S-norm-anisotropic", ok))

    ok = True
    for _ in range(40):
        h = _rand_t(hf, rng)
        if h.norm().is_zero():
            continue
        x, y = _rand_t(hf, rng), _rand_t(hf, rng)
        if not h_action_T(h, x * y).agrees(h_action_T(h, x) * h_action_T(h, y)):
            ok = False
    checks.append(check_entry("T-scaling-action-automorphism", ok))
    hf2 = _hahn_field(cfg, 2)
    ok = True
    for _ in range(40):
        h = _rand_s(hf2, rng)
        if h.norm().is_zero():
            continue
        x, y = _rand_s(hf2, rng), _rand_s(hf2, rng)
        if not h_action_S(h, x * y).agrees(h_action_S(h, x) * h_action_S(h, y)):
            ok = False
    checks.append(check_entry("S-scaling-action-automorphism", ok))

    return {
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
        "stats": stats,
        "timing": timing,
    }


# --- appendix ---


def _lat_mul_quad(lat: tuple[int, int], a: int, b: int, p: int) -> tuple[int, int]:
    """Multiply a lattice exponent by the integer quadratic a + b sqrt(p)."""
    e, f = lat
    return (a * e + b * f * p, a * f + b * e)


def _tie_samples_t(field: TitsField, rng: random.Random, count: int) -> list[TElem]:
    """Monomial triples with two of the three norm levels exactly equal."""
    out: list[TElem] = []
    coeff = lambda: rng.randrange(1, field.q)
    for k in range(count):
        mode = k % 3
        if mode == 0:  # r-level == s-level, t-level strictly above
            gr = _rand_lat(rng, 4)
            gs = _lat_mul_quad(gr, 1, 1, 3)
            gt = _lat_mul_quad(gr, 2, 1, 3)
            gt = (gt[0] + rng.randint(1, 3), gt[1])
            r = field.monomial(field.unlat(gr), coeff())
            s = field.monomial(field.unlat(gs), coeff())
            t = field.monomial(field.unlat(gt), coeff())
        elif mode == 1:  # r-level == t-level, s-level strictly above
            gr = _rand_lat(rng, 4)
            gt = _lat_mul_quad(gr, 2, 1, 3)
            gs = _lat_mul_quad(gr, 1, 1, 3)
            gs = (gs[0] + rng.randint(1, 3), gs[1])
            r = field.monomial(field.unlat(gr), coeff())
            s = field.monomial(field.unlat(gs), coeff())
            t = field.monomial(field.unlat(gt), coeff())
        else:  # s-level == t-level with r zero
            e = rng.randint(-4, 4)
            f = rng.randint(-2, 2)
            f += (e - f) % 2
            gs = (e, f)
            gt = ((e + 3 * f) // 2, (e + f) // 2)
            r = field.zero()
            s = field.monomial(field.unlat(gs), coeff())
            t = field.monomial(field.unlat(gt), coeff())
        out.append(TElem(r, s, t))
    return out


def _suite_appendix(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    stats: dict = {}

    hf2 = _hahn_field(cfg, 2)
    n_pre = (cfg.samples or 1000) * 10
    ok = True
    ties = 0
    for k in range(n_pre):
        if k % 10 == 0:  # engineered collision of the two norm levels
            gs = _rand_lat(rng, 4)
            gt = _lat_mul_quad(gs, 1, 1, 2)
            a = SElem(hf2.monomial(hf2.unlat(gs)), hf2.monomial(hf2.unlat(gt)))
            ties += 1
        else:
            a = SElem(_rand_monomial(hf2, rng), _rand_monomial(hf2, rng))
        if a.norm().val() != val_norm_exact_S(a):
            ok = False
            break
    checks.append(check_entry("S-norm-level-prevalidation", ok))
    stats["s_prevalidation_samples"] = n_pre
    stats["s_prevalidation_ties"] = ties

    hf3 = _hahn_field(cfg, 3)
    n = cfg.samples or 1000
    tie_count = max(50, min(60, n // 2)) if n >= 50 else n
    samples = _tie_samples_t(hf3, rng, tie_count)
    while len(samples) < n:
        samples.append(_rand_t(hf3, rng))
    ok = True
    for a in samples:
        if a.norm().val() != val_norm_exact_T(a):
            ok = False
            break
    checks.append(check_entry("T-norm-level-formula", ok))
    stats["t_formula_samples"] = len(samples)
    stats["t_formula_ties"] = tie_count

    n_pairs = cfg.samples or 1000
    ok = True
    for _ in range(n_pairs):
        a, b = _rand_t(hf3, rng), _rand_t(hf3, rng)
        if (a * b).norm().val() < ext_min(a.norm().val(), b.norm().val()):
            ok = False
            break
    checks.append(check_entry("T-norm-level-ultrametric", ok))
    ok = True
    for _ in range(n_pairs):
        a, b = _rand_s(hf2, rng), _rand_s(hf2, rng)
        if (a * b).norm().val() < ext_min(a.norm().val(), b.norm().val()):
            ok = False
            break
    checks.append(check_entry("S-norm-level-ultrametric", ok))
    stats["ultrametric_pairs"] = n_pairs

    return {"checks": checks, "ok": all(c["ok"] for c in checks), "stats": stats}


# --- valuation axioms ---


def _interval_pairs(system) -> list[tuple[int, int]]:
    out = []
    for i in range(system.count):
        for j in range(system.count):
            if i == j or system.angle_deg(i, j) == 180:
                continue
            if system.interval(i, j):
                out.append((i, j))
    return out


def _suite_valuation_axioms(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    stats: dict = {}
    n = cfg.samples or 100

    fields = {"B": _hahn_field(cfg, 2), "G": _hahn_field(cfg, 3)}
    for case in ("B", "G"):
        field = fields[case]
        system = ambient_system(case)
        nu = TAdicValuation()
        phi = PhiAssignment(case, system, nu, twisted_class=1)
        pairs = [
            (_rand_short(field, rng, rng.randint(1, 2)), _rand_short(field, rng, 1))
            for _ in range(n)
        ] + [(field.zero(), field.one())]
        ok = all(check_v1(phi, idx, pairs).ok for idx in range(system.count))
        checks.append(check_entry(f"{case}-one-root-valuation", ok))

        def sample_pairs(
            i: int, j: int, field: TitsField = field
        ) -> list[tuple[FieldElem, FieldElem]]:
            return [
                (_rand_monomial(field, rng), _rand_monomial(field, rng))
                for _ in range(n)
            ]

        pair_list = _interval_pairs(system)
        res = resolve_assignment(case, nu, sample_pairs, pair_list)
        checks.append(
            check_entry(
                f"{case}-containment-all-pairs",
                CheckResult(
                    res.chosen is not None,
                    data={"passes": res.passes, "exactly_one": res.exactly_one},
                ),
            )
        )
        stats[f"{case}_interval_pairs"] = len(pair_list)
        stats[f"{case}_assignment_passes"] = {str(k): v for k, v in res.passes.items()}

    f4 = ambient_system("F")
    field = fields["B"]
    nu = TAdicValuation()
    phi4 = PhiAssignment("F", f4, nu, twisted_class=1)
    all_pairs = _interval_pairs(f4)
    chosen = [all_pairs[rng.randrange(len(all_pairs))] for _ in range(100)]
    ok = True
    for i, j in chosen:
        res = check_v2_pair(
            phi4, i, j, [(_rand_monomial(field, rng), _rand_monomial(field, rng)) for _ in range(n)]
        )
        if not res:
            ok = False
            break
    checks.append(check_entry("F-containment-sampled-pairs", ok))
    stats["F_pairs_checked"] = len(chosen)

    for case in ("B", "G"):
        field = fields[case]
        system = ambient_system(case)
        phi = PhiAssignment(case, system, TAdicValuation(), twisted_class=1)
        ok_const = True
        ok_self = True
        for alpha_pos in range(1, system.n + 1):
            alpha = system.position_root(alpha_pos).idx
            for beta_pos in range(1, system.n + 1):
                beta = system.position_root(beta_pos).idx
                u = _rand_monomial(field, rng)
                g_params = [_rand_monomial(field, rng) for _ in range(20)]
                res = check_v3(phi, alpha, beta, u, g_params)
                if not res:
                    ok_const = False
                if beta == alpha and not res:
                    ok_self = False
        checks.append(check_entry(f"{case}-conjugation-shift-constant", ok_const))
        checks.append(check_entry(f"{case}-self-shift-minus-twice", ok_self))

        alpha = system.position_root(1).idx
        w = field.one()
        u = _rand_monomial(field, rng)
        res = check_double_reflection(
            phi, alpha, u, w, [_rand_monomial(field, rng) for _ in range(20)]
        )
        checks.append(check_entry(f"{case}-double-reflection-shift", res))

    g_field = fields["G"]
    system = ambient_system("G")
    params = [_rand_monomial(g_field, rng) for _ in range(30)]
    phi = PhiAssignment("G", system, TAdicValuation(), twisted_class=1)
    checks.append(
        check_entry("G-flip-invariance-tadic", check_rho_invariance(phi, params))
    )
    skew = PhiAssignment(
        "G", system, LatticeOrderValuation(QuadExt(0, 2, 3)), twisted_class=1
    )
    res = check_rho_invariance(skew, params)
    checks.append(check_entry("G-flip-breaks-for-skew-order", not res.ok))

    return {"checks": checks, "ok": all(c["ok"] for c in checks), "stats": stats}


# --- embedding ---


def _suite_embedding(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    stats: dict = {}

    f3 = TitsField(FieldCfg(char=3, mode="finite", m=1))
    t_all = _finite_elems_t(f3)
    ok = all(check_embedding_hom("G", a, b).ok for a in t_all for b in t_all)
    checks.append(check_entry("G-word-homomorphism-F3", ok))
    ok = all(check_embedding_rho("G", a).ok for a in t_all)
    checks.append(check_entry("G-word-flip-invariance-F3", ok))

    hf3 = _hahn_field(cfg, 3)
    n = (cfg.samples or 1000) // 5
    ok = True
    for _ in range(n):
        a, b = _rand_t(hf3, rng), _rand_t(hf3, rng)
        if not check_embedding_hom("G", a, b).ok:
            ok = False
            break
    checks.append(check_entry("G-word-homomorphism-hahn", ok))
    stats["g_hahn_pairs"] = n
    ok = all(check_embedding_rho("G", _rand_t(hf3, rng)).ok for _ in range(50))
    checks.append(check_entry("G-word-flip-invariance-hahn", ok))

    lam, mu = solve_suzuki_word()
    checks.append(
        check_entry(
            "B-word-recipe-resolved",
            CheckResult(True, data={"c2": str(lam), "c3": str(mu)}),
        )
    )
    f2 = TitsField(FieldCfg(char=2, mode="finite", m=1))
    s_all = _finite_elems_s(f2)
    ok = all(check_embedding_hom("B", a, b).ok for a in s_all for b in s_all)
    checks.append(check_entry("B-word-homomorphism-F2", ok))
    f8 = TitsField(FieldCfg(char=2, mode="finite", m=3))
    s8 = _finite_elems_s(f8)
    pick = [s8[rng.randrange(len(s8))] for _ in range(100)]
    ok = all(
        check_embedding_hom("B", a, b).ok
        for a, b in zip(pick[::2], pick[1::2])
    )
    ok = ok and all(check_embedding_rho("B", a).ok for a in pick[:50])
    checks.append(check_entry("B-word-checks-F8", ok))
    hf2 = _hahn_field(cfg, 2)
    ok = True
    for _ in range(100):
        a, b = _rand_s(hf2, rng), _rand_s(hf2, rng)
        if not check_embedding_hom("B", a, b).ok or not check_embedding_rho("B", a).ok:
            ok = False
            break
    checks.append(check_entry("B-word-checks-hahn", ok))

    return {"checks": checks, "ok": all(c["ok"] for c in checks), "stats": stats}


# --- moufang ---


def _suite_moufang(cfg: RunConfig, rng: random.Random) -> dict:
    checks: list[dict] = []
    stats: dict = {}
    timing: dict = {}

    f3 = TitsField(FieldCfg(char=3, mode="finite", m=1))
    t0 = time.perf_counter()
    g = enumerate_group(f3)
    timing["enumerate_seconds"] = round(time.perf_counter() - t0, 3)
    stats["group"] = {
        "npoints": g.npoints,
        "order": g.order,
        "transitivity": g.transitivity,
        "point_stab": g.point_stab,
        "two_point_stab": g.two_point_stab,
    }
    checks.append(
        check_entry(
            "finite-group-shape",
            g.order == 1512
            and g.npoints == 28
            and g.transitivity == 2
            and g.point_stab == 54
            and g.two_point_stab == 2,
        )
    )

    f27 = TitsField(FieldCfg(char=3, mode="finite", m=3))
    t27 = _finite_elems_t(f27)
    sample = [t27[rng.randrange(1, len(t27))] for _ in range(30)]
    ok = all(
        rho_scalar_check(t27[rng.randrange(1, len(t27))], sample).ok for _ in range(10)
    )
    checks.append(check_entry("scaling-map-diagonal-F27", ok))
    checks.append(check_entry("unit-scaling-identity-F27", rho_identity_check(f27, sample)))

    # In series mode a general point drives the certified range to zero
    # after two norm inversions, so the diagonal shape is spot checked on
    # single-slot points under a central scaling element; general position
    # is covered by the finite-field checks above.
    hf3 = _hahn_field(cfg, 3)
    hs = []
    for _ in range(9):
        comps = [hf3.zero(), hf3.zero(), hf3.zero()]
        comps[rng.randrange(3)] = hf3.monomial(
            hf3.unlat((rng.randint(-2, 2), rng.randint(-1, 1))), rng.randrange(1, 3)
        )
        hs.append(TElem(*comps))
    ok = True
    for _ in range(6):
        c = hf3.monomial(
            hf3.unlat((rng.randint(-2, 2), rng.randint(-1, 1))), rng.randrange(1, 3)
        )
        a = TElem(hf3.zero(), hf3.zero(), c)
        if not rho_scalar_check(a, hs).ok:
            ok = False
    checks.append(check_entry("scaling-map-diagonal-hahn", ok))

    n = cfg.samples or 100
    nu = TAdicValuation()
    phi_g = moufang_phi("G", nu)
    ok = True
    for _ in range(n):
        t = _rand_monomial(hf3, rng)
        if nu_from_phi("G", phi_g, t) != nu.of(t):
            ok = False
            break
    checks.append(check_entry("G-round-trip-on-monomials", ok))
    hf2 = _hahn_field(cfg, 2)
    phi_b = moufang_phi("B", nu)
    ok = True
    for _ in range(n // 2):
        t = _rand_monomial(hf2, rng)
        if nu_from_phi("B", phi_b, t) != nu.of(t):
            ok = False
            break
    checks.append(check_entry("B-round-trip-on-monomials", ok))

    system = ambient_system("G")
    phi = PhiAssignment("G", system, nu, twisted_class=1)
    params = [_rand_monomial(hf3, rng) for _ in range(30)]
    checks.append(
        check_entry("flip-invariance-positive-direction", check_rho_invariance(phi, params))
    )

    return {
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
        "stats": stats,
        "timing": timing,
    }


_SUITES: dict[str, Callable[[RunConfig, random.Random], dict]] = {
    "scalars": _suite_scalars,
    "roots": _suite_roots,
    "folding": _suite_folding,
    "field": _suite_field,
    "groups": _suite_groups,
    "appendix": _suite_appendix,
    "valuation-axioms": _suite_valuation_axioms,
    "embedding": _suite_embedding,
    "moufang": _suite_moufang,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name not in _SUITES:
        raise ConfigError(f"unknown suite: {name}")
    rng = random.Random(suite_seed(cfg.seed, name))
    t0 = time.perf_counter()
    payload = _SUITES[name](cfg, rng)
    payload["seconds"] = round(time.perf_counter() - t0, 3)
    return payload


def run_all(
    cfg: RunConfig, names: Sequence[str] | None = None, jobs: int = 1
) -> dict:
    chosen = list(names) if names else list(SUITE_NAMES)
    for name in chosen:
        if name not in _SUITES:
            raise ConfigError(f"unknown suite: {name}")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda s: run_suite(s, cfg), chosen))
    else:
        results = [run_suite(name, cfg) for name in chosen]
    suites = dict(zip(chosen, results))
    timing: dict[str, dict] = {}
    for name, payload in suites.items():
        entry = {"seconds": payload.pop("seconds")}
        entry.update(payload.pop("timing", {}))
        timing[name] = entry
    out = {
        "seed": cfg.seed,
        "config": {
            "case": cfg.case,
            "samples": cfg.samples,
            "precision": cfg.precision,
            "denom": cfg.denom,
            "support_cap": cfg.support_cap,
        },
        "suites": suites,
        "ok": all(payload["ok"] for payload in suites.values()),
    }
    if cfg.timings:
        out["timings"] = timing
    return out
