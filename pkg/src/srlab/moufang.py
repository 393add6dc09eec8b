"""The rank-one action attached to the three-parameter group.

Points are the group elements together with one point at infinity.  The
group acts by left translations; the inverting map omega exchanges infinity
with the identity point and applies the norm-divided involution elsewhere.
The derived maps rho_a act diagonally through twisted powers of the norm,
and in finite mode the full permutation group can be enumerated by closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConfigError, ResourceBoundError
from .field import TitsField
from .groups import TElem
from .valuation import CheckResult

Point = TElem | None  # None is the point at infinity


def translate(a: TElem, x: Point) -> Point:
    """Left translation by a: fixes infinity, multiplies elsewhere."""
    if x is None:
        return None
    return a * x


def omega_point(field: TitsField, x: Point) -> Point:
    """The inverting permutation: swaps infinity with the identity point."""
    if x is None:
        return TElem.identity(field)
    if x.is_identity():
        return None
    return x.omega()


def rho_map(a: TElem) -> Callable[[Point], Point]:
    """The double-transposition-free composite fixing 0 and infinity.

    rho_a is built from a as x(-a') w x(-w(a)) w x(a) w with a' = w(-w(a)),
    applied to points with the rightmost factor first.
    """
    if a.is_identity():
        raise ConfigError("the scaling map needs a nonzero group element")
    field = a.field
    wa = a.omega()
    a_prime = wa.inverse().omega()
    neg_wa = wa.inverse()
    neg_ap = a_prime.inverse()

    def act(x: Point) -> Point:
        x = omega_point(field, x)
        x = translate(a, x)
        x = omega_point(field, x)
        x = translate(neg_wa, x)
        x = omega_point(field, x)
        x = translate(neg_ap, x)
        return x

    return act


def rho_scalar_check(a: TElem, sample_points: Sequence[TElem]) -> CheckResult:
    """rho_a acts on coordinates as (w, u, v) -> (z w, z^(th+1) u, z^(th+2) v)
    with z = N(a)^(2-theta), and z^(th+2) recovers N(a)."""
    act = rho_map(a)
    n = a.norm()
    z = n.twisted_pow(2, -1)
    z1 = z * z.theta()
    z2 = z * z1
    if not z2.agrees(n):
        return CheckResult(False, "z^(theta+2) does not recover the norm")
    if act(None) is not None:
        return CheckResult(False, "infinity moved")
    fixed0 = act(TElem.identity(a.field))
    if fixed0 is None or not fixed0.is_identity():
        return CheckResult(False, "the identity point moved")
    for x in sample_points:
        img = act(x)
        if img is None:
            return CheckResult(False, f"finite point sent to infinity: {x!r}")
        want = TElem(z * x.r, z1 * x.s, z2 * x.t)
        if not img.agrees(want):
            return CheckResult(
                False, "action is not the diagonal twisted scaling", {"x": repr(x)}
            )
    return CheckResult(True, data={"z": str(z)})


def rho_identity_check(field: TitsField, sample_points: Sequence[TElem]) -> CheckResult:
    """rho at the central unit parameter is the identity map."""
    one = TElem.center(field.one())
    act = rho_map(one)
    if act(None) is not None:
        return CheckResult(False, "infinity moved under the unit scaling map")
    for x in sample_points:
        img = act(x)
        if img is None or not img.agrees(x):
            return CheckResult(False, "unit scaling map moved a point", {"x": repr(x)})
    return CheckResult(True)


@dataclass(frozen=True)
class PermGroupStats:
    """Summary of an enumerated permutation group."""

    npoints: int
    order: int
    transitivity: int
    point_stab: int
    two_point_stab: int


def enumerate_group(field: TitsField, max_order: int = 500000) -> PermGroupStats:
    """Close the translations and the inverting map into a permutation group.

    Finite mode only.  Points are indexed with infinity first, then the
    group elements in lexicographic coordinate order; permutations are
    index tuples.  Transitivity is measured directly on tuple orbits and
    the stabilizer orders are cross-checked against orbit-stabilizer.
    """
    if field.mode != "finite":
        raise ConfigError("group enumeration needs a finite field")
    q = field.q
    elems = [
        TElem(field.from_coeff(r), field.from_coeff(s), field.from_coeff(t))
        for r in range(q)
        for s in range(q)
        for t in range(q)
    ]
    index = {(x.r.k, x.s.k, x.t.k): i + 1 for i, x in enumerate(elems)}
    npoints = len(elems) + 1

    def key(x: Point) -> int:
        if x is None:
            return 0
        return index[(x.r.k, x.s.k, x.t.k)]

    def as_perm(f: Callable[[Point], Point]) -> tuple[int, ...]:
        out = [0] * npoints
        out[0] = key(f(None))
        for i, x in enumerate(elems):
            out[i + 1] = key(f(x))
        return tuple(out)

    gens = {as_perm(lambda x, a=a: translate(a, x)) for a in elems if not a.is_identity()}
    gens.add(as_perm(lambda x: omega_point(field, x)))
    identity = tuple(range(npoints))
    els: set[tuple[int, ...]] = {identity} | gens
    frontier = list(els)
    while frontier:
        new: list[tuple[int, ...]] = []
        for g in frontier:
            for h in gens:
                prod = tuple(g[h[i]] for i in range(npoints))
                if prod not in els:
                    els.add(prod)
                    new.append(prod)
                    if len(els) > max_order:
                        raise ResourceBoundError(
                            f"group closure exceeded the bound {max_order}"
                        )
        frontier = new

    order = len(els)
    pair_orbit = {(g[0], g[1]) for g in els}
    triple_orbit = {(g[0], g[1], g[2]) for g in els}
    transitivity = 0
    if len({g[0] for g in els}) == npoints:
        transitivity = 1
    if transitivity and len(pair_orbit) == npoints * (npoints - 1):
        transitivity = 2
    if transitivity == 2 and len(triple_orbit) == npoints * (npoints - 1) * (npoints - 2):
        transitivity = 3
    point_stab = sum(1 for g in els if g[0] == 0)
    if transitivity >= 1 and point_stab * npoints != order:
        raise ConfigError("stabilizer count disagrees with orbit-stabilizer")
    two_point_stab = sum(1 for g in els if g[0] == 0 and g[1] == 1)
    if transitivity >= 2 and two_point_stab * npoints * (npoints - 1) != order:
        raise ConfigError("pair stabilizer count disagrees with orbit-stabilizer")
    return PermGroupStats(npoints, order, transitivity, point_stab, two_point_stab)
