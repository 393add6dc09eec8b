"""Root systems of ranks one, two, and four, and their foldings.

Rank-2 systems are presented on the unit circle: root k of a system with
Coxeter number parameter n sits at angle k*pi/n, so reflections and the
chamber involution are index arithmetic mod 2n.  The rank-4 system lives in
exact coordinates over sqrt(2).  Folding glues each root to its image under
the chamber involution and returns the ray system fixed by it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConfigError, UnsupportedAngleError
from .scalar import QuadExt

Vec = tuple[QuadExt, ...]

_ZERO = QuadExt(0)
_ONE = QuadExt(1)
_HALF = QuadExt(Fraction(1, 2))


def dot(u: Vec, v: Vec) -> QuadExt:
    out = _ZERO
    for x, y in zip(u, v):
        out = out + x * y
    return out


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c: QuadExt, u: Vec) -> Vec:
    return tuple(c * x for x in u)


def vec_neg(u: Vec) -> Vec:
    return tuple(-x for x in u)


def is_zero_vec(u: Vec) -> bool:
    return all(not x for x in u)


def same_ray(u: Vec, v: Vec) -> bool:
    """True when u and v point in the same direction (positive multiple)."""
    d = dot(u, v)
    if d.sign() <= 0:
        return False
    return d * d == dot(u, u) * dot(v, v)


def angle_from_cos(c: QuadExt) -> int:
    """Angle in degrees for an exact cosine between two roots."""
    if c == _ONE:
        return 0
    if c == -_ONE:
        return 180
    if c == _ZERO:
        return 90
    if c == _HALF:
        return 60
    if c == -_HALF:
        return 120
    half_r2 = QuadExt(0, Fraction(1, 2), 2)
    if c == half_r2:
        return 45
    if c == -half_r2:
        return 135
    half_r3 = QuadExt(0, Fraction(1, 2), 3)
    if c == half_r3:
        return 30
    if c == -half_r3:
        return 150
    raise UnsupportedAngleError(f"no root-system angle has cosine {c}")


def _circle(n: int, p: int | None) -> list[Vec]:
    """Unit vectors at angles k*pi/n for k in range(2n)."""
    if n == 1:
        return [(_ONE, _ZERO), (-_ONE, _ZERO)]
    if n == 4:
        c = QuadExt(0, Fraction(1, 2), 2)
        cos = [_ONE, c, _ZERO, -c, -_ONE, -c, _ZERO, c]
        sin = [_ZERO, c, _ONE, c, _ZERO, -c, -_ONE, -c]
    elif n == 6:
        h = QuadExt(0, Fraction(1, 2), 3)
        cos = [_ONE, h, _HALF, _ZERO, -_HALF, -h, -_ONE, -h, -_HALF, _ZERO, _HALF, h]
        sin = [_ZERO, _HALF, h, _ONE, h, _HALF, _ZERO, -_HALF, -h, -_ONE, -h, -_HALF]
    else:
        raise ConfigError(f"unsupported rank-2 parameter n={n}")
    return [(cos[k], sin[k]) for k in range(2 * n)]


@dataclass(frozen=True)
class Root:
    """A root named by its index within a fixed system."""

    system: "RootSystem"
    idx: int

    @property
    def unit(self) -> Vec:
        return self.system.unit(self.idx)

    @property
    def cls(self) -> int:
        return self.system.length_class(self.idx)

    def __neg__(self) -> "Root":
        return Root(self.system, self.system.negate_idx(self.idx))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Root):
            return NotImplemented
        return self.system is other.system and self.idx == other.idx

    def __hash__(self) -> int:
        return hash((id(self.system), self.idx))

    def __repr__(self) -> str:
        return f"Root({self.system.kind}, {self.idx})"


class RootSystem:
    """Shared interface of the concrete systems."""

    kind: str
    count: int

    def unit(self, idx: int) -> Vec:
        raise NotImplementedError

    def negate_idx(self, idx: int) -> int:
        raise NotImplementedError

    def reflect_idx(self, mirror: int, idx: int) -> int:
        raise NotImplementedError

    def length_class(self, idx: int) -> int:
        raise NotImplementedError

    def chamber_involution_idx(self, idx: int) -> int:
        raise NotImplementedError

    def root(self, idx: int) -> Root:
        return Root(self, idx % self.count)

    def roots(self) -> list[Root]:
        return [Root(self, k) for k in range(self.count)]

    def cos_between(self, i: int, j: int) -> QuadExt:
        return dot(self.unit(i), self.unit(j))

    def angle_deg(self, i: int, j: int) -> int:
        return angle_from_cos(self.cos_between(i, j))

    def interval(self, i: int, j: int) -> list[tuple[int, QuadExt, QuadExt]]:
        """Roots strictly between root i and root j, closest to i first.

        Each entry is (idx, p, q) with unit(idx) == p*unit(i) + q*unit(j),
        p > 0 and q > 0 exactly.
        """
        cache: dict[tuple[int, int], list[tuple[int, QuadExt, QuadExt]]]
        cache = getattr(self, "_interval_cache", None) or {}
        if not hasattr(self, "_interval_cache"):
            self._interval_cache = cache
        if (i, j) in cache:
            return cache[(i, j)]
        ui = self.unit(i)
        uj = self.unit(j)
        c = dot(ui, uj)
        denom = _ONE - c * c
        if not denom:
            raise ValueError("interval endpoints must not be parallel")
        out: list[tuple[int, QuadExt, QuadExt]] = []
        for k in range(self.count):
            if k == i or k == j:
                continue
            uk = self.unit(k)
            di = dot(uk, ui)
            dj = dot(uk, uj)
            p = (di - dj * c) / denom
            q = (dj - di * c) / denom
            if p.sign() <= 0 or q.sign() <= 0:
                continue
            if vec_add(vec_scale(p, ui), vec_scale(q, uj)) != uk:
                continue
            out.append((k, p, q))
        out.sort(key=lambda t: dot(self.unit(t[0]), ui), reverse=True)
        cache[(i, j)] = out
        return out

    def fold(self) -> "FoldedSystem":
        """Glue each root with its chamber-involution image into rays."""
        rays: list[Vec] = []
        projection: dict[int, int] = {}
        for k in range(self.count):
            w = vec_add(self.unit(k), self.unit(self.chamber_involution_idx(k)))
            if is_zero_vec(w):
                raise ConfigError("chamber involution negates a root; cannot fold")
            for r, ray in enumerate(rays):
                if same_ray(w, ray):
                    projection[k] = r
                    break
            else:
                projection[k] = len(rays)
                rays.append(w)
        return FoldedSystem._build(self, rays, projection)


class Rank2System(RootSystem):
    """A dihedral root system with 2n unit roots at multiples of pi/n."""

    def __init__(self, kind: str, n: int, p: int | None) -> None:
        self.kind = kind
        self.n = n
        self.p = p
        self.count = 2 * n
        self._units = _circle(n, p)

    def unit(self, idx: int) -> Vec:
        return self._units[idx % self.count]

    def negate_idx(self, idx: int) -> int:
        return (idx + self.n) % self.count

    def reflect_idx(self, mirror: int, idx: int) -> int:
        # s_mirror negates the mirror root and fixes its perpendicular
        return (2 * mirror + self.n - idx) % self.count

    def length_class(self, idx: int) -> int:
        if self.n == 1:
            return 0
        return idx % 2

    def chamber_involution_idx(self, idx: int) -> int:
        return (1 - idx) % self.count

    def position_root(self, pos: int) -> Root:
        """Root at word position pos (1-based); positions 1..n are positive."""
        if not 1 <= pos <= self.n:
            raise ValueError(f"position must be in 1..{self.n}, got {pos}")
        return self.root((pos - self.n // 2) % self.count)

    def root_position(self, idx: int) -> int | None:
        """Inverse of position_root, or None for a negative root."""
        pos = (idx + self.n // 2 - 1) % self.count + 1
        return pos if 1 <= pos <= self.n else None

    def positive_roots(self) -> list[Root]:
        return [self.position_root(j) for j in range(1, self.n + 1)]


def _mat_inv(m: list[list[QuadExt]]) -> list[list[QuadExt]]:
    """Exact inverse of a small square matrix by Gauss-Jordan elimination."""
    n = len(m)
    a = [row[:] + [(_ONE if i == j else _ZERO) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inv()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _mat_vec(m: list[list[QuadExt]], v: Vec) -> Vec:
    return tuple(dot(tuple(row), v) for row in m)


class F4System(RootSystem):
    """The 48 unit roots of the rank-4 system with two root lengths."""

    def __init__(self) -> None:
        self.kind = "F4"
        c = QuadExt(0, Fraction(1, 2), 2)
        vectors: list[Vec] = []
        classes: list[int] = []

        def basis(i: int, val: QuadExt) -> Vec:
            return tuple(val if k == i else _ZERO for k in range(4))

        # long roots (+-e_i +- e_j)/sqrt(2)
        for i in range(4):
            for j in range(i + 1, 4):
                for si in (c, -c):
                    for sj in (c, -c):
                        vectors.append(vec_add(basis(i, si), basis(j, sj)))
                        classes.append(0)
        # short roots +-e_i
        for i in range(4):
            for s in (_ONE, -_ONE):
                vectors.append(basis(i, s))
                classes.append(1)
        # short roots (+-1 +-1 +-1 +-1)/2
        for mask in range(16):
            vectors.append(tuple(_HALF if mask & (1 << k) == 0 else -_HALF for k in range(4)))
            classes.append(1)

        self.count = len(vectors)
        self._units = vectors
        self._classes = classes
        self._index = {v: k for k, v in enumerate(vectors)}
        self._tau = self._build_involution()

    def _build_involution(self) -> list[int]:
        # simple roots of a fixed chamber, listed long, long, short, short
        c = QuadExt(0, Fraction(1, 2), 2)
        u1: Vec = (_ZERO, c, -c, _ZERO)
        u2: Vec = (_ZERO, _ZERO, c, -c)
        u3: Vec = (_ZERO, _ZERO, _ZERO, _ONE)
        u4: Vec = (_HALF, -_HALF, -_HALF, -_HALF)
        simple = [u1, u2, u3, u4]
        b_inv = _mat_inv([[simple[j][i] for j in range(4)] for i in range(4)])
        reversed_cols = [u4, u3, u2, u1]

        def apply(v: Vec) -> Vec:
            coords = _mat_vec(b_inv, v)
            out: Vec = (_ZERO, _ZERO, _ZERO, _ZERO)
            for coef, col in zip(coords, reversed_cols):
                out = vec_add(out, vec_scale(coef, col))
            return out

        tau = []
        for k in range(self.count):
            img = apply(self._units[k])
            idx = self._index.get(img)
            if idx is None:
                raise ConfigError("chamber involution does not permute the roots")
            tau.append(idx)
        for k in range(self.count):
            if tau[tau[k]] != k:
                raise ConfigError("chamber involution is not an involution")
        if all(tau[k] == k for k in range(self.count)):
            raise ConfigError("chamber involution is trivial")
        return tau

    def unit(self, idx: int) -> Vec:
        return self._units[idx % self.count]

    def index_of(self, v: Vec) -> int:
        idx = self._index.get(v)
        if idx is None:
            raise ValueError("not a root vector")
        return idx

    def negate_idx(self, idx: int) -> int:
        return self._index[vec_neg(self._units[idx % self.count])]

    def reflect_idx(self, mirror: int, idx: int) -> int:
        r = self._units[mirror % self.count]
        v = self._units[idx % self.count]
        img = vec_sub(v, vec_scale(QuadExt(2) * dot(v, r), r))
        out = self._index.get(img)
        if out is None:
            raise ValueError("reflection left the root set")
        return out

    def length_class(self, idx: int) -> int:
        return self._classes[idx % self.count]

    def chamber_involution_idx(self, idx: int) -> int:
        return self._tau[idx % self.count]


def _cyclic_cmp_key(coords: Sequence[tuple[QuadExt, QuadExt]]):
    """Sort key for rays by angle from the first basis direction."""

    def half(xy: tuple[QuadExt, QuadExt]) -> int:
        x, y = xy
        sy = y.sign()
        if sy > 0 or (sy == 0 and x.sign() > 0):
            return 0
        return 1

    def cmp(i: int, j: int) -> int:
        a, b = coords[i], coords[j]
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = a[0] * b[1] - a[1] * b[0]
        return -cross.sign()

    return functools.cmp_to_key(cmp)


class FoldedSystem:
    """Rays obtained by gluing roots along the chamber involution."""

    def __init__(self) -> None:
        raise TypeError("use RootSystem.fold()")

    @classmethod
    def _build(
        cls, parent: RootSystem, rays: list[Vec], projection: dict[int, int]
    ) -> "FoldedSystem":
        self = object.__new__(cls)
        self.parent = parent
        # order the rays by angle within the fixed plane of the involution
        basis = cls._fixed_basis(parent)
        coords = [cls._plane_coords(w, basis) for w in rays]
        order = sorted(range(len(rays)), key=_cyclic_cmp_key(coords))
        rank = {old: new for new, old in enumerate(order)}
        self.rays = [rays[k] for k in order]
        self.projection = {root: rank[r] for root, r in projection.items()}
        self.count = len(self.rays)
        mult = [0] * self.count
        for r in self.projection.values():
            mult[r] += 1
        self.multiplicities = mult
        self.kind = "I8" if self.count == 16 else "A1"
        if self.kind == "A1" and self.count != 2:
            raise ConfigError(f"unexpected folded ray count {self.count}")
        return self

    @staticmethod
    def _fixed_basis(parent: RootSystem) -> tuple[Vec, Vec]:
        if isinstance(parent, Rank2System):
            return (_ONE, _ZERO), (_ZERO, _ONE)
        c = QuadExt(0, Fraction(1, 2), 2)
        u1: Vec = (_ZERO, c, -c, _ZERO)
        u2: Vec = (_ZERO, _ZERO, c, -c)
        u3: Vec = (_ZERO, _ZERO, _ZERO, _ONE)
        u4: Vec = (_HALF, -_HALF, -_HALF, -_HALF)
        tau = parent.chamber_involution_idx
        idx = parent.index_of  # type: ignore[attr-defined]
        e = vec_add(u1, parent.unit(tau(idx(u1))))
        f = vec_add(u2, parent.unit(tau(idx(u2))))
        return e, f

    @staticmethod
    def _plane_coords(w: Vec, basis: tuple[Vec, Vec]) -> tuple[QuadExt, QuadExt]:
        e, f = basis
        g = _mat_inv([[dot(e, e), dot(f, e)], [dot(e, f), dot(f, f)]])
        return _mat_vec(g, (dot(w, e), dot(w, f)))  # type: ignore[return-value]

    def ray(self, idx: int) -> Vec:
        return self.rays[idx % self.count]

    def multiplicity(self, idx: int) -> int:
        return self.multiplicities[idx % self.count]

    def length_class(self, idx: int) -> int:
        """0 for doubled rays, 1 for quadrupled rays (single class when equal)."""
        mults = sorted(set(self.multiplicities))
        return mults.index(self.multiplicity(idx))

    def negate_idx(self, idx: int) -> int:
        return (idx + self.count // 2) % self.count

    def reflect_idx(self, mirror: int, idx: int) -> int:
        return (2 * mirror + self.count // 2 - idx) % self.count

    def cos2_between(self, i: int, j: int) -> QuadExt:
        """Exact squared cosine between rays i and j."""
        wi, wj = self.ray(i), self.ray(j)
        d = dot(wi, wj)
        return (d * d) / (dot(wi, wi) * dot(wj, wj))

    def preimages(self, idx: int) -> list[int]:
        idx %= self.count
        return sorted(k for k, r in self.projection.items() if r == idx)


_SYSTEMS: dict[str, RootSystem] = {}


def get_system(kind: str) -> RootSystem:
    """Shared instance of the root system named A1, B2, G2, or F4."""
    sys = _SYSTEMS.get(kind)
    if sys is None:
        if kind == "A1":
            sys = Rank2System("A1", 1, None)
        elif kind == "B2":
            sys = Rank2System("B2", 4, 2)
        elif kind == "G2":
            sys = Rank2System("G2", 6, 3)
        elif kind == "F4":
            sys = F4System()
        else:
            raise ConfigError(f"unknown root system kind {kind!r}")
        _SYSTEMS[kind] = sys
    return sys
