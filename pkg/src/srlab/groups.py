"""Twisted parameter groups of rank one and their norms.

SElem is the two-parameter group attached to characteristic 2 (cases with a
doubled or quadrupled bond); TElem is the three-parameter group attached to
characteristic 3.  Norms R and N, the auxiliary pair (u, v), the inverting
map omega, and the torus action through a group parameter all live here.
The negation signs are written out even where characteristic 2 makes them
trivial, so the formulas read the same in both characteristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError
from .field import FieldElem, TitsField
from .scalar import ExtVal, QuadExt, ext_min


@dataclass(frozen=True, eq=False)
class SElem:
    """Element (s, t) of the two-parameter twisted group (characteristic 2)."""

    s: FieldElem
    t: FieldElem

    def __post_init__(self) -> None:
        if self.field.p != 2:
            raise ConfigError("the two-parameter group needs characteristic 2")

    @property
    def field(self) -> TitsField:
        return self.s.field

    @classmethod
    def identity(cls, field: TitsField) -> "SElem":
        return cls(field.zero(), field.zero())

    @classmethod
    def center(cls, t: FieldElem) -> "SElem":
        return cls(t.field.zero(), t)

    def __mul__(self, other: "SElem") -> "SElem":
        s, t = self.s, self.t
        u, v = other.s, other.t
        return SElem(s + u, t + v + s.theta() * u)

    def inverse(self) -> "SElem":
        s, t = self.s, self.t
        return SElem(s, t + s.twisted_pow(1, 1))

    def is_identity(self) -> bool:
        return self.s.is_zero() and self.t.is_zero()

    def agrees(self, other: "SElem") -> bool:
        return self.s.agrees(other.s) and self.t.agrees(other.t)

    def norm(self) -> FieldElem:
        """R(s, t) = s^(theta+2) + s t + t^theta."""
        s, t = self.s, self.t
        return s.twisted_pow(2, 1) + s * t + t.theta()

    def __repr__(self) -> str:
        return f"SElem({self.s}, {self.t})"


@dataclass(frozen=True, eq=False)
class TElem:
    """Element (r, s, t) of the three-parameter twisted group (characteristic 3)."""

    r: FieldElem
    s: FieldElem
    t: FieldElem

    def __post_init__(self) -> None:
        if self.field.p != 3:
            raise ConfigError("the three-parameter group needs characteristic 3")

    @property
    def field(self) -> TitsField:
        return self.r.field

    @classmethod
    def identity(cls, field: TitsField) -> "TElem":
        z = field.zero()
        return cls(z, z, z)

    @classmethod
    def center(cls, t: FieldElem) -> "TElem":
        z = t.field.zero()
        return cls(z, z, t)

    def __mul__(self, other: "TElem") -> "TElem":
        r, s, t = self.r, self.s, self.t
        w, u, v = other.r, other.s, other.t
        return TElem(
            r + w,
            s + u + r.theta() * w,
            t + v - r * u + s * w - r.twisted_pow(1, 1) * w,
        )

    def inverse(self) -> "TElem":
        r, s, t = self.r, self.s, self.t
        return TElem(-r, -s + r.twisted_pow(1, 1), -t)

    def is_identity(self) -> bool:
        return self.r.is_zero() and self.s.is_zero() and self.t.is_zero()

    def agrees(self, other: "TElem") -> bool:
        return (
            self.r.agrees(other.r)
            and self.s.agrees(other.s)
            and self.t.agrees(other.t)
        )

    def norm(self) -> FieldElem:
        """N = r^(th+1) s^th - r t^th - r^(th+3) s - r^2 s^2 + s^(th+1) + t^2 - r^(2th+4)."""
        r, s, t = self.r, self.s, self.t
        return (
            r.twisted_pow(1, 1) * s.twisted_pow(0, 1)
            - r * t.twisted_pow(0, 1)
            - r.twisted_pow(3, 1) * s
            - r * r * s * s
            + s.twisted_pow(1, 1)
            + t * t
            - r.twisted_pow(4, 2)
        )

    def uv_pair(self) -> tuple[FieldElem, FieldElem]:
        """The pair (u, v) entering the inverting map."""
        r, s, t = self.r, self.s, self.t
        u = r * r * s - r * t + s.twisted_pow(0, 1) - r.twisted_pow(3, 1)
        v = (
            r.twisted_pow(0, 1) * s.twisted_pow(0, 1)
            - t.twisted_pow(0, 1)
            + r * s * s
            + s * t
            - r.twisted_pow(3, 2)
        )
        return u, v

    def omega(self) -> "TElem":
        """The inverting involution a -> (-v/N, -u/N, -t/N)."""
        n = self.norm()
        ninv = n.inv()
        u, v = self.uv_pair()
        return TElem(-(v * ninv), -(u * ninv), -(self.t * ninv))

    def __repr__(self) -> str:
        return f"TElem({self.r}, {self.s}, {self.t})"


def val_norm_exact_S(a: SElem) -> ExtVal:
    """Valuation of R(a) predicted from the component valuations."""
    two_plus_r2 = QuadExt(2, 1, 2)
    r2 = QuadExt(0, 1, 2)
    return ext_min(
        a.s.val().scale(two_plus_r2),
        a.t.val().scale(r2),
    )


def val_norm_exact_T(a: TElem) -> ExtVal:
    """Valuation of N(a) predicted from the component valuations."""
    c_r = QuadExt(4, 2, 3)
    c_s = QuadExt(1, 1, 3)
    return ext_min(
        a.r.val().scale(c_r),
        a.s.val().scale(c_s),
        a.t.val().scale(QuadExt(2)),
    )


def h_action_S(h: SElem, x: SElem) -> SElem:
    """Torus action through the parameter h: (u, v) -> (R^(2-th) u, R^th v)."""
    rho = h.norm()
    return SElem(rho.twisted_pow(2, -1) * x.s, rho.twisted_pow(0, 1) * x.t)


def h_action_T(h: TElem, x: TElem) -> TElem:
    """Torus action through h: (w, u, v) -> (N^(2-th) w, N^(th-1) u, N v)."""
    n = h.norm()
    return TElem(
        n.twisted_pow(2, -1) * x.r,
        n.twisted_pow(-1, 1) * x.s,
        n * x.t,
    )


def norm_val_constants(case: str) -> list[QuadExt]:
    """The positive scalars weighting component valuations in the norm bound."""
    if case == "G":
        return [QuadExt(4, 2, 3), QuadExt(1, 1, 3), QuadExt(2)]
    if case in ("B", "F"):
        return [QuadExt(2, 1, 2), QuadExt(0, 1, 2)]
    raise ConfigError(f"unknown case {case!r}")
