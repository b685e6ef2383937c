"""The group of upper unitriangular 3x3 matrices over a product ring.

Elements are stored by their three strict upper entries; the full matrix is
never materialized (the test suite keeps a brute-force 3x3 oracle).  All the
group-theoretic structure used downstream reads off these entries:

    (g * h)   = (g12 + h12,  g13 + h13 + g12*h23,  g23 + h23)
    [g, h]    = (0,  g12*h23 - h12*g23,  0)        (always central)
    g^n       = (n*g12,  n*g13 + C(n,2)*g12*g23,  n*g23)

The distinguished generators a1 (lower one in the (2,3) slot) and a2 (one in
the (1,2) slot) generate the integer-entry copy of the Heisenberg group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import RingDesc, RingElem, RingMismatchError


@dataclass(frozen=True)
class UT3Elem:
    ring: RingDesc
    u12: RingElem
    u13: RingElem
    u23: RingElem

    def __post_init__(self):
        for entry in (self.u12, self.u13, self.u23):
            if entry.ring != self.ring:
                raise RingMismatchError("entry over the wrong ring")

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "UT3Elem") -> "UT3Elem":
        if self.ring != other.ring:
            raise RingMismatchError("mixed rings")
        return UT3Elem(
            self.ring,
            self.u12 + other.u12,
            self.u13 + other.u13 + self.u12 * other.u23,
            self.u23 + other.u23,
        )

    def inv(self) -> "UT3Elem":
        return UT3Elem(
            self.ring,
            -self.u12,
            -self.u13 + self.u12 * self.u23,
            -self.u23,
        )

    def comm(self, other: "UT3Elem") -> "UT3Elem":
        """The commutator self^-1 other^-1 self other, in closed form."""
        if self.ring != other.ring:
            raise RingMismatchError("mixed rings")
        zero = RingElem.zero(self.ring)
        return UT3Elem(
            self.ring,
            zero,
            self.u12 * other.u23 - other.u12 * self.u23,
            zero,
        )

    def pow_int(self, n: int) -> "UT3Elem":
        binom = n * (n - 1) // 2
        return UT3Elem(
            self.ring,
            self.u12.scale(n),
            self.u13.scale(n) + (self.u12 * self.u23).scale(binom),
            self.u23.scale(n),
        )

    # -- predicates ---------------------------------------------------------

    def is_identity(self) -> bool:
        return self.u12.is_zero() and self.u13.is_zero() and self.u23.is_zero()

    def is_central(self) -> bool:
        """Central iff both off-center entries vanish (then it commutes with
        a1 and a2, hence with everything)."""
        return self.u12.is_zero() and self.u23.is_zero()

    def in_centralizer_a(self, i: int) -> bool:
        """Membership in the centralizer of the distinguished generator a_i."""
        if i == 1:
            return self.u12.is_zero()
        if i == 2:
            return self.u23.is_zero()
        raise ValueError("i must be 1 or 2")

    def __str__(self) -> str:
        return "{e12: %s, e13: %s, e23: %s}" % (self.u12, self.u13, self.u23)


def identity(ring: RingDesc) -> UT3Elem:
    z = RingElem.zero(ring)
    return UT3Elem(ring, z, z, z)


def a1(ring: RingDesc) -> UT3Elem:
    z = RingElem.zero(ring)
    return UT3Elem(ring, z, z, RingElem.one(ring))


def a2(ring: RingDesc) -> UT3Elem:
    z = RingElem.zero(ring)
    return UT3Elem(ring, RingElem.one(ring), z, z)


def elem(ring: RingDesc, e12, e13, e23) -> UT3Elem:
    """Convenience constructor accepting ints, literals, or ring elements."""

    def coerce(x):
        if isinstance(x, RingElem):
            return x
        if isinstance(x, int):
            return RingElem.integer(ring, x)
        from .rings import parse_elem

        return parse_elem(ring, x)

    return UT3Elem(ring, coerce(e12), coerce(e13), coerce(e23))
