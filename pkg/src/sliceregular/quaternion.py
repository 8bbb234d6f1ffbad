"""Hamilton quaternion arithmetic and slice geometry.

The scalar ground type for the whole package is :class:`Quaternion`,
an immutable value ``w + x i + y j + z k`` with the Hamilton relations
``ij = -ji = k``, ``jk = -kj = i``, ``ki = -ik = j``.  On top of it sit
the unit 2-sphere of imaginary units (:class:`ImaginaryUnit`), points on
a complex slice (:class:`SlicePoint`), the complex-pair form
``q = z1 + z2 j`` (:class:`ComplexPair`) and the sigma distance that
governs power-series domains away from the origin.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import DomainError

# Absolute tolerance for similarity / same-slice decisions.
SLICE_TOL = 1e-12


class Quaternion:
    """Immutable real quaternion ``w + x i + y j + z k``.

    Arithmetic returns new values; instances are safe to share across
    workers.  Multiplication is the (noncommutative) Hamilton product.
    """

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        object.__setattr__(self, "w", float(w))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))
        object.__setattr__(self, "z", float(z))
        if not (math.isfinite(self.w) and math.isfinite(self.x)
                and math.isfinite(self.y) and math.isfinite(self.z)):
            raise DomainError("quaternion components must be finite")

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    # ------------------------------------------------------------------
    # constructors / conversions

    @classmethod
    def from_list(cls, values) -> "Quaternion":
        if len(values) != 4:
            raise DomainError(f"expected 4 components, got {len(values)}")
        return cls(*values)

    @classmethod
    def from_pair(cls, z1: complex, z2: complex) -> "Quaternion":
        """Inverse of :meth:`to_pair`: ``q = z1 + z2 j``."""
        z1 = complex(z1)
        z2 = complex(z2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    def to_pair(self) -> "ComplexPair":
        """Split ``q = z1 + z2 j`` with ``z1 = w + xi``, ``z2 = y + zi``.

        The round trip through :meth:`from_pair` is bit-exact.
        """
        return ComplexPair(complex(self.w, self.x), complex(self.y, self.z))

    def to_list(self) -> list:
        return [self.w, self.x, self.y, self.z]

    # ------------------------------------------------------------------
    # algebra

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __abs__(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x
                         + self.y * self.y + self.z * self.z)

    def squared_modulus(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> "Quaternion":
        n2 = self.squared_modulus()
        if n2 == 0.0:
            raise DomainError("zero quaternion has no inverse")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def imaginary_modulus(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imaginary_modulus() <= tol

    # ------------------------------------------------------------------
    # value semantics

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self.w == other.w and self.x == other.x
                and self.y == other.y and self.z == other.z)

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(value)
    return None


ZERO = Quaternion(0.0)
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


class ComplexPair(NamedTuple):
    """The unique split ``q = z1 + z2 j`` with complex ``z1``, ``z2``."""

    z1: complex
    z2: complex

    def to_quaternion(self) -> Quaternion:
        return Quaternion.from_pair(self.z1, self.z2)

    @classmethod
    def of(cls, q: Quaternion) -> "ComplexPair":
        return q.to_pair()

    def __mul__(self, other):
        """Product in pair form: ``(z1 w1 - z2 conj(w2), z1 w2 + z2 conj(w1))``."""
        if not isinstance(other, ComplexPair):
            return NotImplemented
        return ComplexPair(
            self.z1 * other.z1 - self.z2 * other.z2.conjugate(),
            self.z1 * other.z2 + self.z2 * other.z1.conjugate(),
        )


class ImaginaryUnit:
    """A point ``x1 i + x2 j + x3 k`` on the unit 2-sphere (so ``I^2 = -1``)."""

    __slots__ = ("x1", "x2", "x3")

    def __init__(self, x1, x2, x3):
        norm = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
        if not math.isfinite(norm) or abs(norm - 1.0) > 1e-9:
            raise DomainError(f"imaginary unit must have norm 1, got {norm}")
        object.__setattr__(self, "x1", float(x1))
        object.__setattr__(self, "x2", float(x2))
        object.__setattr__(self, "x3", float(x3))

    def __setattr__(self, name, value):
        raise AttributeError("ImaginaryUnit is immutable")

    @classmethod
    def from_vector(cls, x1, x2, x3) -> "ImaginaryUnit":
        """Normalize a nonzero 3-vector onto the sphere."""
        norm = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
        if norm == 0.0 or not math.isfinite(norm):
            raise DomainError("cannot normalize a zero or non-finite vector")
        return cls(x1 / norm, x2 / norm, x3 / norm)

    @classmethod
    def of(cls, q: Quaternion) -> "ImaginaryUnit":
        """Direction of the imaginary part of a non-real quaternion."""
        return cls.from_vector(q.x, q.y, q.z)

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def dot(self, other: "ImaginaryUnit") -> float:
        return self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3

    def is_orthogonal(self, other: "ImaginaryUnit", tol: float = 1e-13) -> bool:
        return abs(self.dot(other)) <= tol

    def orthogonal(self) -> "ImaginaryUnit":
        """A deterministic unit orthogonal to this one."""
        # cross with whichever axis is least aligned
        if abs(self.x1) <= abs(self.x2) and abs(self.x1) <= abs(self.x3):
            v = (0.0, -self.x3, self.x2)
        elif abs(self.x2) <= abs(self.x3):
            v = (self.x3, 0.0, -self.x1)
        else:
            v = (-self.x2, self.x1, 0.0)
        return ImaginaryUnit.from_vector(*v)

    def to_list(self) -> list:
        return [self.x1, self.x2, self.x3]

    def __eq__(self, other):
        if not isinstance(other, ImaginaryUnit):
            return NotImplemented
        return (self.x1, self.x2, self.x3) == (other.x1, other.x2, other.x3)

    def __hash__(self):
        return hash((self.x1, self.x2, self.x3))

    def __repr__(self):
        return f"ImaginaryUnit({self.x1!r}, {self.x2!r}, {self.x3!r})"


UNIT_I = ImaginaryUnit(1.0, 0.0, 0.0)
UNIT_J = ImaginaryUnit(0.0, 1.0, 0.0)
UNIT_K = ImaginaryUnit(0.0, 0.0, 1.0)


class SlicePoint:
    """A quaternion written as ``x + y I`` with ``y >= 0`` and ``I`` on the sphere."""

    __slots__ = ("x", "y", "unit")

    def __init__(self, x: float, y: float, unit: ImaginaryUnit):
        if y < 0.0:
            raise DomainError("slice coordinate y must be nonnegative")
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))
        object.__setattr__(self, "unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("SlicePoint is immutable")

    def realize(self) -> Quaternion:
        u = self.unit
        return Quaternion(self.x, self.y * u.x1, self.y * u.x2, self.y * u.x3)

    def as_complex(self) -> complex:
        """Coordinate of the point in its slice, identified with C."""
        return complex(self.x, self.y)

    def __repr__(self):
        return f"SlicePoint({self.x!r}, {self.y!r}, {self.unit!r})"


# ----------------------------------------------------------------------
# module-level operations


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return p * q


def conj_mod_inv(q: Quaternion):
    """Return ``(conjugate, modulus, inverse)`` of ``q``.

    Raises :class:`DomainError` for the inverse of zero.
    """
    return q.conjugate(), abs(q), q.inverse()


def slice_decompose(q: Quaternion, default_unit: ImaginaryUnit = UNIT_I) -> SlicePoint:
    """Write ``q = x + y I`` with ``y = |Im q| >= 0``.

    Real quaternions have no preferred slice; they get ``default_unit``
    (the i axis), which is consistent for everything evaluated on the
    real line.
    """
    y = q.imaginary_modulus()
    if y == 0.0:
        return SlicePoint(q.w, 0.0, default_unit)
    return SlicePoint(q.w, y, ImaginaryUnit.from_vector(q.x, q.y, q.z))


def same_slice(p: Quaternion, q: Quaternion, tol: float = SLICE_TOL) -> bool:
    """True when p and q lie on a common complex line ``L_I``.

    A real quaternion lies on every slice.  Orientation does not matter:
    ``L_I = L_{-I}``.
    """
    yp = p.imaginary_modulus()
    yq = q.imaginary_modulus()
    if yp <= tol or yq <= tol:
        return True
    up = (p.x / yp, p.y / yp, p.z / yp)
    uq = (q.x / yq, q.y / yq, q.z / yq)
    direct = max(abs(up[0] - uq[0]), abs(up[1] - uq[1]), abs(up[2] - uq[2]))
    flipped = max(abs(up[0] + uq[0]), abs(up[1] + uq[1]), abs(up[2] + uq[2]))
    return min(direct, flipped) <= tol


def sigma_distance(p: Quaternion, q: Quaternion) -> float:
    """Distance under which power-series balls live on general domains.

    ``|q - p|`` when the two points share a slice (in particular when
    either is real); otherwise
    ``sqrt((Re q - Re p)^2 + (|Im q| + |Im p|)^2)``.  The second branch
    reads the bracketed imaginary term as a sum of moduli so that the
    expression is real; that interpretation is pinned here and nowhere
    else.
    """
    if same_slice(p, q):
        return abs(q - p)
    dx = q.w - p.w
    dy = q.imaginary_modulus() + p.imaginary_modulus()
    return math.hypot(dx, dy)


def similar(p: Quaternion, q: Quaternion, tol: float = SLICE_TOL) -> bool:
    """True iff p = s^-1 q s for some nonzero s.

    Equivalent to equal real parts and equal imaginary moduli; checked
    within an absolute tolerance.
    """
    return (abs(p.w - q.w) <= tol
            and abs(p.imaginary_modulus() - q.imaginary_modulus()) <= tol)
