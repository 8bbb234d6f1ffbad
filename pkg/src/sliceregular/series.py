"""Power-series algebra of (left) slice-regular functions.

A regular function on a ball is ``f(q) = sum_n q^n a_n`` with quaternion
coefficients on the right; everything here is a finite truncation of that
form.  The module provides evaluation, the splitting of a series along a
slice into two complex holomorphic pieces, the *-product (coefficient
convolution, cross-checked against the split-then-extend formula),
regular conjugate / symmetrization / reciprocal, and the regular
extension that rebuilds a function on the whole symmetric domain from
one slice.

Series may be recentered at a *real* point c, in which case the powers
are ``(q - c)^n``; non-real centers are out of scope because the
*-powers about them stop being plain powers.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import DomainError, SingularityError
from .matrix import QuatMatrix
from .quaternion import ImaginaryUnit, Quaternion, slice_decompose

# Truncation cap: series beyond this degree refuse to construct.
DEGREE_CAP = 64

ORTHOGONALITY_TOL = 1e-13


def _check_center_radius(center, radius):
    center = float(center)
    radius = float(radius)
    if not (radius > 0.0):
        raise DomainError("series radius must be positive")
    if not math.isfinite(center):
        raise DomainError("series center must be finite (and real)")
    return center, radius


class ScalarSeries:
    """Finite power series ``f(q) = sum_n (q - c)^n a_n`` with ``a_n`` quaternion.

    ``c`` is a real center (0 for ball-centered series) and evaluation is
    only accepted for ``|q - c| < radius``.
    """

    __slots__ = ("coeffs", "radius", "center")

    def __init__(self, coeffs: Sequence, radius: float = math.inf, center: float = 0.0):
        qs = tuple(c if isinstance(c, Quaternion) else Quaternion(c) for c in coeffs)
        if not qs:
            qs = (Quaternion(0.0),)
        if len(qs) - 1 > DEGREE_CAP:
            raise DomainError(f"degree {len(qs) - 1} exceeds the cap {DEGREE_CAP}")
        center, radius = _check_center_radius(center, radius)
        object.__setattr__(self, "coeffs", qs)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "center", center)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarSeries is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Quaternion:
        return self.coeffs[n] if n < len(self.coeffs) else Quaternion(0.0)

    def _check_point(self, q: Quaternion):
        if abs(q - Quaternion(self.center)) >= self.radius:
            raise DomainError(
                f"|q - {self.center}| = {abs(q - Quaternion(self.center))} "
                f"is outside the series ball of radius {self.radius}"
            )

    def eval(self, q: Quaternion) -> Quaternion:
        """Horner evaluation with left powers: coefficients stay on the right."""
        self._check_point(q)
        qc = q - Quaternion(self.center)
        acc = self.coeffs[-1]
        for k in range(len(self.coeffs) - 2, -1, -1):
            acc = qc * acc + self.coeffs[k]
        return acc

    def eval_batch(self, points: Sequence[Quaternion]) -> list:
        z1, z2 = _eval_scalar_stack(self.coeffs, self.center, points)
        return [Quaternion.from_pair(a, b) for a, b in zip(z1, z2)]

    def abs_batch(self, points: Sequence[Quaternion]) -> np.ndarray:
        z1, z2 = _eval_scalar_stack(self.coeffs, self.center, points)
        return np.sqrt(np.abs(z1) ** 2 + np.abs(z2) ** 2)

    def __add__(self, other):
        if not isinstance(other, ScalarSeries):
            return NotImplemented
        _require_same_center(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ScalarSeries(
            [self.coeff(k) + other.coeff(k) for k in range(n)],
            min(self.radius, other.radius),
            self.center,
        )

    def __sub__(self, other):
        if not isinstance(other, ScalarSeries):
            return NotImplemented
        _require_same_center(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ScalarSeries(
            [self.coeff(k) - other.coeff(k) for k in range(n)],
            min(self.radius, other.radius),
            self.center,
        )

    def __mul__(self, scalar):
        """Right scalar multiple ``f(q) a``: multiplies every coefficient."""
        if isinstance(scalar, (int, float)):
            scalar = Quaternion(scalar)
        if not isinstance(scalar, Quaternion):
            return NotImplemented
        return ScalarSeries([c * scalar for c in self.coeffs], self.radius, self.center)

    def is_constant(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs[1:])

    def conjugate(self) -> "ScalarSeries":
        return regular_conjugate(self)

    def __repr__(self):
        return f"ScalarSeries(degree={self.degree}, radius={self.radius}, center={self.center})"


class MatrixSeries:
    """Finite power series with square quaternion-matrix coefficients."""

    __slots__ = ("coeffs", "radius", "center")

    def __init__(self, coeffs: Sequence[QuatMatrix], radius: float = math.inf,
                 center: float = 0.0):
        ms = tuple(coeffs)
        if not ms:
            raise DomainError("matrix series needs at least one coefficient")
        shape = ms[0].shape
        if any(m.shape != shape for m in ms):
            raise DomainError("matrix series coefficients must share one shape")
        if not ms[0].is_square():
            raise DomainError("matrix series coefficients must be square")
        if len(ms) - 1 > DEGREE_CAP:
            raise DomainError(f"degree {len(ms) - 1} exceeds the cap {DEGREE_CAP}")
        center, radius = _check_center_radius(center, radius)
        object.__setattr__(self, "coeffs", ms)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "center", center)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixSeries is immutable")

    @property
    def dim(self) -> int:
        return self.coeffs[0].rows

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> QuatMatrix:
        if n < len(self.coeffs):
            return self.coeffs[n]
        return QuatMatrix.zeros(self.dim, self.dim)

    def eval(self, q: Quaternion) -> QuatMatrix:
        if abs(q - Quaternion(self.center)) >= self.radius:
            raise DomainError("evaluation point outside the series ball")
        qc = q - Quaternion(self.center)
        acc = self.coeffs[-1]
        for k in range(len(self.coeffs) - 2, -1, -1):
            acc = qc * acc + self.coeffs[k]
        return acc

    def eval_batch(self, points: Sequence[Quaternion]):
        """Stacked evaluation: returns the pair arrays (N, n, n) of the values."""
        qa = np.array([complex(p.w - self.center, p.x) for p in points])
        qb = np.array([complex(p.y, p.z) for p in points])
        a = np.broadcast_to(self.coeffs[-1].a1, (len(points),) + self.coeffs[-1].shape).copy()
        b = np.broadcast_to(self.coeffs[-1].a2, (len(points),) + self.coeffs[-1].shape).copy()
        for k in range(len(self.coeffs) - 2, -1, -1):
            na = qa[:, None, None] * a - qb[:, None, None] * b.conj()
            nb = qa[:, None, None] * b + qb[:, None, None] * a.conj()
            a = na + self.coeffs[k].a1
            b = nb + self.coeffs[k].a2
        return a, b

    def is_constant(self, tol: float = 0.0) -> bool:
        return all(m.max_abs_entry() <= tol for m in self.coeffs[1:])

    def entry_series(self, i: int, j: int) -> ScalarSeries:
        """The scalar series of one matrix entry."""
        return ScalarSeries([m.entry(i, j) for m in self.coeffs], self.radius, self.center)

    def __repr__(self):
        return (f"MatrixSeries(dim={self.dim}, degree={self.degree}, "
                f"radius={self.radius}, center={self.center})")


def _eval_scalar_stack(coeffs, center, points):
    qa = np.array([complex(p.w - center, p.x) for p in points])
    qb = np.array([complex(p.y, p.z) for p in points])
    last = coeffs[-1]
    a = np.full(len(points), complex(last.w, last.x))
    b = np.full(len(points), complex(last.y, last.z))
    for k in range(len(coeffs) - 2, -1, -1):
        ck = coeffs[k]
        na = qa * a - qb * b.conj()
        nb = qa * b + qb * a.conj()
        a = na + complex(ck.w, ck.x)
        b = nb + complex(ck.y, ck.z)
    return a, b


def _require_same_center(f, g):
    if f.center != g.center:
        raise DomainError("series must share their (real) center")


def recenter(series, new_center: float):
    """Re-expand a series about another *real* center.

    ``(q - c0)^m = ((q - c1) + (c1 - c0))^m`` is a plain binomial because
    the shift is real, so the new coefficients are exact finite sums.
    The new radius shrinks by the shift distance.
    """
    d = float(new_center) - series.center
    if d == 0.0:
        return series
    radius = series.radius - abs(d)
    if radius <= 0.0:
        raise DomainError("new center lies outside the current series ball")
    old = series.coeffs
    deg = len(old) - 1
    if isinstance(series, ScalarSeries):
        zero = Quaternion(0.0)
    else:
        zero = QuatMatrix.zeros(series.dim, series.dim)
    new = [zero] * (deg + 1)
    for m, cm in enumerate(old):
        binom = 1.0
        power = 1.0
        for k in range(m, -1, -1):
            new[k] = new[k] + (binom * power) * cm
            power *= d
            binom = binom * k / (m - k + 1) if m - k + 1 else binom
    cls = type(series)
    return cls(new, radius, float(new_center))


# ----------------------------------------------------------------------
# splitting along a slice


class SplitPair:
    """Restriction of a regular series to a slice: ``f_I(z) = F(z) + G(z) J``.

    ``F`` and ``G`` are complex polynomial coefficient arrays in the slice
    coordinate ``z = x + yI`` (identified with C); ``J`` is orthogonal to
    the slice unit ``I``.  The same object serves as the input to the
    regular extension: it is exactly "a holomorphic series on a slice".
    """

    __slots__ = ("slice_unit", "split_unit", "f_coeffs", "g_coeffs", "radius", "center")

    def __init__(self, slice_unit: ImaginaryUnit, split_unit: ImaginaryUnit,
                 f_coeffs, g_coeffs, radius: float = math.inf, center: float = 0.0):
        if not slice_unit.is_orthogonal(split_unit, ORTHOGONALITY_TOL):
            raise DomainError(
                f"split unit must be orthogonal to the slice unit "
                f"(dot = {slice_unit.dot(split_unit):.3e})"
            )
        center, radius = _check_center_radius(center, radius)
        object.__setattr__(self, "slice_unit", slice_unit)
        object.__setattr__(self, "split_unit", split_unit)
        object.__setattr__(self, "f_coeffs", np.asarray(f_coeffs, dtype=complex))
        object.__setattr__(self, "g_coeffs", np.asarray(g_coeffs, dtype=complex))
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "center", center)

    def __setattr__(self, name, value):
        raise AttributeError("SplitPair is immutable")

    def eval_f(self, z: complex) -> complex:
        return _polyval(self.f_coeffs, z - self.center)

    def eval_g(self, z: complex) -> complex:
        return _polyval(self.g_coeffs, z - self.center)

    def _embed(self, value: complex) -> Quaternion:
        u = self.slice_unit
        return Quaternion(value.real, value.imag * u.x1, value.imag * u.x2,
                          value.imag * u.x3)

    def value_at(self, z: complex) -> Quaternion:
        """The quaternion value f_I(z) at the slice point z = x + yI."""
        if abs(z - self.center) >= self.radius:
            raise DomainError("slice point outside the declared radius")
        return (self._embed(self.eval_f(z))
                + self._embed(self.eval_g(z)) * self.split_unit.as_quaternion())

    def extend(self, q: Quaternion) -> Quaternion:
        """Regular extension of the slice data, evaluated at q."""
        sp = slice_decompose(q)
        z_plus = complex(sp.x, sp.y)
        z_minus = complex(sp.x, -sp.y)
        v_plus = self.value_at(z_plus)
        v_minus = self.value_at(z_minus)
        return extend_from_slice_values(v_plus, v_minus, sp.unit, self.slice_unit)


def _polyval(coeffs, z):
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def extend_from_slice_values(v_plus: Quaternion, v_minus: Quaternion,
                             target_unit: ImaginaryUnit,
                             slice_unit: ImaginaryUnit) -> Quaternion:
    """The extension bracket for one point.

    Given the values of a slice function at ``x + yJ`` and ``x - yJ``
    (``J`` the slice unit), produce the value of its regular extension at
    ``x + yI`` (``I`` the target unit):

        (1/2) [ f(x+yJ) + f(x-yJ) + IJ ( f(x-yJ) - f(x+yJ) ) ]
    """
    ij = target_unit.as_quaternion() * slice_unit.as_quaternion()
    return (v_plus + v_minus + ij * (v_minus - v_plus)) * 0.5


def split(f: ScalarSeries, slice_unit: ImaginaryUnit,
          split_unit: ImaginaryUnit) -> SplitPair:
    """Split a series along a slice: coefficients a_n = alpha_n + beta_n J.

    ``alpha_n`` and ``beta_n`` live in the slice (identified with C);
    the slice and split units must be orthogonal.
    """
    if not slice_unit.is_orthogonal(split_unit, ORTHOGONALITY_TOL):
        raise DomainError("slice and split units must be orthogonal")
    i_vec = np.array(slice_unit.to_list())
    j_vec = np.array(split_unit.to_list())
    k_q = slice_unit.as_quaternion() * split_unit.as_quaternion()
    k_vec = np.array([k_q.x, k_q.y, k_q.z])
    alphas = []
    betas = []
    for a in f.coeffs:
        im = np.array([a.x, a.y, a.z])
        alphas.append(complex(a.w, float(im @ i_vec)))
        betas.append(complex(float(im @ j_vec), float(im @ k_vec)))
    return SplitPair(slice_unit, split_unit, alphas, betas, f.radius, f.center)


def regular_extension(pair: SplitPair, q: Quaternion) -> Quaternion:
    """Evaluate the regular extension of slice data at a quaternion point."""
    return pair.extend(q)


# ----------------------------------------------------------------------
# the *-product and its relatives


def star_product(f: ScalarSeries, g: ScalarSeries) -> ScalarSeries:
    """Regular product: coefficient convolution c_n = sum_k a_k b_{n-k}."""
    _require_same_center(f, g)
    fa, ga = f.coeffs, g.coeffs
    out = [Quaternion(0.0)] * (len(fa) + len(ga) - 1)
    for i, a in enumerate(fa):
        for j, b in enumerate(ga):
            out[i + j] = out[i + j] + a * b
    return ScalarSeries(out, min(f.radius, g.radius), f.center)


def star_via_splitting(f: ScalarSeries, g: ScalarSeries,
                       slice_unit: ImaginaryUnit,
                       split_unit: ImaginaryUnit) -> SplitPair:
    """The *-product computed on one slice via the splitting formula.

    With ``f_I = F + GJ`` and ``g_I = H + KJ``,

        (f*g)_I (z) = [F H - G conj(K o conj)] + [F K + G conj(H o conj)] J,

    where ``conj(K o conj)`` is the series with conjugated coefficients.
    Extending the returned pair reproduces the convolution product; the
    two routes are asserted equal in the test suite.
    """
    pf = split(f, slice_unit, split_unit)
    pg = split(g, slice_unit, split_unit)
    f_c, g_c = pf.f_coeffs, pf.g_coeffs
    h_c, k_c = pg.f_coeffs, pg.g_coeffs
    p = np.convolve(f_c, h_c) - np.convolve(g_c, k_c.conj())
    q = np.convolve(f_c, k_c) + np.convolve(g_c, h_c.conj())
    return SplitPair(slice_unit, split_unit, p, q,
                     min(f.radius, g.radius), f.center)


def regular_conjugate(f: ScalarSeries) -> ScalarSeries:
    """Conjugate every coefficient."""
    return ScalarSeries([c.conjugate() for c in f.coeffs], f.radius, f.center)


def symmetrization(f: ScalarSeries) -> ScalarSeries:
    """f^s = f * f^c, a slice-preserving series with real coefficients.

    ``f * f^c`` and ``f^c * f`` coincide; both are formed and compared as
    a cheap internal consistency check.
    """
    fc = regular_conjugate(f)
    left = star_product(f, fc)
    right = star_product(fc, f)
    scale = max(1.0, max(abs(c) for c in left.coeffs))
    worst = max(abs(a - b) for a, b in zip(left.coeffs, right.coeffs))
    if worst > 1e-12 * scale:
        raise ArithmeticError(
            f"f*f^c and f^c*f disagree by {worst:.3e}; symmetrization is broken"
        )
    return left


def regular_reciprocal(f: ScalarSeries, q: Quaternion,
                       singular_tol: float = 1e-12) -> Quaternion:
    """Pointwise value of the regular reciprocal f^{-*} at q.

    Computed as ``f^s(q)^{-1} f^c(q)``, which is valid because the
    symmetrization is slice preserving.  Points on (or numerically near)
    the zero locus of f^s raise :class:`SingularityError`.
    """
    fs = symmetrization(f)
    denom = fs.eval(q)
    if abs(denom) <= singular_tol:
        raise SingularityError(
            f"|f^s(q)| = {abs(denom):.3e} at q = {q!r}: zero locus of the "
            f"symmetrization hit"
        )
    return denom.inverse() * regular_conjugate(f).eval(q)


def star_pointwise(f: ScalarSeries, g: ScalarSeries, q: Quaternion) -> Quaternion:
    """(f*g)(q) through the evaluation identity, not the coefficients.

    When f(q) != 0, ``(f*g)(q) = f(q) g(f(q)^{-1} q f(q))``; when
    f(q) = 0 the product vanishes at q.  Used as an independent handle on
    *-product values, e.g. to check ``f * f^{-*} = 1`` pointwise.
    """
    v = f.eval(q)
    if abs(v) == 0.0:
        return Quaternion(0.0)
    moved = v.inverse() * q * v
    return v * g.eval(moved)


def reciprocal_identity_residual(f: ScalarSeries, q: Quaternion) -> float:
    """|(f * f^{-*})(q) - 1| via the pointwise product identity."""
    v = f.eval(q)
    if abs(v) == 0.0:
        return 1.0
    moved = v.inverse() * q * v
    return abs(v * regular_reciprocal(f, moved) - Quaternion(1.0))
