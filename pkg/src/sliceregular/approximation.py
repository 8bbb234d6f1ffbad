"""Rational inner approximation of Schur-class regular functions.

The quaternionic step is an assembly: split the target along one slice
into two complex Schur functions, approximate each by a finite Blaschke
product, and push the pair back through the regular extension.  The sup
error on a compact sub-ball is then at most the sum of the four complex
errors on the corresponding disk, so each complex run gets a quarter of
the budget.

The complex engine is the Schur algorithm: peel parameters
``gamma_k = g_k(0)`` off the recursion

    g_{k+1}(z) = (1/z) (g_k(z) - gamma_k) / (1 - conj(gamma_k) g_k(z)),

truncate at depth d, and close with a unimodular stop parameter.  The
backward recursion then yields a degree <= d Blaschke product matching
the target's Taylor series through order d; the achieved error is always
certified by dense sampling, never assumed from theory.  A target that
is itself a finite Blaschke product terminates the recursion with a
boundary parameter and is recovered exactly.

Whether the assembled quaternionic function is *inner* (unimodular
boundary values) is measured and reported, not asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AssemblyError, ConvergenceError, DomainError, PreconditionError
from .matrix import QuatMatrix, norms
from .principles import decompose_at_max
from .quaternion import ImaginaryUnit, Quaternion, UNIT_J, UNIT_K
from .sampling import Ball, sample
from .series import MatrixSeries, ScalarSeries, split

MAX_SCHUR_DEPTH = 64
BOUNDARY_SNAP = 1e-12
SCHUR_SUP_TOL = 1e-9


# ----------------------------------------------------------------------
# Blaschke products


class BlaschkeProduct:
    """Finite Blaschke product ``c prod_i (z - z_i) / (1 - conj(z_i) z)``.

    All zeros lie in the open unit disk and |c| = 1, so the boundary
    modulus is 1 by construction and the open disk maps into itself.
    """

    __slots__ = ("zeros", "constant")

    def __init__(self, zeros, constant):
        zeros = np.asarray(zeros, dtype=complex)
        constant = complex(constant)
        if zeros.size and np.max(np.abs(zeros)) >= 1.0:
            raise DomainError("Blaschke zeros must lie strictly inside the disk")
        if abs(abs(constant) - 1.0) > 1e-12:
            raise DomainError(f"|constant| = {abs(constant)} is not 1")
        zeros = zeros.copy()
        zeros.flags.writeable = False
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "constant", constant / abs(constant))

    def __setattr__(self, name, value):
        raise AttributeError("BlaschkeProduct is immutable")

    @property
    def degree(self) -> int:
        return int(self.zeros.size)

    def __call__(self, z):
        """Evaluate at a complex point or ndarray of points."""
        z_arr = np.asarray(z, dtype=complex)
        out = np.full_like(z_arr, self.constant)
        for zero in self.zeros:
            out = out * (z_arr - zero) / (1.0 - np.conj(zero) * z_arr)
        if np.isscalar(z) or z_arr.ndim == 0:
            return complex(out)
        return out

    def boundary_modulus(self, count: int = 256) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(count) / count
        return np.abs(self(np.exp(1j * theta)))

    def to_dict(self) -> dict:
        return {
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "c": [self.constant.real, self.constant.imag],
        }

    def __repr__(self):
        return f"BlaschkeProduct(degree={self.degree})"


# ----------------------------------------------------------------------
# Schur recursion on Taylor coefficients


class SchurParameters(NamedTuple):
    """Parameters peeled off the recursion, plus whether it hit the boundary.

    ``terminated`` means the last parameter is unimodular: the target is
    (numerically) a finite Blaschke product of that depth and is
    recovered exactly.
    """

    gammas: tuple
    terminated: bool


def _series_divide(num, den, nterms: int) -> np.ndarray:
    out = np.zeros(nterms, dtype=complex)
    for n in range(nterms):
        acc = num[n] if n < len(num) else 0.0
        for k in range(1, min(n, len(den) - 1) + 1):
            acc -= den[k] * out[n - k]
        out[n] = acc / den[0]
    return out


def schur_parameters(coeffs: Sequence[complex], count: int) -> SchurParameters:
    """First ``count`` Schur parameters of the polynomial with these coefficients."""
    cur = np.zeros(max(len(coeffs), count + 2), dtype=complex)
    cur[:len(coeffs)] = np.asarray(coeffs, dtype=complex)
    gammas = []
    for _ in range(count):
        gamma = complex(cur[0])
        gammas.append(gamma)
        if abs(gamma) >= 1.0 - BOUNDARY_SNAP:
            return SchurParameters(tuple(gammas), True)
        num = cur.copy()
        num[0] -= gamma
        den = -np.conj(gamma) * cur
        den[0] += 1.0
        cur = _series_divide(num, den, len(cur))[1:]
    return SchurParameters(tuple(gammas), False)


def _blaschke_polynomials(gammas, stop):
    num = np.array([stop], dtype=complex)
    den = np.array([1.0], dtype=complex)
    for gamma in reversed(gammas):
        z_num = np.concatenate(([0.0], num))
        den_pad = np.concatenate((den, [0.0]))
        num, den = gamma * den_pad + z_num, den_pad + np.conj(gamma) * z_num
    return num, den


def _polyval_ascending(coeffs, z):
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def blaschke_at_depth(coeffs: Sequence[complex], depth: int) -> BlaschkeProduct:
    """The depth-``d`` Schur approximant of a Schur-class polynomial.

    If the recursion terminates earlier (the target is a finite Blaschke
    product), the terminating unimodular parameter is the stop and the
    target is reproduced exactly; otherwise the next parameter is snapped
    to the circle to close the recursion.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    params = schur_parameters(coeffs, depth + 1)
    if params.terminated:
        gammas = params.gammas[:-1]
        stop = params.gammas[-1]
        stop = stop / abs(stop)
    else:
        gammas = params.gammas[:depth]
        tail = params.gammas[depth]
        stop = tail / abs(tail) if abs(tail) > 1e-14 else 1.0 + 0j
    num, den = _blaschke_polynomials(gammas, stop)

    # exact zeros at the origin come off as a plain power of z
    scale = float(np.max(np.abs(num)))
    lead = 0
    while lead < len(num) - 1 and abs(num[lead]) <= 1e-14 * scale:
        lead += 1
    body = num[lead:]
    # degree drop at the top: trim negligible high-order coefficients
    top = len(body)
    while top > 1 and abs(body[top - 1]) <= 1e-14 * scale:
        top -= 1
    body = body[:top]
    zeros = np.zeros(lead, dtype=complex)
    if len(body) > 1:
        zeros = np.concatenate([zeros, np.roots(body[::-1])])
    if zeros.size and np.max(np.abs(zeros)) >= 1.0 - 1e-14:
        raise ConvergenceError(
            "numerator root reached the unit circle; the approximant is not "
            "a valid Blaschke product at this depth",
            best_depth=depth,
        )

    # num = c * prod (z - z_i) and den is the reflected polynomial with
    # den(0) = 1, so the unimodular constant is the top numerator coefficient
    constant = complex(body[-1])
    if abs(constant) < 1e-8:
        raise ConvergenceError("degenerate numerator; cannot normalize the "
                               "Blaschke constant", best_depth=depth)
    return BlaschkeProduct(zeros, constant / abs(constant))


def _disk_grid(rho: float, rings: int = 24, per_ring: int = 96) -> np.ndarray:
    """Deterministic grid on the closed disk of radius rho, boundary included."""
    radii = rho * np.sqrt((np.arange(rings) + 1.0) / rings)
    theta = 2.0 * np.pi * np.arange(per_ring) / per_ring
    pts = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    return np.concatenate([[0.0 + 0.0j], pts])


def complex_inner_approx(coeffs: Sequence[complex], epsilon: float,
                         rho: float = 0.9,
                         max_depth: int = MAX_SCHUR_DEPTH) -> BlaschkeProduct:
    """Approximate a Schur-class polynomial by a finite Blaschke product.

    The input is the Taylor coefficient list of a polynomial mapping the
    disk into the closed disk (checked by sampling; violations raise
    :class:`DomainError`).  Depth increases until the sampled sup error
    on the closed ``rho`` disk drops below ``epsilon``; running out of
    depth raises :class:`ConvergenceError` carrying the best error seen.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if not 0 < rho < 1:
        raise DomainError("rho must lie in (0, 1)")
    check = _disk_grid(0.999, rings=16, per_ring=64)
    gvals = _polyval_ascending(coeffs, check)
    sup = float(np.max(np.abs(gvals)))
    if sup > 1.0 + SCHUR_SUP_TOL:
        raise DomainError(f"input is not Schur class: sampled sup {sup}")

    b, err, depth = best_blaschke_up_to_depth(coeffs, max_depth, rho,
                                              stop_at=epsilon)
    if err <= epsilon:
        return b
    raise ConvergenceError(
        f"no depth <= {max_depth} reached epsilon = {epsilon}; "
        f"best error {err:.3e} at depth {depth}",
        best_error=err,
        best_depth=depth,
    )


def best_blaschke_up_to_depth(coeffs: Sequence[complex], max_depth: int,
                              rho: float = 0.9, stop_at: float = 0.0):
    """Best approximant over depths 1..max_depth: (product, error, depth).

    The error is the sampled sup on the closed ``rho`` disk.  Because the
    best-so-far is kept, the returned error is non-increasing in the
    depth budget; the per-depth raw errors are not monotone.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    grid = _disk_grid(rho)
    target = _polyval_ascending(coeffs, grid)
    best = None
    best_err = math.inf
    best_depth = 0
    for depth in range(1, max_depth + 1):
        b = blaschke_at_depth(coeffs, depth)
        err = float(np.max(np.abs(target - b(grid))))
        if err < best_err:
            best, best_err, best_depth = b, err, depth
        if best_err <= stop_at:
            break
        if b.degree < depth:
            # recursion terminated: deeper approximants will not change
            break
    return best, best_err, best_depth


# ----------------------------------------------------------------------
# quaternionic assembly


class SchurCheck(NamedTuple):
    is_schur: bool
    sup: float


def is_schur(f: ScalarSeries, samples: int = 4096, seed: int = 0) -> SchurCheck:
    """Sampled test that f maps the unit ball into its closure."""
    pts = sample(Ball(0.999), samples, seed)
    sup = float(np.max(f.abs_batch(pts)))
    return SchurCheck(sup <= 1.0 + SCHUR_SUP_TOL, sup)


def _qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product on (..., 4) component arrays."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def _embed_complex(values: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Map complex values into the slice of ``unit`` as (..., 4) arrays."""
    out = np.zeros(values.shape + (4,))
    out[..., 0] = values.real
    out[..., 1] = values.imag * unit.x1
    out[..., 2] = values.imag * unit.x2
    out[..., 3] = values.imag * unit.x3
    return out


@dataclass(frozen=True)
class QuatRationalApprox:
    """Rational approximant r = ext(r1 + r2 K) of a Schur-class function.

    ``r1`` and ``r2`` are Blaschke products on the slice of ``slice_unit``;
    a component that is *identically* zero in the splitting is kept as the
    exact rational zero (None) instead of a Blaschke product, since a
    modulus-one function can only reach 0 with error ~ rho^depth.
    Evaluation anywhere in the ball goes through the extension bracket.
    ``boundary_modulus_range`` records the measured |r| statistics near the
    boundary; innerness of the assembled function is reported, not claimed.
    """

    r1: BlaschkeProduct | None
    r2: BlaschkeProduct | None
    slice_unit: ImaginaryUnit
    split_unit: ImaginaryUnit
    epsilon: float
    rho: float
    measured_sup: float
    boundary_modulus_range: tuple
    seed: int

    def eval_batch(self, points) -> np.ndarray:
        """Values at a list of quaternion points, as an (N, 4) array."""
        x = np.array([p.w for p in points])
        yv = np.array([[p.x, p.y, p.z] for p in points])
        y = np.linalg.norm(yv, axis=1)
        units = np.zeros((len(points), 4))
        nz = y > 0.0
        units[nz, 1:] = yv[nz] / y[nz, None]
        units[~nz, 1] = 1.0  # real points: any slice gives the same value

        z_plus = x + 1j * y
        z_minus = x - 1j * y
        k_arr = np.array([0.0, self.split_unit.x1, self.split_unit.x2,
                          self.split_unit.x3])
        j_arr = np.array([0.0, self.slice_unit.x1, self.slice_unit.x2,
                          self.slice_unit.x3])

        def slice_value(z):
            v1 = self.r1(z) if self.r1 is not None else np.zeros_like(z)
            v2 = self.r2(z) if self.r2 is not None else np.zeros_like(z)
            return (_embed_complex(v1, self.slice_unit)
                    + _qmul(_embed_complex(v2, self.slice_unit),
                            np.broadcast_to(k_arr, (len(points), 4))))

        v_plus = slice_value(z_plus)
        v_minus = slice_value(z_minus)
        ij = _qmul(units, np.broadcast_to(j_arr, (len(points), 4)))
        return 0.5 * (v_plus + v_minus + _qmul(ij, v_minus - v_plus))

    def eval(self, q: Quaternion) -> Quaternion:
        return Quaternion(*self.eval_batch([q])[0])

    def to_dict(self) -> dict:
        return {
            "type": "quat_rational",
            "J": self.slice_unit.to_list(),
            "K": self.split_unit.to_list(),
            "r1": self.r1.to_dict() if self.r1 is not None else None,
            "r2": self.r2.to_dict() if self.r2 is not None else None,
            "epsilon": self.epsilon,
            "rho": self.rho,
            "measured_sup": self.measured_sup,
            "boundary_modulus_range": list(self.boundary_modulus_range),
        }

    def normal_form(self):
        """Quotient form of each slice factor: (numerator, denominator)
        coefficient pairs, emitted only for degree <= 4 (the coefficient
        blow-up past that is not worth printing).  Returns None above the
        cutoff."""
        degrees = [b.degree for b in (self.r1, self.r2) if b is not None]
        if degrees and max(degrees) > 4:
            return None

        def polys(b):
            if b is None:
                return np.array([0.0 + 0j]), np.array([1.0 + 0j])
            num = np.array([b.constant], dtype=complex)
            den = np.array([1.0 + 0j])
            for zero in b.zeros:
                num = np.convolve(num, np.array([-zero, 1.0]))
                den = np.convolve(den, np.array([1.0, -np.conj(zero)]))
            return num, den

        n1, d1 = polys(self.r1)
        n2, d2 = polys(self.r2)
        return {
            "r1": {"num": [[c.real, c.imag] for c in n1],
                   "den": [[c.real, c.imag] for c in d1]},
            "r2": {"num": [[c.real, c.imag] for c in n2],
                   "den": [[c.real, c.imag] for c in d2]},
        }


def approximate_scalar(f: ScalarSeries, epsilon: float,
                       slice_unit: ImaginaryUnit = UNIT_J,
                       split_unit: ImaginaryUnit = UNIT_K,
                       rho: float = 0.9, samples: int = 10_000,
                       seed: int = 0) -> QuatRationalApprox:
    """Approximate a Schur-class series by a rational inner assembly.

    Splits along ``slice_unit``, runs the complex engine on each half
    with an epsilon/4 budget, extends, and certifies the quaternionic sup
    error on the compact ball of radius ``rho`` by seeded sampling.  A
    certified error above epsilon raises :class:`AssemblyError`.
    """
    check = is_schur(f, seed=seed)
    if not check.is_schur:
        raise DomainError(f"not Schur class: sampled sup |f| = {check.sup}")
    pair = split(f, slice_unit, split_unit)

    def component(coeffs):
        if float(np.max(np.abs(coeffs))) == 0.0:
            return None  # exact rational zero; nothing to approximate
        return complex_inner_approx(coeffs, epsilon / 4.0, rho)

    r1 = component(pair.f_coeffs)
    r2 = component(pair.g_coeffs)

    pts = sample(Ball(rho), samples, np.random.SeedSequence(entropy=seed, spawn_key=(1,)))
    approx = QuatRationalApprox(
        r1=r1, r2=r2, slice_unit=slice_unit, split_unit=split_unit,
        epsilon=epsilon, rho=rho, measured_sup=0.0,
        boundary_modulus_range=(0.0, 0.0), seed=seed,
    )
    rv = approx.eval_batch(pts)
    fv = np.array([[v.w, v.x, v.y, v.z] for v in f.eval_batch(pts)])
    sup = float(np.max(np.linalg.norm(rv - fv, axis=1)))
    if sup > epsilon:
        raise AssemblyError(
            f"assembled approximant misses the budget: sup {sup} > {epsilon}",
            measured_sup=sup,
        )
    shell = sample(Ball(0.9999), samples // 4,
                   np.random.SeedSequence(entropy=seed, spawn_key=(2,)))
    shell = [p * (1.0 / max(abs(p), 1e-12)) * 0.9999 for p in shell]
    moduli = np.linalg.norm(approx.eval_batch(shell), axis=1)
    rng_stats = (float(moduli.min()), float(moduli.max()))
    return QuatRationalApprox(
        r1=r1, r2=r2, slice_unit=slice_unit, split_unit=split_unit,
        epsilon=epsilon, rho=rho, measured_sup=sup,
        boundary_modulus_range=rng_stats, seed=seed,
    )


@dataclass(frozen=True)
class Matrix2x2Approx:
    """U diag(1, r(q)) V with a rational inner scalar in the corner."""

    u: QuatMatrix
    v: QuatMatrix
    r: QuatRationalApprox
    measured_sup: float

    def eval(self, q: Quaternion) -> QuatMatrix:
        rv = self.r.eval(q)
        corner = QuatMatrix.from_rows([[Quaternion(1.0), Quaternion(0.0)],
                                       [Quaternion(0.0), rv]])
        return self.u @ corner @ self.v


def approximate_matrix_2x2(f: MatrixSeries, epsilon: float, rho: float = 0.9,
                           samples: int = 2048, seed: int = 0) -> Matrix2x2Approx:
    """Approximate a norm-one 2x2 regular function by rational inner matrices.

    Requires ``||F(q)|| = 1`` on the ball (sampled, tol 1e-9): the
    decomposition then peels off a unimodular top and leaves one scalar
    Schur-class corner, which the scalar machinery approximates.
    """
    if f.dim != 2:
        raise DomainError("this corollary is for 2x2 functions")
    pts = sample(Ball(0.999 * min(f.radius, 1.0)), max(samples, 1000),
                 np.random.SeedSequence(entropy=seed, spawn_key=(3,)))
    a, b = f.eval_batch(pts)
    from .matrix import singular_values_batch

    tops = singular_values_batch((a, b))[:, 0]
    dev = float(np.max(np.abs(tops - 1.0)))
    if dev > 1e-9:
        raise PreconditionError(
            f"operator norm is not identically 1: max deviation {dev:.3e}"
        )
    decomp = decompose_at_max(f, 0.0, samples=max(samples, 1000), seed=seed)
    corner = decomp.g.entry_series(0, 0)
    r = approximate_scalar(corner, epsilon, rho=rho, seed=seed)

    probe = sample(Ball(rho), samples, np.random.SeedSequence(entropy=seed, spawn_key=(4,)))
    approx = Matrix2x2Approx(u=decomp.u, v=decomp.v, r=r, measured_sup=0.0)
    sup = 0.0
    for p in probe[: samples // 4]:
        diff = f.eval(p) - approx.eval(p)
        sup = max(sup, norms(diff).operator)
    return Matrix2x2Approx(u=decomp.u, v=decomp.v, r=r, measured_sup=float(sup))
