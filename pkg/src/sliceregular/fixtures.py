"""Fixture builders shared by the verification suites and the tests.

Two fixtures come straight from worked examples of the theory: the
annulus function whose norm peaks on the inner boundary (so the
decomposition does not apply), and the non-regular diagonal function
whose top singular value is constant even though the function is not.
The rest are seeded random builders.
"""

from __future__ import annotations

import numpy as np

from .matrix import QuatMatrix, gram_schmidt_columns
from .principles import AnnulusDomain, BallDomain, PointwiseMatrixFunction
from .quaternion import Quaternion
from .series import MatrixSeries, ScalarSeries


def example1_function(inner: float = 0.25, outer: float = 1.0) -> PointwiseMatrixFunction:
    """[[q-1, 2],[0, 1/q]] on the annulus inner < |q| < outer."""

    def fn(q: Quaternion) -> QuatMatrix:
        return QuatMatrix.from_rows([
            [q - Quaternion(1.0), Quaternion(2.0)],
            [Quaternion(0.0), q.inverse()],
        ])

    def batch(points):
        qa = np.array([complex(p.w, p.x) for p in points])
        qb = np.array([complex(p.y, p.z) for p in points])
        n2 = np.abs(qa) ** 2 + np.abs(qb) ** 2
        a = np.zeros((len(points), 2, 2), dtype=complex)
        b = np.zeros((len(points), 2, 2), dtype=complex)
        a[:, 0, 0] = qa - 1.0
        b[:, 0, 0] = qb
        a[:, 0, 1] = 2.0
        a[:, 1, 1] = qa.conj() / n2
        b[:, 1, 1] = -qb / n2
        return a, b

    return PointwiseMatrixFunction(
        name=f"annulus[[q-1,2],[0,1/q]]({inner},{outer})",
        dim=2,
        domain=AnnulusDomain(inner, outer),
        fn=fn,
        batch_fn=batch,
    )


def example2_function() -> PointwiseMatrixFunction:
    """The non-regular diag(x0 + x2 j, 1) on the unit ball.

    Its singular values are sqrt(x0^2 + x2^2) and 1: the larger one is
    constant on the ball while the function is not, which is exactly why
    regularity matters for the singular-value maximum principle.
    """

    def fn(q: Quaternion) -> QuatMatrix:
        return QuatMatrix.from_rows([
            [Quaternion(q.w, 0.0, q.y, 0.0), Quaternion(0.0)],
            [Quaternion(0.0), Quaternion(1.0)],
        ])

    def batch(points):
        a = np.zeros((len(points), 2, 2), dtype=complex)
        b = np.zeros((len(points), 2, 2), dtype=complex)
        a[:, 0, 0] = [p.w for p in points]
        b[:, 0, 0] = [p.y for p in points]
        a[:, 1, 1] = 1.0
        return a, b

    return PointwiseMatrixFunction(
        name="nonregular diag(x0+x2 j, 1)",
        dim=2,
        domain=BallDomain(1.0),
        fn=fn,
        batch_fn=batch,
    )


# ----------------------------------------------------------------------
# seeded random builders


def random_quaternion(rng, scale: float = 1.0) -> Quaternion:
    return Quaternion(*(scale * rng.normal(size=4)))


def random_matrix(rng, n: int, scale: float = 1.0) -> QuatMatrix:
    return QuatMatrix.from_rows(
        [[random_quaternion(rng, scale) for _ in range(n)] for _ in range(n)]
    )


def random_unit_vector(rng, n: int) -> QuatMatrix:
    v = QuatMatrix.column([random_quaternion(rng) for _ in range(n)])
    return v * (1.0 / v.frobenius())


def random_unitary(rng, n: int) -> QuatMatrix:
    cols = [QuatMatrix.column([random_quaternion(rng) for _ in range(n)])
            for _ in range(n + 2)]
    basis = gram_schmidt_columns(cols, n)
    a1 = np.hstack([c.a1 for c in basis])
    a2 = np.hstack([c.a2 for c in basis])
    return QuatMatrix(a1, a2)


def random_real_orthogonal(rng, n: int) -> QuatMatrix:
    """Random real orthogonal matrix, embedded as a quaternion unitary.

    Real entries commute with quaternion scalars, which is what lets a
    left factor pass through the left powers of a series: for quaternion
    left factors, q^n U != U q^n and the sandwiched series would be a
    different function from the pointwise product.
    """
    cols = [QuatMatrix.column([Quaternion(v) for v in rng.normal(size=n)])
            for _ in range(n + 2)]
    basis = gram_schmidt_columns(cols, n)
    a1 = np.hstack([c.a1 for c in basis])
    a2 = np.hstack([c.a2 for c in basis])
    return QuatMatrix(a1, a2)


def random_polynomial(rng, degree: int, radius: float = np.inf) -> ScalarSeries:
    return ScalarSeries([random_quaternion(rng) for _ in range(degree + 1)], radius)


def random_matrix_series(rng, n: int, degree: int, radius: float = 1.0) -> MatrixSeries:
    """A non-constant random polynomial fixture on the ball."""
    coeffs = [random_matrix(rng, n, scale=1.0 / (k + 1)) for k in range(degree + 1)]
    series = MatrixSeries(coeffs, radius)
    if series.is_constant(1e-12):
        coeffs[1] = QuatMatrix.identity(n)
        series = MatrixSeries(coeffs, radius)
    return series


def bounded_scalar_series(rng, degree: int, bound: float = 0.9,
                          radius: float = np.inf, zero_constant: bool = False) -> ScalarSeries:
    """Random polynomial with sum of coefficient moduli equal to ``bound``.

    Then |h(q)| <= bound for |q| <= 1, which makes the series Schur class
    with room to spare.
    """
    coeffs = [random_quaternion(rng) for _ in range(degree + 1)]
    if zero_constant:
        coeffs[0] = Quaternion(0.0)
    total = sum(abs(c) for c in coeffs)
    if total == 0.0:
        coeffs[-1] = Quaternion(1.0)
        total = 1.0
    return ScalarSeries([c * (bound / total) for c in coeffs], radius)


def constant_norm_fixture(rng, n: int, degree: int,
                          radius: float = 1.0) -> MatrixSeries:
    """U diag(1, H(q)) V with ||H(q)|| < 1 on the ball, so ||F(q)|| is 1.

    The operator norm attains its maximum (namely 1) everywhere, which
    makes the interior-maximum hypothesis of the maximizing-vector and
    decomposition theorems true by construction rather than by search.
    H is a diagonal of strictly bounded scalar polynomials with a real
    orthogonal factor on the left and quaternion unitaries on the right;
    left factors must be real so the sandwich commutes with the left
    powers and the coefficient series equals the pointwise product.
    """
    u = random_real_orthogonal(rng, n)
    v = random_unitary(rng, n)
    w1 = random_real_orthogonal(rng, n - 1)
    w2 = random_unitary(rng, n - 1)
    tails = [bounded_scalar_series(rng, degree, bound=float(rng.uniform(0.3, 0.95)))
             for _ in range(n - 1)]
    coeffs = []
    for k in range(degree + 1):
        inner = QuatMatrix.diag([t.coeff(k) for t in tails])
        tail = w1 @ inner @ w2
        a1 = np.zeros((n, n), dtype=complex)
        a2 = np.zeros((n, n), dtype=complex)
        if k == 0:
            a1[0, 0] = 1.0
        a1[1:, 1:] = tail.a1
        a2[1:, 1:] = tail.a2
        coeffs.append(u @ QuatMatrix(a1, a2) @ v)
    return MatrixSeries(coeffs, radius)


def diag_series(entries, radius: float = 1.0) -> MatrixSeries:
    """diag of scalar series, e.g. diag(1, q/2): entries are ScalarSeries."""
    degree = max(e.degree for e in entries)
    n = len(entries)
    coeffs = []
    for k in range(degree + 1):
        coeffs.append(QuatMatrix.diag([e.coeff(k) for e in entries]))
    return MatrixSeries(coeffs, radius)


def mobius_taylor(a: complex, nterms: int) -> np.ndarray:
    """Taylor coefficients of the disk automorphism (z + a) / (1 + conj(a) z)."""
    if abs(a) >= 1:
        raise ValueError("parameter must lie in the open disk")
    out = np.zeros(nterms, dtype=complex)
    ac = np.conj(a)
    # (z + a) * sum_k (-ac z)^k
    geo = (-ac) ** np.arange(nterms)
    out += a * geo
    out[1:] += geo[:-1]
    return out
