"""Dense quaternion matrices through the complex adjoint map.

A quaternion matrix is stored as its unique complex pair ``A = A1 + A2 j``,
which makes the complex adjoint

    chi(A) = [[ A1,        A2      ],
              [-conj(A2),  conj(A1)]]

a reshuffle rather than a computation.  Norms, singular values and
maximizing vectors are all routed through ``chi``: the operator norm of A
equals the operator norm of chi(A), the Frobenius norms differ by sqrt(2),
and the 2n singular values of chi(A) are the n singular values of A, each
repeated twice.

The SVD itself is a one-sided Jacobi iteration on the complex adjoint,
vectorized over stacks of matrices so the sampling harness can process
thousands of sample points per call.  Jacobi is slow asymptotically but
simple and accurate at the n <= 32 scale this package targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, FormatError, PairingError
from .quaternion import Quaternion

# Relative threshold deciding invertibility from the smallest singular value.
INVERTIBILITY_RTOL = 1e-10


class QuatMatrix:
    """Dense matrix over the quaternions, stored as ``A = A1 + A2 j``.

    ``A1`` and ``A2`` are complex numpy arrays of the same shape.  Values
    are immutable; all arithmetic returns new matrices.
    """

    __slots__ = ("a1", "a2")

    def __init__(self, a1, a2):
        a1 = np.asarray(a1, dtype=complex)
        a2 = np.asarray(a2, dtype=complex)
        if a1.shape != a2.shape or a1.ndim != 2:
            raise DomainError("pair parts must be 2-d arrays of equal shape")
        if not (np.isfinite(a1).all() and np.isfinite(a2).all()):
            raise DomainError("matrix entries must be finite")
        a1 = a1.copy()
        a2 = a2.copy()
        a1.flags.writeable = False
        a2.flags.writeable = False
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    def __setattr__(self, name, value):
        raise AttributeError("QuatMatrix is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_rows(cls, rows) -> "QuatMatrix":
        """Build from nested lists of Quaternion (or real numbers)."""
        qrows = [[_as_quaternion(e) for e in row] for row in rows]
        ncols = len(qrows[0])
        if any(len(r) != ncols for r in qrows):
            raise DomainError("ragged rows")
        a1 = np.array([[complex(e.w, e.x) for e in row] for row in qrows])
        a2 = np.array([[complex(e.y, e.z) for e in row] for row in qrows])
        return cls(a1, a2)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> "QuatMatrix":
        """Row-major flat list of entries."""
        if len(entries) != rows * cols:
            raise DomainError(f"expected {rows * cols} entries, got {len(entries)}")
        it = iter(entries)
        return cls.from_rows([[next(it) for _ in range(cols)] for _ in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QuatMatrix":
        cols = rows if cols is None else cols
        return cls(np.zeros((rows, cols), dtype=complex), np.zeros((rows, cols), dtype=complex))

    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        return cls(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex))

    @classmethod
    def diag(cls, entries) -> "QuatMatrix":
        qs = [_as_quaternion(e) for e in entries]
        a1 = np.diag([complex(q.w, q.x) for q in qs])
        a2 = np.diag([complex(q.y, q.z) for q in qs])
        return cls(a1, a2)

    @classmethod
    def column(cls, entries) -> "QuatMatrix":
        qs = [_as_quaternion(e) for e in entries]
        a1 = np.array([[complex(q.w, q.x)] for q in qs])
        a2 = np.array([[complex(q.y, q.z)] for q in qs])
        return cls(a1, a2)

    # ------------------------------------------------------------------
    # shape and access

    @property
    def rows(self) -> int:
        return self.a1.shape[0]

    @property
    def cols(self) -> int:
        return self.a1.shape[1]

    @property
    def shape(self):
        return self.a1.shape

    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_pair(self.a1[i, j], self.a2[i, j])

    def entries(self) -> list:
        return [self.entry(i, j) for i in range(self.rows) for j in range(self.cols)]

    def column_vector(self, j: int) -> "QuatMatrix":
        return QuatMatrix(self.a1[:, j:j + 1], self.a2[:, j:j + 1])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "QuatMatrix":
        return QuatMatrix(self.a1[r0:r1, c0:c1], self.a2[r0:r1, c0:c1])

    # ------------------------------------------------------------------
    # algebra

    def __add__(self, other):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        return QuatMatrix(self.a1 + other.a1, self.a2 + other.a2)

    def __sub__(self, other):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        return QuatMatrix(self.a1 - other.a1, self.a2 - other.a2)

    def __neg__(self):
        return QuatMatrix(-self.a1, -self.a2)

    def __matmul__(self, other):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
        return QuatMatrix(
            self.a1 @ other.a1 - self.a2 @ other.a2.conj(),
            self.a1 @ other.a2 + self.a2 @ other.a1.conj(),
        )

    def __mul__(self, scalar):
        """Right scalar multiple ``A q`` (entrywise ``a_ij q``)."""
        q = _as_quaternion_or_none(scalar)
        if q is None:
            return NotImplemented
        q1, q2 = complex(q.w, q.x), complex(q.y, q.z)
        return QuatMatrix(
            self.a1 * q1 - self.a2 * np.conj(q2),
            self.a1 * q2 + self.a2 * np.conj(q1),
        )

    def __rmul__(self, scalar):
        """Left scalar multiple ``q A``."""
        q = _as_quaternion_or_none(scalar)
        if q is None:
            return NotImplemented
        q1, q2 = complex(q.w, q.x), complex(q.y, q.z)
        return QuatMatrix(
            q1 * self.a1 - q2 * self.a2.conj(),
            q1 * self.a2 + q2 * self.a1.conj(),
        )

    def adjoint(self) -> "QuatMatrix":
        """Conjugate transpose A*."""
        return QuatMatrix(self.a1.conj().T, -self.a2.T)

    def frobenius(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.a1) ** 2 + np.abs(self.a2) ** 2)))

    def max_abs_entry(self) -> float:
        if self.a1.size == 0:
            return 0.0
        return float(np.sqrt(np.max(np.abs(self.a1) ** 2 + np.abs(self.a2) ** 2)))

    def allclose(self, other: "QuatMatrix", tol: float = 1e-12) -> bool:
        return (self.shape == other.shape
                and (self - other).max_abs_entry() <= tol)

    def __repr__(self):
        return f"QuatMatrix({self.rows}x{self.cols})"


def _as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(value)
    raise DomainError(f"cannot use {type(value).__name__} as a quaternion entry")


def _as_quaternion_or_none(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(value)
    return None


# ----------------------------------------------------------------------
# complex adjoint


@dataclass(frozen=True)
class ChiBlock:
    """The two free blocks of a complex adjoint matrix."""

    a1: np.ndarray
    a2: np.ndarray

    @property
    def n(self) -> int:
        return self.a1.shape[0]

    def assembled(self) -> np.ndarray:
        """The full 2n x 2n complex matrix."""
        return np.block([
            [self.a1, self.a2],
            [-self.a2.conj(), self.a1.conj()],
        ])


def chi(a: QuatMatrix) -> ChiBlock:
    """Complex adjoint of a square quaternion matrix."""
    if not a.is_square():
        raise DomainError("chi is defined for square matrices")
    return ChiBlock(np.array(a.a1), np.array(a.a2))


def unchi(m, tol: float = 1e-12) -> QuatMatrix:
    """Invert the complex adjoint map.

    Accepts a :class:`ChiBlock` or an assembled 2n x 2n complex array and
    checks the block structure; violations beyond ``tol`` (relative to the
    largest entry) raise :class:`FormatError`.
    """
    if isinstance(m, ChiBlock):
        m = m.assembled()
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
        raise FormatError("expected a 2n x 2n complex matrix")
    n = m.shape[0] // 2
    m11, m12 = m[:n, :n], m[:n, n:]
    m21, m22 = m[n:, :n], m[n:, n:]
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    resid = max(
        float(np.max(np.abs(m21 + m12.conj()))) if n else 0.0,
        float(np.max(np.abs(m22 - m11.conj()))) if n else 0.0,
    )
    if resid > tol * scale:
        raise FormatError(
            f"block structure violated: residual {resid:.3e} exceeds {tol:.1e} x scale"
        )
    # average the two copies of each block so exact inputs round-trip exactly
    a1 = 0.5 * (m11 + m22.conj())
    a2 = 0.5 * (m12 - m21.conj())
    return QuatMatrix(a1, a2)


# ----------------------------------------------------------------------
# one-sided Jacobi SVD on stacks of complex matrices


def jacobi_svd(stack, want_v: bool = False, tol: float = 1e-14, max_sweeps: int = 60):
    """Singular values (descending) of a complex matrix or stack of them.

    One-sided Jacobi: plane rotations orthogonalize pairs of columns until
    every off-diagonal Gram entry is negligible; the singular values are
    the final column norms.  The rotation schedule is shared across the
    stack, so the whole batch advances in lockstep with vectorized numpy
    arithmetic.

    Returns ``(values, v)`` where ``v`` (the right singular vectors, as
    columns) is None unless requested.
    """
    a = np.array(stack, dtype=complex)
    single = a.ndim == 2
    if single:
        a = a[None]
    if a.ndim != 3:
        raise DomainError("expected a matrix or a stack of matrices")
    n_mats, _, n = a.shape
    v = None
    if want_v:
        v = np.broadcast_to(np.eye(n, dtype=complex), (n_mats, n, n)).copy()

    for _ in range(max_sweeps):
        worst = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                cp = a[:, :, p]
                cq = a[:, :, q]
                app = np.einsum("ij,ij->i", cp.conj(), cp).real
                aqq = np.einsum("ij,ij->i", cq.conj(), cq).real
                apq = np.einsum("ij,ij->i", cp.conj(), cq)
                gabs = np.abs(apq)
                scale = np.sqrt(app * aqq)
                active = gabs > tol * np.maximum(scale, 1e-300)
                if not active.any():
                    continue
                worst = max(worst, float((gabs[active] / np.maximum(scale[active], 1e-300)).max()))

                ga = gabs[active]
                tau = (aqq[active] - app[active]) / (2.0 * ga)
                t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                t = np.where(tau == 0.0, 1.0, t)  # equal norms: rotate 45 degrees
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = (c * t) * (apq[active] / ga)

                cpa = cp[active]
                cqa = cq[active]
                cc = c[:, None]
                ss = s[:, None]
                a[active, :, p] = cc * cpa - ss.conj() * cqa
                a[active, :, q] = ss * cpa + cc * cqa
                if want_v:
                    vp = v[active, :, p]
                    vq = v[active, :, q]
                    v[active, :, p] = cc * vp - ss.conj() * vq
                    v[active, :, q] = ss * vp + cc * vq
        if worst <= tol:
            break

    values = np.sqrt(np.einsum("kij,kij->kj", a.conj(), a).real)
    order = np.argsort(-values, axis=-1, kind="stable")
    values = np.take_along_axis(values, order, axis=-1)
    if want_v:
        v = np.take_along_axis(v, order[:, None, :], axis=-1)
    if single:
        return values[0], (v[0] if want_v else None)
    return values, v


# ----------------------------------------------------------------------
# norms, singular values, maximizing vectors


class Norms(NamedTuple):
    frobenius: float
    operator: float


def norms(a: QuatMatrix) -> Norms:
    """Frobenius norm (from the entries) and operator norm (via chi)."""
    fro = a.frobenius()
    if not a.is_square():
        raise DomainError("operator norm requires a square matrix")
    if a.rows == 0:
        return Norms(0.0, 0.0)
    values, _ = jacobi_svd(chi(a).assembled())
    return Norms(fro, float(values[0]))


def _pair_doubled(values, rtol: float = 1e-9):
    """Collapse the doubled spectrum of a chi matrix to n values.

    Sorted-descending input; adjacent entries must pair within
    ``max(rtol, rtol * value)`` or the doubling theorem was violated,
    which means the SVD itself is broken.
    """
    if len(values) % 2 != 0:
        raise PairingError("odd spectrum cannot pair")
    a = values[0::2]
    b = values[1::2]
    gap = np.abs(a - b)
    limit = np.maximum(rtol, rtol * np.maximum(a, b))
    if (gap > limit).any():
        worst = float(np.max(gap - limit))
        raise PairingError(f"doubled singular values failed to pair (excess {worst:.3e})")
    return 0.5 * (a + b)


def singular_values(a: QuatMatrix) -> list:
    """The n singular values of a square quaternion matrix, descending.

    These are the singular values of chi(A) with the doubling removed.
    """
    if not a.is_square():
        raise DomainError("singular values are defined for square matrices")
    if a.rows == 0:
        return []
    values, _ = jacobi_svd(chi(a).assembled())
    return [float(s) for s in _pair_doubled(values)]


def singular_values_batch(mats) -> np.ndarray:
    """Stack version of :func:`singular_values`: shape (len(mats), n).

    All matrices must be square of the same size.  Used by the sampling
    harness, where one call covers thousands of evaluation points.
    """
    if isinstance(mats, tuple) and len(mats) == 2 and isinstance(mats[0], np.ndarray):
        a1, a2 = mats
    else:
        a1 = np.stack([m.a1 for m in mats])
        a2 = np.stack([m.a2 for m in mats])
    stack = np.block([[a1, a2], [-a2.conj(), a1.conj()]])
    values, _ = jacobi_svd(stack)
    return np.stack([_pair_doubled(row) for row in values])


def _vector_to_complex(x: QuatMatrix) -> np.ndarray:
    """Quaternion column x = x1 + x2 j -> complex 2n vector [x1; -conj(x2)].

    This is the first column of chi(x); it intertwines A with chi(A) and
    preserves the Euclidean norm.
    """
    return np.concatenate([x.a1[:, 0], -x.a2[:, 0].conj()])


def _complex_to_vector(xi: np.ndarray) -> QuatMatrix:
    n = xi.shape[0] // 2
    return QuatMatrix(xi[:n].reshape(-1, 1), -xi[n:].conj().reshape(-1, 1))


def canonicalize_vector(x: QuatMatrix, tol: float = 1e-12) -> QuatMatrix:
    """Right-multiply by a unit quaternion so the first sizable component
    is real and positive; resolves the scaling ambiguity deterministically."""
    norms_sq = (np.abs(x.a1[:, 0]) ** 2 + np.abs(x.a2[:, 0]) ** 2)
    big = np.flatnonzero(norms_sq > (tol * math.sqrt(float(norms_sq.max()))) ** 2)
    if len(big) == 0:
        return x
    lead = x.entry(int(big[0]), 0)
    u = lead.conjugate() / abs(lead)
    return x * u


def maximizing_vector(a: QuatMatrix) -> QuatMatrix:
    """A unit vector x0 with ||A x0||_2 = ||A||.

    Taken from the top right-singular vector of chi(A), mapped back
    through the pair structure, then canonicalized (first sizable
    component real positive).
    """
    if not a.is_square():
        raise DomainError("maximizing vector requires a square matrix")
    if a.rows == 0 or a.max_abs_entry() == 0.0:
        raise DomainError("zero matrix has no maximizing vector")
    values, v = jacobi_svd(chi(a).assembled(), want_v=True)
    x = _complex_to_vector(v[:, 0])
    x = canonicalize_vector(x)
    nrm = x.frobenius()
    return x * (1.0 / nrm)


def vector_norm(x: QuatMatrix) -> float:
    """Euclidean norm of a quaternion column vector."""
    return x.frobenius()


# ----------------------------------------------------------------------
# Gram-Schmidt over the quaternions


def _inner(u: QuatMatrix, v: QuatMatrix) -> Quaternion:
    """Left-Hilbert inner product <u, v> = v* u."""
    return (v.adjoint() @ u).entry(0, 0)


def gram_schmidt_columns(candidates, n: int, drop_tol: float = 1e-10) -> list:
    """Orthonormalize candidate columns to an orthonormal set of size n.

    Modified Gram-Schmidt with one reorthogonalization pass, using the
    inner product <u, v> = v* u; coefficients multiply vectors on the
    right.  Candidates that fall (numerically) in the span of earlier
    ones are dropped.
    """
    basis: list[QuatMatrix] = []
    for cand in candidates:
        u = cand
        for _ in range(2):
            for e in basis:
                u = u - e * _inner(u, e)
        nrm = u.frobenius()
        if nrm <= drop_tol:
            continue
        basis.append(u * (1.0 / nrm))
        if len(basis) == n:
            return basis
    raise DomainError(f"could not complete an orthonormal set of size {n}")


def unitary_complete(v: QuatMatrix, tol: float = 1e-10) -> QuatMatrix:
    """Extend a unit column to an n x n unitary whose first column it is."""
    if v.cols != 1:
        raise DomainError("expected a column vector")
    n = v.rows
    if abs(v.frobenius() - 1.0) > tol:
        raise DomainError(f"vector norm {v.frobenius()} is not 1")
    candidates = [v] + [QuatMatrix.column([1.0 if i == k else 0.0 for i in range(n)])
                        for k in range(n)]
    cols = gram_schmidt_columns(candidates, n)
    a1 = np.hstack([c.a1 for c in cols])
    a2 = np.hstack([c.a2 for c in cols])
    return QuatMatrix(a1, a2)


# ----------------------------------------------------------------------
# invertibility


class Invertibility(NamedTuple):
    invertible: bool
    smin: float
    smax: float


def is_invertible(a: QuatMatrix, rtol: float = INVERTIBILITY_RTOL) -> Invertibility:
    """Rank decision from the extreme singular values of chi(A).

    Invertible iff ``smin > rtol * max(1, smax)``; the report carries
    both extremes so callers can judge conditioning.
    """
    sv = singular_values(a)
    if not sv:
        return Invertibility(True, math.inf, 0.0)
    smin, smax = sv[-1], sv[0]
    return Invertibility(smin > rtol * max(1.0, smax), smin, smax)
