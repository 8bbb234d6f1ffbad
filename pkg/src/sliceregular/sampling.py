"""Deterministic seeded sampling of quaternion regions.

Every sampler is a pure function of ``(region, count, seed)``: the same
arguments always produce the identical point list.  Workers that want
independent streams should spawn children from one ``SeedSequence``
rather than sharing a generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quaternion import ImaginaryUnit, Quaternion


@dataclass(frozen=True)
class Ball:
    """Open Euclidean ball of the given radius about the origin."""

    radius: float


@dataclass(frozen=True)
class SigmaBall:
    """Open sigma-ball about ``center``."""

    center: Quaternion
    radius: float


@dataclass(frozen=True)
class SliceDisk:
    """Open disk in the slice of ``unit``, centered at ``center`` (as x + yi)."""

    unit: ImaginaryUnit
    center: complex
    radius: float


@dataclass(frozen=True)
class Shell:
    """Annular shell ``outer - thickness <= |q| < outer``."""

    outer: float
    thickness: float


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _directions_4d(rng, count):
    v = rng.normal(size=(count, 4))
    norms = np.linalg.norm(v, axis=1)
    # resample the (measure-zero) degenerate draws
    while (bad := norms < 1e-12).any():
        v[bad] = rng.normal(size=(int(bad.sum()), 4))
        norms = np.linalg.norm(v, axis=1)
    return v / norms[:, None]


def _quaternions(arr) -> list:
    return [Quaternion(*row) for row in arr]


def sample(region, count: int, seed) -> list:
    """Draw ``count`` points from ``region``, deterministically for a seed.

    Sigma-balls need care: for a real center the sigma-ball is the
    Euclidean ball; when ``radius <= |Im center|`` it has no 4D interior
    and degenerates to a disk inside the center's slice, which is what
    gets sampled; otherwise the full-measure 4D lens
    ``(x - xc)^2 + (y + yc)^2 < R^2`` is sampled and the measure-zero
    slice extension is ignored.
    """
    if count <= 0:
        raise DomainError("sample count must be positive")
    rng = _rng(seed)

    if isinstance(region, Ball):
        if region.radius <= 0:
            raise DomainError("ball radius must be positive")
        dirs = _directions_4d(rng, count)
        r = region.radius * rng.random(count) ** 0.25
        return _quaternions(dirs * r[:, None])

    if isinstance(region, Shell):
        inner = region.outer - region.thickness
        if region.outer <= 0 or region.thickness <= 0 or inner < 0:
            raise DomainError("shell needs 0 <= outer - thickness < outer")
        dirs = _directions_4d(rng, count)
        u = rng.random(count)
        r = (inner**4 + u * (region.outer**4 - inner**4)) ** 0.25
        return _quaternions(dirs * r[:, None])

    if isinstance(region, SliceDisk):
        if region.radius <= 0:
            raise DomainError("disk radius must be positive")
        z = region.center + region.radius * np.sqrt(rng.random(count)) * np.exp(
            2j * np.pi * rng.random(count)
        )
        u = region.unit
        return [
            Quaternion(zz.real, zz.imag * u.x1, zz.imag * u.x2, zz.imag * u.x3)
            for zz in z
        ]

    if isinstance(region, SigmaBall):
        return _sample_sigma_ball(region, count, rng)

    raise DomainError(f"unknown region {region!r}")


def _sample_sigma_ball(region: SigmaBall, count, rng):
    if region.radius <= 0:
        raise DomainError("sigma-ball radius must be positive")
    c = region.center
    yc = c.imaginary_modulus()
    radius = region.radius

    if yc == 0.0:
        # sigma reduces to Euclidean distance from a real center
        dirs = _directions_4d(rng, count)
        r = radius * rng.random(count) ** 0.25
        return [Quaternion(c.w, 0, 0, 0) + Quaternion(*row) for row in dirs * r[:, None]]

    if radius <= yc:
        unit = ImaginaryUnit.from_vector(c.x, c.y, c.z)
        return sample(SliceDisk(unit, complex(c.w, yc), radius), count, rng)

    # 4D lens: x near Re(c), 0 <= y < radius - yc, any unit direction
    out = []
    ymax = radius - yc
    while len(out) < count:
        need = count - len(out)
        dx = (2 * rng.random(need) - 1) * radius
        y = rng.random(need) * ymax
        keep = dx * dx + (y + yc) ** 2 < radius * radius
        units = rng.normal(size=(need, 3))
        unorm = np.linalg.norm(units, axis=1)
        keep &= unorm > 1e-12
        for i in np.flatnonzero(keep):
            ux, uy, uz = units[i] / unorm[i]
            out.append(Quaternion(c.w + dx[i], y[i] * ux, y[i] * uy, y[i] * uz))
    return out[:count]


def sample_imaginary_units(count: int, seed) -> list:
    """Uniform draws from the 2-sphere of imaginary units."""
    if count <= 0:
        raise DomainError("sample count must be positive")
    rng = _rng(seed)
    v = rng.normal(size=(count, 3))
    norms = np.linalg.norm(v, axis=1)
    while (bad := norms < 1e-12).any():
        v[bad] = rng.normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(v, axis=1)
    v = v / norms[:, None]
    return [ImaginaryUnit(*row) for row in v]


def orthogonal_unit(unit: ImaginaryUnit, seed=None) -> ImaginaryUnit:
    """A unit orthogonal to ``unit``; random direction when seeded."""
    if seed is None:
        return unit.orthogonal()
    rng = _rng(seed)
    while True:
        v = rng.normal(size=3)
        v -= (v[0] * unit.x1 + v[1] * unit.x2 + v[2] * unit.x3) * np.array(
            [unit.x1, unit.x2, unit.x3]
        )
        n = np.linalg.norm(v)
        if n > 1e-6:
            return ImaginaryUnit.from_vector(*(v / n))
