"""Barycentric geometry on unit-height simplexes.

A point inside an equilateral triangle (or regular tetrahedron) is located
by its perpendicular distances to the faces.  With the simplex height fixed
at 1, those N distances are nonnegative shares that sum to 1, so a vector of
N metrics partitioning a whole maps to exactly one interior point.  This
module owns that math: normalizing raw shares, the triangle and tetrahedron
embeddings, projection to Cartesian scene coordinates and back, view
rotation for the 3D case, and the static gridlines used as a visual aid on
triangle views.

All types are immutable values and all operations are pure functions; they
are safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidStep,
    NegativeShare,
    OutsideSimplex,
    SumRuleViolation,
    UnsupportedDimension,
    ZeroTotal,
)

#: Every stored barycentric point satisfies sum(coords) == 1 within this.
SUM_TOLERANCE = 1e-9

#: Relative slack accepted by strict normalization. Measurement data arrives
#: as integer milliseconds, so anything beyond float noise is a real defect.
STRICT_REL_TOLERANCE = 1e-6


@dataclass(frozen=True)
class BarycentricPoint:
    """Nonnegative shares of a unit-height simplex, summing to 1."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 2:
            raise UnsupportedDimension(
                "barycentric point needs at least 2 coordinates"
            )
        for c in self.coords:
            if not math.isfinite(c):
                raise ValueError("coordinates must be finite")
            if c < -SUM_TOLERANCE:
                raise NegativeShare(f"coordinate {c!r} is negative")
            if c > 1.0 + SUM_TOLERANCE:
                raise ValueError(f"coordinate {c!r} exceeds the simplex height")
        total = math.fsum(self.coords)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise SumRuleViolation(
                f"coordinates sum to {total!r}, expected 1 within {SUM_TOLERANCE}"
            )

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class CartesianPoint:
    """A 2D or 3D point in dimensionless scene units."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) not in (2, 3):
            raise ValueError("cartesian point must be 2D or 3D")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def x(self) -> float:
        return self.coords[0]

    @property
    def y(self) -> float:
        return self.coords[1]

    @property
    def z(self) -> float:
        if self.dim != 3:
            raise DimensionMismatch("point has no z coordinate")
        return self.coords[2]


@dataclass(frozen=True)
class SimplexEmbedding:
    """Vertex positions realizing a unit-height simplex in N-1 dimensions."""

    n: int
    vertices: tuple[CartesianPoint, ...]
    height: float = 1.0

    def vertex_array(self) -> np.ndarray:
        """Vertices as an (n, n-1) array, row i = V_i."""
        return np.array([v.coords for v in self.vertices], dtype=float)


@dataclass(frozen=True)
class ViewRotation:
    """Orthographic view angles in degrees.

    Azimuth wraps into [0, 360); elevation clamps into [-90, 90].
    """

    azimuth: float = 0.0
    elevation: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.azimuth) and math.isfinite(self.elevation)):
            raise ValueError("rotation angles must be finite")
        object.__setattr__(self, "azimuth", self.azimuth % 360.0)
        object.__setattr__(self, "elevation", min(90.0, max(-90.0, self.elevation)))


def barycentric_from_shares(
    values: list[float] | tuple[float, ...],
    expected_total: float,
    mode: str = "strict",
) -> BarycentricPoint:
    """Normalize raw metric values into barycentric shares.

    ``strict`` divides by ``expected_total`` and rejects inputs whose sum
    deviates from it by more than ``STRICT_REL_TOLERANCE`` (relative).
    ``rescale`` divides by the actual sum, hiding any accounting defect.
    ``slack`` divides by ``expected_total`` and appends the nonnegative
    shortfall as an extra coordinate, so under-accounted time gets its own
    axis; an over-full sum is rejected.
    """
    if not math.isfinite(expected_total) or expected_total <= 0:
        raise ValueError(f"expected_total must be positive, got {expected_total!r}")
    vals = [float(v) for v in values]
    for v in vals:
        if not math.isfinite(v):
            raise ValueError("values must be finite")
        if v < 0:
            raise NegativeShare(f"negative share {v!r}")
    actual = math.fsum(vals)

    if mode == "strict":
        residual = abs(actual - expected_total) / expected_total
        if residual > STRICT_REL_TOLERANCE:
            raise SumRuleViolation(
                f"values sum to {actual!r}, expected {expected_total!r} "
                f"(relative residual {residual:.3g})"
            )
        shares = [v / expected_total for v in vals]
        # Absorb the accepted sub-ppm slack so the stored point meets the
        # 1e-9 sum invariant.
        share_sum = math.fsum(shares)
        return BarycentricPoint(tuple(s / share_sum for s in shares))

    if mode == "rescale":
        if actual == 0.0:
            raise ZeroTotal("cannot rescale an all-zero vector")
        return BarycentricPoint(tuple(v / actual for v in vals))

    if mode == "slack":
        residual = (expected_total - actual) / expected_total
        if residual < -STRICT_REL_TOLERANCE:
            raise SumRuleViolation(
                f"values sum to {actual!r}, exceeding {expected_total!r}; "
                "slack mode only absorbs a shortfall"
            )
        shares = [v / expected_total for v in vals]
        return BarycentricPoint(tuple(shares) + (max(0.0, residual),))

    raise ValueError(f"unknown normalization mode {mode!r}")


def simplex_embedding(n: int) -> SimplexEmbedding:
    """Return the canonical unit-height embedding for n in {3, 4}.

    n=3 is the triangle with vertices (1/sqrt(3), 1), (0, 0), (2/sqrt(3), 0).
    n=4 is the regular tetrahedron with apex (0, 0, 1) and base vertices at
    radius sqrt(0.5) in the z=0 plane (polar angles 90, 210, 330 degrees),
    giving edge length sqrt(3/2) and all four vertex-to-face heights 1.
    """
    if n == 3:
        s3 = math.sqrt(3.0)
        return SimplexEmbedding(
            n=3,
            vertices=(
                CartesianPoint((1.0 / s3, 1.0)),
                CartesianPoint((0.0, 0.0)),
                CartesianPoint((2.0 / s3, 0.0)),
            ),
        )
    if n == 4:
        r = math.sqrt(0.5)
        rx = r * math.sqrt(3.0) / 2.0
        return SimplexEmbedding(
            n=4,
            vertices=(
                CartesianPoint((0.0, 0.0, 1.0)),
                CartesianPoint((0.0, r, 0.0)),
                CartesianPoint((-rx, -r / 2.0, 0.0)),
                CartesianPoint((rx, -r / 2.0, 0.0)),
            ),
        )
    raise UnsupportedDimension(f"no embedding for n={n}; supported: 3, 4")


def embed(p: BarycentricPoint, e: SimplexEmbedding) -> CartesianPoint:
    """Map barycentric shares to Cartesian coordinates: sum of p_i * V_i."""
    if p.n != e.n:
        raise DimensionMismatch(f"point has {p.n} coords, embedding has {e.n} vertices")
    dims = e.n - 1
    out = []
    for d in range(dims):
        out.append(math.fsum(p.coords[i] * e.vertices[i].coords[d] for i in range(e.n)))
    return CartesianPoint(tuple(out))


def face_distances(c: CartesianPoint, e: SimplexEmbedding) -> tuple[float, ...]:
    """Recover perpendicular distances from a point to each simplex face.

    The distance to the face opposite V_i equals the barycentric coordinate
    p_i for a unit-height simplex, so this inverts :func:`embed`.  Raises
    OutsideSimplex when any recovered distance falls below -1e-9.
    """
    if c.dim != e.n - 1:
        raise DimensionMismatch(
            f"point is {c.dim}D, embedding needs {e.n - 1}D coordinates"
        )
    # Solve sum(p_i * V_i) = c together with sum(p_i) = 1.
    mat = np.vstack([e.vertex_array().T, np.ones(e.n)])
    rhs = np.array(list(c.coords) + [1.0])
    p = np.linalg.solve(mat, rhs)
    if np.any(p < -SUM_TOLERANCE):
        raise OutsideSimplex(f"recovered distances {p.tolist()} include a negative")
    return tuple(float(v) for v in p)


def rotate_project(c: CartesianPoint, r: ViewRotation) -> CartesianPoint:
    """Orthographically project a 3D point to the screen plane.

    The point is rotated right-handed by the azimuth about the vertical
    (z) axis, then by the elevation about the horizontal screen axis; at
    identity rotation the mapping is (x, y, z) -> (x, z), so the apex of the
    canonical tetrahedron projects straight up.
    """
    if c.dim != 3:
        raise DimensionMismatch("rotate_project needs a 3D point")
    az = math.radians(r.azimuth)
    el = math.radians(r.elevation)
    x, y, z = c.coords
    x1 = x * math.cos(az) - y * math.sin(az)
    y1 = x * math.sin(az) + y * math.cos(az)
    z1 = z
    z2 = y1 * math.sin(el) + z1 * math.cos(el)
    return CartesianPoint((x1, z2))


def trilinear_gridlines(
    step: float,
) -> list[tuple[BarycentricPoint, BarycentricPoint]]:
    """Constant-share gridline segments for a triangle view.

    For each of the 3 axes and each level k*step below 1, returns the
    segment of constant p_i = k*step as a pair of barycentric endpoints on
    the triangle boundary.
    """
    if not (isinstance(step, (int, float)) and math.isfinite(step)) or not (
        0.0 < step < 1.0
    ):
        raise InvalidStep(f"step must lie in (0, 1), got {step!r}")
    segments: list[tuple[BarycentricPoint, BarycentricPoint]] = []
    levels = []
    k = 1
    while k * step < 1.0 - SUM_TOLERANCE:
        levels.append(k * step)
        k += 1
    for axis in range(3):
        others = [j for j in range(3) if j != axis]
        for level in levels:
            rest = 1.0 - level
            a = [0.0, 0.0, 0.0]
            b = [0.0, 0.0, 0.0]
            a[axis] = level
            b[axis] = level
            a[others[0]] = rest
            b[others[1]] = rest
            segments.append((BarycentricPoint(tuple(a)), BarycentricPoint(tuple(b))))
    return segments
