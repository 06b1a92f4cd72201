"""Planar realization of a composition as a star polygon and its inscribed equilateral polygon.

Part ``k_j`` is the angle ``k_j*pi/n`` at star vertex ``v_j``.  The star path
starts at the origin heading along +x and takes unit steps, turning by
``pi - k_j*pi/n`` at ``v_j``; it closes up exactly when the composition is
Reinhardt.  The boundary arc centred at ``v_c`` joins ``v_{c-1}`` to
``v_{c+1}`` and is cut into ``k_c`` equal pieces; consecutive arcs share an
endpoint when the centres are visited two apart, which covers all of them
because the number of parts is odd.

Unit diameter is used throughout, so sides have length ``2 sin(pi/(2n))``
and the width is ``cos(pi/(2n))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .composition import Composition

ACCEPT_RESIDUAL = 1e-9
REJECT_RESIDUAL = 1e-6


@dataclass(frozen=True, eq=False)
class PolygonRealization:
    parts: tuple[int, ...]
    star_vertices: np.ndarray
    polygon_vertices: np.ndarray
    arc_centres: tuple[int, ...]
    closure_residual: float

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def side_lengths(self) -> np.ndarray:
        pts = self.polygon_vertices
        return np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)

    @property
    def closes(self) -> bool:
        return self.closure_residual <= ACCEPT_RESIDUAL

    def is_convex(self) -> bool:
        return is_convex(self.polygon_vertices)

    def width(self) -> float:
        return polygon_width(self.polygon_vertices)

    def diameter(self) -> float:
        return polygon_diameter(self.polygon_vertices)


def _headings(parts: Sequence[int]) -> np.ndarray:
    """Step headings as multiples of pi/n, reduced mod 2n so they stay exact."""
    n = sum(parts)
    r = len(parts)
    turns = [0] + [n - k for k in parts[1:r]]
    return np.cumsum(turns) % (2 * n)


def star_path(parts: Sequence[int]) -> tuple[np.ndarray, float]:
    """Star vertices ``v_0..v_{r-1}`` and the distance from the path end back to ``v_0``."""
    n = sum(parts)
    theta = _headings(parts) * (math.pi / n)
    steps = np.column_stack([np.cos(theta), np.sin(theta)])
    path = np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])
    return path[:-1], float(np.hypot(*path[-1]))


def realize(c: Composition | Sequence[int]) -> PolygonRealization:
    parts = tuple(c.parts) if isinstance(c, Composition) else tuple(Composition(c).parts)
    r = len(parts)
    star, residual = star_path(parts)
    centres = tuple((2 * j + 1) % r for j in range(r))
    poly = []
    for ctr in centres:
        v = star[ctr]
        a = star[(ctr - 1) % r] - v
        b = star[(ctr + 1) % r] - v
        sweep = math.atan2(a[0] * b[1] - a[1] * b[0], a @ b)
        k = parts[ctr]
        for i in range(k):
            t = sweep * i / k
            ct, st = math.cos(t), math.sin(t)
            poly.append((v[0] + ct * a[0] - st * a[1], v[1] + st * a[0] + ct * a[1]))
    return PolygonRealization(parts, star, np.array(poly), centres, residual)


def closure_residuals(entries: np.ndarray) -> np.ndarray:
    """Closure residuals for a batch of sign vectors (one per row).

    Step ``j`` of the star path points along ``(-1)^j exp(-i*pi*s_j/n)`` up
    to a global rotation, where ``s_j`` is the j-th support position; the
    end point is therefore the conjugate of F evaluated at ``exp(i*pi/n)``.
    """
    n = entries.shape[1]
    root = np.exp(-1j * np.pi * np.arange(n) / n)
    return np.abs(entries @ root)


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def is_convex(points: np.ndarray, tol: float = 1e-12) -> bool:
    """Strictly convex position: every turn has the same sign."""
    turns = _cross(points, np.roll(points, -1, axis=0), np.roll(points, -2, axis=0))
    return bool(np.all(turns > tol) or np.all(turns < -tol))


def _ccw(points: np.ndarray) -> np.ndarray:
    area = np.sum(_cross(np.zeros(2), points, np.roll(points, -1, axis=0)))
    return points if area > 0 else points[::-1]


def polygon_width(points: np.ndarray) -> float:
    """Minimum width of a convex polygon by rotating calipers.

    The minimum is attained with one caliper flush against an edge, so for
    each edge it is enough to track the farthest vertex, which only moves
    forward as the edge does.
    """
    pts = _ccw(points)
    m = len(pts)
    best = math.inf
    j = 1
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        length = math.hypot(*(b - a))
        height = lambda k: _cross(a, b, pts[k % m]) / length  # noqa: E731
        while height(j + 1) >= height(j):
            j += 1
        best = min(best, height(j))
    return best


def polygon_diameter(points: np.ndarray) -> float:
    """Largest vertex distance, scanning antipodal pairs with rotating calipers."""
    pts = _ccw(points)
    m = len(pts)
    best = 0.0
    j = 1
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        while _cross(a, b, pts[(j + 1) % m]) > _cross(a, b, pts[j % m]):
            j += 1
        for k in (i, i + 1):
            best = max(best, math.hypot(*(pts[j % m] - pts[k % m])))
    return best


def side_length(n: int) -> float:
    return 2 * math.sin(math.pi / (2 * n))


def expected_width(n: int) -> float:
    return math.cos(math.pi / (2 * n))
