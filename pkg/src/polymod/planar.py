"""Euclidean constructions in the complex plane.

All constructions live in a frame chosen so the completion triangle's base
edge runs along the positive real axis:

* Edge ``j`` (1-based, following the label word ``<i1..in>``) has unit
  direction ``dirs[j-1] = exp(i * sum_{k<=j} theta_{i_k})`` times a global
  rotation that puts the base direction (edge 2) at ``+1``.

* The completion triangle extends edges 2, 4, 5 (pentagons) or 2, 4, 6
  (hexahedra); its corners are ``a = 0``, ``b = 1`` and an apex ``c`` in the
  upper half-plane, with exterior angles ``theta_{i1}+theta_{i2}`` at ``a``,
  ``theta_{i3}+theta_{i4}`` at ``b`` and the remaining angle sum at ``c``.

* Feet of cevians/parallels are reported as signed ratios along their host
  side, so they remain meaningful when they land on an extension.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .combinatorics import WeightVector, as_word
from .errors import DegenerateTriangle, FootOutsideBase, NoIntersection, OutOfRange

#: Corner angles of a completion triangle must stay this far inside (0, pi).
EPS_ANGLE = 1e-12


@dataclass(frozen=True)
class EdgeFrame:
    """Unit edge directions of a labeled polygon, base edge rotated to +1."""

    word: tuple[int, ...]
    theta: WeightVector
    dirs: np.ndarray  # complex, length n, |dirs[j]| = 1, dirs[1] = 1

    @property
    def n(self) -> int:
        return len(self.word)

    def ordered_angles(self) -> np.ndarray:
        """Angles in label order: entry j is theta at mark i_{j+1}."""
        return np.array([self.theta[m - 1] for m in self.word])


@dataclass(frozen=True)
class TriangleCompletion:
    """Completion triangle with base [0, 1] and apex in the upper half-plane.

    ``feet`` is None for pentagons; for hexahedra it holds the three signed
    ratios (c_foot on side a->b, a_foot on side b->c, b_foot on side c->a).
    """

    a: complex
    b: complex
    c: complex
    ext_angles: tuple[float, float, float]
    feet: tuple[float, float, float] | None


def edge_frame(theta: WeightVector, label: Sequence[int]) -> EdgeFrame:
    """Unit direction vectors of the labeled polygon's edges."""
    word = as_word(label)
    if len(word) != theta.n:
        raise OutOfRange(f"label has {len(word)} marks but theta has {theta.n} angles")
    t = np.array([theta[m - 1] for m in word])
    cum = np.cumsum(t)
    dirs = np.exp(1j * (cum - cum[1]))
    return EdgeFrame(word=word, theta=theta, dirs=dirs)


def line_intersection(
    p0: complex, u: complex, p1: complex, v: complex
) -> tuple[float, float, complex]:
    """Intersect lines p0 + t*u and p1 + s*v; returns (t, s, point)."""
    cross = (u.conjugate() * v).imag
    if abs(cross) <= 1e-15 * abs(u) * abs(v):
        raise NoIntersection("lines are parallel or a direction vanishes")
    r = p1 - p0
    t = (r.conjugate() * v).imag / cross
    s = (r.conjugate() * u).imag / cross
    return t, s, p0 + t * u


def complete_triangle(theta: WeightVector, label: Sequence[int]) -> TriangleCompletion:
    """Extend edges 2, 4, 5 (n=5) or 2, 4, 6 (n=6) to a triangle.

    The base is normalized to [0, 1]; for hexahedra the three feet are the
    intersections of each side with the parallel to edge 1 through the apex,
    to edge 3 through ``a``, and to edge 5 through ``b``, as signed ratios.
    """
    frame = edge_frame(theta, label)
    n = frame.n
    if n not in (5, 6):
        raise OutOfRange(f"completion triangles exist for n in {{5, 6}}, got {n}")
    t = frame.ordered_angles()
    ext_a = t[0] + t[1]
    ext_b = t[2] + t[3]
    ext_c = t[4] if n == 5 else t[4] + t[5]
    for name, ext in (("a", ext_a), ("b", ext_b), ("c", ext_c)):
        if not EPS_ANGLE < ext < math.pi - EPS_ANGLE:
            raise DegenerateTriangle(
                f"exterior angle at {name} is {ext:.17g}, outside (0, pi)"
            )
    alpha = math.pi - ext_a
    beta = math.pi - ext_b
    gamma = math.pi - ext_c
    a = 0.0 + 0.0j
    b = 1.0 + 0.0j
    c = (math.sin(beta) / math.sin(gamma)) * cmath.exp(1j * alpha)
    feet = None
    if n == 6:
        dirs = frame.dirs
        _, s_ab, _ = line_intersection(c, dirs[0], a, b - a)
        _, s_bc, _ = line_intersection(a, dirs[2], b, c - b)
        _, s_ca, _ = line_intersection(b, dirs[4], c, a - c)
        feet = (float(s_ab), float(s_bc), float(s_ca))
    return TriangleCompletion(
        a=a, b=b, c=c, ext_angles=(float(ext_a), float(ext_b), float(ext_c)), feet=feet
    )


def pentagon_feet(theta: WeightVector, label: Sequence[int]) -> tuple[float, float]:
    """Base feet (f1, f2) of the two apex cevians of a pentagon.

    ``f2`` is the foot of the parallel to edge 1 through the apex and ``f1``
    that of the parallel to edge 3; a valid pentagon gives 0 < f1 < f2 < 1.
    """
    word = as_word(label)
    if len(word) != 5:
        raise OutOfRange(f"pentagon feet need n=5, got {len(word)}")
    frame = edge_frame(theta, label)
    tri = complete_triangle(theta, label)
    _, f2, _ = line_intersection(tri.c, frame.dirs[0], tri.a, tri.b - tri.a)
    _, f1, _ = line_intersection(tri.c, frame.dirs[2], tri.a, tri.b - tri.a)
    if not 0.0 < f1 < f2 < 1.0:
        raise FootOutsideBase(
            f"feet (f1, f2) = ({f1:.17g}, {f2:.17g}) violate 0 < f1 < f2 < 1"
        )
    return float(f1), float(f2)


def polygon_area(vertices: Sequence[complex] | np.ndarray) -> float:
    """Signed shoelace area of a closed polygon, positive counterclockwise."""
    v = np.asarray(vertices)
    if v.ndim == 2:
        v = v[:, 0] + 1j * v[:, 1]
    v = v.astype(complex)
    return float(0.5 * np.sum((np.conj(v) * np.roll(v, -1)).imag))


def chain_vertices(frame: EdgeFrame, lengths: Sequence[float] | np.ndarray) -> np.ndarray:
    """Vertices of the polygonal chain with the frame's directions.

    Returns n points: V_0 = 0 and V_j the partial sums of lengths[k]*dirs[k].
    For lengths satisfying the closing condition the chain is a closed
    polygon (the omitted final vertex returns to 0).
    """
    x = np.asarray(lengths, dtype=float)
    steps = x * frame.dirs
    return np.concatenate(([0.0 + 0.0j], np.cumsum(steps)[:-1]))


def tangential_lengths(theta: WeightVector, label: Sequence[int]) -> np.ndarray:
    """Edge lengths of the polygon circumscribed about the unit circle.

    With turning angle theta_{i_j} at the vertex joining edges j-1 and j,
    edge j has length tan(theta_{i_j}/2) + tan(theta_{i_{j+1}}/2).  All
    lengths are positive and the chain closes exactly, making this a
    convenient strictly interior reference configuration.
    """
    frame = edge_frame(theta, label)
    t = frame.ordered_angles()
    half = np.tan(t / 2.0)
    return half + np.roll(half, -1)
