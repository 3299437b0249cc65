"""Forward moduli maps from weight vectors to polyhedron shapes.

A pentagon shape is the pair ``(P, Q)`` with ``0 < P, Q < 1`` and
``P^2 + Q^2 > 1``; a hexahedron shape is a triple of positive reals
``(P, Q, R)``.  Both are extracted twice — once from planar completion
triangle feet, once from Lorentzian axis intercepts — and the two routes
must agree to ``ROUTE_TOL`` relative.

The hexahedron sign rule: ``P - 1``, ``Q - 1`` and ``R - 1`` have the same
signs as the consecutive-triple sums ``theta_{i5}+theta_{i6}+theta_{i1}``,
``theta_{i1}+theta_{i2}+theta_{i3}`` and ``theta_{i3}+theta_{i4}+theta_{i5}``
minus pi.  A triple sum below pi creates the edge between faces ``k`` and
``k+1`` (1-based, cyclic): each parameter controls one opposite pair of
potential edges — ``P``: edge 5 (below 1) or edge 2 (above 1), ``Q``: edge 1
or 4, ``R``: edge 3 or 6.  Values within ``TOL_IDEAL`` of 1 are flagged
ideal and create no edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .combinatorics import WeightVector, as_word
from .errors import NegativeRatio, OutOfRange, RouteDisagreement
from .lorentz import TOL_IDEAL, axis_intercepts, build_model
from .planar import complete_triangle, pentagon_feet

#: Allowed relative disagreement between the planar and Lorentzian routes.
ROUTE_TOL = 1e-9

#: Identity label words used when a caller does not pass one.
IDENTITY5 = (1, 2, 3, 4, 5)
IDENTITY6 = (1, 2, 3, 4, 5, 6)

_FACE_NAMES = {3: "triangle", 4: "quadrilateral", 5: "pentagon"}

#: Edge controlled by shape parameter i when it is below 1 / above 1.
_EDGE_BELOW = (5, 1, 3)
_EDGE_ABOVE = (2, 4, 6)


@dataclass(frozen=True)
class PentagonShape:
    """A right-pentagon shape (P, Q) in the open region P^2 + Q^2 > 1."""

    P: float
    Q: float

    def __post_init__(self):
        if not (0.0 < self.P < 1.0 and 0.0 < self.Q < 1.0):
            raise OutOfRange(
                f"pentagon shape needs 0 < P, Q < 1, got ({self.P!r}, {self.Q!r})"
            )
        if self.P**2 + self.Q**2 <= 1.0:
            raise OutOfRange(
                f"pentagon shape needs P^2 + Q^2 > 1, got "
                f"{self.P**2 + self.Q**2:.17g}"
            )


@dataclass(frozen=True)
class HexahedronShape:
    """A hexahedron shape (P, Q, R), all positive."""

    P: float
    Q: float
    R: float

    def __post_init__(self):
        if not (self.P > 0.0 and self.Q > 0.0 and self.R > 0.0):
            raise OutOfRange(
                f"hexahedron shape needs P, Q, R > 0, got "
                f"({self.P!r}, {self.Q!r}, {self.R!r})"
            )

    @property
    def params(self) -> tuple[float, float, float]:
        return (self.P, self.Q, self.R)

    @property
    def pqr(self) -> tuple[float, float, float]:
        """The folded parameters (p, q, r) = min of each value and its inverse."""
        return tuple(min(v, 1.0 / v) for v in self.params)

    @property
    def signs(self) -> tuple[int, int, int]:
        """Signs of (P-1, Q-1, R-1) with a zero band of width TOL_IDEAL."""
        out = []
        for v in self.params:
            if abs(v - 1.0) <= TOL_IDEAL:
                out.append(0)
            else:
                out.append(1 if v > 1.0 else -1)
        return tuple(out)

    @property
    def ideal_flags(self) -> tuple[bool, bool, bool]:
        return tuple(s == 0 for s in self.signs)


def triple_sums(theta: WeightVector, label: Sequence[int]) -> tuple[float, float, float]:
    """Consecutive-triple angle sums controlling (P, Q, R), in that order."""
    word = as_word(label)
    if len(word) != 6 or theta.n != 6:
        raise OutOfRange("triple sums are defined for n=6")
    t = [theta[m - 1] for m in word]
    return (
        t[4] + t[5] + t[0],
        t[0] + t[1] + t[2],
        t[2] + t[3] + t[4],
    )


def _check_routes(planar_vals, lorentz_vals, what: str) -> None:
    # A parameter of magnitude M is a ratio over a feet gap of order 1/M,
    # so honest rounding grows like M^2; scale the gate accordingly or
    # near-degenerate weights would trip it on noise.
    for name, a, b in zip("PQR", planar_vals, lorentz_vals):
        if abs(a - b) > ROUTE_TOL * max(1.0, abs(a), abs(b)) ** 2:
            raise RouteDisagreement(
                f"{what}: planar {name} = {a:.17g} vs Lorentzian {name} = "
                f"{b:.17g} disagree beyond {ROUTE_TOL:g} of squared magnitude"
            )


def psi5(
    theta: WeightVector,
    label: Sequence[int] = IDENTITY5,
    cross_check: bool = True,
) -> PentagonShape:
    """Forward map to the right-pentagon shape (P, Q).

    P^2 = 1 - f1 and Q^2 = f2 from the completion-triangle feet; with
    ``cross_check`` (the default) the Lorentzian axis intercepts must agree
    to ROUTE_TOL relative or RouteDisagreement is raised.
    """
    f1, f2 = pentagon_feet(theta, label)
    p = math.sqrt(1.0 - f1)
    q = math.sqrt(f2)
    if cross_check:
        _check_routes((p, q), axis_intercepts(build_model(theta, label)), "psi5")
    return PentagonShape(P=p, Q=q)


def psi6(
    theta: WeightVector,
    label: Sequence[int] = IDENTITY6,
    cross_check: bool = True,
) -> HexahedronShape:
    """Forward map to the hexahedron shape (P, Q, R).

    The squared parameters are the signed feet ratios of the completion
    triangle; they must be positive (NegativeRatio otherwise) and, with
    ``cross_check``, must match the Lorentzian axis intercepts.
    """
    tri = complete_triangle(theta, label)
    if tri.feet is None:
        raise OutOfRange("psi6 needs n=6")
    for name, val in zip("PQR", tri.feet):
        if val <= 0.0:
            raise NegativeRatio(f"squared parameter {name}^2 = {val:.17g} <= 0")
    p, q, r = (math.sqrt(val) for val in tri.feet)
    if cross_check:
        _check_routes((p, q, r), axis_intercepts(build_model(theta, label)), "psi6")
    return HexahedronShape(P=p, Q=q, R=r)


def classify_hexahedron(shape: HexahedronShape) -> dict:
    """Combinatorial type report for a hexahedron shape.

    Faces are numbered 1..6 (face k collapses the label's pair (i_k,
    i_{k+1})).  Each parameter strictly below/above 1 contributes one edge
    between a consecutive face pair; face m then has 3 + [edge m-1] +
    [edge m] sides.  The type letter counts parameters above 1: 'a' for
    none through 'd' for all three.
    """
    signs = shape.signs
    edges = set()
    for i, s in enumerate(signs):
        if s < 0:
            edges.add(_EDGE_BELOW[i])
        elif s > 0:
            edges.add(_EDGE_ABOVE[i])
    faces = {}
    for m in range(1, 7):
        prev = (m - 2) % 6 + 1
        count = 3 + (prev in edges) + (m in edges)
        faces[str(m)] = _FACE_NAMES[count]
    type_letter = "abcd"[sum(1 for s in signs if s > 0)]
    p, q, r = shape.pqr
    return {
        "type": type_letter,
        "signs": list(signs),
        "ideal": [bool(f) for f in shape.ideal_flags],
        "adjacent_edges": sorted(edges),
        "faces": faces,
        "p": p,
        "q": q,
        "r": r,
    }


def klein_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Hyperbolic distance between two points of the open Klein ball."""
    dot = sum(a * b for a, b in zip(p, q))
    np2 = sum(a * a for a in p)
    nq2 = sum(b * b for b in q)
    if np2 >= 1.0 or nq2 >= 1.0:
        raise OutOfRange("Klein points must lie inside the unit ball")
    arg = (1.0 - dot) / math.sqrt((1.0 - np2) * (1.0 - nq2))
    return math.acosh(max(arg, 1.0))


@dataclass(frozen=True)
class PentagonSides:
    """Side lengths of a right pentagon, cyclically ordered by facet.

    ``facet_order`` lists the facets in geometric cyclic order (consecutive
    entries share a vertex); ``lengths[i]`` is the hyperbolic length of the
    side on facet ``facet_order[i]``.  The first two entries are the axis
    sides: arctanh(P) on facet 1 and arctanh(Q) on facet 3.
    """

    lengths: tuple[float, float, float, float, float]
    facet_order: tuple[int, int, int, int, int] = (1, 3, 5, 2, 4)

    def by_facet(self, k: int) -> float:
        return self.lengths[self.facet_order.index(k)]


def pentagon_side_lengths(shape: PentagonShape) -> PentagonSides:
    """Hyperbolic side lengths of the right pentagon with shape (P, Q).

    In the Klein disk the pentagon has vertices (0,0), (0,P), then
    ((1-P^2)/Q, P) and (Q, (1-Q^2)/P) on the chord Q*u + P*v = 1, and
    (Q, 0); facets 1 and 3 are the two axis segments.
    """
    p_, q_ = shape.P, shape.Q
    h_p = (0.0, p_)
    h_q = (q_, 0.0)
    v24 = ((1.0 - p_**2) / q_, p_)
    v52 = (q_, (1.0 - q_**2) / p_)
    lengths = (
        math.atanh(p_),
        math.atanh(q_),
        klein_distance(h_q, v52),
        klein_distance(v52, v24),
        klein_distance(v24, h_p),
    )
    return PentagonSides(lengths=lengths)
