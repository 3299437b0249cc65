"""Fiber parameterizations over shapes and the two-shape inversion solvers.

Given a shape and a point ``w`` of the upper half-plane, a weight vector
mapping to that shape is constructed from the triangle with corners
``0, 1, w``:

* Pentagon: mark the base with ``f1 = 1 - P^2`` and ``f2 = Q^2``; the five
  edge directions of the resulting pentagon (after sliding the two cevian
  edges to the base corners, which only directions survive) are
  ``f2 - w, 1, w - f1, w - 1, -w`` in label order.

* Hexahedron: mark ``X = P^2`` on the base, ``Y = 1 + (w - 1) Q^2`` on the
  segment from 1 to ``w`` and ``Z = w (1 - R^2)`` on the segment from 0 to
  ``w``; the six directions are ``X - w, 1, Y, w - 1, Z - 1, -w``.

Turning angles are read from consecutive direction ratios, never from
near-coincident vertex differences.  The inverse reading recovers ``w`` as
the completion-triangle apex, and a pair of shapes for the designated label
pair pins ``w`` down as the intersection of two circles: for pentagons
``|w| = Q1*Q2`` and ``|w - 1| = P1*P2``; for hexahedra ``|w| = P1*P2`` and
``|w - 1| = 1/(Q1*Q2)``.

The inversion solvers always re-run the forward maps on the recovered
weight vector and compare against *both* input shapes — for hexahedra this
includes the R parameters, which the circles never see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Sequence

import numpy as np

from .combinatorics import WeightVector, sample_weight_rng, validate_weight
from .errors import (
    InconsistentPair,
    NoIntersection,
    NonPositive,
    NotInTheta,
    OutOfRange,
    PairSumTooLarge,
    SlideCollision,
    SumMismatch,
)
from .moduli import (
    IDENTITY5,
    IDENTITY6,
    HexahedronShape,
    PentagonShape,
    psi5,
    psi6,
)
from .planar import complete_triangle

#: Minimum imaginary part for a point of the open upper half-plane.
TOL_IM = 1e-12

#: Default verification tolerance of the inversion solvers.
INVERT_TOL = 1e-9

#: The label words whose shape pairs determine a weight vector uniquely.
SWAPPED5 = (2, 1, 4, 3, 5)
SWAPPED6 = (2, 1, 4, 3, 5, 6)


@dataclass(frozen=True)
class UpperHalfPoint:
    """A point of the open upper half-plane."""

    w: complex

    def __post_init__(self):
        if not (math.isfinite(self.w.real) and math.isfinite(self.w.imag)):
            raise OutOfRange(f"w = {self.w!r} is not finite")
        if self.w.imag <= TOL_IM:
            raise OutOfRange(
                f"Im(w) = {self.w.imag:.17g} must exceed {TOL_IM:g}"
            )

    @property
    def as_pair(self) -> tuple[float, float]:
        return (self.w.real, self.w.imag)


@dataclass(frozen=True)
class FiberConstruction:
    """Marks and edge directions of one fiber construction."""

    n: int
    w: complex
    marks: tuple[complex, ...]
    dirs: tuple[complex, ...]


def _as_w(w: UpperHalfPoint | complex) -> complex:
    if isinstance(w, UpperHalfPoint):
        return w.w
    return UpperHalfPoint(complex(w)).w


def _unit(z: complex) -> complex:
    mag = abs(z)
    if mag < 1e-15:
        raise SlideCollision("a construction edge has collapsed to a point")
    return z / mag


def fiber_construction5(shape: PentagonShape, w: UpperHalfPoint | complex) -> FiberConstruction:
    """Marks and directions of the pentagon fiber construction."""
    wc = _as_w(w)
    f1 = 1.0 - shape.P**2
    f2 = shape.Q**2
    dirs = (
        _unit(f2 - wc),
        1.0 + 0.0j,
        _unit(wc - f1),
        _unit(wc - 1.0),
        _unit(-wc),
    )
    return FiberConstruction(n=5, w=wc, marks=(f1 + 0.0j, f2 + 0.0j), dirs=dirs)


def fiber_construction6(shape: HexahedronShape, w: UpperHalfPoint | complex) -> FiberConstruction:
    """Marks and directions of the hexahedron fiber construction."""
    wc = _as_w(w)
    x_mark = complex(shape.P**2)
    y_mark = 1.0 + (wc - 1.0) * shape.Q**2
    z_mark = wc * (1.0 - shape.R**2)
    dirs = (
        _unit(x_mark - wc),
        1.0 + 0.0j,
        _unit(y_mark),
        _unit(wc - 1.0),
        _unit(z_mark - 1.0),
        _unit(-wc),
    )
    return FiberConstruction(n=6, w=wc, marks=(x_mark, y_mark, z_mark), dirs=dirs)


def _angles_from_dirs(construction: FiberConstruction, label: Sequence[int]) -> WeightVector:
    """Turning angles of the construction, assembled into a weight vector."""
    dirs = construction.dirs
    n = construction.n
    word = tuple(label)
    if len(word) != n:
        raise OutOfRange(f"label has {len(word)} marks but the construction has {n}")
    turns = []
    for j in range(n):
        ratio = dirs[j] / dirs[j - 1]
        ang = math.atan2(ratio.imag, ratio.real)
        if ang <= 0.0:
            raise SlideCollision(
                f"turning angle at edge {j + 1} is {ang:.17g}; slid edges intersect"
            )
        turns.append(ang)
    total = math.fsum(turns)
    if abs(total - 2.0 * math.pi) > 1e-9:
        raise SlideCollision(
            f"turning angles wind {total / (2 * math.pi):.6f} times instead of once"
        )
    theta = [0.0] * n
    for j, mark in enumerate(word):
        theta[mark - 1] = turns[j]
    try:
        return validate_weight(theta)
    except (PairSumTooLarge, NonPositive, SumMismatch) as exc:
        raise NotInTheta(f"constructed angles leave the weight domain: {exc}") from exc


def fiber_theta5(
    shape: PentagonShape,
    w: UpperHalfPoint | complex,
    label: Sequence[int] = IDENTITY5,
) -> WeightVector:
    """Weight vector whose pentagon for ``label`` has the given shape.

    Raises SlideCollision when the construction self-intersects and
    NotInTheta when the resulting angles violate the weight-vector domain.
    """
    return _angles_from_dirs(fiber_construction5(shape, w), label)


def fiber_theta6(
    shape: HexahedronShape,
    w: UpperHalfPoint | complex,
    label: Sequence[int] = IDENTITY6,
) -> WeightVector:
    """Weight vector whose hexahedron for ``label`` has the given shape."""
    return _angles_from_dirs(fiber_construction6(shape, w), label)


def w_from_theta(theta: WeightVector, label: Sequence[int]) -> UpperHalfPoint:
    """The fiber point of a weight vector: the completion-triangle apex."""
    tri = complete_triangle(theta, label)
    return UpperHalfPoint(w=tri.c)


def circle_intersection(r0: float, r1: float) -> UpperHalfPoint:
    """Upper intersection of circles |w| = r0 and |w - 1| = r1."""
    if r0 <= 0.0 or r1 <= 0.0:
        raise OutOfRange(f"radii must be positive, got ({r0!r}, {r1!r})")
    x = (1.0 + r0 * r0 - r1 * r1) / 2.0
    # Heron-style factored form of r0^2 - x^2: each factor is a tangency
    # margin, so near-tangent circles lose no precision to cancellation.
    gap = 1.0 - r0
    y_sq = (
        (r1 - gap) * (r1 + gap) * ((1.0 + r0) - r1) * ((1.0 + r0) + r1) / 4.0
    )
    if y_sq <= TOL_IM * TOL_IM:
        raise NoIntersection(
            f"circles |w| = {r0:.17g} about 0 and |w - 1| = {r1:.17g} about 1 "
            "do not meet in the upper half-plane (need |r0 - r1| < 1 < r0 + r1)"
        )
    return UpperHalfPoint(w=complex(x, math.sqrt(y_sq)))


def recover_w5(s1: PentagonShape, s2: PentagonShape) -> UpperHalfPoint:
    """Recover w from the pentagon shapes of the label pair <12345>, <21435>.

    The swapped label exchanges the cevian roles, so the two shape pairs
    constrain ``|w| = Q1*Q2`` and ``|w - 1| = P1*P2``.
    """
    return circle_intersection(s1.Q * s2.Q, s1.P * s2.P)


def recover_w6(s1: HexahedronShape, s2: HexahedronShape) -> UpperHalfPoint:
    """Recover w from hexahedron shapes of the label pair <123456>, <214356>:
    ``|w| = P1*P2`` and ``|w - 1| = 1/(Q1*Q2)``."""
    return circle_intersection(s1.P * s2.P, 1.0 / (s1.Q * s2.Q))


def _verify_pair(values: Sequence[tuple[float, float]], tol: float) -> float:
    # Residual scaled by squared magnitude: a parameter of size M is a
    # ratio over a gap of order 1/M, so honest rounding grows like M^2 and
    # an absolute 1e-9 would exceed double precision near the boundary.
    residual = max(abs(a - b) / max(1.0, abs(a), abs(b)) ** 2 for a, b in values)
    if residual > tol:
        raise InconsistentPair(
            f"forward verification failed: residual {residual:.17g} > {tol:g}"
        )
    return residual


def invert5(
    s1: PentagonShape, s2: PentagonShape, tol: float = INVERT_TOL
) -> WeightVector:
    """The unique weight vector whose <12345>/<21435> pentagons are (s1, s2)."""
    return inversion_report(5, s1, s2, tol)["theta"]


def invert6(
    s1: HexahedronShape, s2: HexahedronShape, tol: float = INVERT_TOL
) -> WeightVector:
    """The unique weight vector whose <123456>/<214356> hexahedra are (s1, s2).

    The circle solve uses only (P, Q); the forward verification also checks
    both R parameters, so an R-inconsistent pair raises InconsistentPair.
    """
    return inversion_report(6, s1, s2, tol)["theta"]


def inversion_report(n: int, s1, s2, tol: float = INVERT_TOL) -> dict:
    """Full inversion result: {'theta', 'w', 'residual'}.

    Shared engine of invert5/invert6; the CLI uses the extra fields.
    """
    if n == 5:
        w = recover_w5(s1, s2)
        try:
            theta = fiber_theta5(s1, w, IDENTITY5)
        except (SlideCollision, NotInTheta) as exc:
            raise InconsistentPair(
                f"no weight vector realizes this shape pair: {exc}"
            ) from exc
        r1 = psi5(theta, IDENTITY5)
        r2 = psi5(theta, SWAPPED5)
        residual = _verify_pair(
            [(r1.P, s1.P), (r1.Q, s1.Q), (r2.P, s2.P), (r2.Q, s2.Q)], tol
        )
    elif n == 6:
        w = recover_w6(s1, s2)
        try:
            theta = fiber_theta6(s1, w, IDENTITY6)
        except (SlideCollision, NotInTheta) as exc:
            raise InconsistentPair(
                f"no weight vector realizes this shape pair: {exc}"
            ) from exc
        r1 = psi6(theta, IDENTITY6)
        r2 = psi6(theta, SWAPPED6)
        residual = _verify_pair(
            [
                (r1.P, s1.P), (r1.Q, s1.Q), (r1.R, s1.R),
                (r2.P, s2.P), (r2.Q, s2.Q), (r2.R, s2.R),
            ],
            tol,
        )
    else:
        raise OutOfRange(f"inversion is defined for n in {{5, 6}}, got {n}")
    return {"theta": theta, "w": w, "residual": residual}


# ----------------------------------------------------------------------------- #
# empirical injectivity harness
# ----------------------------------------------------------------------------- #

def _roundtrip_trial(n: int, seed: int, tol: float, trial: int) -> dict:
    """One deterministic round-trip trial; rng depends only on (seed, trial)."""
    rng = np.random.default_rng([seed, trial])
    theta = sample_weight_rng(n, rng)
    if n == 5:
        s1 = psi5(theta, IDENTITY5)
        s2 = psi5(theta, SWAPPED5)
        shape_vec = (s1.P, s1.Q, s2.P, s2.Q)
    else:
        s1 = psi6(theta, IDENTITY6)
        s2 = psi6(theta, SWAPPED6)
        shape_vec = (s1.P, s1.Q, s1.R, s2.P, s2.Q, s2.R)
    result = {"trial": trial, "theta": theta.theta, "shapes": shape_vec}
    try:
        back = inversion_report(n, s1, s2, tol)["theta"]
        result["error"] = max(
            abs(a - b) for a, b in zip(theta.theta, back.theta)
        )
    except Exception as exc:  # failures are data, not crashes
        result["failure"] = f"{type(exc).__name__}: {exc}"
    return result


def verify_injectivity(
    n: int, samples: int, seed: int, tol: float = INVERT_TOL, jobs: int = 1
) -> dict:
    """Empirical injectivity report for the designated label pair.

    Round-trips ``samples`` deterministic weight vectors and reports the
    maximum recovery error, all failures, and the minimum pairwise
    separation of the produced shape pairs (injectivity at sample scale).
    The report depends only on (n, samples, seed, tol), not on ``jobs``.
    """
    if n not in (5, 6):
        raise OutOfRange(f"n must be 5 or 6, got {n}")
    if samples < 1:
        raise OutOfRange(f"samples must be positive, got {samples}")
    run = partial(_roundtrip_trial, n, seed, tol)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, range(samples), chunksize=64))
    else:
        results = [run(t) for t in range(samples)]

    failures = []
    errors = []
    for res in results:
        if "failure" in res:
            failures.append({"trial": res["trial"], "failure": res["failure"]})
        elif res["error"] > tol:
            failures.append({"trial": res["trial"], "error": res["error"]})
            errors.append(res["error"])
        else:
            errors.append(res["error"])

    shapes = np.array([res["shapes"] for res in results])
    thetas = np.array([res["theta"] for res in results])
    min_sep = math.inf
    collision = None
    for i in range(len(results)):
        sep = np.abs(shapes[i + 1 :] - shapes[i]).max(axis=1)
        if sep.size:
            j = int(np.argmin(sep))
            if float(sep[j]) < min_sep:
                min_sep = float(sep[j])
                theta_sep = float(np.abs(thetas[i + 1 + j] - thetas[i]).max())
                if min_sep == 0.0 and theta_sep > 1e-6:
                    collision = {"trials": [i, i + 1 + j], "theta_separation": theta_sep}
    if collision is not None:
        failures.append({"collision": collision})

    return {
        "n": n,
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "max_error": max(errors) if errors else None,
        "min_shape_separation": min_sep if math.isfinite(min_sep) else None,
        "failures": failures,
        "pass": not failures,
    }
