"""Structured errors raised across the package.

Every error derives from :class:`PolymodError` and carries an ``exit_code``
used by the command-line layer: 2 for input/validation problems (the default),
3 when the two recovery circles fail to intersect, 4 when a shape pair cannot
be reproduced by any common weight vector, and 5 when an operation requires
the equal-weight vector and did not get it.
"""

from __future__ import annotations


class PolymodError(Exception):
    """Base class for all structured errors in this package."""

    exit_code = 2


# --- weight-vector validation -------------------------------------------------

class SumMismatch(PolymodError):
    """Angle sum differs from 2*pi beyond the allowed tolerance."""


class NonPositive(PolymodError):
    """An angle is zero, negative, or not finite."""


class PairSumTooLarge(PolymodError):
    """Some pair of angles sums to at least pi."""

    def __init__(self, i: int, j: int, value: float):
        self.pair = (i, j)
        self.value = value
        super().__init__(
            f"theta[{i}] + theta[{j}] = {value:.17g} >= pi; weight vectors "
            "require every pairwise sum below pi"
        )


class OutOfRange(PolymodError):
    """A numeric or size argument is outside its documented domain."""


class NotAPermutation(PolymodError):
    """A label word is not a permutation of 1..n."""


# --- planar constructions -----------------------------------------------------

class DegenerateTriangle(PolymodError):
    """A completion-triangle corner angle left the open interval (0, pi)."""


class FootOutsideBase(PolymodError):
    """Pentagon cevian feet violated 0 < f1 < f2 < 1."""


# --- Lorentzian model ----------------------------------------------------------

class SignatureMismatch(PolymodError):
    """The area form did not have exactly one positive and n-3 negative eigenvalues."""


class NotTimelike(PolymodError):
    """A vector expected inside the positive-area cone has area <= 0."""


class WrongSheet(PolymodError):
    """A timelike vector lies on the opposite sheet (x <= 0)."""


class NoIntersection(PolymodError):
    """Two loci that must meet (facet/axis, or the two recovery circles) do not."""

    exit_code = 3


class FacetsDisjoint(PolymodError):
    """Two facet planes neither intersect nor touch inside hyperbolic space."""


# --- moduli maps ----------------------------------------------------------------

class RouteDisagreement(PolymodError):
    """The planar and Lorentzian extraction routes disagreed beyond tolerance."""


class NegativeRatio(PolymodError):
    """A squared shape parameter came out non-positive (broken feet orientation)."""


# --- fiber constructions ---------------------------------------------------------

class SlideCollision(PolymodError):
    """Slid edges of a fiber construction intersect; the polygon is not convex."""


class NotInTheta(PolymodError):
    """A constructed angle vector falls outside the weight-vector domain."""


class InconsistentPair(PolymodError):
    """A shape pair is not reproduced by the weight vector its circles determine."""

    exit_code = 4


# --- glued complexes --------------------------------------------------------------

class PairingFailure(PolymodError):
    """A degenerate-configuration key did not match exactly two face slots."""


class NotEqualWeight(PolymodError):
    """Cusp enumeration requires the equal-weight vector."""

    exit_code = 5


# --- serialization / sampling ------------------------------------------------------

class UnknownFormat(PolymodError):
    """An export format name is not recognised."""


class RejectionBudgetExceeded(PolymodError):
    """Rejection sampling failed to produce a valid weight vector in budget."""
