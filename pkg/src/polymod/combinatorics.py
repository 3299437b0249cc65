"""Weight vectors, circular labels, and degenerate-configuration keys.

Conventions used throughout the package:

* A *weight vector* is a sequence of ``n >= 4`` positive angles (radians)
  summing to ``2*pi`` in which every pairwise sum stays strictly below
  ``pi``.  After validation the angles are rescaled by a uniform factor so
  the sum is exact in float64; the rescaling never moves an angle by more
  than the validation tolerance.

* A *label* is a circular arrangement of the marks ``1..n`` considered up to
  rotation and reversal.  The canonical representative starts with ``1`` and
  is the lexicographic minimum of the rotated word and the rotated reversal.
  There are ``(n-1)!/2`` classes.

* Geometric operations elsewhere in the package accept label *words* (any
  rotation/reversal representative) because the roles of the marks depend on
  the representative; the canonical :class:`Label` is used for bookkeeping.

* A *degenerate configuration* is a cyclic word over merged marks — symbols
  are sorted tuples of one, two, or three marks — considered up to rotation
  and reversal.  Two polyhedron faces are glued exactly when their
  configuration keys are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NonPositive,
    NotAPermutation,
    OutOfRange,
    PairSumTooLarge,
    RejectionBudgetExceeded,
    SumMismatch,
)

#: Absolute tolerance on |sum(theta) - 2*pi| accepted by validate_weight.
TOL_SUM = 1e-12

#: Maximum number of rejection-sampling attempts before giving up.
REJECTION_BUDGET = 10**6


@dataclass(frozen=True)
class WeightVector:
    """A validated weight vector: ``n`` angles, exact sum ``2*pi``."""

    n: int
    theta: tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.theta, dtype=float)

    def __iter__(self):
        return iter(self.theta)

    def __getitem__(self, i: int) -> float:
        return self.theta[i]


@dataclass(frozen=True, order=True)
class Label:
    """A canonical circular-permutation label of the marks ``1..n``."""

    word: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "".join(str(m) for m in self.word)


@dataclass(frozen=True, order=True)
class DegenerateConfig:
    """A canonical cyclic word of merged marks (collision pattern).

    ``word`` is a tuple of symbols; each symbol is a sorted tuple of one,
    two, or three marks.  The word is the lexicographic minimum over all
    rotations of itself and of its reversal, so equal configurations compare
    equal.
    """

    word: tuple[tuple[int, ...], ...]

    @property
    def merged(self) -> tuple[tuple[int, ...], ...]:
        """The non-singleton symbols (collided pairs/triples), in word order."""
        return tuple(s for s in self.word if len(s) > 1)

    def render(self) -> str:
        return "".join(
            str(s[0]) if len(s) == 1 else "(" + "".join(str(m) for m in s) + ")"
            for s in self.word
        )

    def __str__(self) -> str:
        return self.render()


# --------------------------------------------------------------------------- #
# weight vectors
# --------------------------------------------------------------------------- #

def validate_weight(theta: Iterable[float], tol_sum: float = TOL_SUM) -> WeightVector:
    """Validate a raw angle sequence and return an exact-sum WeightVector.

    Raises NonPositive, SumMismatch, or PairSumTooLarge naming the violated
    clause; OutOfRange when fewer than four angles are supplied.
    """
    values = [float(t) for t in theta]
    n = len(values)
    if n < 4:
        raise OutOfRange(f"need at least 4 angles, got {n}")
    for i, t in enumerate(values):
        if not math.isfinite(t) or t <= 0.0:
            raise NonPositive(f"theta[{i + 1}] = {t!r} is not a positive finite angle")
    total = math.fsum(values)
    if abs(total - 2.0 * math.pi) > tol_sum:
        raise SumMismatch(
            f"sum(theta) = {total:.17g} differs from 2*pi by "
            f"{abs(total - 2.0 * math.pi):.3g} (> {tol_sum:g})"
        )
    for i in range(n):
        for j in range(i + 1, n):
            pair = values[i] + values[j]
            if pair >= math.pi:
                raise PairSumTooLarge(i + 1, j + 1, pair)
    scale = 2.0 * math.pi / total
    return WeightVector(n=n, theta=tuple(t * scale for t in values))


def equal_weight(n: int) -> WeightVector:
    """The equal-weight vector (2*pi/n, ..., 2*pi/n)."""
    if n < 4:
        raise OutOfRange(f"need n >= 4, got {n}")
    return WeightVector(n=n, theta=(2.0 * math.pi / n,) * n)


def sample_weight(n: int, seed: int) -> WeightVector:
    """Deterministic pseudo-random weight vector for (n, seed)."""
    return sample_weight_rng(n, np.random.default_rng(seed))


def sample_weight_rng(n: int, rng: np.random.Generator) -> WeightVector:
    """Rejection-sample a weight vector using an explicit generator.

    Draws uniform simplex points (normalized exponentials) scaled to 2*pi
    and keeps the first draw whose largest two angles sum below pi.  A thin
    safety margin keeps the subsequent exact-sum rescaling from crossing
    the open boundary.
    """
    if n < 4:
        raise OutOfRange(f"need n >= 4, got {n}")
    for _ in range(REJECTION_BUDGET):
        x = rng.exponential(size=n)
        total = x.sum()
        if total <= 0.0 or not np.isfinite(total):
            continue
        th = 2.0 * math.pi * x / total
        top = np.partition(th, n - 2)[-2:]
        if th.min() > 0.0 and top[0] + top[1] < math.pi - 1e-12:
            return validate_weight(th)
    raise RejectionBudgetExceeded(
        f"no valid weight vector for n={n} in {REJECTION_BUDGET} attempts"
    )


# --------------------------------------------------------------------------- #
# labels
# --------------------------------------------------------------------------- #

def as_word(label: Label | Sequence[int]) -> tuple[int, ...]:
    """Coerce a Label or raw sequence to a validated permutation word."""
    word = label.word if isinstance(label, Label) else tuple(int(m) for m in label)
    n = len(word)
    if sorted(word) != list(range(1, n + 1)):
        raise NotAPermutation(f"{word!r} is not a permutation of 1..{n}")
    return word


def _rotate_to_front(word: tuple[int, ...], mark: int = 1) -> tuple[int, ...]:
    i = word.index(mark)
    return word[i:] + word[:i]


def canonical_label(word: Label | Sequence[int]) -> Label:
    """Canonical representative: rotate 1 to the front, then take the
    lexicographic minimum of the word and its similarly rotated reversal."""
    w = as_word(word)
    fwd = _rotate_to_front(w)
    rev = _rotate_to_front(tuple(reversed(w)))
    return Label(word=min(fwd, rev))


def enumerate_labels(n: int) -> list[Label]:
    """All canonical labels for 4 <= n <= 8, sorted; count is (n-1)!/2."""
    if not 4 <= n <= 8:
        raise OutOfRange(f"label enumeration supports 4 <= n <= 8, got {n}")
    out = []
    for tail in permutations(range(2, n + 1)):
        word = (1,) + tail
        if word <= _rotate_to_front(tuple(reversed(word))):
            out.append(Label(word=word))
    out.sort()
    return out


# --------------------------------------------------------------------------- #
# degenerate configurations
# --------------------------------------------------------------------------- #

def _canonical_cyclic(word: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    best = None
    for w in (word, tuple(reversed(word))):
        for r in range(len(w)):
            cand = w[r:] + w[:r]
            if best is None or cand < best:
                best = cand
    return best


def _merge_positions(word: tuple[int, ...], groups: Sequence[Sequence[int]]) -> DegenerateConfig:
    """Merge the given groups of cyclic positions (0-based) into symbols."""
    n = len(word)
    pos_to_group: dict[int, int] = {}
    for g, positions in enumerate(groups):
        for p in positions:
            pos_to_group[p % n] = g
    symbols: list[tuple[int, ...]] = []
    seen_groups: set[int] = set()
    for p in range(n):
        g = pos_to_group.get(p)
        if g is None:
            symbols.append((word[p],))
        elif g not in seen_groups:
            seen_groups.add(g)
            marks = sorted(word[q % n] for q in groups[g])
            symbols.append(tuple(marks))
    return DegenerateConfig(word=_canonical_cyclic(tuple(symbols)))


def face_config(label: Label | Sequence[int], k: int) -> DegenerateConfig:
    """Codimension-1 key of face ``k``: marks at positions k, k+1 collide.

    ``k`` is 1-based and cyclic; face k of <i1..in> collapses (i_k, i_{k+1}).
    Two faces glue exactly when their keys are equal.
    """
    word = as_word(label)
    n = len(word)
    if not 1 <= k <= n:
        raise OutOfRange(f"face index must be in 1..{n}, got {k}")
    return _merge_positions(word, [(k - 1, k % n)])


def vertex_config(label: Label | Sequence[int], k: int, m: int) -> DegenerateConfig:
    """Codimension-2 key with two disjoint collided pairs at faces k and m."""
    word = as_word(label)
    n = len(word)
    if not (1 <= k <= n and 1 <= m <= n) or k == m:
        raise OutOfRange(f"need two distinct face indices in 1..{n}, got {k}, {m}")
    a = {(k - 1) % n, k % n}
    b = {(m - 1) % n, m % n}
    if a & b:
        raise OutOfRange(f"faces {k} and {m} share a mark; pairs must be disjoint")
    return _merge_positions(word, [sorted(a), sorted(b)])


def triple_config(label: Label | Sequence[int], k: int) -> DegenerateConfig:
    """Codimension-2 key with the consecutive triple at positions k..k+2 collided."""
    word = as_word(label)
    n = len(word)
    if not 1 <= k <= n:
        raise OutOfRange(f"face index must be in 1..{n}, got {k}")
    return _merge_positions(word, [(k - 1, k % n, (k + 1) % n)])
