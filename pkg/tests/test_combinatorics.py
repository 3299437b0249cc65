"""Tests for weight vectors, circular labels, and configuration keys."""

import math
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polymod import (
    Label,
    NonPositive,
    NotAPermutation,
    OutOfRange,
    PairSumTooLarge,
    SumMismatch,
    canonical_label,
    enumerate_labels,
    equal_weight,
    face_config,
    sample_weight,
    triple_config,
    validate_weight,
    vertex_config,
)
from polymod.combinatorics import sample_weight_rng

TWO_PI = 2.0 * math.pi


def brute_canonical(word):
    """Independent oracle: minimum over the dihedral orbit, 1 rotated to front."""
    orbit = []
    for w in (tuple(word), tuple(reversed(word))):
        for r in range(len(w)):
            rot = w[r:] + w[:r]
            if rot[0] == 1:
                orbit.append(rot)
    return min(orbit)


def perm_strategy(n):
    return st.permutations(list(range(1, n + 1)))


# ===========================================================================
# weight vectors
# ===========================================================================

class TestValidateWeight:
    def test_equal_weight_valid(self):
        for n in (4, 5, 6, 7):
            theta = equal_weight(n)
            assert theta.n == n
            assert math.fsum(theta) == pytest.approx(TWO_PI, abs=1e-15)

    def test_rescales_to_exact_sum(self):
        """A sum within tolerance is rescaled so fsum is exactly 2*pi-ish."""
        raw = [TWO_PI / 5 + 3e-14] + [TWO_PI / 5 - 0.75e-14] * 4
        theta = validate_weight(raw)
        assert abs(math.fsum(theta) - TWO_PI) < 1e-15

    def test_sum_mismatch(self):
        with pytest.raises(SumMismatch):
            validate_weight([1.0, 1.0, 1.0, 1.0, 1.0])

    def test_non_positive(self):
        with pytest.raises(NonPositive):
            validate_weight([0.0, 2.0, 2.0, TWO_PI - 4.0, 1e-16])
        with pytest.raises(NonPositive):
            validate_weight([-0.1, 2.0, 2.0, 2.0, TWO_PI - 5.9])

    def test_pair_sum_too_large(self):
        # two angles of 1.6 sum to 3.2 >= pi
        rest = (TWO_PI - 3.2) / 3
        with pytest.raises(PairSumTooLarge) as info:
            validate_weight([1.6, 1.6, rest, rest, rest])
        assert info.value.pair == (1, 2)

    def test_too_few_angles(self):
        with pytest.raises(OutOfRange):
            validate_weight([2.0, 2.0, TWO_PI - 4.0])

    def test_nan_rejected(self):
        with pytest.raises(NonPositive):
            validate_weight([math.nan, 2.0, 2.0, 2.0, TWO_PI - 6.0 - math.nan])


class TestSampling:
    def test_deterministic(self):
        """Same (n, seed) gives the identical vector."""
        assert sample_weight(5, 123).theta == sample_weight(5, 123).theta
        assert sample_weight(6, 7).theta == sample_weight(6, 7).theta

    def test_samples_are_valid(self):
        """Every sample passes validation: positive, exact sum, pair sums < pi."""
        for n in (5, 6):
            for seed in range(50):
                theta = sample_weight(n, seed)
                assert min(theta) > 0.0
                assert abs(math.fsum(theta) - TWO_PI) < 1e-12
                worst = max(a + b for a, b in combinations(theta.theta, 2))
                assert worst < math.pi

    def test_rng_stream_matches_seed_list(self):
        """sample_weight(n, s) equals sampling from default_rng(s) directly."""
        rng = np.random.default_rng(42)
        assert sample_weight(5, 42).theta == sample_weight_rng(5, rng).theta


# ===========================================================================
# labels
# ===========================================================================

class TestCanonicalLabel:
    def test_frozen_example(self):
        assert canonical_label((2, 1, 4, 3, 5)).word == (1, 2, 5, 3, 4)

    def test_identity_is_canonical(self):
        assert canonical_label((1, 2, 3, 4, 5)).word == (1, 2, 3, 4, 5)

    @given(perm_strategy(5))
    def test_matches_brute_force(self, word):
        assert canonical_label(word).word == brute_canonical(word)

    @given(perm_strategy(6), st.integers(0, 5), st.booleans())
    def test_invariant_under_rotation_and_reversal(self, word, rot, rev):
        """Any representative of the same circular class canonicalizes equally."""
        moved = tuple(word[rot:] + word[:rot])
        if rev:
            moved = tuple(reversed(moved))
        assert canonical_label(moved) == canonical_label(tuple(word))

    def test_rejects_non_permutation(self):
        with pytest.raises(NotAPermutation):
            canonical_label((1, 1, 3, 4, 5))
        with pytest.raises(NotAPermutation):
            canonical_label((0, 1, 2, 3, 4))


class TestEnumerateLabels:
    @pytest.mark.parametrize("n,count", [(4, 3), (5, 12), (6, 60), (7, 360)])
    def test_counts(self, n, count):
        """(n-1)!/2 circular classes up to rotation and reversal."""
        labels = enumerate_labels(n)
        assert len(labels) == count
        assert len(set(labels)) == count

    def test_all_canonical_and_sorted(self):
        labels = enumerate_labels(6)
        assert labels == sorted(labels)
        for lab in labels:
            assert canonical_label(lab.word) == lab

    def test_every_permutation_is_covered(self):
        """Each permutation of 1..5 canonicalizes to an enumerated label."""
        enumerated = set(enumerate_labels(5))
        for word in permutations(range(1, 6)):
            assert canonical_label(word) in enumerated

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            enumerate_labels(3)
        with pytest.raises(OutOfRange):
            enumerate_labels(9)


# ===========================================================================
# degenerate configurations
# ===========================================================================

class TestFaceConfig:
    def test_render(self):
        assert face_config((1, 2, 3, 4, 5), 2).render() == "1(23)45"

    def test_wraparound_face(self):
        """Face n collapses (i_n, i_1)."""
        cfg = face_config((1, 2, 3, 4, 5), 5)
        assert cfg.merged == ((1, 5),)

    @given(perm_strategy(5), st.integers(1, 5), st.integers(0, 4), st.booleans())
    def test_representative_independent(self, word, k, rot, rev):
        """The key of a face only depends on the collided pair's cyclic context."""
        word = tuple(word)
        cfg = face_config(word, k)
        # the same geometric face in a rotated word is face k - rot
        moved = word[rot:] + word[:rot]
        k2 = (k - 1 - rot) % 5 + 1
        assert face_config(moved, k2) == cfg

    def test_codim1_config_counts(self):
        """Every codim-1 key appears exactly twice; 30 keys for n=5, 180 for n=6."""
        for n, expected in ((5, 30), (6, 180)):
            buckets = {}
            for lab in enumerate_labels(n):
                for k in range(1, n + 1):
                    buckets.setdefault(face_config(lab, k), []).append((lab, k))
            assert len(buckets) == expected
            assert all(len(v) == 2 for v in buckets.values())


class TestVertexAndTripleConfig:
    def test_vertex_requires_disjoint_pairs(self):
        with pytest.raises(OutOfRange):
            vertex_config((1, 2, 3, 4, 5), 1, 2)

    def test_vertex_config_count(self):
        """15 distinct two-pair keys for n=5, each hit by 4 (cell, vertex) slots."""
        buckets = {}
        for lab in enumerate_labels(5):
            for k in range(1, 6):
                m = (k + 1) % 5 + 1  # k+2 cyclically, 1-based
                buckets.setdefault(vertex_config(lab, k, m), []).append((lab, k))
        assert len(buckets) == 15
        assert sorted({len(v) for v in buckets.values()}) == [4]

    def test_triple_render(self):
        cfg = triple_config((1, 2, 3, 4, 5, 6), 1)
        assert cfg.render() == "(123)456"

    def test_triple_config_count(self):
        """n=6: 20 mark-triples times 3 arrangements of the rest = 60 keys."""
        keys = set()
        for lab in enumerate_labels(6):
            for k in range(1, 7):
                keys.add(triple_config(lab, k))
        assert len(keys) == 60

    @given(perm_strategy(6), st.integers(1, 6))
    @settings(max_examples=40)
    def test_triple_reversal_invariance(self, word, k):
        """Reversing the word hits the same key at the mirrored position."""
        word = tuple(word)
        cfg = triple_config(word, k)
        rev = tuple(reversed(word))
        # 0-based positions {k-1, k, k+1} land at {4-k, 5-k, 6-k} mod 6
        k_rev = (4 - k) % 6 + 1
        assert triple_config(rev, k_rev) == cfg


class TestLabelType:
    def test_str(self):
        assert str(Label((1, 3, 2, 4, 5))) == "13245"

    def test_ordering_matches_words(self):
        assert Label((1, 2, 3, 4, 5)) < Label((1, 2, 4, 3, 5))
