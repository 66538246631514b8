import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cltseval.errors import DegenerateVector, DimensionMismatch, EmptySequence
from cltseval.metrics import semantic_similarity


def test_identical_sequences_score_ones():
    vectors = [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]]
    assert semantic_similarity(vectors, vectors) == (1.0, 1.0, 1.0)


def test_orthogonal_sequences_score_zero_f1():
    hyp = [[1.0, 0.0], [1.0, 0.0]]
    ref = [[0.0, 1.0]]
    precision, recall, f1 = semantic_similarity(hyp, ref)
    assert precision == pytest.approx(0.0, abs=1e-12)
    assert recall == pytest.approx(0.0, abs=1e-12)
    assert f1 == 0.0


def test_two_by_two_hand_case():
    # h1 matches r1 exactly; h2's best match is r2 at cos 45 degrees, so
    # P = R = (1 + sqrt(2)/2) / 2 and F1 equals the same value
    s = math.sqrt(2) / 2
    hyp = [[1.0, 0.0], [0.0, 1.0]]
    ref = [[1.0, 0.0], [s, s]]
    expected = (1 + s) / 2
    precision, recall, f1 = semantic_similarity(hyp, ref)
    assert precision == pytest.approx(expected, abs=1e-12)
    assert recall == pytest.approx(expected, abs=1e-12)
    assert f1 == pytest.approx(expected, abs=1e-12)


def test_asymmetric_case():
    hyp = [[1.0, 0.0]]
    ref = [[1.0, 0.0], [0.0, 1.0]]
    precision, recall, f1 = semantic_similarity(hyp, ref)
    assert precision == pytest.approx(1.0)
    assert recall == pytest.approx(0.5)
    assert f1 == pytest.approx(2 * 1.0 * 0.5 / 1.5)


def test_empty_sequence():
    with pytest.raises(EmptySequence):
        semantic_similarity([], [[1.0]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        semantic_similarity([[1.0, 0.0]], [[1.0, 0.0, 0.0]])


def test_zero_norm_vector_is_an_error():
    with pytest.raises(DegenerateVector):
        semantic_similarity([[0.0, 0.0]], [[1.0, 0.0]])


vectors = st.lists(
    st.lists(st.floats(-1, 1, allow_nan=False).map(lambda x: round(x, 3)),
             min_size=3, max_size=3).filter(lambda v: any(abs(x) > 1e-6 for x in v)),
    min_size=1, max_size=5)


@given(hyp=vectors, ref=vectors)
@settings(max_examples=100, deadline=None)
def test_f1_bounded_by_max_of_precision_recall(hyp, ref):
    precision, recall, f1 = semantic_similarity(hyp, ref)
    assert -1.0 - 1e-9 <= precision <= 1.0 + 1e-9
    assert -1.0 - 1e-9 <= recall <= 1.0 + 1e-9
    assert f1 <= max(precision, recall) + 1e-9


def test_precision_is_mean_of_row_maxima():
    rng = np.random.default_rng(3)
    hyp = rng.standard_normal((4, 8))
    ref = rng.standard_normal((6, 8))
    precision, recall, _ = semantic_similarity(hyp, ref)
    hn = hyp / np.linalg.norm(hyp, axis=1, keepdims=True)
    rn = ref / np.linalg.norm(ref, axis=1, keepdims=True)
    cos = hn @ rn.T
    assert precision == pytest.approx(float(cos.max(axis=1).mean()), abs=1e-12)
    assert recall == pytest.approx(float(cos.max(axis=0).mean()), abs=1e-12)
