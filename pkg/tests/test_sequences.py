import pytest
from hypothesis import given, strategies as st

from grothquot import MotivicClass, evaluate_count
from grothquot.errors import InsufficientDataError, InvalidScenarioError
from grothquot.ffcount import CountingSequence

L = MotivicClass.L()


def test_named_sequences():
    assert CountingSequence.projective(1).counts(3, 3) == [4, 10, 28]
    assert CountingSequence.affine(2).counts(2, 2) == [4, 16]
    assert CountingSequence.point().counts(5, 3) == [1, 1, 1]
    assert CountingSequence.torus(1).counts(7, 2) == [6, 48]


def test_table_sequence():
    seq = CountingSequence.from_json({"q": 5, "N": [6, 26, 126]})
    assert seq.count(2) == 26
    assert seq.count(3, 5) == 126
    with pytest.raises(InsufficientDataError):
        seq.count(4)
    with pytest.raises(InsufficientDataError):
        seq.count(1, 7)
    with pytest.raises(InvalidScenarioError):
        CountingSequence.from_json({"q": 5, "N": [6, None]})
    with pytest.raises(InvalidScenarioError):
        CountingSequence.from_json({"bogus": 1})


def test_json_roundtrip():
    for seq in (CountingSequence.projective(2), CountingSequence.from_table(3, [4, 10])):
        assert CountingSequence.from_json(seq.to_json()).counts(seq.q or 3, 2) == seq.counts(seq.q or 3, 2)


def test_symbolic_q():
    # counting with q = L gives back the class
    assert CountingSequence.projective(2).count(1, L) == 1 + L + L ** 2
    assert CountingSequence.projective(2).as_class() == 1 + L + L ** 2


polys = st.lists(st.integers(0, 4), min_size=1, max_size=4)


@given(polys, polys, st.sampled_from([2, 3, 4, 5]), st.integers(1, 3))
def test_products_and_sums(a, b, q, m):
    A, Bs = CountingSequence.from_poly(a), CountingSequence.from_poly(b)
    assert (A * Bs).count(m, q) == A.count(m, q) * Bs.count(m, q)
    assert (A + Bs).count(m, q) == A.count(m, q) + Bs.count(m, q)


@given(polys, st.sampled_from([2, 3, 5, 7]), st.integers(1, 3))
def test_class_evaluation_agrees(a, q, m):
    seq = CountingSequence.from_poly(a)
    assert seq.count(m, q) == evaluate_count(seq.as_class(), q, m)


def test_table_times_poly():
    t = CountingSequence.from_table(3, [4, 10])
    prod = t * CountingSequence.affine(1)
    assert prod.counts(3, 2) == [12, 90]
