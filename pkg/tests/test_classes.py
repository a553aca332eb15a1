import pytest
from hypothesis import given, strategies as st

from grothquot import (
    MotivicClass,
    ZetaSeries,
    blowup_class,
    evaluate_count,
    line_bundle_quotient,
    mod_L,
    parse_class,
    projective_space_class,
    sym_power_class,
    torsor_quotient,
    vector_bundle_quotient,
    zeta_coefficients,
)
from grothquot.errors import BoundedInputError, UnboundSymbolError, UnsupportedClassError

L = MotivicClass.L()
s = MotivicClass.symbol("s")


def C(text):
    return parse_class(text)


# --- examples

def test_projective_space():
    assert projective_space_class(0) == MotivicClass.one()
    assert projective_space_class(2) == C("1 + L + L^2")
    assert projective_space_class(1) ** 2 == C("1 + 2*L + L^2")
    with pytest.raises(BoundedInputError):
        projective_space_class(-1)


def test_mod_L_examples():
    assert mod_L(C("1+L+L^2")) == MotivicClass.one()
    assert mod_L((L - 1) * s) == -s
    assert mod_L(L * s + 1) == MotivicClass.one()


def test_evaluate_examples():
    assert evaluate_count(C("1+L+L^2"), 3) == 13
    assert evaluate_count(L ** 3, 2, 3) == 512
    assert evaluate_count((L - 1) * s, 5, 1, {"s": 4}) == 16
    with pytest.raises(UnboundSymbolError):
        evaluate_count(s + 1, 5)


def test_torsor_vb_line_bundle():
    assert torsor_quotient(1) == L - 1
    assert torsor_quotient(1 + L) == L ** 2 - 1
    assert vector_bundle_quotient(1 + L) == L ** 2
    assert vector_bundle_quotient(1) == L
    assert mod_L(vector_bundle_quotient(C("1 + L*s + L^2"))) == MotivicClass.zero()
    assert line_bundle_quotient(1) == L
    assert line_bundle_quotient(1 + L) == L + L ** 2
    assert mod_L(line_bundle_quotient(s + 3)).is_zero()


def test_blowup_examples():
    P2 = projective_space_class(2)
    assert blowup_class(P2, 1, 2) == C("1 + 2*L + L^2")
    assert blowup_class(P2, s, 1) == P2
    P1 = projective_space_class(1)
    assert blowup_class(P1 ** 2, P1, 1) == P1 ** 2
    with pytest.raises(BoundedInputError):
        blowup_class(P2, 1, 0)


def test_sym_power_examples():
    P1 = 1 + L
    assert sym_power_class(P1, 2) == C("1+L+L^2")
    assert sym_power_class(P1, 3) == projective_space_class(3)
    assert sym_power_class(1, 7) == MotivicClass.one()
    with pytest.raises(UnsupportedClassError):
        sym_power_class(L - 1, 2)
    with pytest.raises(UnsupportedClassError):
        sym_power_class(s, 2)


def test_zeta_examples():
    z = zeta_coefficients(1 + L, 3)
    assert list(z.coefficients) == [projective_space_class(i) for i in range(4)]
    assert list(zeta_coefficients(L, 2).coefficients) == [MotivicClass.one(), L, L ** 2]
    assert zeta_coefficients(2, 2).counts(5) == [1, 2, 3]
    assert zeta_coefficients(1 + L, 4).counts(3) == [1, 4, 13, 40, 121]
    with pytest.raises(BoundedInputError):
        zeta_coefficients(L, -1)


def test_parse_and_print():
    c = C("(L-1)*X + 1 - 2*L^3")
    assert C(str(c)) == c
    assert MotivicClass.from_json(c.to_json()) == c
    assert C("-(L+1)^2") == -(1 + L) ** 2
    with pytest.raises(ValueError):
        C("")
    with pytest.raises(ValueError):
        C("1 + * L")


def test_exact_div():
    assert (2 * L + 4).exact_div(2) == L + 2
    with pytest.raises(ArithmeticError):
        (2 * L + 3).exact_div(2)


# --- properties

coeff = st.integers(-6, 6)
classes = st.lists(st.tuples(coeff, st.integers(0, 4), st.integers(0, 2)), max_size=5).map(
    lambda ts: sum((c * L ** i * s ** j for c, i, j in ts), MotivicClass.zero()))
cell_classes = st.lists(st.integers(0, 3), min_size=1, max_size=4).map(MotivicClass.from_L_coefficients)
qs = st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11])


@given(classes, classes, classes)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MotivicClass.zero()
    assert a * 1 == a


@given(classes, classes, qs, st.integers(1, 3), st.integers(-3, 9))
def test_evaluate_is_homomorphism(a, b, q, m, sv):
    sym = {"s": sv}
    ev = lambda x: evaluate_count(x, q, m, sym)  # noqa: E731
    assert ev(a + b) == ev(a) + ev(b)
    assert ev(a * b) == ev(a) * ev(b)


@given(classes, classes, qs, st.integers(-3, 9))
def test_mod_L_is_ring_map_and_congruent(a, b, q, sv):
    assert mod_L(a * b) == mod_L(mod_L(a) * mod_L(b))
    assert mod_L(a + b) == mod_L(a) + mod_L(b)
    sym = {"s": sv}
    assert (evaluate_count(a, q, 1, sym) - evaluate_count(mod_L(a), q, 1, sym)) % q == 0


@given(cell_classes, cell_classes, st.integers(0, 4))
def test_sym_power_additivity(a, b, n):
    total = sum((sym_power_class(a, i) * sym_power_class(b, n - i) for i in range(n + 1)), MotivicClass.zero())
    assert sym_power_class(a + b, n) == total


@given(cell_classes, st.integers(0, 4))
def test_zeta_product(a, N):
    za = zeta_coefficients(a, N)
    zl = zeta_coefficients(L, N)
    assert (za * zl).coefficients == zeta_coefficients(a + L, N).coefficients
    assert isinstance(za, ZetaSeries) and za.N == N


@given(st.integers(0, 5), qs)
def test_sym_power_of_P1_is_Pn(n, q):
    assert sym_power_class(1 + L, n) == projective_space_class(n)
    assert evaluate_count(sym_power_class(1 + L, n), q) == sum(q ** i for i in range(n + 1))


@given(classes)
def test_string_roundtrip(a):
    assert parse_class(str(a)) == a
