import pytest
from hypothesis import given, settings, strategies as st

from specialsets.field import (
    GF,
    FieldError,
    FieldElement,
    field_for_q,
    field_from_json,
    is_irreducible,
    least_irreducible,
    prime_power,
)

I, TWO_I = 3, 6  # labels of i and 2i in GF(9) = GF(3)[x]/(x^2+1)
QS = [3, 5, 7, 9, 25, 27]


def test_gf9_defining_polynomial_is_x2_plus_1(F9):
    assert list(F9.params.irreducible) == [1, 0, 1]
    assert F9.mul(I, I) == 2


def test_gf9_small_table(F9):
    assert F9.inv(2) == 2
    assert F9.frob(I) == TWO_I
    assert F9.frob(0) == 0 and F9.frob(1) == 1
    assert F9.trace(I) == 0 and F9.trace(1) == 2 and F9.trace(0) == 0
    assert F9.norm(F9.add(1, I)) == 2
    assert F9.norm(1) == 1 and F9.norm(0) == 0


def test_inverse_of_zero_raises(F9):
    with pytest.raises(ZeroDivisionError):
        F9.inv(0)


def test_squares_in_gf3(F9):
    assert F9.is_square_in_subfield(2) is False
    assert F9.is_square_in_subfield(0) and F9.is_square_in_subfield(1)
    with pytest.raises(FieldError):
        F9.is_square_in_subfield(I)


def test_solve_norm_least_label(F9):
    assert F9.solve_norm(2) == F9.add(1, I)
    assert F9.solve_norm(1) == 1
    for bad in (0, I):
        with pytest.raises(FieldError):
            F9.solve_norm(bad)


def test_solve_norm_gf25_preimages():
    F = field_for_q(5)
    for a in range(1, 5):
        x = F.solve_norm(a)
        assert F.norm(x) == a
        assert len(F.elements(lambda y: F.norm(y) == a)) == 6
        assert x == min(F.elements(lambda y: F.norm(y) == a))


def test_enumerate_examples(F9):
    assert F9.elements(lambda x: F9.trace(x) == 0) == [0, I, TWO_I]
    sols = F9.elements(lambda x: F9.trace(x) == F9.mul(2, F9.norm(x)))
    assert sols == [0, 1, F9.add(2, I), F9.add(2, TWO_I)]
    assert len(F9.elements()) == 9


@pytest.mark.parametrize("q", [3, 5, 7, 9, 27])
def test_x_solution_count(q):
    F = field_for_q(q)
    assert len(F.elements(lambda x: F.trace(x) == F.mul(2, F.norm(x)))) == q + 1


@pytest.mark.parametrize("q", QS)
def test_norm_is_q_plus_1_to_1(q):
    F = field_for_q(q)
    counts = {}
    for a in range(1, F.order):
        counts[F.norm(a)] = counts.get(F.norm(a), 0) + 1
    assert set(counts) == set(F.subfield()) - {0}
    assert set(counts.values()) == {q + 1}


@pytest.mark.parametrize("q", QS)
def test_subfield_is_fixed_field(q):
    F = field_for_q(q)
    fixed = [a for a in range(F.order) if F.frob(a) == a]
    assert fixed == F.subfield() and len(fixed) == q


def test_omega_and_trace_zero_unit():
    for q in QS:
        F = field_for_q(q)
        assert F.norm(F.omega) == F.neg(1)
        assert F.omega == min(F.elements(lambda x: F.norm(x) == F.neg(1)))
        w = F.trace_zero_unit
        assert w and F.trace(w) == 0


def test_trace_form_nondegenerate():
    for q in (3, 5, 9):
        F = field_for_q(q)
        w = F.trace_zero_unit
        seen = {(F.trace(a), F.trace(F.mul(a, w))) for a in range(F.order)}
        assert len(seen) == F.order


def test_norm_multiplicative_exhaustive_q3(F9):
    for a in range(9):
        for b in range(9):
            assert F9.norm(F9.mul(a, b)) == F9.mul(F9.norm(a), F9.norm(b))


@pytest.mark.parametrize("q", [3, 5, 9, 27])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(q, data):
    F = field_for_q(q)
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, 0) == a and F.mul(a, 1) == a
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.frob(F.frob(a)) == a
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    assert F.in_subfield(F.trace(a)) and F.in_subfield(F.norm(a))
    assert F.trace(a) == F.trace(F.frob(a))
    lam = data.draw(st.sampled_from(F.subfield()))
    assert F.trace(F.add(F.mul(lam, a), b)) == F.add(F.mul(lam, F.trace(a)), F.trace(b))
    assert F.pow(a, F.q + 1) == F.norm(a)


def test_vector_ops_match_scalar(F9):
    import numpy as np

    a = np.arange(9).repeat(9)
    b = np.tile(np.arange(9), 9)
    assert [F9.mul(x, y) for x, y in zip(a, b)] == F9.vmul(a, b).tolist()
    assert [F9.add(x, y) for x, y in zip(a, b)] == F9.vadd(a, b).tolist()
    assert [F9.sub(x, y) for x, y in zip(a, b)] == F9.vsub(a, b).tolist()


def test_zech_path_matches_dense_path():
    import numpy as np

    F = field_for_q(5)
    a = np.arange(25).repeat(25)
    b = np.tile(np.arange(25), 25)
    assert (F._vmul_log(a, b) == F.vmul(a, b)).all()
    assert (F._vadd_zech(a, b) == F.vadd(a, b)).all()


def test_irreducibility_and_least_choice():
    assert least_irreducible(3, 2) == [1, 0, 1]
    assert is_irreducible([2, 0, 1], 5)
    assert not is_irreducible([1, 0, 1], 5)  # x^2 + 1 = (x-2)(x+2) mod 5
    assert list(field_for_q(9).params.irreducible) == [2, 1, 0, 0, 1]


def test_prime_power_parsing():
    assert prime_power(27) == (3, 3)
    with pytest.raises(FieldError):
        prime_power(12)
    with pytest.raises(FieldError):
        field_for_q(4)


def test_json_roundtrip(F9):
    G = field_from_json(F9.to_json())
    assert G == F9 and G.params == F9.params
    assert F9.from_coeffs(F9.coeffs(I)) == I


def test_element_wrapper(F9):
    i = F9.element(I)
    assert i * i == F9.element(2)
    assert i.frob() == F9.element(TWO_I)
    assert (i + 0) == i
    with pytest.raises(ValueError):
        i + field_for_q(5).element(1)
    with pytest.raises(ZeroDivisionError):
        F9.element(0).inv()


def test_explicit_polynomial_must_be_irreducible():
    with pytest.raises(FieldError):
        GF(5, 1, [1, 0, 1])
