import pytest

from gassmann.errors import (EvenIndex, NotPrime, ParseError,
                             UnsupportedSignature)
from gassmann.kgroups import (FieldModel, compare_k_groups, cyclo_exponent,
                              k_group, w_invariant)

Q = FieldModel.rationals()
REAL_QUAD = FieldModel.abelian(5, [4])       # the m=5, H={1,4} model
IMAG_QUAD = FieldModel.abelian(4, [])        # m=4, H={1}: no real place


def closed_form_exponent(p, nu):
    """Exponent of (Z/p^nu)^x, textbook formula."""
    if nu == 0:
        return 1
    if p == 2:
        return {1: 1, 2: 2}.get(nu, 2 ** (nu - 2))
    return (p - 1) * p ** (nu - 1)


def test_cyclo_exponent_over_rationals_matches_closed_form():
    # depth capped for the larger primes: order computation in (Z/p^nu)^x
    # gets slow and the formula branches are already covered at p = 2, 3
    for p, depth in ((2, 5), (3, 5), (5, 4), (7, 3), (11, 2), (13, 2)):
        for nu in range(0, depth):
            assert cyclo_exponent(Q, p, nu) == closed_form_exponent(p, nu)


def test_cyclo_exponent_requires_prime():
    with pytest.raises(NotPrime):
        cyclo_exponent(Q, 6, 1)


def test_cyclo_exponent_shrinks_with_larger_unit_group():
    # adjoining sqrt(5) halves the first 5-power layer
    assert cyclo_exponent(REAL_QUAD, 5, 1) == 2
    assert cyclo_exponent(Q, 5, 1) == 4


def test_w_invariants_of_rationals():
    assert [w_invariant(Q, i).value for i in (1, 2, 3, 4, 5)] == \
        [2, 24, 2, 240, 2]


def test_w_invariant_of_real_quadratic():
    assert w_invariant(REAL_QUAD, 2).value == 120


def test_w_invariant_factorization_consistent():
    w = w_invariant(Q, 4)
    assert w.value == 240
    prod = 1
    for p, e in w.factorization:
        prod *= p ** e
    assert prod == 240


def test_k_groups_of_rationals():
    assert str(k_group(Q, 3)) == "Z/48"
    assert str(k_group(Q, 5)) == "Z"
    assert str(k_group(Q, 7)) == "Z/240"
    assert str(k_group(Q, 9)) == "Z x Z/2"


def test_k_groups_of_real_quadratic():
    assert str(k_group(REAL_QUAD, 3)) == "Z/2 x Z/240"
    assert k_group(REAL_QUAD, 5).free_rank == 2


def test_k_group_rejects_even_or_small_n():
    with pytest.raises(EvenIndex):
        k_group(Q, 4)
    with pytest.raises(ValueError):
        k_group(Q, 1)


def test_k_group_imaginary_n3_mod8_refused():
    # n = 3 mod 8 with no real embedding is outside the rule
    assert IMAG_QUAD.signature == (0, 1)
    with pytest.raises(UnsupportedSignature):
        k_group(IMAG_QUAD, 3)
    # other residues are fine
    k_group(IMAG_QUAD, 5)
    k_group(IMAG_QUAD, 7)


def test_field_model_parse():
    assert FieldModel.parse("Q") == Q
    parsed = FieldModel.parse("abelian:m=5;H=1,4")
    assert parsed.conductor == 5
    assert parsed.degree == 2
    assert parsed == REAL_QUAD
    # generators get closed: 2 generates all of (Z/5)^x
    assert FieldModel.parse("abelian:m=5;H=2").degree == 1
    # omitted H means the trivial subgroup, the full cyclotomic field
    assert FieldModel.parse("abelian:m=5").degree == 4
    with pytest.raises(ParseError):
        FieldModel.parse("abelian:H=1,4")
    with pytest.raises(ParseError):
        FieldModel.parse("cubic:disc=-23")
    with pytest.raises(ParseError):
        FieldModel.parse("abelian:m=5;x=3")


def test_field_model_validation():
    with pytest.raises(ValueError):
        FieldModel(5, frozenset({1, 2}))  # not closed under product
    with pytest.raises(ValueError):
        FieldModel(6, frozenset({1, 4}))  # 4 is not a unit mod 6
    model = FieldModel.abelian(8, [3, 5])
    assert model.degree == 1  # {3,5} generates all of (Z/8)^x


def test_degree_and_signature():
    assert Q.degree == 1
    assert Q.signature == (1, 0)
    assert REAL_QUAD.degree == 2
    assert REAL_QUAD.signature == (2, 0)
    assert IMAG_QUAD.degree == 2
    assert IMAG_QUAD.signature == (0, 1)


def test_describe_roundtrip():
    for model in (Q, REAL_QUAD, IMAG_QUAD):
        assert FieldModel.parse(model.describe()) == model


def test_compare_k_groups():
    assert compare_k_groups(Q, Q, [3, 5, 7, 9])
    assert not compare_k_groups(Q, REAL_QUAD, [3])
    same = FieldModel.abelian(5, [4])
    assert compare_k_groups(REAL_QUAD, same, [3, 5, 7])


def test_w_invariant_divisibility_tower():
    # restriction embeds each layer group over the extension into the one
    # over Q, so w_i only grows when the field does
    for i in (1, 2, 3, 4):
        assert w_invariant(REAL_QUAD, i).value % w_invariant(Q, i).value == 0
