import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gassmann.errors import (InvalidPermutation, NotASubgroup,
                             OrderCapExceeded, ParseError)
from gassmann.permgroup import (AbHom, FinAbGroup, PermGroup, Permutation,
                                Subgroup, abelianization, coset_action,
                                double_cosets, format_group_file,
                                inclusion_induced, normal_core,
                                parse_group_file, transfer)

perms5 = st.permutations(range(5)).map(Permutation)


def test_parse_and_format_roundtrip():
    p = Permutation.parse(6, "(0 1 2)(3 4)")
    assert p.images == (1, 2, 0, 4, 3, 5)
    assert Permutation.parse(6, p.format()) == p
    assert Permutation.parse(4, "()") == Permutation.identity(4)
    assert Permutation.identity(3).format() == "()"


def test_parse_rejects_garbage():
    with pytest.raises(InvalidPermutation):
        Permutation.parse(3, "(0 1")
    with pytest.raises(InvalidPermutation):
        Permutation.parse(3, "(0 5)")
    with pytest.raises(InvalidPermutation):
        Permutation.parse(3, "(0 0)")


@given(perms5, perms5)
def test_composition_acts_right_to_left(p, q):
    for i in range(5):
        assert (p * q).images[i] == p.images[q.images[i]]


@given(perms5)
def test_inverse_and_order(p):
    assert p * p.inverse() == Permutation.identity(5)
    assert p ** p.order() == Permutation.identity(5)
    assert p.order() == next(
        k for k in range(1, 121) if p ** k == Permutation.identity(5))


@given(perms5, perms5)
def test_conjugate_matches_composition(p, g):
    assert p.conjugate(g) == g * p * g.inverse()


def test_cycle_type_includes_fixed_points():
    p = Permutation.parse(6, "(0 1 2)(3 4)")
    assert p.cycle_type() == (1, 2, 3)


def test_closure_orders():
    assert symmetric_order(4) == 24
    assert PermGroup(5, [Permutation.parse(5, "(0 1 2 3 4)")]).order == 5


def symmetric_order(n):
    gens = [Permutation.parse(n, "(0 1)"),
            Permutation([(i + 1) % n for i in range(n)])]
    return PermGroup(n, gens).order


def test_order_cap_enforced():
    gens = [Permutation.parse(6, "(0 1)"),
            Permutation([(i + 1) % 6 for i in range(6)])]
    with pytest.raises(OrderCapExceeded):
        PermGroup(6, gens, order_cap=100)


def test_conjugacy_classes_partition(s4):
    classes = s4.conjugacy_classes()
    assert sum(c.size for c in classes) == 24
    assert sorted(c.size for c in classes) == [1, 3, 6, 6, 8]
    seen = set()
    for c in classes:
        assert s4.order % c.size == 0
        assert len({m.cycle_type() for m in c.members}) == 1
        seen |= set(c.members)
    assert len(seen) == 24


def test_class_of_is_consistent(s4):
    for c in s4.conjugacy_classes():
        for m in c.members:
            assert s4.class_of(m) is c


def test_subgroup_requires_membership(s4, q8):
    with pytest.raises(NotASubgroup):
        s4.subgroup([q8.generators[0]])
    with pytest.raises(NotASubgroup):
        s4.subgroup_from_elements(
            [Permutation.identity(4), Permutation.parse(4, "(0 1)"),
             Permutation.parse(4, "(0 2)")])


def test_all_subgroups_counts(s4, d4, q8):
    # classical subgroup counts
    assert len(s4.all_subgroups()) == 30
    assert len(d4.all_subgroups()) == 10
    assert len(q8.all_subgroups()) == 6


def test_point_stabilizer_orbit_stabilizer(s4):
    stab = s4.point_stabilizer(0)
    assert stab.order == 6
    assert stab.index == 4


def test_coset_space_is_transitive_action(s4):
    h = s4.point_stabilizer(0)
    cosets = coset_action(s4, h)
    assert cosets.index == 4
    for g in s4.generators:
        sigma = cosets.permutation_of(g)
        # the action permutation must agree with left multiplication
        for i, rep in enumerate(cosets.coset_reps):
            assert cosets.coset_index_of(g * rep) == sigma.images[i]


def test_coset_action_is_homomorphism(s4):
    h = s4.subgroup([Permutation.parse(4, "(0 1 2)")])
    cosets = coset_action(s4, h)
    for a in s4.generators:
        for b in s4.generators:
            assert (cosets.permutation_of(a * b)
                    == cosets.permutation_of(a) * cosets.permutation_of(b))


def brute_core(group, subgroup):
    """Intersection of all conjugates, element by element."""
    core = set(subgroup.element_set)
    for g in group.elements:
        core &= {g * h * g.inverse() for h in subgroup.element_set}
    return frozenset(core)


def test_normal_core_matches_bruteforce(s4, d6):
    for group in (s4, d6):
        for sub in group.all_subgroups():
            assert normal_core(group, sub).element_set == \
                brute_core(group, sub)


def test_double_cosets_partition(fano):
    group, h1, h2 = fano
    reps = double_cosets(group, h1, h2)
    assert len(reps) == 2  # incidence or not, for point vs hyperplane
    blocks = [frozenset(a * x * b for a in h1.elements for b in h2.elements)
              for x in reps]
    assert sum(len(b) for b in blocks) == group.order
    assert frozenset().union(*blocks) == group.element_set


def test_abelianization_known_values(s3, s4, a4, d4, q8, c6):
    assert str(abelianization(s3).structure) == "Z/2"
    assert str(abelianization(s4).structure) == "Z/2"
    assert str(abelianization(a4).structure) == "Z/3"
    assert str(abelianization(d4).structure) == "Z/2 x Z/2"
    assert str(abelianization(q8).structure) == "Z/2 x Z/2"
    assert str(abelianization(c6).structure) == "Z/6"


def test_abelianization_projection_is_homomorphism(s4):
    ab = abelianization(s4)
    factors = ab.factors
    for a in s4.elements[:8]:
        for b in s4.elements[:8]:
            image = tuple(
                (x + y) % d
                for x, y, d in zip(ab.project(a), ab.project(b), factors))
            assert ab.project(a * b) == image


def test_abelianization_kills_commutators(a4):
    ab = abelianization(a4)
    for a in a4.elements:
        for b in a4.elements:
            comm = a * b * a.inverse() * b.inverse()
            assert ab.project(comm) == (0,) * len(ab.factors)


def test_transfer_composite_is_multiplication_by_index(s4, q8, d6):
    for group in (s4, q8, d6):
        for sub in group.all_subgroups():
            v = transfer(group, sub)
            inc = inclusion_induced(sub, group)
            ab = abelianization(group)
            assert inc.compose(v) == AbHom.scalar(ab.factors, sub.index)


def test_transfer_conjugation_compatibility(s4):
    # transfer(G, gHg^-1) = c_g* . transfer(G, H)
    h = s4.subgroup([Permutation.parse(4, "(0 1 2 3)")])
    g = Permutation.parse(4, "(0 1)")
    h2 = s4.subgroup_from_elements(
        [x.conjugate(g) for x in h.element_set])
    ab1, ab2 = abelianization(h), abelianization(h2)
    cg = AbHom.from_columns(
        ab1.factors, ab2.factors,
        [ab2.project(rep.conjugate(g)) for rep in ab1.basis_reps])
    assert cg.compose(transfer(s4, h)) == transfer(s4, h2)


def test_finabgroup_normalizes_cyclic_orders():
    g = FinAbGroup.from_cyclic_orders([2, 3, 4])
    assert g.invariant_factors == (2, 12)
    assert g.torsion_order() == 24
    assert str(FinAbGroup(2, (2,))) == "Z^2 x Z/2"


def test_finabgroup_tensor_mod():
    g = FinAbGroup(0, (2, 12))
    assert g.tensor_mod(4).invariant_factors == (2, 4)
    assert g.tensor_mod(5).invariant_factors == ()
    # each free slot contributes one Z/k
    assert FinAbGroup(1, (2, 12)).tensor_mod(4).invariant_factors == (2, 4, 4)
    assert FinAbGroup(1, (2, 12)).tensor_mod(4).free_rank == 0


def test_abhom_rejects_ill_defined_entries():
    # Z/2 -> Z/4 sending 1 to 1 is not a homomorphism
    with pytest.raises(ValueError):
        AbHom((2,), (4,), [[1]])
    AbHom((2,), (4,), [[2]])  # 1 -> 2 is fine


def test_abhom_compose_associates_with_apply():
    f = AbHom((6,), (2, 4), [[1], [2]])
    g = AbHom((2, 4), (4,), [[2, 1]])
    for x in range(6):
        assert g.apply(f.apply((x,))) == g.compose(f).apply((x,))


def test_abhom_tensor_mod_drops_coprime_slots():
    f = AbHom((6, 2), (2, 4), [[1, 1], [2, 0]])
    f3 = f.tensor_mod(3)
    assert f3.source_factors == (3,)
    assert f3.target_factors == ()


def test_group_file_roundtrip(s4):
    text = format_group_file(s4)
    again = parse_group_file(text)
    assert again.order == 24
    assert again.element_set == s4.element_set


def test_group_file_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_group_file("degree: 3\ngen: (0 1 2\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_group_file("gen: (0 1)\n")  # degree must come first
    with pytest.raises(ParseError):
        parse_group_file("degree: 0\n")


def test_group_file_ignores_comments_and_blanks():
    g = parse_group_file("# a comment\ndegree: 3\n\ngen: (0 1) # inline\n")
    assert g.order == 2


@settings(max_examples=30)
@given(st.permutations(range(6)), st.permutations(range(6)))
def test_generated_group_contains_generators(a, b):
    pa, pb = Permutation(a), Permutation(b)
    group = PermGroup(6, [pa, pb])
    assert pa in group.element_set
    assert pb in group.element_set
    assert group.order % pa.order() == 0  # Lagrange


def test_subgroup_equality_is_by_elements(s4):
    h1 = s4.subgroup([Permutation.parse(4, "(0 1 2)")])
    h2 = s4.subgroup_from_elements(h1.elements)
    assert h1 == h2
    assert hash(h1) == hash(h2)
    assert len({h1, h2}) == 1
