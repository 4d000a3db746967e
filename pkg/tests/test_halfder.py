import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (chain, full_catalog, random_admissible_sigma,
                     random_central, random_half_derivation, random_kappa,
                     walk_diag_value)
from lietp.algebra import diag_unit, element, identity, minmax_pairs, unit
from lietp.errors import (MalformedImage, NotCentralInCommutator,
                          NotHalfDerivation, TooLarge)
from lietp.halfder import (CentralElement, KappaMap, SigmaMap, apply,
                           central_from_element, central_valued, decompose,
                           decomposition_report, half_derivation_space,
                           identity_operator, inner, is_admissible,
                           is_half_derivation, operator_from_images,
                           phi_sigma, sigma_from_map, walk_functionals,
                           zero_operator, _extract_sigma)
from lietp.poset import Walk, enumerate_cycles, pair_classes

CATALOG = full_catalog()


def two_chains_phi(p):
    # phi(e_1) = e_1 + e_3 + e_5, fixes e_12, e_14, e_2, e_24, e_4,
    # kills everything else
    images = {
        ("1", "1"): element(p, {("1", "1"): 1, ("3", "3"): 1, ("5", "5"): 1}),
        ("1", "2"): unit(p, "1", "2"),
        ("1", "4"): unit(p, "1", "4"),
        ("2", "2"): diag_unit(p, "2"),
        ("2", "4"): unit(p, "2", "4"),
        ("4", "4"): diag_unit(p, "4"),
    }
    return operator_from_images(p, images)


def test_worked_example_is_a_half_derivation(twochains):
    ok, witness = is_half_derivation(two_chains_phi(twochains))
    assert ok and witness is None


def test_worked_example_decomposition(twochains):
    dec = decompose(two_chains_phi(twochains), "1")
    assert dec.c.values == {}
    assert dec.sigma.by_representative() == [
        (("1", "2"), Fraction(1)), (("1", "3"), Fraction(0))]
    assert dec.kappa.values == {"1": Fraction(1)}
    assert dec.reconstruct() == two_chains_phi(twochains)


def test_worked_example_report(twochains):
    rep = decomposition_report(decompose(two_chains_phi(twochains), "1"))
    assert rep == {
        "u0": "1",
        "c": [],
        "sigma": [{"from": "1", "to": "2", "value": "1"},
                  {"from": "1", "to": "3", "value": "0"}],
        "kappa": [{"element": "1", "value": "1"}],
    }


def test_half_derivation_witness(chain2):
    # e_12 -> e_11 breaks the identity at ((1,1), (1,2))
    op = operator_from_images(chain2, {("1", "2"): diag_unit(chain2, "1")})
    ok, witness = is_half_derivation(op)
    assert not ok
    assert witness == (("1", "1"), ("1", "2"))
    with pytest.raises(NotHalfDerivation):
        decompose(op, "1")


def test_identity_and_zero_operators(vee):
    assert is_half_derivation(identity_operator(vee))[0]
    assert is_half_derivation(zero_operator(vee))[0]
    dec = decompose(identity_operator(vee).scale(Fraction(3, 7)), "1")
    assert dec.c.values == {}
    assert set(dec.sigma.class_values) == {Fraction(3, 7)}
    assert dec.kappa.values == {"1": Fraction(3, 7)}


def test_apply(chain3):
    op = identity_operator(chain3).scale(2)
    f = element(chain3, {("1", "3"): Fraction(1, 2), ("2", "2"): 5})
    assert apply(op, f) == f * 2
    assert apply(zero_operator(chain3), f).is_zero()


def test_central_element_validation(chain3, crown):
    CentralElement(chain3, {("1", "3"): 4})
    with pytest.raises(NotCentralInCommutator):
        CentralElement(chain3, {("1", "2"): 1})
    with pytest.raises(NotCentralInCommutator):
        central_from_element(diag_unit(crown, "1"))
    c = central_from_element(unit(crown, "2", "4").scale(3))
    assert c.value("2", "4") == 3 and c.value("1", "3") == 0


def test_inner_operator_decomposes_to_its_center_part(branch4):
    c = CentralElement(branch4, {("1", "3"): 2, ("1", "4"): -1})
    op = inner(c)
    assert is_half_derivation(op)[0]
    dec = decompose(op, "1")
    assert dec.c == c
    assert all(v == 0 for v in dec.sigma.class_values)
    assert dec.kappa.values == {}


def test_central_valued_operator(vee):
    kappa = KappaMap(vee, {"2": Fraction(5, 3)})
    op = central_valued(kappa)
    assert apply(op, diag_unit(vee, "2")) == identity(vee) * Fraction(5, 3)
    assert apply(op, diag_unit(vee, "1")).is_zero()
    assert apply(op, unit(vee, "1", "2")).is_zero()
    assert is_half_derivation(op)[0]


def test_sigma_map_structural_admissibility(crown, twochains):
    part = pair_classes(crown)
    sigma = SigmaMap(part, [Fraction(2)])
    assert sigma.value("1", "3") == sigma.value("2", "4") == 2
    with pytest.raises(ValueError):
        SigmaMap(part, [1, 2])
    raw = {pr: 1 for pr in twochains.strict_pairs}
    raw[("1", "3")] = raw[("1", "5")] = raw[("3", "5")] = 7
    assert is_admissible(raw, twochains)
    assert sigma_from_map(twochains, raw).by_representative() == [
        (("1", "2"), Fraction(1)), (("1", "3"), Fraction(7))]
    raw[("1", "5")] = 0
    assert not is_admissible(raw, twochains)
    with pytest.raises(ValueError):
        sigma_from_map(twochains, raw)


def test_walk_functionals_frozen(chain2):
    part = pair_classes(chain2)
    q = Fraction(5, 2)
    sigma = SigmaMap(part, [q])
    up = Walk(chain2, ("1", "2"))
    assert walk_functionals(sigma, up, "1") == (q, 0, 0, 0)
    assert walk_functionals(sigma, up, "2") == (0, 0, 0, q)
    there_and_back = Walk(chain2, ("1", "2", "1"))
    assert walk_functionals(sigma, there_and_back, "1") == (q, q, 0, 0)
    assert walk_functionals(sigma, there_and_back, "2") == (0, 0, q, q)
    trivial = Walk(chain2, ("1",))
    assert walk_functionals(sigma, trivial, "1") == (0, 0, 0, 0)


def test_closed_walk_law_for_admissible_sigma(crown):
    # s+ - s- + t+ - t- vanishes on closed walks when sigma is admissible
    rng = random.Random(5)
    sigma = random_admissible_sigma(crown, rng)
    cycles = enumerate_cycles(crown)
    loops = [c for c in cycles]
    loops.append(Walk(crown, ("1", "3", "1")))
    loops.append(Walk(crown, ("3", "1", "4", "2", "3")))
    for loop in loops:
        for x in crown.elements:
            sp, sm, tp, tm = walk_functionals(sigma, loop, x)
            assert sp - sm + tp - tm == 0


def test_phi_sigma_frozen_values(chain2, twochains):
    part = pair_classes(chain2)
    k = Fraction(3)
    op = phi_sigma(SigmaMap(part, [k]), "1")
    assert apply(op, diag_unit(chain2, "1")) == diag_unit(chain2, "2") * (-k)
    assert apply(op, diag_unit(chain2, "1")) == (
        diag_unit(chain2, "1") * k - identity(chain2) * k)
    part2 = pair_classes(twochains)
    sigma = SigmaMap(part2, [Fraction(1), Fraction(0)])
    op2 = phi_sigma(sigma, "1")
    assert apply(op2, diag_unit(twochains, "1")) == (
        -diag_unit(twochains, "2") - diag_unit(twochains, "4"))
    assert apply(op2, unit(twochains, "1", "2")) == unit(twochains, "1", "2")
    assert apply(op2, unit(twochains, "1", "3")).is_zero()
    assert is_half_derivation(op2)[0]


def test_phi_sigma_diagonal_matches_walk_formula(crown):
    rng = random.Random(11)
    sigma = random_admissible_sigma(crown, rng)
    op = phi_sigma(sigma, "2")
    from lietp.poset import walk_between
    for x in crown.elements:
        col = apply(op, diag_unit(crown, x))
        for v in crown.elements:
            walk = walk_between(crown, "2", v)
            assert col.coeff(v, v) == walk_diag_value(sigma, walk, x)


def test_oracle_dimensions_frozen(chain3, vee, crown):
    assert len(half_derivation_space(chain3)) == 5
    assert len(half_derivation_space(vee)) == 7
    assert len(half_derivation_space(crown)) == 9


def test_oracle_cap(crown):
    with pytest.raises(TooLarge):
        half_derivation_space(crown, cap=10)


def test_oracle_basis_decomposes_and_rebuilds(vee, crown):
    for p in (vee, crown):
        for op in half_derivation_space(p):
            assert is_half_derivation(op)[0]
            dec = decompose(op, p.elements[0])
            assert dec.reconstruct() == op


def test_extract_sigma_rejects_rotated_images(chain3):
    op = operator_from_images(
        chain3, {("1", "2"): unit(chain3, "2", "3"),
                 ("2", "3"): unit(chain3, "2", "3")})
    with pytest.raises(MalformedImage):
        _extract_sigma(op)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=0, max_value=len(CATALOG) - 1))
def test_decomposition_round_trip_random(seed, pidx):
    rng = random.Random(seed)
    p = CATALOG[pidx]
    op, c, sigma, kappa, u0 = random_half_derivation(p, rng)
    assert is_half_derivation(op)[0]
    dec = decompose(op, u0)
    assert dec.c == c
    assert dec.sigma == sigma
    assert dec.kappa == kappa
    assert dec.reconstruct() == op


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=0, max_value=len(CATALOG) - 1))
def test_half_derivations_form_a_linear_space(seed, pidx):
    rng = random.Random(seed)
    p = CATALOG[pidx]
    op1, _, _, _, _ = random_half_derivation(p, rng)
    op2, _, _, _, _ = random_half_derivation(p, rng)
    assert is_half_derivation(op1 + op2)[0]
    assert is_half_derivation(op1.scale(Fraction(-2, 3)))[0]


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_admissible_sigma_satisfies_closed_walk_law_on_cycles(seed):
    rng = random.Random(seed)
    p = CATALOG[rng.randrange(len(CATALOG))]
    sigma = random_admissible_sigma(p, rng)
    for cyc in enumerate_cycles(p):
        for x in p.elements:
            sp, sm, tp, tm = walk_functionals(sigma, cyc, x)
            assert sp - sm + tp - tm == 0
