"""Unit tests for the decomposition labelling and its symbolic bounds."""

import pytest

from corpus import composite_terms

from scatter_calc import parse_term, sample_elements
from scatter_calc.milner_rado import (
    CANTOR1,
    ElementOutOfRange,
    UnsupportedConstructor,
    check_pairing,
    down_up_block_power,
    ks_omega_check,
    mr_class_type_bound,
    mr_label_ordinal,
    mr_label_term,
    mr_label_term_trace,
    mr_labeling,
)
from scatter_calc.ordinal import (
    OMEGA,
    ZERO,
    from_int,
    omega_power,
    ord_add,
    ord_compare,
    ord_mul,
    ord_pow,
    parse_ordinal,
)
from scatter_calc.partition import Labeling
from scatter_calc.terms import Fin, finite_size

W = OMEGA


def o(text):
    return parse_ordinal(text)


def test_pairing_contract():
    assert check_pairing(CANTOR1, 12)
    assert CANTOR1(0, 1) == 3
    assert CANTOR1(1, 1) == 5
    assert CANTOR1(0, 0) == 1


# -- ordinal labels -----------------------------------------------------------

def test_label_examples():
    assert mr_label_ordinal(5, 3) == 0
    for xi in range(6):
        assert mr_label_ordinal(W, xi) == 1
    alpha = o("w^2 + 3")
    assert mr_label_ordinal(alpha, o("w^2 + 1")) == 0
    assert mr_label_ordinal(alpha, o("w*4 + 2")) == 2
    with pytest.raises(ElementOutOfRange):
        mr_label_ordinal(5, 7)


def test_label_constant_on_pure_powers():
    for k in range(1, 5):
        alpha = ord_pow(W, k)
        for xi in sample_elements(parse_term(f"ord(w^{k})"), 15, 2):
            assert mr_label_ordinal(alpha, xi) == k


def test_label_limit_exponent():
    alpha = o("w^w")
    # labels are 2 + (least i with xi < w^(i+1))
    assert mr_label_ordinal(alpha, ZERO) == 2
    assert mr_label_ordinal(alpha, o("5")) == 2
    assert mr_label_ordinal(alpha, o("w*3 + 1")) == 3
    assert mr_label_ordinal(alpha, o("w^2")) == 4
    assert mr_label_ordinal(alpha, o("w^5 + w^2*2")) == 7


def test_bound_examples():
    assert mr_class_type_bound(5, 0) == from_int(5)
    assert mr_class_type_bound(W, 1) == W
    assert ord_compare(mr_class_type_bound(ord_pow(W, 3), 2), ord_pow(W, 2)) <= 0
    assert mr_class_type_bound(ord_pow(W, 3), 3) == ord_pow(W, 3)


def test_bound_matches_exact_class_types_small():
    # w^2: label is constantly 2, class 2 has type w^2 exactly
    assert mr_class_type_bound(ord_pow(W, 2), 2) == ord_pow(W, 2)
    assert mr_class_type_bound(ord_pow(W, 2), 1) == ZERO
    # w*2 + 3: class 1 = two omega-blocks, class 0 = finite tail
    alpha = o("w*2 + 3")
    assert mr_class_type_bound(alpha, 1) == o("w*2")
    assert mr_class_type_bound(alpha, 0) == from_int(3)


def test_class_merge_stays_below_next_power():
    # two classes bounded below w^(n+1) merge to one still below it
    samples = ["0", "5", "w", "w*3 + 2", "w^2", "w^2*2 + w", "w^3 + w^2*3"]
    for n in range(1, 5):
        cap = omega_power(from_int(n + 1))
        for x in samples:
            for y in samples:
                bx, by = o(x), o(y)
                if ord_compare(bx, cap) < 0 and ord_compare(by, cap) < 0:
                    assert ord_compare(ord_add(bx, by), cap) < 0


def test_bound_strictly_below_next_power():
    corpus = []
    exponents = ["0", "1", "2", "w", "w + 1", "w*2", "w^2", "w^2 + w", "w^2*2"]
    for e1 in exponents:
        for c1 in (1, 3):
            corpus.append(ord_mul(omega_power(o(e1)), c1))
    for alpha in corpus:
        for n in range(8):
            bound = mr_class_type_bound(alpha, n)
            assert ord_compare(bound, omega_power(from_int(n + 1))) < 0


# -- term labels -----------------------------------------------------------------

def test_term_label_examples():
    t = parse_term("scaled(ord(w), fin(2))")
    for elem in sample_elements(t, 10, 1):
        assert mr_label_term(t, elem) == 3          # pi(0, 1)
    t2 = parse_term("scaled(ord(w), rev(ord(w)))")
    for elem in sample_elements(t2, 10, 1):
        assert mr_label_term(t2, elem) == 5         # pi(1, 1)
    assert mr_label_term(Fin(7), 3) == 0


def test_term_label_compositionality():
    # label = pi(index label, inner label) pointwise on scaled terms
    t = parse_term("scaled(ord(w^2), rev(ord(w^3)))")
    for ie, pe in sample_elements(t, 20, 7):
        m = mr_label_ordinal(ord_pow(W, 3), ie)
        n = mr_label_ordinal(ord_pow(W, 2), pe)
        assert mr_label_term(t, (ie, pe)) == CANTOR1(m, n)


def test_term_label_trace():
    t = parse_term("scaled(ord(w), fin(2))")
    label, trace = mr_label_term_trace(t, (0, from_int(4)))
    assert label == 3
    assert trace == [(0, 1, 3)]


def test_term_label_unsupported():
    with pytest.raises(UnsupportedConstructor):
        mr_label_term(parse_term("shuffle(w)"), ())
    with pytest.raises(UnsupportedConstructor):
        mr_label_term(parse_term("rev(sum[fin(2), fin(2)])"), (0, 1))


def test_composite_corpus_labels_at_least_five():
    for term in composite_terms():
        for elem in sample_elements(term, 25, 3):
            assert mr_label_term(term, elem) >= 5


# -- subset avoidance check ----------------------------------------------------------

def test_down_up_pattern_sizes():
    assert finite_size(down_up_block_power(0)) == 1
    assert finite_size(down_up_block_power(1)) == 4
    assert finite_size(down_up_block_power(3)) == 64


def test_ks_omega_check_examples():
    single = Labeling(["a"], [1])
    assert ks_omega_check(single, 1) is True
    # 4-chain labelled 1: the 4-point down-up approximant embeds
    chain = Labeling([0, 1, 2, 3], [1, 1, 1, 1])
    assert ks_omega_check(chain, 1) is False
    # label-0 class must be empty to pass at n = 0
    assert ks_omega_check(Labeling([0], [0]), 0) is False
    assert ks_omega_check(Labeling([0], [3]), 0) is True


def test_ks_omega_check_on_labelled_term_samples():
    term = parse_term("scaled(ord(w), fin(2))")
    sample = sample_elements(term, 40, 5)
    labeling = mr_labeling(term, sample)
    for n in range(6):
        assert ks_omega_check(labeling, n) is True
