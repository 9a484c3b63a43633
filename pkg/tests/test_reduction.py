from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.automata import BlockCertificate, Nfa, certify_block, empty_nfa, fixed_length_nfa, word_set_nfa
from src.errors import InputError, ResourceLimit
from src.oracle import count_per_length
from src.reduction import (
    DeltaBits,
    build_count_bnfa,
    build_mk_bnfa,
    concatenate,
    first_one_position,
    reduce_to_threshold,
)

SQUARE = list(product(range(2), repeat=2))
DELTAS = [Fraction(1, 3), Fraction(1, 2), Fraction(5, 16)]


def languages_of_length_two():
    return chain.from_iterable(combinations(SQUARE, r) for r in range(len(SQUARE) + 1))


def block_certificate(words) -> BlockCertificate:
    if not words:
        return BlockCertificate(nfa=empty_nfa(2), word_length=2, level={})
    return certify_block(word_set_nfa(2, words))


def index_of(a: Nfa, n: int) -> Fraction:
    return Fraction(count_per_length(a, n), 2 ** n)


# ── δ bits ──────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("delta, p1", [
    (Fraction(1, 2), 1),
    (Fraction(1, 3), 2),
    (Fraction(5, 16), 2),
    (Fraction(3, 4), 1),
    (Fraction(1, 1024), 10),
])
def test_first_one_position(delta, p1):
    assert first_one_position(DeltaBits(delta)) == p1


def test_first_one_position_respects_max_bits():
    with pytest.raises(InputError, match="no 1-bit"):
        first_one_position(DeltaBits(Fraction(1, 1024)), max_bits=5)


def test_bits_of_five_sixteenths():
    d = DeltaBits(Fraction(5, 16))
    assert [d.bit(p) for p in range(1, 7)] == [0, 1, 0, 1, 0, 0]
    assert d.prefix(4) == 5
    assert d.is_dyadic
    assert not DeltaBits(Fraction(1, 3)).is_dyadic
    with pytest.raises(InputError):
        d.bit(0)


def test_bits_of_one_third():
    # 1/3 = 0.010101…₂
    d = DeltaBits(Fraction(1, 3))
    assert d.prefix(4) == 5
    assert d.prefix(6) == 21


@pytest.mark.parametrize("text", ["abc", "0", "1", "3/2", "1/0", "-1/3"])
def test_delta_parse_errors(text):
    with pytest.raises(InputError):
        DeltaBits.parse(text)


def test_delta_parse():
    assert DeltaBits.parse(" 5/16 ").value == Fraction(5, 16)
    assert DeltaBits.parse("0.25").value == Fraction(1, 4)


# ── gadgets ─────────────────────────────────────────────────────────────────

@given(st.integers(1, 8).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, 2 ** k - 1))))
@settings(max_examples=200, deadline=None)
def test_mk_gadget_has_one_plus_mk_words(km):
    k, m_k = km
    g = build_mk_bnfa(m_k, k)
    assert count_per_length(g, k) == 1 + m_k
    assert certify_block(g).word_length == k
    assert g.start == {0}
    assert len(g.finals) == 1


@given(st.integers(1, 8).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, 2 ** k))))
@settings(max_examples=200, deadline=None)
def test_count_gadget_has_count_words(kc):
    k, count = kc
    g = build_count_bnfa(count, k)
    assert count_per_length(g, k) == count
    assert certify_block(g).word_length == k


def test_mk_gadget_words():
    g = build_mk_bnfa(5, 3)
    words = [w for w in product(range(2), repeat=3) if g.accepts(w)]
    assert len(words) == 6
    assert (1, 1, 1) in words


@pytest.mark.parametrize("k", range(1, 13))
def test_gadget_size_is_quadratic(k):
    for m_k in (0, 1, 2 ** (k - 1), 2 ** k - 1):
        assert build_mk_bnfa(m_k, k).size <= 6 * k * k


def test_gadget_validation():
    with pytest.raises(InputError):
        build_mk_bnfa(0, 0)
    with pytest.raises(InputError):
        build_mk_bnfa(8, 3)
    with pytest.raises(InputError):
        build_count_bnfa(0, 3)
    with pytest.raises(InputError):
        build_count_bnfa(9, 3)


def test_concatenate_multiplies_counts():
    g = build_mk_bnfa(2, 2)
    b = word_set_nfa(2, [(0, 1), (1, 1)])
    a = concatenate(g, b)
    assert count_per_length(a, 4) == 3 * 2
    assert a.accepts((1, 1, 0, 1))
    assert not a.accepts((1, 1, 0, 0))


# ── reduction ───────────────────────────────────────────────────────────────

@pytest.mark.parametrize("dyadic", [False, True])
@pytest.mark.parametrize("delta", DELTAS, ids=str)
def test_threshold_equivalence_on_all_small_languages(delta, dyadic):
    for words in languages_of_length_two():
        inst = reduce_to_threshold(block_certificate(words), delta, dyadic=dyadic)
        universal = len(words) == 4
        assert universal == (index_of(inst.nfa, inst.n) >= delta)


@pytest.mark.parametrize("delta", DELTAS, ids=str)
def test_output_is_a_block_nfa_with_scaled_count(delta):
    for words in languages_of_length_two():
        if not words:
            continue
        inst = reduce_to_threshold(block_certificate(words), delta)
        assert certify_block(inst.nfa).word_length == inst.n
        assert inst.n == inst.k + 2
        assert count_per_length(inst.nfa, inst.n) == (1 + inst.m_k) * len(words)


def test_half_threshold_of_universal_block():
    inst = reduce_to_threshold(certify_block(fixed_length_nfa(2, 3)), "1/2")
    assert (inst.p1, inst.k, inst.m_k, inst.n) == (1, 4, 8, 7)
    assert index_of(inst.nfa, inst.n) > Fraction(1, 2)
    assert not inst.dyadic


def test_half_threshold_of_non_universal_block():
    inst = reduce_to_threshold(block_certificate([(0, 0), (0, 1), (1, 0)]), "1/2")
    assert index_of(inst.nfa, inst.n) < Fraction(1, 2)


def test_dyadic_construction():
    inst = reduce_to_threshold(certify_block(fixed_length_nfa(2, 2)), Fraction(5, 16), dyadic=True)
    assert inst.dyadic
    assert (inst.k, inst.m_k, inst.n) == (4, 5, 6)
    assert index_of(inst.nfa, inst.n) == Fraction(5, 16)


def test_dyadic_flag_ignored_for_other_deltas():
    inst = reduce_to_threshold(certify_block(fixed_length_nfa(2, 2)), Fraction(1, 3), dyadic=True)
    assert not inst.dyadic


def test_long_block_is_reduced():
    inst = reduce_to_threshold(certify_block(fixed_length_nfa(2, 32)), "1/2")
    assert (inst.p1, inst.k, inst.m_k, inst.n) == (1, 33, 2 ** 32, 65)
    assert certify_block(inst.nfa).word_length == 65


def test_reduction_errors():
    with pytest.raises(InputError, match="binary"):
        reduce_to_threshold(certify_block(fixed_length_nfa(3, 2)), "1/2")
    with pytest.raises(InputError):
        reduce_to_threshold(certify_block(fixed_length_nfa(2, 2)), "3/2")
    with pytest.raises(InputError, match="length"):
        reduce_to_threshold(certify_block(Nfa(2, 1, {0}, {0}, set())), "1/2")
    with pytest.raises(ResourceLimit):
        reduce_to_threshold(certify_block(fixed_length_nfa(2, 2)), Fraction(1, 1024), max_length=8)
