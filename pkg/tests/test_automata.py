from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings

from src.automata import (
    Dfa,
    Nfa,
    certify_acyclic,
    certify_block,
    complement_dfa,
    empty_nfa,
    fixed_length_nfa,
    membership,
    prefix_nfa,
    union_nfa,
    upto_length_nfa,
    word_set_nfa,
)
from src.errors import EmptyLanguage, InputError, NotAcyclic, NotBlock
from tests.strategies import dfas


def words_upto(s: int, length: int):
    for n in range(length + 1):
        yield from product(range(s), repeat=n)


# ── representation ──────────────────────────────────────────────────────────

def test_nfa_membership_follows_all_branches():
    # 0 -a-> 1, 0 -a-> 2, 2 -b-> 3 (final)
    a = Nfa(2, 4, {0}, {3}, {(0, 0, 1), (0, 0, 2), (2, 1, 3)})
    assert membership(a, (0, 1))
    assert not membership(a, (0,))
    assert not membership(a, (1, 1))
    assert not membership(a, ())


def test_multiple_start_states():
    a = Nfa(2, 2, {0, 1}, {1}, set())
    assert a.accepts(())


def test_size_counts_states_and_transitions():
    assert fixed_length_nfa(2, 3).size == 4 + 6


@pytest.mark.parametrize("kwargs", [
    dict(alphabet_size=0, num_states=1, start={0}, finals=set(), transitions=set()),
    dict(alphabet_size=2, num_states=1, start={1}, finals=set(), transitions=set()),
    dict(alphabet_size=2, num_states=2, start={0}, finals={0}, transitions={(0, 2, 1)}),
    dict(alphabet_size=2, num_states=2, start={0}, finals={0}, transitions={(0, 0, 5)}),
])
def test_invalid_nfa_rejected(kwargs):
    with pytest.raises(InputError):
        Nfa(**kwargs)


def test_membership_rejects_foreign_symbol():
    a = fixed_length_nfa(2, 2)
    with pytest.raises(InputError, match="position 1"):
        membership(a, (0, 7))


def test_dfa_rejects_nondeterminism():
    with pytest.raises(InputError, match="nondeterministic"):
        Dfa(2, 3, {0}, {1}, {(0, 0, 1), (0, 0, 2)})
    with pytest.raises(InputError, match="start"):
        Dfa(2, 2, {0, 1}, {1}, set())


def test_dfa_from_nfa_and_delta():
    d = Dfa.from_nfa(Nfa(2, 2, {0}, {1}, {(0, 1, 1)}))
    assert d.start_state == 0
    assert d.delta(0, 1) == 1
    assert d.delta(0, 0) is None


# ── certificates ────────────────────────────────────────────────────────────

def test_certify_acyclic_orders_states():
    d = fixed_length_nfa(2, 3)
    cert = certify_acyclic(d)
    assert cert.topo_order == (0, 1, 2, 3)
    assert cert.alphabet_size == 2


def test_certify_acyclic_rejects_reachable_cycle():
    with pytest.raises(NotAcyclic):
        certify_acyclic(Dfa(2, 2, {0}, {1}, {(0, 0, 1), (1, 0, 0)}))


def test_unreachable_cycle_is_allowed():
    d = Dfa(2, 4, {0}, {1}, {(0, 0, 1), (2, 0, 3), (3, 0, 2)})
    assert set(certify_acyclic(d).topo_order) == {0, 1}


def test_certify_block_reports_length():
    cert = certify_block(fixed_length_nfa(2, 3))
    assert cert.word_length == 3
    assert cert.level[next(iter(cert.nfa.start))] == 0


def test_certify_block_trims_useless_states():
    # состояние 3 недостижимо, 4 — тупик
    a = Nfa(2, 5, {0}, {2}, {(0, 0, 1), (1, 1, 2), (3, 0, 0), (0, 1, 4)})
    cert = certify_block(a)
    assert cert.word_length == 2
    assert cert.nfa.num_states == 3


def test_certify_block_rejects_mixed_lengths():
    with pytest.raises(NotBlock):
        certify_block(upto_length_nfa(2, 2))
    with pytest.raises(NotBlock):
        certify_block(Nfa(1, 2, {0}, {1}, {(0, 0, 1), (1, 0, 1)}))


def test_certify_block_on_empty_language():
    with pytest.raises(EmptyLanguage):
        certify_block(empty_nfa(2))


# ── constructions ───────────────────────────────────────────────────────────

def test_complement_flips_membership(starts_with_zero):
    comp = complement_dfa(starts_with_zero)
    for w in words_upto(2, 5):
        assert comp.accepts(w) != starts_with_zero.accepts(w)


@given(dfas())
@settings(max_examples=100, deadline=None)
def test_complement_property(d):
    comp = complement_dfa(d)
    for w in words_upto(2, 4):
        assert comp.accepts(w) != d.accepts(w)


def test_union_is_disjunction():
    a = word_set_nfa(2, [(0,), (1, 1)])
    b = prefix_nfa(2, (1, 0))
    u = union_nfa([a, b])
    for w in words_upto(2, 5):
        assert u.accepts(w) == (a.accepts(w) or b.accepts(w))
    assert u.num_states == a.num_states + b.num_states


def test_union_validation():
    with pytest.raises(InputError):
        union_nfa([])
    with pytest.raises(InputError, match="mixed"):
        union_nfa([empty_nfa(2), empty_nfa(3)])


def test_builders_accept_expected_words():
    words = {(0, 1), (1,), ()}
    ws = word_set_nfa(2, words)
    assert {w for w in words_upto(2, 3) if ws.accepts(w)} == words
    upto = upto_length_nfa(3, 2)
    assert all(upto.accepts(w) for w in words_upto(3, 2))
    assert not upto.accepts((0, 0, 0))


# ── language examples ───────────────────────────────────────────────────────

def test_membership_examples():
    assert Nfa(2, 1, {0}, {0}, set()).accepts(())
    # 0*1
    zeros_then_one = Nfa(2, 2, {0}, {1}, {(0, 0, 0), (0, 1, 1)})
    assert zeros_then_one.accepts((0, 0, 1))
    assert not zeros_then_one.accepts((0, 1, 0))
    all_but_ones = word_set_nfa(2, [w for w in product(range(2), repeat=3) if w != (1, 1, 1)])
    for w in product(range(2), repeat=3):
        assert all_but_ones.accepts(w) == (w != (1, 1, 1))


def test_certify_block_rejects_zero_and_double_zero():
    with pytest.raises(NotBlock):
        certify_block(word_set_nfa(2, [(0,), (0, 0)]))


def test_complement_examples(sigma_star, starts_with_zero):
    assert not any(complement_dfa(sigma_star).accepts(w) for w in words_upto(2, 4))

    comp = complement_dfa(starts_with_zero)
    assert comp.accepts(())
    assert comp.accepts((1, 0, 0))
    assert not comp.accepts((0, 1))


@given(dfas())
@settings(max_examples=50, deadline=None)
def test_double_complement(d):
    twice = complement_dfa(complement_dfa(d))
    for w in words_upto(2, 6):
        assert twice.accepts(w) == d.accepts(w)


def test_union_of_one(starts_with_zero):
    u = union_nfa([starts_with_zero])
    for w in words_upto(2, 4):
        assert u.accepts(w) == starts_with_zero.accepts(w)
