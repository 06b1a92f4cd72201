from __future__ import annotations

import itertools

import numpy as np
import pytest

from reinhardt.classify import classify
from reinhardt.composition import Composition, is_reinhardt
from reinhardt.construct import (
    ALL_NONTRIVIAL,
    MUST_CONTAIN_ZERO,
    BlockChoice,
    CompositionSet,
    ConstructionParams,
    build_f1,
    construct_F,
    construct_sporadic,
    count_periodic_constructed,
    enumerate_block_choices,
    expected_periodic_count,
    expected_raw_count,
    factorizations,
    is_rotated_sign_vector,
    raw_to_canonical,
    scan,
    sign_blocks,
    subsets,
)
from reinhardt.enumeration import SearchBudgetExceeded
from reinhardt.poly import IntPolynomial

from conftest import enumerated
from test_classify import composition_is_periodic

SMALL_GRIDS = [(3, 5, 2), (5, 3, 2), (3, 7, 2), (7, 3, 2), (3, 5, 3), (5, 3, 3)]


def test_build_f1_examples():
    assert build_f1(ConstructionParams(5, 3, 2, frozenset({0}))) == IntPolynomial([1, -1])
    assert build_f1(ConstructionParams(3, 7, 4, frozenset({0}))) == IntPolynomial([1, -1])
    assert build_f1(ConstructionParams(3, 5, 2, frozenset({1}))) == IntPolynomial([0, 0, -1, 1])
    direct = IntPolynomial([1, -1]) + IntPolynomial([0, 0, -1, 1])
    assert build_f1(ConstructionParams(3, 5, 2, frozenset({0, 1}))) == direct


@pytest.mark.parametrize("S", [set(), {0, 1, 2}, {3}])
def test_params_reject_bad_subsets(S):
    with pytest.raises(ValueError):
        ConstructionParams(3, 5, 2, frozenset(S))


@pytest.mark.parametrize("p,q,r", [(3, 3, 2), (2, 5, 2), (3, 5, 1), (9, 5, 2)])
def test_params_reject_bad_pqr(p, q, r):
    with pytest.raises(ValueError):
        ConstructionParams(p, q, r, frozenset({0}))


def test_sign_blocks():
    assert sign_blocks(2, 1) == [(1, 0), (0, 1)]
    assert sign_blocks(2, -1) == [(-1, 0), (0, -1)]
    assert len(sign_blocks(3)) == 4 and len(sign_blocks(1)) == 1
    for block in sign_blocks(5):
        nz = [x for x in block if x]
        assert len(nz) % 2 == 1 and nz[0] == nz[-1] == 1
        assert all(a == -b for a, b in zip(nz, nz[1:]))


@pytest.mark.parametrize("q,r,count", [(3, 2, 4), (3, 3, 32), (5, 2, 16), (5, 3, 2 ** 9), (7, 2, 64)])
def test_block_choice_counts(q, r, count):
    choices = list(enumerate_block_choices(q, r))
    assert len(choices) == count == 2 ** (q * (r - 1) - 1)
    assert len({c.f2() and tuple(c.f2()) for c in choices}) == count
    for c in choices:
        assert len(c.A) == len(c.B) == (q - 1) // 2
        assert len(c.C) == r - 1
        assert c.f2()[0] == 0


def worked_example(A2, B2):
    blocks = BlockChoice(((0, 1), A2), ((0, -1), B2), (1,))
    return raw_to_canonical(construct_F(ConstructionParams(3, 5, 2, frozenset({0})), blocks))


def test_worked_example_n30():
    assert worked_example((1, 0), (0, -1)) == (7, 6, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 4, 1, 1)
    assert worked_example((0, 1), (0, -1)) == (6, 3, 1, 2, 1, 1, 1, 1, 2, 3, 1, 1, 4, 1, 2)
    fig_c = (5, 4, 1, 2, 1, 1, 4, 3, 1, 1, 2, 1, 1, 1, 2)
    assert worked_example((0, 1), (-1, 0)) == fig_c
    assert worked_example((1, 0), (-1, 0)) == fig_c


def reference_grid(p, q, r, policy=ALL_NONTRIVIAL):
    """Scalar construction over the whole grid: raw vectors, periodic count and sporadic classes."""
    raw, periodic, classes = [], 0, set()
    for S in subsets(p, policy):
        params = ConstructionParams(p, q, r, S)
        for blocks in enumerate_block_choices(q, r):
            F = construct_F(params, blocks)
            raw.append(F)
            parts = raw_to_canonical(F)
            if composition_is_periodic(parts):
                periodic += 1
            else:
                classes.add(parts)
    return raw, periodic, classes


@pytest.mark.parametrize("grid", SMALL_GRIDS)
def test_scan_matches_scalar_reference(grid):
    raw, periodic, classes = reference_grid(*grid)
    rep = scan(*grid, threads=1)
    assert rep.raw_count == len(raw) == expected_raw_count(*grid)
    assert rep.injective == (len(set(raw)) == len(raw)) is True
    assert rep.invalid == 0
    assert rep.periodic == periodic == expected_periodic_count(*grid)
    assert set(rep.classes) == classes
    assert rep.structure_violations == 0
    for vec in raw:
        assert is_rotated_sign_vector(vec)


def test_scan_subset_policy():
    raw, periodic, classes = reference_grid(5, 3, 2, MUST_CONTAIN_ZERO)
    rep = scan(5, 3, 2, s_policy=MUST_CONTAIN_ZERO)
    assert rep.raw_count == len(raw) == 15 * 4
    assert set(rep.classes) == classes


@pytest.mark.parametrize("grid", [(5, 3, 2), (3, 5, 2), (3, 5, 3), (3, 7, 3), (5, 3, 4)])
def test_periodic_count_for_zero_subset(grid):
    p, q, r = grid
    assert count_periodic_constructed(p, q, r, S=[frozenset({0})]) == 2 ** (r - 2)


def test_periodic_only_with_m_equal_q():
    for grid in SMALL_GRIDS:
        rep = scan(*grid)
        p, q, r = grid
        assert rep.periodic_by_m.get(p, 0) == 0
        assert rep.periodic_by_m[q] == rep.periodic
        assert all(c == 2 ** (r - 2) for c in rep.periodic_by_subset.values())


def test_outputs_are_sporadic_reinhardt():
    for grid in [(3, 5, 2), (5, 3, 2), (3, 5, 3)]:
        for parts in scan(*grid).classes:
            c = Composition(parts)
            assert is_reinhardt(c)
            assert not classify(c).is_periodic


@pytest.mark.parametrize("n,C", [(30, 3), (42, 9), (45, 144)])
def test_table_small_rows(n, C):
    res = construct_sporadic(n, threads=1)
    assert res.C == C
    assert set(res.compositions) == set(enumerated(n).sporadic())


def test_dedup_across_factorizations():
    res = construct_sporadic(30)
    sizes = [len(g.classes) for g in res.grids]
    assert [(g.p, g.q, g.r) for g in res.grids] == [(3, 5, 2), (5, 3, 2)]
    assert res.C <= sum(sizes)


def test_threads_do_not_change_result():
    a = construct_sporadic(45, threads=1)
    b = construct_sporadic(45, threads=4)
    assert a.compositions.to_list() == b.compositions.to_list()
    assert [g.periodic for g in a.grids] == [g.periodic for g in b.grids]


def test_factorizations():
    assert factorizations(30) == [(3, 5, 2), (5, 3, 2)]
    assert factorizations(90) == [(3, 5, 6), (5, 3, 6)]
    assert len(factorizations(105)) == 6
    assert factorizations(15) == [] and factorizations(16) == []
    with pytest.raises(ValueError):
        construct_sporadic(15)
    with pytest.raises(ValueError):
        construct_sporadic(30, grids=[(3, 5, 3)])


def test_budget():
    with pytest.raises(SearchBudgetExceeded):
        construct_sporadic(45, budget=100)
    with pytest.raises(SearchBudgetExceeded):
        scan(3, 5, 3, budget=100)


def test_composition_set():
    items = [(3, 1, 1), (7, 7, 7), (2, 1, 1, 1, 1), (3, 1, 1)]
    cs = CompositionSet.from_tuples(7, items)
    assert cs.to_list() == sorted(set(items))
    assert (7, 7, 7) in cs and (1, 1, 1) not in cs and (3, 1, 1, 1, 1) not in cs
    assert cs.by_largest_part() == {2: 1, 3: 1, 7: 1}
    empty = CompositionSet.from_keys(9, np.zeros((0, 1), dtype=np.uint64))
    assert len(empty) == 0 and list(empty) == []


def test_subsets():
    assert len(subsets(5)) == 30 and len(subsets(5, MUST_CONTAIN_ZERO)) == 15
    with pytest.raises(ValueError):
        subsets(5, "bogus")


def test_construct_F_rejects_wrong_block_length():
    blocks = BlockChoice(((0, 1, 0),), ((0, -1, 0),), (1,))
    with pytest.raises(ValueError):
        construct_F(ConstructionParams(5, 3, 2, frozenset({0})), blocks)


def test_wide_keys_and_large_parts():
    wide = CompositionSet.from_tuples(300, [(298, 1, 1), (100, 100, 100), (150, 149, 1)])
    assert wide.to_list() == [(100, 100, 100), (150, 149, 1), (298, 1, 1)]
    assert (298, 1, 1) in wide and (297, 2, 1) not in wide
    # a grid with n > 128 uses three-word keys
    rep = scan(3, 23, 2)
    assert rep.keys.shape[1] == 3
    assert rep.periodic == expected_periodic_count(3, 23, 2)
    assert rep.injective and len(rep.classes) > 0
    for parts in list(rep.classes)[:20]:
        assert is_reinhardt(Composition(parts)) and not classify(Composition(parts)).is_periodic


def test_every_f2_reachable_once():
    f2s = [tuple(b.f2()) for b in enumerate_block_choices(5, 2)]
    assert len(set(f2s)) == len(f2s)
    for f2 in itertools.islice(f2s, 5):
        assert len(f2) == 10
