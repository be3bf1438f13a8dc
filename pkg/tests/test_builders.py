from itertools import combinations

import pytest

from skolemkit.builders import (HookMissing, LangfordRecipe, RecipeOutOfRange, Source, TwoAlreadyPresent,
                                any_langford, append_ones, attach_202, build_langford, evaluate_table,
                                modified_table0a, recipe_applies, reverse_common_by_sum, reverse_common_report,
                                search_langford, table0a)
from skolemkit.search import enumerate_sequences
from skolemkit.seqcore import (SequenceSpec, SlotSequence, count_common, hooked_langford, langford, reverse,
                               skolem, validate)


def _run(a, b, step):
    return list(range(a, b + step // abs(step), step))


def general_string(d):
    """Closed-form L_d^{2d-1} string (the Bermond construction), one formula per parity of d."""
    if d % 2 == 0:
        return (_run(3 * d - 3, 2 * d + 1, -2) + _run(2 * d - 2, d + 2, -2) + [2 * d] + _run(3 * d - 2, 2 * d + 2, -2)
                + [d] + _run(2 * d - 1, d + 1, -2) + _run(d + 2, 2 * d - 2, 2) + [d] + _run(2 * d + 1, 3 * d - 3, 2)
                + [2 * d] + _run(d + 1, 2 * d - 1, 2) + _run(2 * d + 2, 3 * d - 2, 2))
    return (_run(3 * d - 3, 2 * d + 2, -2) + _run(2 * d - 1, d + 2, -2) + [2 * d] + _run(3 * d - 2, 2 * d + 1, -2)
            + [d] + _run(2 * d - 2, d + 1, -2) + _run(d + 2, 2 * d - 1, 2) + [d] + _run(2 * d + 2, 3 * d - 3, 2)
            + [2 * d] + _run(d + 1, 2 * d - 2, 2) + _run(2 * d + 1, 3 * d - 2, 2))


def bermond(d):
    src = Source.BERMOND2_EVEN if d % 2 == 0 else Source.BERMOND2_ODD
    return build_langford(LangfordRecipe(src, d, 2 * d - 1))


def test_table0a_strings():
    assert str(table0a(3)) == "6,7,3,4,5,3,6,4,7,5"
    assert str(modified_table0a(3)) == "5,6,7,3,4,5,3,6,4,7"
    for d in range(2, 20):
        assert validate(table0a(d), langford(d, 2 * d - 1)).valid
        assert validate(modified_table0a(d), langford(d, 2 * d - 1)).valid


def test_bermond_even_smallest():
    assert str(build_langford(LangfordRecipe("BermondThm2Even", 2, 3))) == "4,2,3,2,4,3"
    # only rows (4), (6), (7) contribute when t = 0
    assert len(evaluate_table("bermond2_even", {"t": 0, "d": 2})) == 3


@pytest.mark.parametrize("d", range(3, 13))
def test_bermond_matches_general_string(d):
    assert list(bermond(d).slots) == general_string(d)


def test_bermond_mass_validation():
    built = 0
    for m in range(1, 201):
        for d in range(1, m + 2):
            for src in (Source.BERMOND2_EVEN, Source.BERMOND2_ODD, Source.BERMOND3):
                r = LangfordRecipe(src, d, m)
                if recipe_applies(r):
                    build_langford(r)
                    built += 1
    assert built == 3150


def test_out_of_range():
    with pytest.raises(RecipeOutOfRange):
        build_langford(LangfordRecipe("Table0a", 3, 6))
    with pytest.raises(RecipeOutOfRange):
        build_langford(LangfordRecipe("BermondThm2Even", 3, 7))
    with pytest.raises(RecipeOutOfRange):
        build_langford(LangfordRecipe("BermondThm3", 2, 8))


def test_any_langford_priority():
    assert any_langford(3, 5)[1].source is Source.TABLE0A
    assert any_langford(4, 11)[1].source is Source.BERMOND2_EVEN
    assert any_langford(2, 4)[1].source is Source.BERMOND3
    seq, r = any_langford(2, 8)
    assert r.source is Source.SEARCH and validate(seq, langford(2, 8)).valid


def test_table0a_vs_modified_disjoint():
    assert count_common(table0a(3), modified_table0a(3)) == 0


def table0a_vs_bermond_claim(d):
    return 0 if d % 3 == 1 else 1


@pytest.mark.parametrize("d", range(4, 13))
def test_table0a_vs_bermond(d):
    assert count_common(table0a(d), bermond(d)) == table0a_vs_bermond_claim(d)


@pytest.mark.xfail(strict=True, reason="at d=3 the Bermond L_3^5 is the modified sequence, disjoint from Table0a")
def test_table0a_vs_bermond_d3():
    assert count_common(table0a(3), bermond(3)) == table0a_vs_bermond_claim(3)


def test_bermond_d3_is_modified():
    assert bermond(3) == modified_table0a(3)


def test_table0a_vs_bermond_d2_identical():
    assert table0a(2) == bermond(2)


@pytest.mark.parametrize("d", range(4, 13))
def test_modified_vs_bermond(d):
    expect = 1 if d == 5 or (d % 3 == 1 and d != 4) else 2
    assert count_common(modified_table0a(d), bermond(d)) == expect


@pytest.mark.parametrize("d", range(3, 13))
def test_modified_vs_reverse_bermond(d):
    if d in (3, 4):
        expect = 1
    elif d % 3 == 1:
        expect = 2
    else:
        expect = 0
    assert count_common(modified_table0a(d), reverse(bermond(d))) == expect


@pytest.mark.parametrize("d", [5, 8, 11, 14])
def test_modified_vs_reverse_table0a(d):
    assert count_common(modified_table0a(d), reverse(table0a(d))) == 3


def test_bermond3_reverse_count():
    for t in range(1, 12):
        for e in range(t):
            r = LangfordRecipe("BermondThm3", 2 * t - e, 4 * t)
            if recipe_applies(r):
                assert reverse_common_report(build_langford(r)) == (2 if e % 3 == 1 else 0), (t, e)


def test_bermond2_reverse_count():
    checked = 0
    for m in range(1, 80):
        for d in range(2, m + 1):
            for src in (Source.BERMOND2_EVEN, Source.BERMOND2_ODD):
                r = LangfordRecipe(src, d, m)
                if recipe_applies(r):
                    expect = 0 if d % 2 == 0 else int(m == 2 * d - 1)
                    assert reverse_common_report(build_langford(r)) == expect, r
                    checked += 1
    assert checked > 100


def six_sequence_counts(d):
    if d % 3 == 0:
        return {0, 1} if d == 3 else {0, 1, 2}
    if d % 3 == 1:
        return {0, 1, 2}
    return {2: {0}, 5: {0, 1, 3}}.get(d, {0, 1, 2, 3})


@pytest.mark.parametrize("d", range(2, 13))
def test_pairwise_counts_among_six_sequences(d):
    six = [table0a(d), modified_table0a(d), bermond(d)]
    six += [reverse(s) for s in six]
    distinct = list(dict.fromkeys(six))
    assert {count_common(a, b) for a, b in combinations(distinct, 2)} == six_sequence_counts(d)


def test_appended_ones_reverse_count():
    for m in range(17, 120, 8):
        assert reverse_common_report(append_ones(build_langford(LangfordRecipe("BermondThm2Odd", 9, m)))) == 0
    for d in range(6, 60, 8):
        assert reverse_common_report(append_ones(build_langford(LangfordRecipe("BermondThm2Even", d, 2 * d + 3)))) == 0


def test_append_ones():
    s = append_ones("4,2,3,2,4,3", "back")
    assert str(s) == "4,2,3,2,4,3,1,1"
    assert validate(s, skolem(4)).valid
    assert str(append_ones("", "front")) == "1,1"
    with pytest.raises(ValueError):
        append_ones("1,1")


def test_attach_202_on_hooked_langford():
    h = enumerate_sequences(hooked_langford(3, 6))[0]
    assert len(h) == 13 and h.holes() == (12,)
    s = attach_202(h)
    assert len(s) == 14 and s.at(12) == 2 and s.at(14) == 2
    assert validate(s, SequenceSpec.parse("langford:7:2")).valid
    with pytest.raises(HookMissing):
        attach_202("4,2,3,2,4,3")
    with pytest.raises(TwoAlreadyPresent):
        attach_202("2,3,2,0,3")


def test_near_skolem_plus_attach_gives_skolem_12():
    near = SlotSequence.parse("3,1,1,3")  # 2-near S_3
    assert validate(near, SequenceSpec.parse("near:3:2")).valid
    hl = search_langford(4, 9, hooked=True)
    s = SlotSequence(near.slots + attach_202(hl).slots)
    assert len(s) == 24 and validate(s, skolem(12)).valid


def test_reverse_count_oracles_agree():
    for d in range(2, 15):
        for s in (table0a(d), modified_table0a(d)):
            assert reverse_common_report(s) == reverse_common_by_sum(s)
