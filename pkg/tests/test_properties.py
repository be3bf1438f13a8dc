from functools import lru_cache

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from skolemkit.builders import LangfordRecipe, Source, attach_202, build_langford, recipe_applies
from skolemkit.compose import InfeasibleShell, adjoin, shell
from skolemkit.notation import decode, encode
from skolemkit.search import enumerate_sequences
from skolemkit.seqcore import (SequenceSpec, SlotSequence, common_pairs, count_common, langford, pairs, reverse,
                               skolem, validate)

N = settings(max_examples=1000, deadline=None)


@lru_cache(maxsize=None)
def pool(spec_text):
    return tuple(enumerate_sequences(SequenceSpec.parse(spec_text)))


SKOLEM_POOLS = ("skolem:1", "skolem:4", "skolem:5", "skolem:8", "skolem:9")
HOOKED_POOLS = ("hooked:2", "hooked:3", "hooked:6", "hooked:7")
HL_POOLS = ("hlangford:6:3", "hlangford:7:3", "hlangford:9:4", "hlangford:10:3", "hlangford:10:5")


def from_pools(names):
    return st.sampled_from(names).flatmap(lambda name: st.sampled_from(pool(name)).map(lambda s: (name, s)))


@lru_cache(maxsize=None)
def bermond_recipes(max_m=200):
    out = []
    for m in range(1, max_m + 1):
        for d in range(1, m + 2):
            for src in (Source.BERMOND2_EVEN, Source.BERMOND2_ODD, Source.BERMOND3, Source.TABLE0A):
                r = LangfordRecipe(src, d, m)
                if recipe_applies(r):
                    out.append(r)
    return tuple(out)


def bermond_builds(max_m=200):
    return st.sampled_from(bermond_recipes(max_m)).map(lambda r: (r, build_langford(r)))


@N
@given(from_pools(SKOLEM_POOLS + HOOKED_POOLS + HL_POOLS))
def test_pairs_round_trip(item):
    name, s = item
    assert validate(s, SequenceSpec.parse(name)).valid
    assert SlotSequence.from_pairs(pairs(s), len(s)) == s


@N
@given(bermond_builds())
def test_pairs_round_trip_bermond(item):
    r, s = item
    assert validate(s, langford(r.d, r.n)).valid
    assert SlotSequence.from_pairs(pairs(s), len(s)) == s


@N
@given(st.one_of(from_pools(SKOLEM_POOLS).map(lambda x: x[1]), bermond_builds().map(lambda x: x[1])))
def test_reverse_common_is_sum_criterion(s):
    by_sum = sum(1 for a, b in pairs(s).values() if a + b == len(s) + 1)
    assert count_common(s, reverse(s)) == by_sum
    assert reverse(reverse(s)) == s


@N
@given(st.integers(1, 200), st.integers(1, 100))
def test_shell_reverse_disjoint(n, half):
    t = 2 * half + 1  # t >= 3, odd
    try:
        s = shell(n, t)
    except InfeasibleShell:
        assume(False)
    assert count_common(s, reverse(s)) == 0
    assert set(pairs(s)) == set(range(n - t + 1, n + 1))


def test_shell_reverse_disjoint_exhaustive():
    feasible = 0
    for n in range(1, 201):
        for t in range(3, n + 1, 2):
            try:
                s = shell(n, t)
            except InfeasibleShell:
                continue
            feasible += 1
            assert count_common(s, reverse(s)) == 0, (n, t)
    assert feasible > 3000


@st.composite
def adjoin_case(draw):
    r = draw(st.sampled_from([r for r in bermond_recipes(60) if r.d - 1 in (1, 4, 5, 8, 9)]))
    d = r.d - 1
    a = draw(st.sampled_from(pool(f"skolem:{d}")))
    a2 = draw(st.sampled_from(pool(f"skolem:{d}")))
    b = build_langford(r)
    if draw(st.booleans()):
        b = reverse(b)
    return a, a2, b


@N
@given(adjoin_case())
def test_adjoin_additivity(case):
    a, a2, b = case
    left, right = adjoin(a, b), adjoin(a2, b)
    n = len(left) // 2
    assert validate(left, skolem(n)).valid and validate(right, skolem(n)).valid
    assert count_common(left, right) == count_common(a, a2) + len(pairs(b))


@N
@given(from_pools(HL_POOLS))
def test_attach_202_contract(item):
    name, h = item
    out = attach_202(h)
    assert len(out) == len(h) + 1
    assert not out.holes()
    assert set(pairs(out)) == set(pairs(h)) | {2}
    spec = SequenceSpec.parse(name)
    if spec.d == 3:
        assert validate(out, langford(2, spec.n + 1)).valid


@st.composite
def same_shape_pair(draw):
    name = draw(st.sampled_from(SKOLEM_POOLS + HOOKED_POOLS))
    return draw(st.sampled_from(pool(name))), draw(st.sampled_from(pool(name)))


@N
@given(same_shape_pair())
def test_common_pairs_symmetric_and_bounded(pair):
    s1, s2 = pair
    c12, c21 = count_common(s1, s2), count_common(s2, s1)
    assert c12 == c21 <= min(len(pairs(s1)), len(pairs(s2)))
    assert common_pairs(s1, s1)[0] == len(pairs(s1))


@N
@given(from_pools(SKOLEM_POOLS + HOOKED_POOLS))
def test_decode_encode_identity(item):
    _, s = item
    assert decode(encode(s), len(s)) == s
