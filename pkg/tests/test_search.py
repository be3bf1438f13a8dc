import pytest

from skolemkit.search import (SearchBudget, Shape, TooLarge, enumerate_sequences, first_solution, hillclimb,
                              solutions)
from skolemkit.seqcore import (SequenceSpec, exists, hooked, hooked_langford, langford, pairs, skolem,
                               validate)

SKOLEM_COUNTS = {1: 1, 2: 0, 3: 0, 4: 6, 5: 10, 6: 0, 7: 0, 8: 504, 9: 2656}
HOOKED_COUNTS = {1: 0, 2: 1, 3: 2, 4: 0, 5: 0, 6: 38, 7: 124}


def test_enumerate_examples():
    assert enumerate_sequences(skolem(2)) == []
    assert [str(s) for s in enumerate_sequences(skolem(1))] == ["1,1"]


@pytest.mark.parametrize("n", sorted(SKOLEM_COUNTS))
def test_frozen_skolem_counts(n):
    seqs = enumerate_sequences(skolem(n))
    assert len(seqs) == SKOLEM_COUNTS[n]
    assert [s.slots for s in seqs] == sorted(s.slots for s in seqs)
    assert len(set(seqs)) == len(seqs)
    assert all(validate(s, skolem(n)).valid for s in seqs)


@pytest.mark.parametrize("n", sorted(HOOKED_COUNTS))
def test_frozen_hooked_counts(n):
    assert len(enumerate_sequences(hooked(n))) == HOOKED_COUNTS[n]


def test_too_large():
    with pytest.raises(TooLarge):
        enumerate_sequences(skolem(16))


def test_hillclimb_s20():
    s = hillclimb(skolem(20))
    assert validate(s, skolem(20)).valid


def test_hillclimb_fixed_full_solution():
    s = enumerate_sequences(skolem(5))[3]
    assert hillclimb(skolem(5), pairs(s), SearchBudget(max_restarts=1)) == s


def test_hillclimb_outputs_are_enumerated():
    for n in (4, 5, 8, 9):
        pool = set(enumerate_sequences(skolem(n)))
        for seed in range(5):
            assert hillclimb(skolem(n), budget=SearchBudget(rng_seed=seed)) in pool


def test_hillclimb_deterministic():
    b = SearchBudget(rng_seed=7)
    assert hillclimb(skolem(13), budget=b) == hillclimb(skolem(13), budget=b)


def test_forbid_prunes():
    shape = Shape.of(skolem(4))
    got = list(solutions(shape, forbid={4: {1, 2, 3, 4}}))
    assert len(got) == 0 or all(p[4] not in (1, 2, 3, 4) for p in got)


def _all_specs(max_len=20):
    for n in range(1, 11):
        yield skolem(n)
        yield hooked(n)
        for m in range(1, n + 1):
            yield SequenceSpec("near", n, m=m)
        for k in range(1, 2 * n + 2):
            yield SequenceSpec("extended", n, k=k)
        for p in range(1, 2 * n + 3):
            for q in range(p + 1, 2 * n + 3):
                yield SequenceSpec("rosa", n, p=p, q=q)
        for d in range(1, 8):
            yield langford(d, n)
            yield hooked_langford(d, n)
            for k in range(1, 2 * n + 2):
                yield SequenceSpec("xlangford", n, d=d, k=k)


def test_existence_matches_enumeration_up_to_length_20():
    checked = 0
    for spec in _all_specs():
        if spec.length > 20:
            continue
        e = exists(spec)
        if e is None:
            continue
        found = first_solution(Shape.of(spec), max_nodes=None) is not None
        assert e == found, str(spec)
        checked += 1
    assert checked > 1000
