"""Exhaustive enumeration and hill-climbing for sequences with a fixed shape.

Both searchers work on a shape (length, holes, difference set) plus optional
fixed placements, so they serve every family and also the helper shapes that
the spectrum code needs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

from .seqcore import SequenceSpec, SlotSequence, validate_shape

DEFAULT_CAP = 26


class TooLarge(ValueError):
    pass


class Unresolved(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**7
    max_restarts: int = 10**4
    rng_seed: int = 20240
    sideways_cap: int = 100
    steps_per_restart: int = 20000


@dataclass(frozen=True)
class Shape:
    length: int
    holes: frozenset
    diffs: tuple

    @classmethod
    def of(cls, spec: SequenceSpec) -> "Shape":
        length, holes, diffs = spec.compile()
        return cls(length, frozenset(holes), tuple(sorted(diffs)))


def _prepare(shape: Shape, fixed: Optional[Mapping[int, tuple[int, int]]]):
    used = 0
    for h in shape.holes:
        used |= 1 << h
    fixed = dict(fixed or {})
    for v, (a, b) in fixed.items():
        if v not in shape.diffs or b - a != v or not (1 <= a and b <= shape.length):
            raise ValueError(f"fixed pair {v}:({a},{b}) does not fit the shape")
        if used >> a & 1 or used >> b & 1:
            raise ValueError(f"fixed pair {v}:({a},{b}) collides")
        used |= (1 << a) | (1 << b)
    free_vals = [v for v in shape.diffs if v not in fixed]
    return used, fixed, free_vals


def solutions(shape: Shape, fixed=None, max_nodes: Optional[int] = None,
              forbid: Optional[Mapping[int, Iterable[int]]] = None) -> Iterator[dict[int, int]]:
    """Yield placements value -> first position. Largest value first, smallest position first.

    forbid maps a value to first positions it may not take.
    """
    used, fixed, free_vals = _prepare(shape, fixed)
    forbid = {v: set(ps) for v, ps in (forbid or {}).items()}
    order = sorted(free_vals, reverse=True)
    L = shape.length
    place = {v: a for v, (a, _) in fixed.items()}
    nodes = [0]
    full = ((1 << (L + 1)) - 1) & ~1
    if 2 * len(order) + bin(used).count("1") != L:
        return

    def rec(i: int, used: int):
        nodes[0] += 1
        if max_nodes is not None and nodes[0] > max_nodes:
            raise Unresolved(f"node budget {max_nodes} exhausted")
        if i == len(order):
            if used == full:
                yield dict(place)
            return
        v = order[i]
        banned = forbid.get(v, ())
        for a in range(1, L - v + 1):
            m = (1 << a) | (1 << (a + v))
            if used & m or a in banned:
                continue
            place[v] = a
            yield from rec(i + 1, used | m)
            del place[v]

    yield from rec(0, used)


def _to_seq(shape: Shape, place: Mapping[int, int]) -> SlotSequence:
    slots = [0] * shape.length
    for v, a in place.items():
        slots[a - 1] = v
        slots[a + v - 1] = v
    return SlotSequence(tuple(slots))


def enumerate_shape(shape: Shape, fixed=None, cap: int = DEFAULT_CAP) -> list[SlotSequence]:
    if shape.length > cap:
        raise TooLarge(f"length {shape.length} exceeds enumeration cap {cap}")
    out = [_to_seq(shape, p) for p in solutions(shape, fixed)]
    out.sort(key=lambda s: s.slots)
    return out


def enumerate_sequences(spec: SequenceSpec, cap: int = DEFAULT_CAP) -> list[SlotSequence]:
    """All valid sequences for spec, sorted lexicographically by slot vector."""
    return enumerate_shape(Shape.of(spec), cap=cap)


def first_solution(shape: Shape, fixed=None, max_nodes: Optional[int] = 10**6) -> Optional[SlotSequence]:
    """Depth-first search for one solution (no length cap, node budget instead)."""
    try:
        for p in solutions(shape, fixed, max_nodes=max_nodes):
            return _to_seq(shape, p)
    except Unresolved:
        return None
    return None


def hillclimb_shape(shape: Shape, fixed=None, budget: SearchBudget = SearchBudget(),
                    forbid: Optional[Mapping[int, Iterable[int]]] = None) -> SlotSequence:
    """Local search: place a random unplaced value at a random feasible spot, evicting at most one pair.

    forbid maps a value to first-positions it may not take. Raises Unresolved
    when the restart budget runs out.
    """
    used0, fixed, free_vals = _prepare(shape, fixed)
    L = shape.length
    if not free_vals:
        return _to_seq(shape, {v: a for v, (a, _) in fixed.items()})
    blocked = [bool(used0 >> i & 1) for i in range(L + 2)]
    forbid = {v: set(ps) for v, ps in (forbid or {}).items()}
    cands = {}
    for v in free_vals:
        cs = [a for a in range(1, L - v + 1)
              if not blocked[a] and not blocked[a + v] and a not in forbid.get(v, ())]
        if not cs:
            raise Unresolved(f"value {v} has no admissible position")
        cands[v] = cs
    rng = random.Random(budget.rng_seed)
    target = len(free_vals)
    for _ in range(budget.max_restarts):
        occ = [0] * (L + 2)  # position -> value occupying it (0 free)
        where: dict[int, int] = {}
        unplaced = list(free_vals)
        sideways = 0
        for _ in range(budget.steps_per_restart):
            if not unplaced:
                break
            i = rng.randrange(len(unplaced))
            v = unplaced[i]
            good, swap = [], []
            for a in cands[v]:
                x, y = occ[a], occ[a + v]
                if not x and not y:
                    good.append(a)
                elif not x or not y or x == y:
                    swap.append((a, x or y))
            if good:
                a = rng.choice(good)
                sideways = 0
                evict = 0
            elif swap:
                a, evict = rng.choice(swap)
                sideways += 1
                if sideways > budget.sideways_cap:
                    break
            else:
                continue
            unplaced[i] = unplaced[-1]
            unplaced.pop()
            if evict:
                b = where.pop(evict)
                occ[b] = occ[b + evict] = 0
                unplaced.append(evict)
            where[v] = a
            occ[a] = occ[a + v] = v
        if len(where) == target:
            place = dict(where)
            place.update({v: a for v, (a, _) in fixed.items()})
            seq = _to_seq(shape, place)
            assert validate_shape(seq, L, shape.holes, shape.diffs).valid
            return seq
    raise Unresolved(f"hill-climb gave up after {budget.max_restarts} restarts")


def hillclimb(spec: SequenceSpec, constraints=None, budget: SearchBudget = SearchBudget()) -> SlotSequence:
    return hillclimb_shape(Shape.of(spec), constraints, budget)
