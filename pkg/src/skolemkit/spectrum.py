"""Intersection spectrum of Skolem sequences.

realize(n, p) runs a fixed pipeline of strategies and returns the first pair
of Skolem sequences whose common-pair count is exactly p. Every result is
re-validated before it is returned, and every result carries a trace that
replay() turns back into the same pair.
"""
from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np

from .builders import LangfordRecipe, Source, any_langford, build_langford
from .compose import CompositionPlan, InfeasibleShell, assemble, shell_layout
from .notation import Record, decode_record, parse_record, table_records
from .search import (SearchBudget, Shape, TooLarge, Unresolved, solutions, enumerate_sequences,
                     hillclimb_shape)
from .seqcore import (SequenceSpec, SlotSequence, common_pairs, exists, langford, pairs, reverse, skolem,
                      validate)


class NoSuchOrder(ValueError):
    pass


class NotInSpectrum(ValueError):
    pass


class Strategy(str, Enum):
    DUPLICATE = "Duplicate"
    SMALL_TABLE = "SmallTable"
    SPORADIC_TABLE = "SporadicTable"
    ADJOIN_RECURSIVE = "AdjoinRecursive"
    SHELL_RECIPE = "ShellRecipe"
    INTERVAL_SEQUENCE = "IntervalSequence"
    FALLBACK_SEARCH = "FallbackSearch"


PIPELINE = (Strategy.DUPLICATE, Strategy.SMALL_TABLE, Strategy.SPORADIC_TABLE,
            Strategy.ADJOIN_RECURSIVE, Strategy.SHELL_RECIPE, Strategy.FALLBACK_SEARCH)


@dataclass
class RealizationTrace:
    strategy: Strategy
    n: int
    p: int
    params: dict = field(default_factory=dict)
    children: list = field(default_factory=list)
    attempted: list = field(default_factory=list)  # strategies tried before this one succeeded

    def to_json(self) -> dict:
        return {"strategy": self.strategy.value, "n": self.n, "p": self.p, "params": self.params,
                "children": [c.to_json() for c in self.children], "attempted": self.attempted}

    @classmethod
    def from_json(cls, d: dict) -> "RealizationTrace":
        return cls(Strategy(d["strategy"]), d["n"], d["p"], dict(d.get("params", {})),
                   [cls.from_json(c) for c in d.get("children", [])], list(d.get("attempted", [])))

    def lines(self, depth: int = 0) -> list[str]:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items() if k != "plan")
        out = ["  " * depth + f"({self.n},{self.p}) {self.strategy.value}" + (f" [{params}]" if params else "")]
        for c in self.children:
            out.extend(c.lines(depth + 1))
        return out


@dataclass
class Realization:
    first: SlotSequence
    second: SlotSequence
    trace: RealizationTrace

    @property
    def common(self) -> list:
        return common_pairs(self.first, self.second)[1]

    def to_json(self) -> dict:
        return {"n": self.trace.n, "p": self.trace.p, "seq1": list(self.first.slots),
                "seq2": list(self.second.slots), "common": [list(c) for c in self.common],
                "trace": self.trace.lines()}


def necessary_spectrum(n: int) -> set[int]:
    if n < 1 or n % 4 not in (0, 1):
        raise NoSuchOrder(f"no Skolem sequence of order {n}")
    if n == 1:
        return {1}
    if n in (4, 5):
        return {0, 1, n}
    return set(range(n - 2)) | {n}


def seed_for(n: int, p: int, salt: str = "") -> int:
    return zlib.crc32(f"{n}:{p}:{salt}".encode())


# ------------------------------------------------------------- strategies
# Each returns (s1, s2, trace) or None when it does not apply; they never return unverified pairs.

def _any_skolem(n: int, seed: int) -> SlotSequence:
    return hillclimb_shape(Shape.of(skolem(n)), budget=SearchBudget(rng_seed=seed))


def _duplicate(n, p, params=None, seed=0, **_):
    if p != n:
        return None
    seed = (params or {}).get("seed", seed_for(n, p, str(seed)))
    s = _any_skolem(n, seed)
    return s, s, RealizationTrace(Strategy.DUPLICATE, n, p, {"seed": seed})


def _record_pair(line: str):
    dec = decode_record(parse_record(line))
    return dec.first, dec.second


@lru_cache(maxsize=None)
def _skolem_records() -> dict:
    """(n, p) -> record lines that decode cleanly, grouped by table."""
    small, sporadic = {}, {}
    for rec in table_records():
        spec = rec.spec
        if spec.family.value != "skolem":
            continue
        try:
            ok = decode_record(rec).ok
        except ValueError:
            ok = False
        if not ok:
            continue
        table = small if spec.n <= 9 else sporadic
        table.setdefault((spec.n, rec.p), []).append(rec.line())
    return {"small": small, "sporadic": sporadic}


@lru_cache(maxsize=None)
def _small_pairs(n: int) -> dict:
    """p -> (i, j): first ordered pair of enumerated S_n with exactly p common pairs."""
    seqs = enumerate_sequences(skolem(n))
    firsts = _first_positions(seqs, n)
    out = {}
    for i in range(len(seqs)):
        counts = (firsts[i] == firsts).sum(axis=1)
        for j, c in enumerate(counts.tolist()):
            out.setdefault(c, (i, j))
    return out


def _small_table(n, p, params=None, **_):
    if n > 9:
        return None
    if params and "record" in params:
        s1, s2 = _record_pair(params["record"])
        return s1, s2, RealizationTrace(Strategy.SMALL_TABLE, n, p, dict(params))
    if params is None:
        lines = _skolem_records()["small"].get((n, p))
        if lines:
            s1, s2 = _record_pair(lines[0])
            return s1, s2, RealizationTrace(Strategy.SMALL_TABLE, n, p, {"record": lines[0]})
    ij = tuple(params["enumerated"]) if params else _small_pairs(n).get(p)
    if ij is None:
        return None
    seqs = enumerate_sequences(skolem(n))
    return seqs[ij[0]], seqs[ij[1]], RealizationTrace(Strategy.SMALL_TABLE, n, p, {"enumerated": list(ij)})


def _sporadic(n, p, params=None, **_):
    line = (params or {}).get("record")
    if line is None:
        lines = _skolem_records()["sporadic"].get((n, p))
        if not lines:
            return None
        line = lines[0]
    s1, s2 = _record_pair(line)
    return s1, s2, RealizationTrace(Strategy.SPORADIC_TABLE, n, p, {"record": line})


def _tail(d: int, m: int, recipe: Optional[dict] = None) -> tuple[SlotSequence, dict]:
    if recipe:
        r = LangfordRecipe(Source(recipe["source"]), recipe["d"], recipe["n"])
        return build_langford(r), recipe
    seq, r = any_langford(d, m)
    return seq, {"source": r.source.value, "d": r.d, "n": r.n}


@lru_cache(maxsize=None)
def _tail_options(d: int, m: int) -> tuple:
    """(mode, count) choices for a Langford tail L_d^m paired with itself or its reverse."""
    seq, _ = _tail(d, m)
    return (("same", m), ("reverse", common_pairs(seq, reverse(seq))[0]))


def _pair_tail(seq: SlotSequence, mode: str) -> SlotSequence:
    return seq if mode == "same" else reverse(seq)


def _adjoin_candidates(n: int):
    for d in range(n // 3, 0, -1):
        if d % 4 in (0, 1) and exists(langford(d + 1, n - d)):
            yield d


def _adjoin(n, p, params=None, depth=0, seed=0):
    """S_d L_{d+1}^{n-d} against S'_d L or S'_d reversed L: common = sp(S_d) + (n-d or rev count)."""
    if params:
        child = (*replay(params["child"]), RealizationTrace.from_json(params["child"]))
        cands = [(params["d"], params["mode"], child)]
    else:
        cands = []
        for d in _adjoin_candidates(n):
            for mode, c in _tail_options(d + 1, n - d):
                if p - c in necessary_spectrum(d):
                    cands.append((d, mode, None))
    for d, mode, child in cands:
        m = n - d
        tail, recipe = _tail(d + 1, m, params.get("recipe") if params else None)
        if child is None:
            try:
                r = realize(d, p - _count_for(tail, mode), seed=seed, _depth=depth + 1)
            except (Unresolved, NotInSpectrum):
                continue
            a, a2, ctrace = r.first, r.second, r.trace
        else:
            a, a2, ctrace = child
        s1 = SlotSequence(a.slots + tail.slots)
        s2 = SlotSequence(a2.slots + _pair_tail(tail, mode).slots)
        tr = RealizationTrace(Strategy.ADJOIN_RECURSIVE, n, p, {"d": d, "mode": mode, "recipe": recipe},
                              [ctrace])
        return s1, s2, tr
    return None


def _count_for(tail: SlotSequence, mode: str) -> int:
    return common_pairs(tail, _pair_tail(tail, mode))[0]


def _shell_candidates(n: int):
    """(t, k): shell A_t^n, a Skolem S_k in its holes, and L_{k+1}^{n-t-k} after it."""
    for t in range(3, n, 2):
        try:
            h, _ = shell_layout(n, t)
        except InfeasibleShell:
            continue
        if h % 2:
            continue
        k = h // 2
        if k and k % 4 not in (0, 1):
            continue
        m = n - t - k
        if m < 1 or not exists(langford(k + 1, m)):
            continue
        yield t, k


def _shell_recipe(n, p, params=None, depth=0, seed=0):
    """[A_t^n with S_k inside] L against [A or reversed A with S'_k inside] L or reversed L."""
    if params:
        cands = [(params["t"], params["k"], params["shell"], params["mode"])]
    else:
        cands = []
        for t, k in _shell_candidates(n):
            spec_k = necessary_spectrum(k) if k else {0}
            for smode, a in (("reverse", 0), ("same", t)):
                for mode, c in _tail_options(k + 1, n - t - k):
                    if p - a - c in spec_k:
                        cands.append((t, k, smode, mode))
    for t, k, smode, mode in cands:
        tail, recipe = _tail(k + 1, n - t - k, params.get("recipe") if params else None)
        a = t if smode == "same" else 0
        q = p - a - _count_for(tail, mode)
        children = []
        if k:
            if params:
                inner, inner2 = replay(params["child"])
                ctrace = RealizationTrace.from_json(params["child"])
            else:
                try:
                    r = realize(k, q, seed=seed, _depth=depth + 1)
                except (Unresolved, NotInSpectrum):
                    continue
                inner, inner2, ctrace = r.first, r.second, r.trace
            children.append(ctrace)
        else:
            inner = inner2 = SlotSequence(())
        plan1 = CompositionPlan().shell(n, t).fill(inner.slots).lit(tail)
        s1 = assemble(plan1, skolem(n))
        head = s1.slots[: 2 * t + 2 * k]
        head2 = head if smode == "same" else reverse(SlotSequence(head)).slots
        # the hole block is symmetric, so the reversed shell keeps it in place; refill it with S'_k
        head2 = list(head2)
        for i in range(2 * k):
            head2[t + i] = inner2.slots[i]
        s2 = SlotSequence(tuple(head2) + _pair_tail(tail, mode).slots)
        tr = RealizationTrace(Strategy.SHELL_RECIPE, n, p,
                              {"t": t, "k": k, "shell": smode, "mode": mode, "recipe": recipe,
                               "plan": plan1.to_text()}, children)
        return s1, s2, tr
    return None


LOCAL_K = 12 # up to this many moved pairs, the second sequence is found by exact local search


def _rearrange(s1: SlotSequence, moved, max_nodes: int = 20000) -> Optional[SlotSequence]:
    """Re-pair the values in moved inside their own positions so that none keeps its pair."""
    pr = pairs(s1)
    positions = {x for v in moved for x in pr[v]}
    holes = frozenset(i for i in range(1, len(s1) + 1) if i not in positions)
    sub = Shape(len(s1), holes, tuple(sorted(moved)))
    slots = list(s1.slots)
    try:
        for place in solutions(sub, max_nodes=max_nodes, forbid={v: [pr[v][0]] for v in moved}):
            for v, a in place.items():
                slots[a - 1] = slots[a + v - 1] = v
            return SlotSequence(tuple(slots))
    except Unresolved:
        return None
    return None


def _fallback(n, p, params=None, seed=0, tries=40, local_tries=500, s1_tries=5, **_):
    """Keep p pairs of a hill-climbed S_n and move the rest.

    Few moved pairs: exact re-pairing inside their own positions. Otherwise:
    hill-climb a second S_n with the kept pairs fixed and every other pair forbidden.
    """
    shape = Shape.of(skolem(n))
    k = n - p
    if params:
        s1 = hillclimb_shape(shape, budget=SearchBudget(rng_seed=params["seed"]))
        if params["method"] == "local":
            s2 = _rearrange(s1, params["moved"])
        else:
            pr = pairs(s1)
            fixed = {v: pr[v] for v in params["keep"]}
            forbid = {v: [pr[v][0]] for v in pr if v not in fixed}
            s2 = hillclimb_shape(shape, fixed, SearchBudget(max_restarts=50, rng_seed=params["seed2"]),
                                 forbid=forbid)
        return (s1, s2, RealizationTrace(Strategy.FALLBACK_SEARCH, n, p, dict(params))) if s2 else None
    for r in range(s1_tries):
        s1_seed = seed_for(n, p, f"{seed}:{r}")
        s1 = hillclimb_shape(shape, budget=SearchBudget(rng_seed=s1_seed))
        pr = pairs(s1)
        rng = random.Random(s1_seed)
        values = sorted(pr)
        if k <= LOCAL_K:
            for _ in range(local_tries):
                moved = sorted(rng.sample(values, k))
                s2 = _rearrange(s1, moved)
                if s2 is not None:
                    return s1, s2, RealizationTrace(Strategy.FALLBACK_SEARCH, n, p,
                                                    {"seed": s1_seed, "method": "local", "moved": moved})
            continue
        for i in range(tries):
            keep = sorted(rng.sample(values, p))
            fixed = {v: pr[v] for v in keep}
            forbid = {v: [pr[v][0]] for v in pr if v not in fixed}
            seed2 = s1_seed + 1 + i
            try:
                s2 = hillclimb_shape(shape, fixed, SearchBudget(max_restarts=50, rng_seed=seed2), forbid=forbid)
            except Unresolved:
                continue
            return s1, s2, RealizationTrace(Strategy.FALLBACK_SEARCH, n, p,
                                            {"seed": s1_seed, "method": "hillclimb", "seed2": seed2, "keep": keep})
    return None


_RUNNERS = {
    Strategy.DUPLICATE: _duplicate,
    Strategy.SMALL_TABLE: _small_table,
    Strategy.SPORADIC_TABLE: _sporadic,
    Strategy.ADJOIN_RECURSIVE: _adjoin,
    Strategy.SHELL_RECIPE: _shell_recipe,
    Strategy.FALLBACK_SEARCH: _fallback,
}


def _verified(n: int, p: int, s1, s2) -> bool:
    spec = skolem(n)
    return validate(s1, spec).valid and validate(s2, spec).valid and common_pairs(s1, s2)[0] == p


def realize(n: int, p: int, strategies=PIPELINE, seed: int = 0, _depth: int = 0) -> Realization:
    if p not in necessary_spectrum(n):
        raise NotInSpectrum(f"two S_{n} cannot share exactly {p} pairs")
    attempted = []
    for st in strategies:
        attempted.append(st.value)
        fn = _RUNNERS[st]
        try:
            got = fn(n, p, depth=_depth, seed=seed)
        except Unresolved:
            got = None
        if got is None:
            continue
        s1, s2, tr = got
        if not _verified(n, p, s1, s2):
            continue
        tr.attempted = attempted[:-1]
        return Realization(s1, s2, tr)
    raise Unresolved(f"({n},{p}) unresolved; tried {', '.join(attempted)}")


def replay(trace) -> tuple[SlotSequence, SlotSequence]:
    """Re-run exactly the recorded strategy with its recorded parameters."""
    if isinstance(trace, dict):
        trace = RealizationTrace.from_json(trace)
    params = dict(trace.params)
    if trace.strategy in (Strategy.ADJOIN_RECURSIVE, Strategy.SHELL_RECIPE) and trace.children:
        params["child"] = trace.children[0].to_json()
    if trace.strategy is Strategy.SHELL_RECIPE and not trace.children:
        params["child"] = None
    got = _RUNNERS[trace.strategy](trace.n, trace.p, params)
    if got is None:
        raise Unresolved(f"trace for ({trace.n},{trace.p}) did not replay")
    return got[0], got[1]


# ------------------------------------------------------------- exhaustive spectra

def _first_positions(seqs, n_values) -> np.ndarray:
    """Matrix of first-copy positions, one row per sequence, one column per value (0 = absent)."""
    if not seqs:
        return np.zeros((0, 0), dtype=np.int16)
    values = sorted(seqs[0].values())
    out = np.zeros((len(seqs), len(values)), dtype=np.int16)
    for i, s in enumerate(seqs):
        pr = pairs(s)
        out[i] = [pr[v][0] for v in values]
    return out


def exhaustive_spectrum(spec, cap: int = 26) -> set[int]:
    """All common-pair counts over ordered pairs (including a sequence with itself)."""
    if isinstance(spec, str):
        spec = SequenceSpec.parse(spec)
    if spec.length > cap:
        raise TooLarge(f"length {spec.length} exceeds cap {cap}")
    seqs = enumerate_sequences(spec, cap=cap)
    if not seqs:
        return set()
    firsts = _first_positions(seqs, spec.n)
    found = set()
    chunk = max(1, 4_000_000 // (len(seqs) * firsts.shape[1]))
    for i in range(0, len(seqs), chunk):
        block = (firsts[i:i + chunk, None, :] == firsts[None, :, :]).sum(axis=2)
        found.update(np.unique(block).tolist())
    return found
