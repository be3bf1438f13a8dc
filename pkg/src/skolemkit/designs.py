"""Cyclic triple systems from Skolem-type sequences.

A value k placed at positions (a, b) gives the base block {0, a+n, b+n}
("offset" form) or {0, k, b+n} ("mixed" form) mod 6n+1. Both forms use the
same three differences k, a+n, b+n, so any per-value choice between them is
again a difference system. The lambda-fold constructions below stack such
hybrid systems built from one Skolem sequence or from two sequences with a
known number of common pairs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .search import SearchBudget, Shape, hillclimb_shape
from .seqcore import (Family, SequenceSpec, SlotSequence, ValidationReport, as_seq, pairs, validate)

KINDS = ("CTS", "DTS", "MTS")


class InvalidSequence(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class OutsideRegion(ValueError):
    pass


class RequiresExceptionalIntersection(ValueError):
    pass


@dataclass(frozen=True)
class BaseBlock:
    """Three residues; read as a set (CTS), a linear order (DTS) or a cyclic order (MTS)."""
    points: tuple
    kind: str = "CTS"

    def __post_init__(self):
        pts = tuple(int(x) for x in self.points)
        if len(pts) != 3 or len(set(pts)) != 3:
            raise ValueError(f"a block needs three distinct points, got {pts}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown block kind {self.kind!r}")
        object.__setattr__(self, "points", pts)

    def reduce(self, v: int) -> "BaseBlock":
        return BaseBlock(tuple(x % v for x in self.points), self.kind)

    def canonical(self, v: int) -> tuple:
        """Lexicographically least translate (and rotation, for MTS)."""
        pts = [x % v for x in self.points]
        if self.kind == "CTS":
            return min(tuple(sorted((x - e) % v for x in pts)) for e in pts)
        if self.kind == "DTS":
            return tuple((x - pts[0]) % v for x in pts)
        rots = [pts[i:] + pts[:i] for i in range(3)]
        return min(tuple((x - r[0]) % v for x in r) for r in rots)

    def orbit_length(self, v: int) -> int:
        if v % 3 == 0:
            g = v // 3
            if _same_block(self, BaseBlock(tuple(x + g for x in self.points), self.kind), v):
                return g
        return v

    def ordered_pairs(self) -> list[tuple[int, int]]:
        a, b, c = self.points
        if self.kind == "CTS":
            return [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)]
        if self.kind == "DTS":
            return [(a, b), (a, c), (b, c)]
        return [(a, b), (b, c), (c, a)]


def _same_block(x: BaseBlock, y: BaseBlock, v: int) -> bool:
    """Literal equality of two blocks as sets / linear orders / cyclic orders (no translation)."""
    p = [t % v for t in x.points]
    q = [t % v for t in y.points]
    if x.kind == "CTS":
        return sorted(p) == sorted(q)
    if x.kind == "DTS":
        return p == q
    return any(q == p[i:] + p[:i] for i in range(3))


@dataclass
class FineStructure:
    c: tuple  # c[i-1] = number of distinct base blocks repeated exactly i times

    @property
    def lam(self) -> int:
        return len(self.c)

    def short(self) -> tuple:
        """Customary short form: (c1, c2) for lambda 2, otherwise (c2, ..., c_lambda)."""
        return tuple(self.c) if self.lam <= 2 else tuple(self.c[1:])

    @classmethod
    def from_short(cls, lam: int, n_blocks: int, vec: Sequence[int]) -> "FineStructure":
        """Inverse of short(); c1 is recovered from lam * n_blocks = sum i * c_i."""
        vec = tuple(vec)
        if lam <= 2:
            if len(vec) != lam:
                raise ValueError(f"expected {lam} entries")
            return cls(vec)
        if len(vec) != lam - 1:
            raise ValueError(f"expected {lam - 1} entries")
        c1 = lam * n_blocks - sum((i + 2) * x for i, x in enumerate(vec))
        return cls((c1,) + vec)


@dataclass
class Design:
    v: int
    lam: int
    kind: str
    blocks: list = field(default_factory=list)  # base blocks, with repetition

    def to_json(self) -> dict:
        return {"v": self.v, "lambda": self.lam, "kind": self.kind,
                "blocks": [list(b.canonical(self.v)) for b in self.blocks],
                "fine_structure": list(extract_fine_structure(self).c)}


def _weighted_differences(design: Design) -> Counter:
    counts: Counter = Counter()
    for b in design.blocks:
        w = Fraction(b.orbit_length(design.v), design.v)
        for x, y in b.ordered_pairs():
            counts[(y - x) % design.v] += w
    return counts


def validate_coverage(design: Design) -> ValidationReport:
    """Cyclic check: every nonzero residue occurs lam times as a difference over the block orbits."""
    rep = ValidationReport()
    v, lam = design.v, design.lam
    for b in design.blocks:
        if b.kind != design.kind:
            rep.violations.append(f"block {b.points} is {b.kind}, design is {design.kind}")
    counts = _weighted_differences(design)
    if counts.get(0):
        rep.violations.append("a block has a repeated point")
    missing, excess = [], []
    for d in range(1, v):
        c = counts.get(d, 0)
        if c < lam:
            missing.append(d)
        elif c > lam:
            excess.append(d)
    if missing:
        rep.violations.append(f"differences covered fewer than {lam} times: {missing}")
    if excess:
        rep.violations.append(f"differences covered more than {lam} times: {excess}")
    return rep


def validate_points(blocks: Iterable, v: int, lam: int, kind: str) -> ValidationReport:
    """Point-wise check of an explicit (not necessarily cyclic) block list on 0..v-1."""
    rep = ValidationReport()
    counts: Counter = Counter()
    for raw in blocks:
        b = raw if isinstance(raw, BaseBlock) else BaseBlock(tuple(raw), kind)
        if any(not 0 <= x < v for x in b.points):
            rep.violations.append(f"block {b.points} has a point outside 0..{v - 1}")
        pr = b.ordered_pairs()
        if kind == "CTS":
            pr = [(x, y) for x, y in pr if x < y]
        counts.update(pr)
    for x in range(v):
        for y in range(v):
            if x == y or (kind == "CTS" and x > y):
                continue
            c = counts.get((x, y), 0)
            if c != lam:
                rep.violations.append(f"pair ({x},{y}) covered {c} times")
    return rep


def extract_fine_structure(design: Design) -> FineStructure:
    mult = Counter(b.canonical(design.v) for b in design.blocks)
    hist = Counter(mult.values())
    top = max([design.lam] + list(hist))
    return FineStructure(tuple(hist.get(i, 0) for i in range(1, top + 1)))


def expand(design: Design, kind: str) -> Design:
    """{a,b,c} -> [a,b,c],[c,b,a] (DTS) or <a,b,c>,<a,c,b> (MTS)."""
    if design.kind != "CTS":
        raise ValueError("expand takes a CTS design")
    out = []
    for b in design.blocks:
        a, bb, c = b.points
        if kind == "DTS":
            out += [BaseBlock((a, bb, c), "DTS"), BaseBlock((c, bb, a), "DTS")]
        elif kind == "MTS":
            out += [BaseBlock((a, bb, c), "MTS"), BaseBlock((a, c, bb), "MTS")]
        else:
            raise ValueError("kind must be DTS or MTS")
    return Design(design.v, design.lam, kind, out)


# ------------------------------------------------------------- Heffter blocks

def _sequence_pairs(s) -> tuple[int, dict]:
    """Order and pair set of a Skolem or hooked Skolem sequence."""
    s = as_seq(s)
    length = len(s)
    n = length // 2
    spec = SequenceSpec(Family.SKOLEM, n) if length % 2 == 0 else SequenceSpec(Family.HOOKED_SKOLEM, n)
    if n < 1 or not validate(s, spec).valid:
        raise InvalidSequence(f"{s} is neither a Skolem nor a hooked Skolem sequence")
    return n, pairs(s)


def offset_block(n: int, k: int, a: int, b: int) -> BaseBlock:
    return BaseBlock((0, a + n, b + n))


def mixed_block(n: int, k: int, a: int, b: int) -> BaseBlock:
    return BaseBlock((0, k, b + n))


def hybrid_blocks(s, offset_values: Iterable[int], n: Optional[int] = None, pr: Optional[dict] = None) -> list:
    """Offset form for the listed values, mixed form for the rest."""
    if pr is None:
        n, pr = _sequence_pairs(s)
    use = set(offset_values)
    return [(offset_block if k in use else mixed_block)(n, k, a, b) for k, (a, b) in pr.items()]


def heffter_blocks(s, form: str = "offset") -> list[BaseBlock]:
    n, pr = _sequence_pairs(s)
    if form == "offset":
        return hybrid_blocks(s, pr, n, pr)
    if form == "mixed":
        return hybrid_blocks(s, (), n, pr)
    raise ValueError("form must be 'offset' or 'mixed'")


def base_sequence(n: int, seed: int = 6) -> SlotSequence:
    """Some Skolem sequence of order n, or hooked Skolem when n = 2,3 (mod 4)."""
    fam = Family.SKOLEM if n % 4 in (0, 1) else Family.HOOKED_SKOLEM
    return hillclimb_shape(Shape.of(SequenceSpec(fam, n)), budget=SearchBudget(rng_seed=seed))


def cts_pair(n: int, k: int, s=None) -> tuple[Design, Design]:
    """Two CTS(6n+1) sharing exactly k base blocks: hybrid (offset for values 1..k) against all-offset."""
    if not 0 <= k <= n:
        raise OutOfRange(f"k={k} outside 0..{n}")
    s = base_sequence(n) if s is None else as_seq(s)
    n2, pr = _sequence_pairs(s)
    if n2 != n:
        raise InvalidSequence(f"sequence has order {n2}, expected {n}")
    v = 6 * n + 1
    first = hybrid_blocks(s, range(1, k + 1), n, pr)
    second = hybrid_blocks(s, pr, n, pr)
    return Design(v, 1, "CTS", first), Design(v, 1, "CTS", second)


# ------------------------------------------------------------- v = 6n+3

def long_orbit_spec(n: int) -> SequenceSpec:
    """Sequence whose pairs give the long-orbit blocks of a CTS(6n+3).

    Positions shifted by n must cover n+1..3n+2 minus 2n+1 (taken by the short
    orbit) and minus one of 3n+1, 3n+2 (they are the same difference mod 6n+3).
    """
    if n < 2:
        raise OutOfRange("no cyclic STS(9); need n >= 2")
    if n % 4 in (0, 3):
        return SequenceSpec(Family.EXTENDED_SKOLEM, n, k=n + 1)
    return SequenceSpec(Family.ROSA, n, p=n + 1, q=2 * n + 1)


def short_block(n: int) -> BaseBlock:
    return BaseBlock((0, 2 * n + 1, 4 * n + 2))


def cts3_pair(n: int, k: int, seed: int = 6) -> tuple[Design, Design]:
    """Two CTS(6n+3) sharing exactly k base blocks, 1 <= k <= n+1 (the short orbit is always shared)."""
    if not 1 <= k <= n + 1:
        raise OutOfRange(f"k={k} outside 1..{n + 1}")
    spec = long_orbit_spec(n)
    s = hillclimb_shape(Shape.of(spec), budget=SearchBudget(rng_seed=seed))
    pr = pairs(s)
    v = 6 * n + 3
    first = [short_block(n)] + hybrid_blocks(None, range(1, k), n, pr)
    second = [short_block(n)] + hybrid_blocks(None, pr, n, pr)
    return Design(v, 1, "CTS", first), Design(v, 1, "CTS", second)


# ------------------------------------------------------------- fine structures

def _n_of(v: int, lam: int) -> int:
    if lam == 2:
        if v % 6 not in (1, 3) or v in (3, 9):
            raise OutsideRegion(f"no cyclic two-fold construction here for v={v}")
    elif lam in (3, 4):
        if v % 24 not in (1, 7):
            raise OutsideRegion(f"lambda={lam} needs v = 1, 7 (mod 24)")
    else:
        raise OutsideRegion(f"lambda={lam} not supported")
    return (v - 1) // 6


def _skolem_spectrum(n: int) -> set:
    from .spectrum import necessary_spectrum
    return necessary_spectrum(n)


def _skolem_pair(n: int, p: int):
    from .spectrum import realize
    r = realize(n, p)
    return r.first, r.second


def fine_cts(v: int, lam: int, target) -> Design:
    """A CTS(v, lam) whose fine structure is target (a FineStructure or its full c-vector)."""
    c = tuple(target.c if isinstance(target, FineStructure) else target)
    n = _n_of(v, lam)
    if len(c) != lam or any(x < 0 for x in c):
        raise OutsideRegion(f"target {c} is not a length-{lam} nonnegative vector")
    if lam == 2:
        design = _fine2(v, n, c)
    elif lam == 3:
        design = _fine3(v, n, c)
    else:
        design = _fine4(v, n, c)
    rep = validate_coverage(design)
    got = extract_fine_structure(design).c[:lam]
    if not rep.valid or got != c:
        raise AssertionError(f"fine_cts({v},{lam},{c}) built {got}: {rep}")
    return design


def _fine2(v: int, n: int, c: tuple) -> Design:
    c1, c2 = c
    if v % 6 == 1:
        if not (0 <= c2 <= n and c1 == 2 * n - 2 * c2):
            raise OutsideRegion(f"(c1,c2)={c} is not (2n-2i, i) with 0 <= i <= {n}")
        a, b = cts_pair(n, c2)
    else:
        if not (1 <= c2 <= n + 1 and c1 == 2 * (n + 1) - 2 * c2):
            raise OutsideRegion(f"(c1,c2)={c} is not (2n+2-2i, i) with 1 <= i <= {n + 1}")
        a, b = cts3_pair(n, c2)
    return Design(v, 2, "CTS", a.blocks + b.blocks)


def _fine3(v: int, n: int, c: tuple) -> Design:
    c1, t, s = c
    if not (0 <= s <= n and 0 <= t <= n - s and c1 == 3 * n - 2 * t - 3 * s):
        raise OutsideRegion(f"(t,s)=({t},{s}) outside 0 <= s <= n, 0 <= t <= n-s")
    if t == n - s:
        # one sequence: offset, hybrid (offset on s values), offset
        s1 = s2 = base_sequence(n)
        common, extra = list(range(1, n + 1)), []
        keep = set(range(1, s + 1))
    elif s in _skolem_spectrum(n):
        s1, s2 = _skolem_pair(n, s)
        p1, p2 = pairs(s1), pairs(s2)
        common = [k for k in p1 if p1[k] == p2[k]]
        others = [k for k in p1 if p1[k] != p2[k]]
        keep = set(common) | set(others[:t])
    else:
        raise RequiresExceptionalIntersection(
            f"(t,s)=({t},{s}) needs two S_{n} with {s} common pairs, which do not exist")
    blocks = heffter_blocks(s1) + hybrid_blocks(s1, keep) + heffter_blocks(s2)
    return Design(v, 3, "CTS", blocks)


def _fine4(v: int, n: int, c: tuple) -> Design:
    c1, t, s, u = c
    if not (0 <= u <= n and 0 <= s <= n - u and 0 <= t <= 2 * n - 2 * u - 2 * s
            and c1 == 4 * n - 4 * u - 3 * s - 2 * t):
        raise OutsideRegion(f"(t,s,u)=({t},{s},{u}) outside the admissible region")
    if t == 2 * n - 2 * u - 2 * s:
        # one sequence, four hybrid systems; value k is in offset form in the first x_k of them
        s1 = base_sequence(n)
        x = {}
        for k in range(1, n + 1):
            x[k] = 4 if k <= u else 3 if k <= u + s else 2
        systems = [hybrid_blocks(s1, [k for k in x if x[k] > r]) for r in range(4)]
        return Design(v, 4, "CTS", [b for sys in systems for b in sys])
    p = s + u
    if p not in _skolem_spectrum(n):
        raise RequiresExceptionalIntersection(
            f"(t,s,u)=({t},{s},{u}) needs two S_{n} with {p} common pairs, which do not exist")
    s1, s2 = _skolem_pair(n, p)
    p1, p2 = pairs(s1), pairs(s2)
    common = [k for k in p1 if p1[k] == p2[k]]
    others = [k for k in p1 if p1[k] != p2[k]]
    # common values: u of them offset in all four systems, s of them offset in three
    full, three = set(common[:u]), set(common[u:u + s])
    # other values: offset in the first system of each side, and also in the second one
    # for side1 (S) / side2 (S'), which makes that offset block a repeated pair
    side1 = set(others[:min(t, len(others))])
    side2 = set(others[:max(0, t - len(others))])
    sys1 = hybrid_blocks(s1, full | three | set(others))
    sys2 = hybrid_blocks(s1, full | three | side1)
    sys3 = hybrid_blocks(s2, full | three | set(others))
    sys4 = hybrid_blocks(s2, full | side2)
    return Design(v, 4, "CTS", sys1 + sys2 + sys3 + sys4)


def reachable_fine(v: int, lam: int) -> list[tuple]:
    """Full c-vectors that fine_cts can build at this v (targets in the region minus the exceptions)."""
    n = _n_of(v, lam)
    sp = None if lam == 2 else _skolem_spectrum(n)
    out = []
    if lam == 2:
        if v % 6 == 1:
            return [(2 * n - 2 * i, i) for i in range(n + 1)]
        return [(2 * n + 2 - 2 * i, i) for i in range(1, n + 2)]
    if lam == 3:
        for s in range(n + 1):
            for t in range(n - s + 1):
                if t == n - s or s in sp:
                    out.append((3 * n - 2 * t - 3 * s, t, s))
        return out
    for u in range(n + 1):
        for s in range(n - u + 1):
            for t in range(2 * n - 2 * u - 2 * s + 1):
                if t == 2 * n - 2 * u - 2 * s or s + u in sp:
                    out.append((4 * n - 4 * u - 3 * s - 2 * t, t, s, u))
    return out
