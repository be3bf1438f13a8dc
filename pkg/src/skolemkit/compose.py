"""Composition of sequences: adjoining, the shell A_t^n, and declarative plans.

A plan is an ordered list of segments that tile the final slot vector
(lit, holes, shell) plus placements that write into holes left by those
segments (put, fill). Plans serialize one segment per line:

    holes 1
    shell 16 7
    lit 5,6,7,3,4,5,3,6,4,7
    put 9 @ 1,10
    fill 2,2,1,1

Puts are resolved first, then fill writes its values into the remaining
open holes from left to right.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .seqcore import SequenceSpec, SlotSequence, ValidationReport, as_seq, validate


class InfeasibleShell(ValueError):
    pass


class OverlapError(ValueError):
    pass


class ValidationFailed(ValueError):
    def __init__(self, report: ValidationReport, seq: Optional[SlotSequence] = None):
        super().__init__(str(report))
        self.report = report
        self.seq = seq


def shell_layout(n: int, t: int) -> tuple[int, int]:
    """(hole span, total length) of A_t^n, or InfeasibleShell."""
    if t < 1 or n < t:
        raise InfeasibleShell(f"shell needs 1 <= t <= n, got n={n} t={t}")
    if t % 2 == 0:
        # the second copies of n and n-t+1 would both land on position n+1
        raise InfeasibleShell(f"shell order t={t} must be odd")
    h = n - t - t // 2
    if h < 0:
        raise InfeasibleShell(f"shell({n},{t}) has negative hole span {h}")
    return h, 2 * t + h


def shell(n: int, t: int) -> SlotSequence:
    """A_t^n: n, n-2, ..., n-t+1 then n-1, n-3, ..., n-t+2, a run of holes, then the partners."""
    _, length = shell_layout(n, t)
    slots = [0] * length
    first = list(range(n, n - t, -2)) + list(range(n - 1, n - t, -2))
    for i, v in enumerate(first):
        a = i  # 0-based
        if slots[a] or a + v >= length or slots[a + v]:
            raise InfeasibleShell(f"shell({n},{t}): value {v} does not fit")
        slots[a] = slots[a + v] = v
    return SlotSequence(tuple(slots))


def adjoin(front, back) -> SlotSequence:
    front, back = as_seq(front), as_seq(back)
    if front.holes() or back.holes():
        raise OverlapError("adjoin expects hole-free inputs")
    both = front.values() & back.values()
    if both:
        raise OverlapError(f"values {sorted(both)} appear on both sides")
    return SlotSequence(front.slots + back.slots)


# ------------------------------------------------------------- plans

@dataclass(frozen=True)
class Lit:
    seq: SlotSequence

    def line(self) -> str:
        return f"lit {self.seq}"


@dataclass(frozen=True)
class Holes:
    count: int

    def line(self) -> str:
        return f"holes {self.count}"


@dataclass(frozen=True)
class ShellSeg:
    n: int
    t: int

    def line(self) -> str:
        return f"shell {self.n} {self.t}"


@dataclass(frozen=True)
class Put:
    value: int
    a: int
    b: int

    def line(self) -> str:
        return f"put {self.value} @ {self.a},{self.b}"


@dataclass(frozen=True)
class Fill:
    values: tuple

    def line(self) -> str:
        return "fill " + ",".join(map(str, self.values))


Segment = Union[Lit, Holes, ShellSeg, Put, Fill]


@dataclass
class CompositionPlan:
    segments: list = field(default_factory=list)

    def lit(self, seq) -> "CompositionPlan":
        self.segments.append(Lit(as_seq(seq)))
        return self

    def holes(self, count: int) -> "CompositionPlan":
        self.segments.append(Holes(count))
        return self

    def shell(self, n: int, t: int) -> "CompositionPlan":
        self.segments.append(ShellSeg(n, t))
        return self

    def put(self, value: int, a: int, b: int) -> "CompositionPlan":
        self.segments.append(Put(value, a, b))
        return self

    def fill(self, values) -> "CompositionPlan":
        self.segments.append(Fill(tuple(as_seq(values).slots)))
        return self

    def to_text(self) -> str:
        return "\n".join(s.line() for s in self.segments)

    @classmethod
    def from_text(cls, text: str) -> "CompositionPlan":
        plan = cls()
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            kind, _, rest = line.partition(" ")
            rest = rest.strip()
            if kind == "lit":
                plan.lit(SlotSequence.parse(rest))
            elif kind == "holes":
                plan.holes(int(rest))
            elif kind == "shell":
                n, t = rest.split()
                plan.shell(int(n), int(t))
            elif kind == "put":
                v, _, where = rest.partition("@")
                a, b = where.split(",")
                plan.put(int(v), int(a), int(b))
            elif kind == "fill":
                plan.fill(rest)
            else:
                raise ValueError(f"unknown plan segment {kind!r}")
        return plan

    def layout(self) -> SlotSequence:
        """Slot vector after puts and fill, without validation against any target."""
        slots: list[int] = []
        owner: dict[int, int] = {}  # value -> segment index, to catch a value used twice
        puts, fills = [], []
        for idx, seg in enumerate(self.segments):
            if isinstance(seg, Put):
                puts.append((idx, seg))
                continue
            if isinstance(seg, Fill):
                fills.append((idx, seg))
                continue
            if isinstance(seg, Lit):
                part = seg.seq.slots
            elif isinstance(seg, Holes):
                if seg.count < 0:
                    raise ValueError("negative hole count")
                part = (0,) * seg.count
            else:
                part = shell(seg.n, seg.t).slots
            _claim(owner, set(x for x in part if x), idx)
            slots.extend(part)
        for idx, seg in puts:
            _claim(owner, {seg.value}, idx)
            if seg.b - seg.a != seg.value:
                raise OverlapError(f"put {seg.value} @ {seg.a},{seg.b}: positions are not {seg.value} apart")
            for pos in (seg.a, seg.b):
                if not 1 <= pos <= len(slots):
                    raise OverlapError(f"put {seg.value}: position {pos} outside 1..{len(slots)}")
                if slots[pos - 1]:
                    raise OverlapError(f"put {seg.value}: position {pos} already holds {slots[pos - 1]}")
                slots[pos - 1] = seg.value
        for idx, seg in fills:
            _claim(owner, set(x for x in seg.values if x), idx)
            open_ = [i for i, x in enumerate(slots) if x == 0]
            if len(seg.values) > len(open_):
                raise OverlapError(f"fill of {len(seg.values)} values but only {len(open_)} open holes")
            # a 0 in a fill keeps that hole open
            for i, x in zip(open_, seg.values):
                slots[i] = x
        return SlotSequence(tuple(slots))


def _claim(owner: dict, values: set, idx: int) -> None:
    for v in values:
        if v in owner and owner[v] != idx:
            raise OverlapError(f"value {v} supplied by segments {owner[v] + 1} and {idx + 1}")
        owner[v] = idx


def assemble(plan: CompositionPlan, target: SequenceSpec) -> SlotSequence:
    seq = plan.layout()
    rep = validate(seq, target)
    if not rep.valid:
        raise ValidationFailed(rep, seq)
    return seq
