"""Slot sequences, family specs, validation and pair intersection.

Positions are 1-indexed in every public function. A slot value of 0 is a
hole. A sequence is valid for a family when its length, hole positions and
difference set all match what the family spec compiles to.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence


class MalformedSequence(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


PairSet = dict  # value k -> (a_k, b_k), b_k - a_k = k


@dataclass(frozen=True)
class SlotSequence:
    slots: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(int(x) for x in self.slots))
        if any(x < 0 for x in self.slots):
            raise MalformedSequence("negative slot value")

    @classmethod
    def parse(cls, text: str) -> "SlotSequence":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        return cls(tuple(int(tok) for tok in text.replace(" ", "").split(",")))

    @classmethod
    def from_pairs(cls, pairs: Mapping[int, tuple[int, int]], length: int) -> "SlotSequence":
        slots = [0] * length
        for k, (a, b) in pairs.items():
            for pos in (a, b):
                if not 1 <= pos <= length:
                    raise MalformedSequence(f"position {pos} of value {k} outside 1..{length}")
                if slots[pos - 1]:
                    raise MalformedSequence(f"position {pos} used twice")
                slots[pos - 1] = k
        return cls(tuple(slots))

    def __len__(self) -> int:
        return len(self.slots)

    def __iter__(self):
        return iter(self.slots)

    def at(self, pos: int) -> int:
        return self.slots[pos - 1]

    def holes(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, x in enumerate(self.slots) if x == 0)

    def values(self) -> frozenset[int]:
        return frozenset(x for x in self.slots if x)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.slots)


def as_seq(s) -> SlotSequence:
    if isinstance(s, SlotSequence):
        return s
    if isinstance(s, str):
        return SlotSequence.parse(s)
    return SlotSequence(tuple(s))


class Family(str, Enum):
    SKOLEM = "skolem"
    HOOKED_SKOLEM = "hooked"
    NEAR_SKOLEM = "near"
    EXTENDED_SKOLEM = "extended"
    ROSA = "rosa"
    LANGFORD = "langford"
    HOOKED_LANGFORD = "hlangford"
    EXTENDED_LANGFORD = "xlangford"


# extra integer parameters each family takes after the order, in text order
_PARAMS = {
    Family.SKOLEM: (),
    Family.HOOKED_SKOLEM: (),
    Family.NEAR_SKOLEM: ("m",),
    Family.EXTENDED_SKOLEM: ("k",),
    Family.ROSA: ("p", "q"),
    Family.LANGFORD: ("d",),
    Family.HOOKED_LANGFORD: ("d",),
    Family.EXTENDED_LANGFORD: ("d", "k"),
}


@dataclass(frozen=True)
class SequenceSpec:
    family: Family
    n: int
    m: Optional[int] = None
    k: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    d: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1:
            raise ValueError("order must be >= 1")
        for name in _PARAMS[self.family]:
            if getattr(self, name) is None:
                raise ValueError(f"{self.family.value} needs parameter {name}")
        if self.family is Family.NEAR_SKOLEM and not 1 <= self.m <= self.n:
            raise ValueError("defect m must satisfy 1 <= m <= n")
        if self.d is not None and self.d < 1:
            raise ValueError("defect d must be >= 1")
        if self.k is not None and not 1 <= self.k <= 2 * self.n + 1:
            raise ValueError("hole k outside 1..2n+1")
        if self.family is Family.ROSA:
            if not (1 <= self.p <= 2 * self.n + 2 and 1 <= self.q <= 2 * self.n + 2) or self.p == self.q:
                raise ValueError("Rosa holes must be distinct positions in 1..2n+2")

    @classmethod
    def parse(cls, text: str) -> "SequenceSpec":
        """Text form 'family:n[:param...]', e.g. 'skolem:4', 'rosa:4:5:6', 'langford:3:2' (n=3, d=2)."""
        parts = text.strip().lower().split(":")
        fam = Family(parts[0])
        names = _PARAMS[fam]
        if len(parts) != 2 + len(names):
            raise ValueError(f"{fam.value} expects {fam.value}:n" + "".join(":" + x for x in names))
        kw = {name: int(v) for name, v in zip(names, parts[2:])}
        return cls(fam, int(parts[1]), **kw)

    def __str__(self) -> str:
        return ":".join([self.family.value, str(self.n)] + [str(getattr(self, x)) for x in _PARAMS[self.family]])

    @property
    def length(self) -> int:
        return self.compile()[0]

    def compile(self) -> tuple[int, frozenset[int], frozenset[int]]:
        """(length, hole positions, difference set)."""
        n, f = self.n, self.family
        if f is Family.SKOLEM:
            return 2 * n, frozenset(), frozenset(range(1, n + 1))
        if f is Family.HOOKED_SKOLEM:
            return 2 * n + 1, frozenset({2 * n}), frozenset(range(1, n + 1))
        if f is Family.NEAR_SKOLEM:
            return 2 * n - 2, frozenset(), frozenset(range(1, n + 1)) - {self.m}
        if f is Family.EXTENDED_SKOLEM:
            return 2 * n + 1, frozenset({self.k}), frozenset(range(1, n + 1))
        if f is Family.ROSA:
            return 2 * n + 2, frozenset({self.p, self.q}), frozenset(range(1, n + 1))
        diffs = frozenset(range(self.d, self.d + n))
        if f is Family.LANGFORD:
            return 2 * n, frozenset(), diffs
        if f is Family.HOOKED_LANGFORD:
            return 2 * n + 1, frozenset({2 * n}), diffs
        return 2 * n + 1, frozenset({self.k}), diffs


def skolem(n: int) -> SequenceSpec:
    return SequenceSpec(Family.SKOLEM, n)


def hooked(n: int) -> SequenceSpec:
    return SequenceSpec(Family.HOOKED_SKOLEM, n)


def langford(d: int, n: int) -> SequenceSpec:
    return SequenceSpec(Family.LANGFORD, n, d=d)


def hooked_langford(d: int, n: int) -> SequenceSpec:
    return SequenceSpec(Family.HOOKED_LANGFORD, n, d=d)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        return "valid" if self.valid else "; ".join(self.violations)


def _positions(slots: Sequence[int]) -> dict[int, list[int]]:
    pos: dict[int, list[int]] = {}
    for i, x in enumerate(slots, 1):
        if x:
            pos.setdefault(x, []).append(i)
    return pos


def validate_shape(seq, length: int, holes: Iterable[int], diffs: Iterable[int]) -> ValidationReport:
    """Check seq against an explicit (length, holes, difference set) shape; all violations are listed."""
    seq = as_seq(seq)
    holes, diffs = set(holes), set(diffs)
    rep = ValidationReport()
    if len(seq) != length:
        rep.violations.append(f"length {len(seq)} != {length}")
    actual_holes = set(seq.holes())
    for h in sorted(holes - actual_holes):
        rep.violations.append(f"position {h} should be a hole")
    for h in sorted(actual_holes - holes):
        rep.violations.append(f"unexpected hole at {h}")
    pos = _positions(seq.slots)
    for v in sorted(set(pos) - diffs):
        rep.violations.append(f"value {v} not in the difference set")
    for v in sorted(diffs):
        ps = pos.get(v, [])
        if len(ps) != 2:
            rep.violations.append(f"value {v} appears {len(ps)} times")
        elif ps[1] - ps[0] != v:
            rep.violations.append(f"value {v} at {ps[0]},{ps[1]}: distance {ps[1] - ps[0]}")
    return rep


def validate(seq, spec: SequenceSpec) -> ValidationReport:
    length, holes, diffs = spec.compile()
    return validate_shape(seq, length, holes, diffs)


def check_structure(seq) -> ValidationReport:
    """Family-free check: each positive value twice, copies at distance equal to the value."""
    rep = ValidationReport()
    for v, ps in sorted(_positions(as_seq(seq).slots).items()):
        if len(ps) != 2:
            rep.violations.append(f"value {v} appears {len(ps)} times")
        elif ps[1] - ps[0] != v:
            rep.violations.append(f"value {v} at {ps[0]},{ps[1]}: distance {ps[1] - ps[0]}")
    return rep


def pairs(seq) -> PairSet:
    out = {}
    for v, ps in _positions(as_seq(seq).slots).items():
        if len(ps) != 2:
            raise MalformedSequence(f"value {v} appears {len(ps)} times")
        out[v] = (ps[0], ps[1])
    return dict(sorted(out.items()))


def reverse(seq) -> SlotSequence:
    return SlotSequence(tuple(reversed(as_seq(seq).slots)))


def common_pairs(s1, s2) -> tuple[int, list[tuple[int, int, int]]]:
    """Values that sit on the same position pair in both sequences."""
    s1, s2 = as_seq(s1), as_seq(s2)
    if len(s1) != len(s2):
        raise LengthMismatch(f"lengths {len(s1)} and {len(s2)} differ")
    p2 = pairs(s2)
    shared = [(v, a, b) for v, (a, b) in pairs(s1).items() if p2.get(v) == (a, b)]
    return len(shared), shared


def count_common(s1, s2) -> int:
    return common_pairs(s1, s2)[0]


def exists(spec: SequenceSpec) -> Optional[bool]:
    """Existence by congruence conditions.

    Returns None only for extended Langford orders where the known sufficient
    condition is silent (parity holds but n < 2d-1 or 2d+2 <= n <= 8d-5).
    """
    n, f, r = spec.n, spec.family, spec.n % 4
    if f is Family.SKOLEM:
        return r in (0, 1)
    if f is Family.HOOKED_SKOLEM:
        return r in (2, 3)
    if f is Family.NEAR_SKOLEM:
        return (r in (0, 1) and spec.m % 2 == 1) or (r in (2, 3) and spec.m % 2 == 0)
    if f is Family.EXTENDED_SKOLEM:
        return (r in (0, 1) and spec.k % 2 == 1) or (r in (2, 3) and spec.k % 2 == 0)
    if f is Family.ROSA:
        p, q = sorted((spec.p, spec.q))
        if (n, p, q) in ((1, 2, 3), (4, 5, 6)):
            return False
        same = (p - q) % 2 == 0
        return (not same and r in (0, 1)) or (same and r in (2, 3))
    d = spec.d
    if f is Family.LANGFORD:
        # parity from summing positions: n = 0,1 (mod 4) for odd d, n = 0,3 for even d
        return n >= 2 * d - 1 and r in ((0, 1) if d % 2 else (0, 3))
    if f is Family.HOOKED_LANGFORD:
        return n * (n + 1 - 2 * d) + 2 >= 0 and r in ((2, 3) if d % 2 else (1, 2))
    k = spec.k
    parity_ok = (r, k % 2) in ((0, 1), (1, d % 2), (2, 0), (3, (d + 1) % 2))
    if not parity_ok:
        return False
    if n >= 2 * d - 1 and not 2 * d + 2 <= n <= 8 * d - 5:
        return True
    return None
