"""Compressed sequence notation.

A sequence is written as the values in the order their first copies appear.
Decoding puts each value v at the smallest free position p and at p + v.
A 0 token turns the smallest free position into a hole. Values 10..35 are
written a..z and 36..61 are A..Z; an underscore prefix marks an underlined
token, i.e. a pair shared with a companion sequence.

Values above 61 have no letter. The decoder also accepts plain decimal
tokens such as "64" so that tables running past the alphabet still load;
the encoder refuses them.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .seqcore import (SequenceSpec, SlotSequence, ValidationReport, as_seq, common_pairs,
                      pairs, validate)

ALPHABET = "0123456789" + string.ascii_lowercase + string.ascii_uppercase  # index == value
MAX_VALUE = len(ALPHABET) - 1  # 61


class NotationError(ValueError):
    pass


class PlacementConflict(NotationError):
    pass


class Underflow(NotationError):
    pass


class ValueTooLarge(NotationError):
    pass


@dataclass(frozen=True)
class Token:
    value: int
    underlined: bool = False

    def __str__(self) -> str:
        return ("_" if self.underlined else "") + symbol(self.value)


TokenStream = tuple  # of Token


def symbol(v: int) -> str:
    if not 0 <= v <= MAX_VALUE:
        raise ValueTooLarge(f"value {v} has no single-character symbol")
    return ALPHABET[v]


def value_of(sym: str) -> int:
    if len(sym) > 1 and sym.isdigit():
        return int(sym)
    if len(sym) != 1 or sym not in ALPHABET:
        raise NotationError(f"bad token {sym!r}")
    return ALPHABET.index(sym)


def parse_tokens(text: str) -> TokenStream:
    text = text.strip()
    if not text:
        return ()
    out = []
    for raw in text.split(","):
        raw = raw.strip()
        under = raw.startswith("_")
        out.append(Token(value_of(raw.lstrip("_")), under))
    return tuple(out)


def format_tokens(tokens: Iterable[Token]) -> str:
    return ",".join(str(t) for t in tokens)


def _as_tokens(tokens) -> TokenStream:
    if isinstance(tokens, str):
        return parse_tokens(tokens)
    return tuple(t if isinstance(t, Token) else Token(int(t)) for t in tokens)


def _place(slots: list, tokens: TokenStream, hole_mark: list) -> None:
    length = len(slots)
    free = 0  # index hint: every position before it is taken
    for tok in tokens:
        while free < length and (slots[free] or hole_mark[free]):
            free += 1
        if free >= length:
            raise PlacementConflict(f"no free position left for token {tok}")
        v = tok.value
        if v == 0:
            hole_mark[free] = True
            continue
        second = free + v
        if second >= length:
            raise PlacementConflict(f"{symbol_or_int(v)} at {free + 1}: partner {second + 1} beyond length {length}")
        if slots[second] or hole_mark[second]:
            raise PlacementConflict(f"{symbol_or_int(v)} at {free + 1}: partner position {second + 1} occupied")
        slots[free] = slots[second] = v


def symbol_or_int(v: int) -> str:
    return ALPHABET[v] if v <= MAX_VALUE else str(v)


def _finish(slots: list, hole_mark: list) -> SlotSequence:
    left = [i + 1 for i, x in enumerate(slots) if not x and not hole_mark[i]]
    if left:
        raise Underflow(f"positions {left} were never filled")
    return SlotSequence(tuple(slots))


def decode(tokens, target_len: int, holes: Iterable[int] = ()) -> SlotSequence:
    """Greedy decode. holes are positions declared empty before placement starts."""
    tokens = _as_tokens(tokens)
    seen = set()
    for t in tokens:
        if t.value and t.value in seen:
            raise PlacementConflict(f"value {symbol_or_int(t.value)} listed twice")
        seen.add(t.value)
    slots = [0] * target_len
    hole_mark = [False] * target_len
    for h in holes:
        hole_mark[h - 1] = True
    _place(slots, tokens, hole_mark)
    return _finish(slots, hole_mark)


def decode_companion(first, common: Mapping[int, tuple[int, int]], tokens,
                     holes: Optional[Iterable[int]] = None) -> SlotSequence:
    """Decode a companion: the common pairs keep their positions, the rest goes greedy.

    When holes is None the companion inherits the holes of first, unless its
    own tokens contain an explicit 0.
    """
    first = as_seq(first)
    tokens = _as_tokens(tokens)
    fp = pairs(first)
    for v, ab in common.items():
        if fp.get(v) != tuple(ab):
            raise NotationError(f"common pair {v}:{ab} is not a pair of the first sequence")
    clash = [t.value for t in tokens if t.value in common]
    if clash:
        raise PlacementConflict(f"companion repeats common values {clash}")
    if holes is None:
        holes = () if any(t.value == 0 for t in tokens) else first.holes()
    slots = [0] * len(first)
    hole_mark = [False] * len(first)
    for h in holes:
        hole_mark[h - 1] = True
    for v, (a, b) in common.items():
        slots[a - 1] = slots[b - 1] = v
    seen = set(common)
    for t in tokens:
        if t.value and t.value in seen:
            raise PlacementConflict(f"value {symbol_or_int(t.value)} listed twice")
        seen.add(t.value)
    _place(slots, tokens, hole_mark)
    return _finish(slots, hole_mark)


def encode(seq, underline: Iterable[int] = ()) -> TokenStream:
    """Inverse of decode: values in order of first appearance, 0 for each hole."""
    seq = as_seq(seq)
    under = set(underline)
    seen, out = set(), []
    for x in seq.slots:
        if x == 0:
            out.append(Token(0))
        elif x not in seen:
            if x > MAX_VALUE:
                raise ValueTooLarge(f"value {x} exceeds {MAX_VALUE}")
            seen.add(x)
            out.append(Token(x, x in under))
    return tuple(out)


def encode_companion(first, second) -> tuple[TokenStream, TokenStream]:
    """Underlined first stream plus the companion stream of non-shared values."""
    _, shared = common_pairs(first, second)
    common = {v for v, _, _ in shared}
    second_tokens = tuple(t for t in encode(second) if t.value not in common)
    return encode(first, common), second_tokens


# ---------------------------------------------------------------- table records

@dataclass(frozen=True)
class Record:
    n: int
    family: str
    p: int
    first: str
    second: str
    holes: tuple = ()
    source: str = ""
    form: str = "tokens"  # or "slots" for records printed as full slot vectors

    @property
    def spec(self) -> SequenceSpec:
        return SequenceSpec.parse(self.family)

    def line(self) -> str:
        parts = [f"n={self.n}", f"family={self.family}", f"p={self.p}",
                 f"first={self.first}", f"second={self.second}"]
        if self.holes:
            parts.append("holes=" + ",".join(map(str, self.holes)))
        if self.form != "tokens":
            parts.append(f"form={self.form}")
        if self.source:
            parts.append(f"source={self.source}")
        return ";".join(parts)


def parse_record(line: str) -> Record:
    fields = {}
    for part in line.strip().split(";"):
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    holes = tuple(int(x) for x in fields["holes"].split(",")) if fields.get("holes") else ()
    return Record(int(fields["n"]), fields.get("family", f"skolem:{fields['n']}"), int(fields["p"]),
                  fields["first"], fields.get("second", ""), holes, fields.get("source", ""),
                  fields.get("form", "tokens"))


@dataclass
class DecodedRecord:
    record: Record
    first: SlotSequence
    second: SlotSequence
    common: int
    report1: ValidationReport
    report2: ValidationReport

    @property
    def ok(self) -> bool:
        return self.report1.valid and self.report2.valid and self.common == self.record.p


def decode_record(rec: Record) -> DecodedRecord:
    """Decode both strings of a record and check them against its family and stated count."""
    spec = rec.spec
    if rec.form == "slots":
        first, second = SlotSequence.parse(rec.first), SlotSequence.parse(rec.second)
        return DecodedRecord(rec, first, second, common_pairs(first, second)[0],
                             validate(first, spec), validate(second, spec))
    length = spec.length
    toks = parse_tokens(rec.first)
    first = decode([Token(t.value) for t in toks], length, rec.holes)
    fp = pairs(first)
    common = {t.value: fp[t.value] for t in toks if t.underlined}
    second = decode_companion(first, common, rec.second)
    return DecodedRecord(rec, first, second, common_pairs(first, second)[0],
                         validate(first, spec), validate(second, spec))


def load_records(path) -> list[Record]:
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(parse_record(line))
    return out


DATA_DIR = Path(__file__).parent / "data"


def table_records() -> list[Record]:
    return load_records(DATA_DIR / "records.txt")


def quarantined_records() -> list[tuple[Record, str]]:
    """Quarantined lines carry the failure reason after ' # '."""
    out = []
    for line in (DATA_DIR / "quarantine.txt").read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            body, _, reason = line.partition(" # ")
            out.append((parse_record(body), reason.strip()))
    return out
