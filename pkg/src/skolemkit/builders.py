"""Direct Langford constructions and the small transforms used around them.

The Bermond-style tables live in data/langford_recipes.txt as affine row
formulas; a single evaluator turns any table into a pair set, so a
transcription slip shows up as a collision or a failed validation instead of
a silently wrong sequence.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .search import SearchBudget, Shape, Unresolved, first_solution, hillclimb_shape
from .seqcore import (SlotSequence, as_seq, common_pairs, exists, hooked_langford, langford, pairs,
                      reverse, validate)


class RecipeOutOfRange(ValueError):
    pass


class ConstructionBug(RuntimeError):
    pass


class DifferenceCollision(ValueError):
    pass


class HookMissing(ValueError):
    pass


class TwoAlreadyPresent(ValueError):
    pass


class Source(str, Enum):
    TABLE0A = "Table0a"
    MODIFIED_TABLE0A = "ModifiedTable0a"
    BERMOND2_EVEN = "BermondThm2Even"
    BERMOND2_ODD = "BermondThm2Odd"
    BERMOND3 = "BermondThm3"
    SEARCH = "SearchFallback"


@dataclass(frozen=True)
class LangfordRecipe:
    source: Source
    d: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "source", Source(self.source))


# ------------------------------------------------------------- affine tables

_TERM = re.compile(r"([+-]?)(\d*)([tdej]?)(?:/(\d+))?$")


def affine(expr: str, env: dict) -> Fraction:
    """Evaluate a sum of terms like '4t', '-d/2', '+3', '-j'."""
    total = Fraction(0)
    for term in re.findall(r"[+-]?[^+-]+", expr.replace(" ", "")):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad term {term!r} in {expr!r}")
        sign, coef, var, den = m.groups()
        if not coef and not var:
            raise ValueError(f"bad term {term!r} in {expr!r}")
        val = Fraction(int(coef) if coef else 1)
        if var:
            val *= env[var]
        if den:
            val /= int(den)
        total += -val if sign == "-" else val
    return total


@dataclass(frozen=True)
class Row:
    recipe: str
    label: str
    a: str
    b: str
    diff: str
    jrange: Optional[tuple[str, str]]


@lru_cache(maxsize=None)
def recipe_rows() -> dict[str, tuple[Row, ...]]:
    rows: dict[str, list[Row]] = {}
    text = (Path(__file__).parent / "data" / "langford_recipes.txt").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, a, b, diff, jr = (x.strip() for x in line.split("|"))
        recipe, label = head.split()
        jrange = None if jr == "-" else tuple(x.strip() for x in jr.split(".."))
        rows.setdefault(recipe, []).append(Row(recipe, label, a, b, diff, jrange))
    return {k: tuple(v) for k, v in rows.items()}


def _int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ConstructionBug(f"{what} is not an integer: {x}")
    return int(x)


def evaluate_table(recipe: str, env: dict) -> dict[int, tuple[int, int]]:
    """Evaluate every row of a table into a pair set, checking each stated difference."""
    out: dict[int, tuple[int, int]] = {}
    used: set[int] = set()
    for row in recipe_rows()[recipe]:
        if row.jrange is None:
            js = [0]
        else:
            lo = _int(affine(row.jrange[0], env), "range start")
            hi = _int(affine(row.jrange[1], env), "range end")
            js = range(lo, hi + 1)
        for j in js:
            e = dict(env, j=j)
            a = _int(affine(row.a, e), f"{recipe} {row.label} a")
            b = _int(affine(row.b, e), f"{recipe} {row.label} b")
            k = _int(affine(row.diff, e), f"{recipe} {row.label} diff")
            if b - a != k:
                raise ConstructionBug(f"{recipe} {row.label} j={j}: b-a={b - a} but row states {k}")
            if k in out:
                raise ConstructionBug(f"{recipe} {row.label} j={j}: value {k} produced twice")
            if a in used or b in used or a < 1:
                raise ConstructionBug(f"{recipe} {row.label} j={j}: position collision at ({a},{b})")
            used.update((a, b))
            out[k] = (a, b)
    return out


# ------------------------------------------------------------- recipes

def table0a(d: int) -> SlotSequence:
    """L_d^{2d-1}: 2d..3d-2, d..2d-1, then d,2d,d+1,2d+1,...,2d-2,3d-2 and a final 2d-1."""
    if d < 2:
        raise RecipeOutOfRange("Table0a needs d >= 2")
    slots = list(range(2 * d, 3 * d - 1)) + list(range(d, 2 * d))
    for i in range(d - 1):
        slots += [d + i, 2 * d + i]
    slots.append(2 * d - 1)
    return SlotSequence(tuple(slots))


def modified_table0a(d: int) -> SlotSequence:
    """Move the final 2d-1 to the front: every other value shifts right by one."""
    s = table0a(d).slots
    return SlotSequence((s[-1],) + s[:-1])


def recipe_applies(recipe: LangfordRecipe) -> bool:
    try:
        _check_range(recipe)
        return True
    except RecipeOutOfRange:
        return False


def _check_range(recipe: LangfordRecipe) -> dict:
    d, m, src = recipe.d, recipe.n, recipe.source
    if src in (Source.TABLE0A, Source.MODIFIED_TABLE0A):
        if m != 2 * d - 1 or d < 2:
            raise RecipeOutOfRange(f"{src.value} needs n = 2d-1 and d >= 2")
        return {}
    if src is Source.BERMOND2_EVEN:
        if d % 2 or d < 2 or m % 4 != 3 or m < 2 * d - 1:
            raise RecipeOutOfRange("BermondThm2Even needs d even, n = 3 (mod 4), n >= 2d-1")
        return {"t": Fraction((m - 3) // 4), "d": Fraction(d)}
    if src is Source.BERMOND2_ODD:
        if d % 2 == 0 or d < 3 or m % 4 != 1 or m < 2 * d - 1:
            raise RecipeOutOfRange("BermondThm2Odd needs d odd >= 3, n = 1 (mod 4), n >= 2d-1")
        return {"t": Fraction((m - 1) // 4), "e": Fraction(d + 1), "d": Fraction(d)}
    if src is Source.BERMOND3:
        if m % 4 or m == 0:
            raise RecipeOutOfRange("BermondThm3 needs n = 0 (mod 4)")
        t = m // 4
        e = 2 * t - d
        if e < 0 or 2 * d < 3 * t + 1:
            raise RecipeOutOfRange("BermondThm3 needs d = 2t-e, e >= 0, 2d >= 3t+1")
        return {"t": Fraction(t), "e": Fraction(e), "d": Fraction(d)}
    if src is Source.SEARCH:
        return {}
    raise RecipeOutOfRange(str(src))


_TABLE = {Source.BERMOND2_EVEN: "bermond2_even", Source.BERMOND2_ODD: "bermond2_odd",
          Source.BERMOND3: "bermond3"}


def build_langford(recipe: LangfordRecipe) -> SlotSequence:
    env = _check_range(recipe)
    d, m = recipe.d, recipe.n
    if recipe.source is Source.TABLE0A:
        seq = table0a(d)
    elif recipe.source is Source.MODIFIED_TABLE0A:
        seq = modified_table0a(d)
    elif recipe.source is Source.SEARCH:
        seq = search_langford(d, m)
    else:
        prs = evaluate_table(_TABLE[recipe.source], env)
        try:
            seq = SlotSequence.from_pairs(prs, 2 * m)
        except ValueError as exc:
            raise ConstructionBug(str(exc)) from exc
    rep = validate(seq, langford(d, m))
    if not rep.valid:
        raise ConstructionBug(f"{recipe}: {rep}")
    return seq


def search_langford(d: int, m: int, hooked: bool = False, seed: int = 1) -> SlotSequence:
    spec = hooked_langford(d, m) if hooked else langford(d, m)
    if exists(spec) is False:
        raise RecipeOutOfRange(f"no {spec} exists")
    shape = Shape.of(spec)
    if shape.length <= 24:
        seq = first_solution(shape, max_nodes=None)
        if seq is None:
            raise Unresolved(f"{spec}: exhaustive search found nothing")
        return seq
    return hillclimb_shape(shape, budget=SearchBudget(rng_seed=seed))


def langford_recipes_for(d: int, m: int) -> list[LangfordRecipe]:
    """Applicable formula recipes in priority order (search fallback not included)."""
    out = []
    for src in (Source.TABLE0A, Source.BERMOND2_EVEN, Source.BERMOND2_ODD, Source.BERMOND3):
        r = LangfordRecipe(src, d, m)
        if recipe_applies(r):
            out.append(r)
    return out


def any_langford(d: int, m: int) -> tuple[SlotSequence, LangfordRecipe]:
    """Some L_d^m: first applicable formula, else search."""
    for r in langford_recipes_for(d, m):
        return build_langford(r), r
    r = LangfordRecipe(Source.SEARCH, d, m)
    return build_langford(r), r


# ------------------------------------------------------------- transforms

def append_ones(seq, side: str = "back") -> SlotSequence:
    seq = as_seq(seq)
    if 1 in seq.values():
        raise DifferenceCollision("1 already present")
    if side == "back":
        return SlotSequence(seq.slots + (1, 1))
    if side == "front":
        return SlotSequence((1, 1) + seq.slots)
    raise ValueError("side must be 'front' or 'back'")


def attach_202(hooked) -> SlotSequence:
    """Fill the hook at 2L with a 2 and add one slot holding its partner."""
    seq = as_seq(hooked)
    length = len(seq)
    if length % 2 == 0 or seq.holes() != (length - 1,):
        raise HookMissing("expected odd length with the only hole at position len-1")
    if 2 in seq.values():
        raise TwoAlreadyPresent("value 2 already present")
    slots = list(seq.slots)
    slots[length - 2] = 2
    slots.append(2)
    return SlotSequence(tuple(slots))


def reverse_common_report(seq) -> int:
    seq = as_seq(seq)
    if seq.holes():
        raise ValueError("reverse_common_report expects a hole-free sequence")
    return common_pairs(seq, reverse(seq))[0]


def reverse_common_by_sum(seq) -> int:
    """Independent count: pairs with a + b = len + 1 are exactly the ones fixed by reversal."""
    seq = as_seq(seq)
    return sum(1 for a, b in pairs(seq).values() if a + b == len(seq) + 1)
