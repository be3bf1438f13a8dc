import pytest

from skolemkit.compose import (CompositionPlan, InfeasibleShell, OverlapError, ValidationFailed, adjoin, assemble,
                               shell, shell_layout)
from skolemkit.seqcore import SlotSequence, check_structure, count_common, reverse, skolem, validate

S16 = "9,16,14,12,10,15,13,11,2,9,2,1,1,8,10,12,14,16,11,13,15,8,5,6,7,3,4,5,3,6,4,7"

S16_PLAN = """holes 1
shell 16 7
holes 1
lit 5,6,7,3,4,5,3,6,4,7
put 9 @ 1,10
put 8 @ 14,22
fill 2,2,1,1"""


def test_shell_12_7():
    assert str(shell(12, 7)) == "12,10,8,6,11,9,7,0,0,6,8,10,12,7,9,11"
    assert count_common(shell(12, 7), reverse(shell(12, 7))) == 0


def test_shell_24_15():
    assert shell_layout(24, 15) == (2, 32)
    assert check_structure(shell(24, 15)).valid


def test_shell_infeasible():
    with pytest.raises(InfeasibleShell):
        shell(12, 6)
    with pytest.raises(InfeasibleShell):
        shell(5, 5)


def test_shell_t1_is_self_reverse():
    s = shell(6, 1)
    assert reverse(s) == s


def test_shell_filled_s12():
    plan = CompositionPlan().shell(12, 7).fill("1,1").lit("5,2,4,2,3,5,4,3")
    s = assemble(plan, skolem(12))
    assert validate(s, skolem(12)).valid


def test_s16_plan():
    plan = CompositionPlan.from_text(S16_PLAN)
    assert plan.to_text() == S16_PLAN
    assert str(assemble(plan, skolem(16))) == S16


def test_identity_plan():
    s = SlotSequence.parse("1,1,3,4,2,3,2,4")
    assert assemble(CompositionPlan().lit(s), skolem(4)) == s


def test_plan_errors():
    with pytest.raises(OverlapError):
        CompositionPlan().lit("1,1").lit("1,1").layout()
    with pytest.raises(OverlapError):
        CompositionPlan().holes(4).put(3, 1, 3).layout()
    with pytest.raises(OverlapError):
        CompositionPlan().lit("1,1").put(2, 1, 3).layout()
    with pytest.raises(ValidationFailed) as err:
        assemble(CompositionPlan().lit("1,1"), skolem(4))
    assert err.value.report.violations


def test_plan_comments():
    plan = CompositionPlan.from_text("# a comment\nlit 1,1  # trailing\n")
    assert str(plan.layout()) == "1,1"


def test_adjoin():
    s = adjoin("1,1", "4,2,3,2,4,3")
    assert validate(s, skolem(4)).valid
    assert adjoin(s, "") == s
    with pytest.raises(OverlapError):
        adjoin("1,1", "1,1")
    with pytest.raises(OverlapError):
        adjoin("2,0,2", "1,1")
