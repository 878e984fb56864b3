import pytest

from src.milp import FamilyTag, MilpModel, Relation, VarKind, export_lp
from src.milp.lp_format import TERMS_PER_LINE, format_number


@pytest.mark.parametrize("value, text", [(3.0, "3"), (-200.0, "-200"), (2.5, "2.5"), (0.1, "0.1")])
def test_format_number(value, text):
    assert format_number(value) == text


def test_long_rows_wrap():
    model = MilpModel()
    ids = [model.add_variable(f"x{i}", VarKind.BINARY) for i in range(TERMS_PER_LINE + 2)]
    model.objective = [(1.0, ids[0])]
    model.add_constraint([(1, i) for i in ids], Relation.LE, 3, FamilyTag.PLACEMENT)
    lines = export_lp(model).splitlines()
    start = lines.index("Subject To") + 1
    assert lines[start].startswith(" PLACEMENT_1: x0 + x1")
    assert lines[start + 1] == "   + x8 + x9 <= 3"


def test_terms_sorted_and_zero_coefficients_dropped():
    model = MilpModel()
    a = model.add_variable("a", VarKind.CONTINUOUS)
    b = model.add_variable("b", VarKind.CONTINUOUS, upper=4)
    model.objective = [(1.0, a)]
    model.add_constraint([(2, b), (0, a), (-1.5, a)], Relation.GE, 1, FamilyTag.RESOURCE)
    text = export_lp(model)
    assert " RESOURCE_1: - 1.5 a + 2 b >= 1" in text


def test_row_without_terms_stays_parseable():
    model = MilpModel()
    x = model.add_variable("x", VarKind.BINARY)
    model.objective = [(1.0, x)]
    model.add_constraint([], Relation.EQ, 1, FamilyTag.LINK_ONEHOT)
    assert " LINK_ONEHOT_1: 0 x = 1" in export_lp(model)


def test_bounds_only_for_non_default_continuous():
    model = MilpModel()
    free = model.add_variable("free", VarKind.CONTINUOUS)
    capped = model.add_variable("capped", VarKind.CONTINUOUS, upper=7)
    floor = model.add_variable("floor", VarKind.CONTINUOUS, lower=2)
    model.objective = [(1.0, free)]
    lines = export_lp(model).splitlines()
    assert lines[lines.index("Bounds") + 1:lines.index("End")] == [" 0 <= capped <= 7", " 2 <= floor <= +inf"]
    assert "Binary" not in lines


def test_binary_bounds_are_fixed():
    model = MilpModel()
    with pytest.raises(ValueError):
        model.add_variable("y", VarKind.BINARY, upper=2)
