"""
Writer for the CPLEX LP text format.

Output is byte-stable for a given model: sections appear in a fixed order,
terms are sorted by variable id and numbers print the same way every time.
"""

import math
from pathlib import Path

from .model import FamilyTag, LinearConstraint, MilpModel, VarKind

TERMS_PER_LINE = 8


def format_number(value: float) -> str:
    """Integral values print without a fractional part; others use repr."""
    if math.isfinite(value) and value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _expression(model: MilpModel, terms) -> list[str]:
    """Render terms as LP tokens, TERMS_PER_LINE per line."""
    if not terms:
        # LP rows need at least one variable
        return [f"0 {model.variables[0].name}"]

    tokens = []
    for position, (coef, var_id) in enumerate(terms):
        name = model.variables[var_id].name
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        body = name if magnitude == 1 else f"{format_number(magnitude)} {name}"
        if position == 0:
            tokens.append(body if sign == "+" else f"- {body}")
        else:
            tokens.append(f"{sign} {body}")

    return [" ".join(tokens[i:i + TERMS_PER_LINE]) for i in range(0, len(tokens), TERMS_PER_LINE)]


def _row(model: MilpModel, label: str, constraint: LinearConstraint) -> list[str]:
    lines = _expression(model, constraint.terms)
    tail = f"{constraint.relation.value} {format_number(constraint.rhs)}"
    out = [f" {label}: {lines[0]}"] + [f"   {line}" for line in lines[1:]]
    out[-1] = f"{out[-1]} {tail}"
    return out


def export_lp(model: MilpModel) -> str:
    """Render `model` as LP text (Minimize, Subject To, Bounds, Binary, End)."""
    lines = ["Minimize"]
    objective = _expression(model, sorted(model.objective, key=lambda t: t[1]))
    lines.append(f" obj: {objective[0]}")
    lines.extend(f"   {line}" for line in objective[1:])

    lines.append("Subject To")
    ordinals: dict[FamilyTag, int] = {}
    for constraint in model.constraints:
        ordinal = ordinals.get(constraint.family_tag, 0) + 1
        ordinals[constraint.family_tag] = ordinal
        lines.extend(_row(model, f"{constraint.family_tag.value}_{ordinal}", constraint))

    bounds = []
    for var in model.variables:
        if var.kind != VarKind.CONTINUOUS:
            continue
        if math.isinf(var.upper) and var.lower == 0:
            continue
        upper = "+inf" if math.isinf(var.upper) else format_number(var.upper)
        bounds.append(f" {format_number(var.lower)} <= {var.name} <= {upper}")
    if bounds:
        lines.append("Bounds")
        lines.extend(bounds)

    binaries = [f" {var.name}" for var in model.variables if var.kind == VarKind.BINARY]
    if binaries:
        lines.append("Binary")
        lines.extend(binaries)

    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(model: MilpModel, path: Path | str) -> None:
    Path(path).write_text(export_lp(model))
