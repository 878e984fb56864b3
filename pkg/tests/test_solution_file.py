import pytest

from src.milp import build_model
from src.models import SolveStatus
from src.network.io import load_instance
from src.solver import parse_solution_file
from src.utils.errors import NonIntegralBinary, ObjectiveMismatch, SolutionFileError, UnknownVariableName
from src.verifier import verify

DUMP = """\
# objective 1
rho[A] 1
Y[s1,f1,n1,A] 1
Y[s1,f1,n2,A] 1
Z[s1,f1,n2,A,A] 1
"""


@pytest.fixture
def two_nf(golden_dir):
    g, requests = load_instance(golden_dir / "two_nf_link.json")
    _, index = build_model(g, requests)
    return g, requests, index


def test_decodes_external_dump(two_nf):
    g, requests, index = two_nf
    solution = parse_solution_file(DUMP, index)
    assert solution.status == SolveStatus.OPTIMAL
    assert solution.objective == 1
    assert [a.node_id for a in solution.assignments] == ["A", "A"]
    route = solution.routes[0]
    assert (route.source, route.hop, route.u, route.v) == ("n1", "n2", "A", "A")
    assert verify(g, requests, solution).overall


def test_zero_lines_and_continuous_values(two_nf):
    _, _, index = two_nf
    text = (
        "# Objective value = 2\n"
        "rho[A] 1\nrho[B] 1\n"
        "Y[s1,f1,n1,A] 1\nY[s1,f1,n1,B] 0\nY[s1,f1,n2,B] 1\n"
        "Z[s1,f1,n2,A,B] 1\nphiL[s1,f1,n2] 3\nphiLuv[s1,f1,n2,A,B] 3\nphiBuv[s1,f1,n2,A,B] 5\n"
    )
    solution = parse_solution_file(text, index)
    assert solution.active_nodes == ("A", "B")
    assert solution.routes[0].latency_budget == 3


def test_unknown_variable(two_nf):
    with pytest.raises(UnknownVariableName):
        parse_solution_file("Y[s1,f1,n9,A] 1\n", two_nf[2])


def test_fractional_binary(two_nf):
    with pytest.raises(NonIntegralBinary):
        parse_solution_file("rho[A] 0.5\n", two_nf[2])


def test_objective_mismatch(two_nf):
    with pytest.raises(ObjectiveMismatch):
        parse_solution_file(DUMP.replace("# objective 1", "# objective 2"), two_nf[2])


@pytest.mark.parametrize("text", ["rho[A]\n", "rho[A] one\n", "rho[A] 1 extra\n"])
def test_malformed_lines(two_nf, text):
    with pytest.raises(SolutionFileError):
        parse_solution_file(text, two_nf[2])
