import shutil
import subprocess
from pathlib import Path

import pytest

from src.milp import build_model, write_lp
from src.network.io import load_instance
from src.solver import parse_solution_file, solve_exact
from src.verifier import verify

ROOT = Path(__file__).resolve().parent.parent

pytestmark = pytest.mark.skipif(shutil.which("cbc") is None, reason="cbc not on PATH")


@pytest.mark.parametrize("name", ["single_nf", "two_nf_link"])
def test_external_objective_matches(tmp_path, golden_dir, name):
    g, requests = load_instance(golden_dir / f"{name}.json")
    model, index = build_model(g, requests)
    lp_path = tmp_path / "model.lp"
    sol_path = tmp_path / "model.sol"
    write_lp(model, lp_path)

    subprocess.run([str(ROOT / "scripts" / "solve_external.sh"), str(lp_path), str(sol_path)],
                   check=True, capture_output=True)
    external = parse_solution_file(sol_path.read_text(), index)
    assert external.objective == solve_exact(g, requests).objective
    assert verify(g, requests, external).overall
