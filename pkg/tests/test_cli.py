import asyncio
import json

import pytest

from main import EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK, main
from src.network import validate
from src.network.io import load_instance, load_solution


def run(*argv) -> int:
    return asyncio.run(main([str(a) for a in argv]))


def test_solve_writes_solution_and_lp(tmp_path, data_dir):
    solution_path = tmp_path / "solution.json"
    lp_path = tmp_path / "model.lp"
    code = run("solve", data_dir / "walkthrough_instance.json", "-o", solution_path, "--export-lp", lp_path)
    assert code == EXIT_OK
    assert load_solution(solution_path).objective == 4
    assert lp_path.read_text().startswith("Minimize\n")


def test_solve_infeasible_exit_code(tmp_path, golden_dir):
    document = json.loads((golden_dir / "single_nf.json").read_text())
    document["slices"][0]["sfcs"][0]["nfs"][0]["demand"]["cpu"] = 50
    path = tmp_path / "infeasible.json"
    path.write_text(json.dumps(document))
    assert run("solve", path) == EXIT_INFEASIBLE


def test_invalid_instance_exit_code(tmp_path, golden_dir):
    document = json.loads((golden_dir / "two_nf_link.json").read_text())
    document["links"] = []
    path = tmp_path / "disconnected.json"
    path.write_text(json.dumps(document))
    assert run("solve", path) == EXIT_ERROR


def test_verify_accepts_and_rejects(tmp_path, data_dir):
    instance = data_dir / "walkthrough_instance.json"
    solution_path = tmp_path / "solution.json"
    run("solve", instance, "-o", solution_path)
    assert run("verify", instance, solution_path) == EXIT_OK

    tampered = json.loads(solution_path.read_text())
    tampered["active_nodes"] = ["D"]
    solution_path.write_text(json.dumps(tampered))
    assert run("verify", instance, solution_path) == EXIT_ERROR


def test_verify_external_dump(tmp_path, golden_dir):
    dump = tmp_path / "model.sol"
    dump.write_text("# objective 1\nrho[A] 1\nY[s1,f1,n1,A] 1\n")
    assert run("verify", golden_dir / "single_nf.json", dump) == EXIT_OK


def test_gen_writes_valid_instance(tmp_path, data_dir):
    path = tmp_path / "generated.json"
    assert run("gen", data_dir / "gen_params.json", "-o", path, "--slices", 2, "--nfs", 3) == EXIT_OK
    g, requests = load_instance(path)
    assert validate(g, requests) == []
    assert len(requests) == 2


def test_orchestrate_writes_event_log(tmp_path, data_dir):
    events = tmp_path / "events.jsonl"
    code = run("orchestrate", data_dir / "walkthrough_requests.json", "--mode", "incremental", "--events", events)
    assert code == EXIT_OK
    lines = [json.loads(line) for line in events.read_text().splitlines()]
    assert [line["kind"] for line in lines] == ["REQUEST_ACCEPTED", "PLACED", "REQUEST_ACCEPTED", "PLACED"]
    assert lines[-1]["objective"] == 4


def test_experiment_and_stats(tmp_path):
    csv_path = tmp_path / "slices.csv"
    code = run("experiment", "VARY_SLICES", "--seed", 1, "--reps", 2, "--max-points", 2,
               "--workers", 1, "-o", csv_path)
    assert code == EXIT_OK
    assert len(csv_path.read_text().splitlines()) == 1 + 4
    assert (tmp_path / "slices.series.csv").exists()
    assert run("stats", csv_path, "--swept", "slices") == EXIT_OK


def test_unknown_preset_is_an_error(tmp_path):
    assert run("experiment", "VARY_LINKS", "-o", tmp_path / "x.csv") == EXIT_ERROR


def test_usage_error_exits():
    with pytest.raises(SystemExit):
        run("solve")
