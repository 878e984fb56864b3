import json

import pytest

from src.network.io import (
    GenParamsDocument,
    RequestSequenceDocument,
    dump_instance,
    dump_solution,
    load_instance,
    load_solution,
    read_document,
)
from src.solver import solve_exact
from src.utils.errors import DocumentFormatError


def test_load_walkthrough(data_dir):
    g, requests = load_instance(data_dir / "walkthrough_instance.json")
    assert len(g.nodes) == 10
    assert [r.slice_id for r in requests] == ["S1", "S2"]
    assert requests[1].sfcs[0].nfs[0].placement_constraint.nodes == ("D", "E")


@pytest.mark.parametrize("document", [
    {"nodes": []},
    {"format": 2, "nodes": []},
    ["not", "an", "object"],
])
def test_format_key_is_mandatory(tmp_path, document):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document))
    with pytest.raises(DocumentFormatError):
        load_instance(path)


def test_schema_violations_become_format_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"format": 1, "nodes": [{"id": "A", "capacity": {"cpu": -1}}]}))
    with pytest.raises(DocumentFormatError):
        load_instance(path)


def test_unreadable_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(DocumentFormatError):
        load_instance(path)


def test_instance_document_reloads_identically(tmp_path, walkthrough):
    g, requests = walkthrough
    path = tmp_path / "copy.json"
    dump_instance(g, requests, path)
    assert load_instance(path) == (g, requests)


def test_solution_document_keeps_routes(tmp_path, walkthrough):
    solution = solve_exact(*walkthrough)
    path = tmp_path / "solution.json"
    dump_solution(solution, path)
    loaded = load_solution(path)
    assert loaded.routes == solution.routes
    assert loaded.active_nodes == solution.active_nodes


def test_request_sequence_strips_arrival_time(data_dir):
    document = read_document(data_dir / "walkthrough_requests.json", RequestSequenceDocument)
    assert [item.at for item in document.requests] == [0, 30]
    first = document.requests[0].request()
    assert not hasattr(first, "at")
    assert first.slice_id == "S1"
    assert len(document.graph.nodes) == 10


def test_gen_params_document(data_dir):
    params = read_document(data_dir / "gen_params.json", GenParamsDocument).params()
    assert params.seed == 7
    assert params.resource_kinds == ("cpu", "ram", "disk")
