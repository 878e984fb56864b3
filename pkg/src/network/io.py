"""
Reading and writing the JSON documents the engine works with.

Every document carries a mandatory ``"format": 1`` key. Instance documents hold
``nodes``, ``links`` and ``slices``; request-sequence documents hold the
substrate plus an ordered ``requests`` list whose entries may carry an ``at``
timestamp in seconds.
"""

import json
from pathlib import Path
from typing import Literal, Optional, TypeVar

from pydantic import BaseModel, Field, ValidationError

from ..models import (
    ExperimentPlan,
    GenParams,
    PlacementSolution,
    SliceRequest,
    SubstrateGraph,
    SubstrateLink,
    SubstrateNode,
)
from ..utils.errors import DocumentFormatError

FORMAT_VERSION = 1

DocumentT = TypeVar("DocumentT", bound=BaseModel)


class InstanceDocument(BaseModel):
    """Substrate graph and slice requests."""
    format: Literal[1]
    nodes: tuple[SubstrateNode, ...]
    links: tuple[SubstrateLink, ...] = ()
    slices: tuple[SliceRequest, ...] = ()

    @property
    def graph(self) -> SubstrateGraph:
        return SubstrateGraph(nodes=self.nodes, links=self.links)


class TimedRequest(SliceRequest):
    """A slice request as it arrives at the orchestrator."""
    at: Optional[float] = Field(default=None, ge=0, description="Arrival time in seconds")

    def request(self) -> SliceRequest:
        return SliceRequest.model_validate(self.model_dump(exclude={"at"}))


class RequestSequenceDocument(BaseModel):
    """Substrate plus an ordered list of (possibly repeated) slice requests."""
    format: Literal[1]
    nodes: tuple[SubstrateNode, ...]
    links: tuple[SubstrateLink, ...] = ()
    requests: tuple[TimedRequest, ...] = ()

    @property
    def graph(self) -> SubstrateGraph:
        return SubstrateGraph(nodes=self.nodes, links=self.links)


class GenParamsDocument(GenParams):
    format: Literal[1]

    def params(self) -> GenParams:
        return GenParams.model_validate(self.model_dump(exclude={"format"}))


class PlanDocument(ExperimentPlan):
    format: Literal[1]

    def plan(self) -> ExperimentPlan:
        return ExperimentPlan.model_validate(self.model_dump(exclude={"format"}))


def read_document(path: Path | str, model: type[DocumentT]) -> DocumentT:
    """
    Parse a JSON document into `model`.

    Raises:
        DocumentFormatError: on unreadable JSON, a missing/unsupported format key
            or schema violations.
    """
    path = Path(path)
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DocumentFormatError(f"{path}: {e}") from e

    if not isinstance(data, dict) or data.get("format") != FORMAT_VERSION:
        raise DocumentFormatError(f"{path}: expected a document with \"format\": {FORMAT_VERSION}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise DocumentFormatError(f"{path}: {e}") from e


def load_instance(path: Path | str) -> tuple[SubstrateGraph, list[SliceRequest]]:
    document = read_document(path, InstanceDocument)
    return document.graph, list(document.slices)


def instance_document(graph: SubstrateGraph, requests: list[SliceRequest]) -> dict:
    return {
        "format": FORMAT_VERSION,
        "nodes": [node.model_dump(mode="json", exclude_none=True) for node in graph.nodes],
        "links": [link.model_dump(mode="json") for link in graph.links],
        "slices": [request.model_dump(mode="json", exclude_none=True) for request in requests],
    }


def dump_instance(graph: SubstrateGraph, requests: list[SliceRequest], path: Path | str) -> None:
    with open(path, 'w') as f:
        json.dump(instance_document(graph, requests), f, indent=2)
        f.write("\n")


def load_solution(path: Path | str) -> PlacementSolution:
    path = Path(path)
    try:
        return PlacementSolution.model_validate_json(path.read_text())
    except (OSError, ValidationError) as e:
        raise DocumentFormatError(f"{path}: {e}") from e


def dump_solution(solution: PlacementSolution, path: Path | str) -> None:
    Path(path).write_text(solution.model_dump_json(indent=2) + "\n")
