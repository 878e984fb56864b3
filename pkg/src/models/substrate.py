"""
Data models for the substrate (underlying) layer.
"""

import math
import re
from enum import Enum
from typing import Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, RootModel, field_validator

IDENTIFIER = re.compile(r"^[A-Za-z0-9_.]+$")


class NodeKind(str, Enum):
    """Role of a substrate node."""
    HOST = "host"
    CONNECTOR = "connector"


class ResourceVector(RootModel[dict[str, float]]):
    """Ordered mapping resource kind -> quantity (CPU units, RAM MB, Disk GB, ...)."""

    model_config = ConfigDict(frozen=True)

    @field_validator('root')
    @classmethod
    def validate_quantities(cls, v: dict[str, float]) -> dict[str, float]:
        """Quantities must be finite and non-negative."""
        for kind, amount in v.items():
            if not math.isfinite(amount) or amount < 0:
                raise ValueError(f"resource {kind!r} must be a non-negative number, got {amount}")
        return v

    @classmethod
    def zeros(cls, kinds: tuple[str, ...]) -> "ResourceVector":
        return cls({kind: 0.0 for kind in kinds})

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(self.root)

    def get(self, kind: str) -> float:
        return self.root.get(kind, 0.0)

    def as_tuple(self, kinds: tuple[str, ...]) -> tuple[float, ...]:
        return tuple(self.root.get(kind, 0.0) for kind in kinds)

    def is_zero(self) -> bool:
        return all(amount == 0 for amount in self.root.values())


class NodeCharacteristics(BaseModel):
    """Security level and IaaS of a host."""
    model_config = ConfigDict(frozen=True)

    security_level: int = Field(ge=0, description="Security level of the node")
    iaas_id: int = Field(ge=0, description="IaaS the node belongs to")


class SubstrateNode(BaseModel):
    """A node of the underlying layer: in-data-center host or WAN connector."""
    model_config = ConfigDict(frozen=True)

    id: str = Field(description="Unique node id")
    kind: NodeKind = Field(default=NodeKind.HOST, description="HOST or CONNECTOR")
    capacity: ResourceVector = Field(default_factory=lambda: ResourceVector({}))
    characteristics: Optional[NodeCharacteristics] = None

    @property
    def is_host(self) -> bool:
        return self.kind == NodeKind.HOST


class SubstrateLink(BaseModel):
    """Physical link, undirected, with available bandwidth (Mbps) and latency (ms)."""
    model_config = ConfigDict(frozen=True)

    endpoints: tuple[str, str] = Field(description="Node ids at both ends")
    bandwidth_capacity: float = Field(ge=0, description="Available bandwidth in Mbps")
    latency: float = Field(ge=0, description="End-to-end latency in ms")

    @property
    def key(self) -> tuple[str, str]:
        """Endpoints in sorted order, identifying the unordered pair."""
        u, v = self.endpoints
        return (u, v) if u <= v else (v, u)


class SubstrateGraph(BaseModel):
    """Weighted graph of the underlying layer."""
    model_config = ConfigDict(frozen=True)

    nodes: tuple[SubstrateNode, ...] = Field(default=())
    links: tuple[SubstrateLink, ...] = Field(default=())

    def node_map(self) -> dict[str, SubstrateNode]:
        return {node.id: node for node in self.nodes}

    def host_ids(self) -> list[str]:
        return sorted(node.id for node in self.nodes if node.is_host)

    def node_ids(self) -> list[str]:
        return sorted(node.id for node in self.nodes)

    def link_map(self) -> dict[tuple[str, str], SubstrateLink]:
        return {link.key: link for link in self.links}

    def resource_kinds(self) -> tuple[str, ...]:
        """Resource kinds of the first node that declares any, in declaration order."""
        for node in self.nodes:
            if node.capacity.kinds:
                return node.capacity.kinds
        return ()

    def to_networkx(self) -> nx.Graph:
        """Build an undirected networkx graph carrying bandwidth/latency on edges."""
        graph = nx.Graph()
        for node in sorted(self.nodes, key=lambda n: n.id):
            graph.add_node(node.id, kind=node.kind.value)
        for link in sorted(self.links, key=lambda l: l.key):
            u, v = link.key
            graph.add_edge(u, v, bandwidth=link.bandwidth_capacity, latency=link.latency)
        return graph
