"""3-uniform hypergraphs and the two generators used in the experiments.

A hypergraph stores its hyperedges as sorted triples of node ids plus
per-node incidence lists; a node's degree is the number of hyperedges it
belongs to (one game per incident edge). Both generators are fully
deterministic functions of their spec, including the seed.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

RANDOM = "random"
SCALE_FREE = "sf"


@dataclass(frozen=True)
class NetworkSpec:
    """Recipe for one network instance.

    Random networks draw ``edge_count`` distinct uniform triples over
    ``nodes`` ids. Scale-free-like growth starts from one hyperedge over
    ``m0`` = 3 seed nodes and attaches every later node with ``m``
    degree-biased hyperedges.
    """

    kind: str
    nodes: int
    edge_count: int | None = None
    m0: int = 3
    m: int = 2
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in (RANDOM, SCALE_FREE):
            raise ConfigError(f"kind: expected '{RANDOM}' or '{SCALE_FREE}', got {self.kind!r}")
        if self.kind == RANDOM:
            if self.nodes < 3:
                raise ConfigError(f"nodes: random networks need at least 3 nodes, got {self.nodes}")
            if self.edge_count is None or self.edge_count < 1:
                raise ConfigError(f"edge_count: need at least 1 hyperedge, got {self.edge_count}")
            if self.edge_count > math.comb(self.nodes, 3):
                raise ConfigError(
                    f"edge_count: {self.edge_count} exceeds the "
                    f"{math.comb(self.nodes, 3)} distinct triples over {self.nodes} nodes"
                )
        else:
            if self.m0 != 3:
                raise ConfigError(f"m0: the seed clique is a single triple, m0 must be 3, got {self.m0}")
            if not 1 <= self.m < self.m0:
                raise ConfigError(f"m: need 1 <= m < m0, got m={self.m}, m0={self.m0}")
            if self.nodes <= self.m0:
                raise ConfigError(f"nodes: scale-free growth needs nodes > m0, got {self.nodes}")


class Hypergraph:
    """Immutable 3-uniform hypergraph with incidence bookkeeping."""

    def __init__(self, node_count: int, edges):
        if node_count < 1:
            raise ValueError(f"node_count must be positive, got {node_count}")
        canonical = []
        seen = set()
        incidence = [[] for _ in range(node_count)]
        for index, edge in enumerate(edges):
            members = tuple(sorted(edge))
            if len(members) != 3 or len(set(members)) != 3:
                raise ValueError(f"edge {index}: need 3 distinct members, got {tuple(edge)}")
            if not (0 <= members[0] and members[2] < node_count):
                raise ValueError(f"edge {index}: member out of range [0, {node_count})")
            if members in seen:
                raise ValueError(f"edge {index}: duplicate hyperedge {members}")
            seen.add(members)
            canonical.append(members)
            for node in members:
                incidence[node].append(index)
        self.node_count = node_count
        self.edges = tuple(canonical)
        self.incidence = tuple(tuple(rows) for rows in incidence)
        self.degrees = np.array([len(rows) for rows in incidence], dtype=np.int64)
        self.degrees.setflags(write=False)
        self._edge_array = None
        self._neighbor_csr = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_array(self) -> np.ndarray:
        """(E, 3) int array of edge members, cached."""
        if self._edge_array is None:
            arr = np.array(self.edges, dtype=np.int64).reshape(-1, 3)
            arr.setflags(write=False)
            self._edge_array = arr
        return self._edge_array

    def neighbors(self, node: int) -> set:
        """Distinct nodes sharing at least one hyperedge with ``node``."""
        flat, offsets = self.neighbor_arrays()
        return set(flat[offsets[node]:offsets[node + 1]].tolist())

    def neighbor_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor lists in CSR form: (flat sorted ids, node offsets)."""
        if self._neighbor_csr is None:
            sets = [set() for _ in range(self.node_count)]
            for a, b, c in self.edges:
                sets[a].update((b, c))
                sets[b].update((a, c))
                sets[c].update((a, b))
            offsets = np.zeros(self.node_count + 1, dtype=np.int64)
            for node, members in enumerate(sets):
                offsets[node + 1] = offsets[node] + len(members)
            flat = np.empty(int(offsets[-1]), dtype=np.int64)
            for node, members in enumerate(sets):
                flat[offsets[node]:offsets[node + 1]] = sorted(members)
            flat.setflags(write=False)
            offsets.setflags(write=False)
            self._neighbor_csr = (flat, offsets)
        return self._neighbor_csr

    def highest_degree_node(self) -> int:
        """Node of maximal degree; ties broken by lowest id."""
        return int(np.argmax(self.degrees))


def _draw_distinct_triple(rng, node_count: int) -> tuple[int, int, int]:
    a = int(rng.integers(node_count))
    b = int(rng.integers(node_count))
    while b == a:
        b = int(rng.integers(node_count))
    c = int(rng.integers(node_count))
    while c == a or c == b:
        c = int(rng.integers(node_count))
    return (a, b, c)


def generate_random(spec: NetworkSpec) -> Hypergraph:
    """Exactly ``edge_count`` distinct uniform triples; duplicates resampled."""
    spec.validate()
    if spec.kind != RANDOM:
        raise ConfigError(f"kind: generate_random needs kind='{RANDOM}', got {spec.kind!r}")
    rng = np.random.default_rng(spec.seed)
    edges = []
    seen = set()
    while len(edges) < spec.edge_count:
        triple = tuple(sorted(_draw_distinct_triple(rng, spec.nodes)))
        if triple in seen:
            continue
        seen.add(triple)
        edges.append(triple)
    return Hypergraph(spec.nodes, edges)


def _weighted_index(rng, weights: np.ndarray) -> int:
    cumulative = np.cumsum(weights)
    pick = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(pick, weights.size - 1)  # guard the u*total == total rounding edge


def _degree_weighted_pair(rng, degrees: np.ndarray) -> tuple[int, int]:
    # Sequential draws proportional to degree; the second excludes the first
    # and renormalizes over the remainder.
    weights = degrees.astype(np.float64)
    first = _weighted_index(rng, weights)
    weights[first] = 0.0
    second = _weighted_index(rng, weights)
    return first, second


def generate_scale_free(spec: NetworkSpec) -> Hypergraph:
    """Degree-biased growth: one seed triple, then ``m`` edges per arrival.

    Each new edge joins the arriving node with a degree-weighted pair of
    distinct existing nodes; duplicate edges are redrawn and degrees update
    after every insertion. Draws depend only on the arrival order, so a
    smaller ``nodes`` run is a prefix of a larger one with the same seed.
    """
    spec.validate()
    if spec.kind != SCALE_FREE:
        raise ConfigError(f"kind: generate_scale_free needs kind='{SCALE_FREE}', got {spec.kind!r}")
    rng = np.random.default_rng(spec.seed)
    degrees = np.zeros(spec.nodes, dtype=np.int64)
    edges = [(0, 1, 2)]
    seen = {(0, 1, 2)}
    degrees[:3] = 1
    for newcomer in range(spec.m0, spec.nodes):
        for _ in range(spec.m):
            while True:
                first, second = _degree_weighted_pair(rng, degrees[:newcomer])
                triple = tuple(sorted((newcomer, first, second)))
                if triple not in seen:
                    break
            seen.add(triple)
            edges.append(triple)
            degrees[newcomer] += 1
            degrees[first] += 1
            degrees[second] += 1
    return Hypergraph(spec.nodes, edges)


def generate_network(spec: NetworkSpec) -> Hypergraph:
    """Dispatch on the spec's kind."""
    spec.validate()
    if spec.kind == RANDOM:
        return generate_random(spec)
    return generate_scale_free(spec)


def write_edge_list(graph: Hypergraph, stream) -> None:
    """Plain-text edge list: header "N <node count>", one triple per line."""
    stream.write(f"N {graph.node_count}\n")
    for a, b, c in graph.edges:
        stream.write(f"{a} {b} {c}\n")


def save_edge_list(graph: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        write_edge_list(graph, stream)


def load_edge_list(path) -> Hypergraph:
    """Inverse of save_edge_list."""
    with open(path, "r", encoding="utf-8") as stream:
        header = stream.readline().split()
        if len(header) != 2 or header[0] != "N":
            raise ValueError(f"{path}: expected header 'N <count>', got {' '.join(header)!r}")
        node_count = int(header[1])
        edges = []
        for line in stream:
            if line.strip():
                edges.append(tuple(int(part) for part in line.split()))
    return Hypergraph(node_count, edges)
