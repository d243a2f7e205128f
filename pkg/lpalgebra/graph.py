"""
Breadth-first exploration of exchange graphs.

Nodes are deduplicated by a canonical key (a sha1 hex digest computed by the caller). Expansion
is level-synchronous: a whole frontier is expanded, optionally by a process pool, and the results
are merged in frontier order. The resulting graph does not depend on the number of workers.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import networkx as nx

from .conf import get_lpalgebra_setting

logger = logging.getLogger(__name__)


@dataclass
class ExchangeGraph:
    graph: nx.Graph
    root: str
    closed: bool = False
    violations: list = field(default_factory=list)

    def payload(self, key):
        return self.graph.nodes[key]["payload"]

    def path(self, key):
        return self.graph.nodes[key]["path"]

    def payloads(self):
        for key in self.graph.nodes:
            yield key, self.graph.nodes[key]["payload"]

    def number_of_nodes(self):
        return self.graph.number_of_nodes()

    def number_of_edges(self):
        return self.graph.number_of_edges()

    def summary(self):
        return {
            "nodes": self.number_of_nodes(),
            "edges": self.number_of_edges(),
            "closed": self.closed,
            "violations": len(self.violations),
        }

    def to_json(self):
        nodes = [
            {
                "id": key,
                "depth": data["depth"],
                "path": list(data["path"]),
                "cluster": list(data["label"]),
            }
            for key, data in sorted(self.graph.nodes(data=True), key=lambda item: item[0])
        ]
        edges = [
            {
                "source": u,
                "target": v,
                "direction": data["direction"],
                "exchanged": list(data["exchanged"]),
            }
            for u, v, data in sorted(self.graph.edges(data=True), key=lambda item: item[:2])
        ]
        return {
            "root": self.root,
            "closed": self.closed,
            "nodes": nodes,
            "edges": edges,
            "violations": self.violations,
        }

    def to_dot(self):
        lines = ["graph exchange {"]
        for key, data in sorted(self.graph.nodes(data=True), key=lambda item: item[0]):
            lines.append('  "{}" [label="{}"];'.format(key, key[:10]))
        for u, v, data in sorted(self.graph.edges(data=True), key=lambda item: item[:2]):
            lines.append('  "{}" -- "{}" [label="{}"];'.format(u, v, data["direction"]))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _expand(expand, key, label, payload):
    results = []
    for direction, item in expand(payload):
        if isinstance(item, str):
            results.append((direction, None, None, item))
        else:
            results.append((direction, key(item), label(item), item))
    return results


def _exchanged(label_u, label_v):
    return tuple(sorted(set(label_u) ^ set(label_v)))


def explore(root, key, expand, label, max_nodes=None, max_depth=None, jobs=None):
    """
    Explore the graph reachable from ``root``.

    ``expand(payload)`` returns ``(direction, neighbour)`` pairs, where a string neighbour is an
    error message recorded as a violation. ``label(payload)`` returns the sorted strings that
    identify the cluster of a node; edges carry the symmetric difference of their endpoint
    labels.
    """
    if max_nodes is None:
        max_nodes = get_lpalgebra_setting("LPALGEBRA_MAX_NODES")
    if max_depth is None:
        max_depth = get_lpalgebra_setting("LPALGEBRA_MAX_DEPTH")
    if jobs is None:
        jobs = get_lpalgebra_setting("LPALGEBRA_JOBS")

    graph = nx.Graph()
    root_key = key(root)
    graph.add_node(root_key, payload=root, depth=0, path=(), label=label(root))
    result = ExchangeGraph(graph=graph, root=root_key)

    worker = partial(_expand, expand, key, label)
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    truncated = False
    frontier = [root_key]
    depth = 0
    try:
        while frontier:
            if max_depth is not None and depth >= max_depth:
                truncated = True
                break
            payloads = [graph.nodes[u]["payload"] for u in frontier]
            expanded = executor.map(worker, payloads) if executor else map(worker, payloads)
            next_frontier = []
            for u, neighbours in zip(frontier, expanded):
                path = graph.nodes[u]["path"]
                for direction, v, v_label, item in neighbours:
                    if v is None:
                        result.violations.append({"path": list(path) + [direction], "detail": item})
                        continue
                    if v not in graph:
                        if graph.number_of_nodes() >= max_nodes:
                            truncated = True
                            continue
                        graph.add_node(
                            v,
                            payload=item,
                            depth=depth + 1,
                            path=path + (direction,),
                            label=v_label,
                        )
                        next_frontier.append(v)
                    if graph.has_edge(u, v):
                        graph.edges[u, v]["directions"][u] = direction
                    else:
                        graph.add_edge(
                            u,
                            v,
                            direction=direction,
                            directions={u: direction},
                            exchanged=_exchanged(graph.nodes[u]["label"], v_label),
                        )
            frontier = sorted(next_frontier)
            depth += 1
    finally:
        if executor is not None:
            executor.shutdown()

    result.closed = not truncated and not frontier
    logger.info(
        "explored %d nodes and %d edges (closed: %s)",
        graph.number_of_nodes(),
        graph.number_of_edges(),
        result.closed,
    )
    return result


def labelled_isomorphism(first, second):
    """
    Compare two exchange graphs whose nodes are labelled by their clusters.

    Returns ``(ok, detail)``. The cluster labels give the candidate bijection; it is confirmed
    with a labelled isomorphism test.
    """
    by_label = {data["label"]: key for key, data in second.graph.nodes(data=True)}
    mapping = {}
    for key, data in first.graph.nodes(data=True):
        if data["label"] not in by_label:
            return False, "cluster {} has no counterpart".format(", ".join(data["label"]))
        mapping[key] = by_label[data["label"]]
    if len(mapping) != second.number_of_nodes() or len(set(mapping.values())) != len(mapping):
        return False, "node counts differ: {} and {}".format(
            first.number_of_nodes(), second.number_of_nodes()
        )
    for u, v, data in first.graph.edges(data=True):
        if not second.graph.has_edge(mapping[u], mapping[v]):
            return False, "edge exchanging {} has no counterpart".format(data["exchanged"])
        if second.graph.edges[mapping[u], mapping[v]]["exchanged"] != data["exchanged"]:
            return False, "edge labels differ for {}".format(data["exchanged"])
    if first.number_of_edges() != second.number_of_edges():
        return False, "edge counts differ"

    ok = nx.is_isomorphic(
        first.graph,
        second.graph,
        node_match=lambda a, b: a["label"] == b["label"],
        edge_match=lambda a, b: a["exchanged"] == b["exchanged"],
    )
    return ok, "" if ok else "labelled isomorphism test failed"
