"""DOT rendering for the order and conjugator graphs.

Output is deterministic: nodes appear in discovery order and parallel
edges between the same two nodes are drawn once, with their labels
joined.  That keeps diagrams readable when several orbits of one vertex
lead to the same target.
"""

from __future__ import annotations

from .classify import OrbitSignalizer
from .conjugacy import ConjGraph, SimConjGraph
from .perms import format_perm
from .system import format_word


def _quote(s: str) -> str:
    return '"%s"' % s.replace("\\", "\\\\").replace('"', '\\"')


def _render(name: str, nodes, edges, doubled=()) -> str:
    """nodes: list of (id, label); edges: list of (src, tgt, label)."""
    lines = ["digraph %s {" % name, "  rankdir=LR;"]
    doubled = set(doubled)
    for nid, label in nodes:
        extra = ", peripheries=2" if nid in doubled else ""
        lines.append("  %s [label=%s%s];" % (nid, _quote(label), extra))
    joined: dict = {}
    order = []
    for src, tgt, label in edges:
        if (src, tgt) not in joined:
            joined[(src, tgt)] = []
            order.append((src, tgt))
        if label not in joined[(src, tgt)]:
            joined[(src, tgt)].append(label)
    for src, tgt in order:
        lines.append("  %s -> %s [label=%s];" % (src, tgt, _quote(",".join(joined[(src, tgt)]))))
    lines.append("}")
    return "\n".join(lines) + "\n"


def order_graph_dot(graph: OrbitSignalizer) -> str:
    nodes = [("n%d" % i, format_word(g.word)) for i, g in enumerate(graph.elements)]
    edges = [("n%d" % e[0], "n%d" % e[2], str(e[1])) for e in graph.edges]
    return _render("order_graph", nodes, edges)


def conj_graph_dot(graph: ConjGraph) -> str:
    ids = {v: "n%d" % i for i, v in enumerate(graph.vertices)}
    nodes = []
    for v in graph.vertices:
        i, j, pi = v
        label = "(%s, %s, %s)" % (
            format_word(graph.os_a.elements[i].word),
            format_word(graph.os_b.elements[j].word),
            format_perm(pi),
        )
        nodes.append((ids[v], label))
    edges = []
    for v in graph.vertices:
        for letter, targets in sorted(graph.edges.get(v, {}).items()):
            for w in targets:
                edges.append((ids[v], ids[w], str(letter)))
    return _render("conjugator_graph", nodes, edges, doubled=[ids[r] for r in graph.roots])


def sim_graph_dot(graph: SimConjGraph) -> str:
    ids = {v: "n%d" % i for i, v in enumerate(graph.vertices)}
    nodes = []
    for v in graph.vertices:
        key, pi = v
        pairs = ", ".join(
            "(%s, %s)" % (format_word(graph.interner.element(ka).word),
                          format_word(graph.interner.element(kb).word))
            for ka, kb in key
        )
        nodes.append((ids[v], "[%s] %s" % (pairs, format_perm(pi))))
    edges = []
    for v in graph.vertices:
        for letter, targets in sorted(graph.edges.get(v, {}).items()):
            for w in targets:
                edges.append((ids[v], ids[w], str(letter)))
    return _render("simultaneous_conjugator_graph", nodes, edges, doubled=[ids[r] for r in graph.roots])


def emit_dot(graph) -> str:
    """Dispatch on the graph type."""
    if isinstance(graph, OrbitSignalizer):
        return order_graph_dot(graph)
    if isinstance(graph, ConjGraph):
        return conj_graph_dot(graph)
    if isinstance(graph, SimConjGraph):
        return sim_graph_dot(graph)
    raise TypeError("no DOT form for %r" % type(graph).__name__)
