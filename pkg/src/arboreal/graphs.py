"""Strongly connected components, iteratively (deep graphs, no recursion)."""

from __future__ import annotations


def strongly_connected_components(n: int, successors) -> list[list[int]]:
    """Tarjan over nodes 0..n-1; successors(i) yields successor nodes.

    Components come out in reverse topological order: every edge leaving
    a component points into a component emitted earlier.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # frame: (node, iterator over successors)
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if index[succ] == -1:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack[succ] = True
                    work.append((succ, iter(successors(succ))))
                    advanced = True
                    break
                if on_stack[succ]:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                components.append(comp)
    return components


def condensation(n: int, successors, components: list[list[int]]):
    """(component index per node, edge set between distinct components)."""
    comp_of = [0] * n
    for ci, comp in enumerate(components):
        for v in comp:
            comp_of[v] = ci
    edges = set()
    for v in range(n):
        for w in successors(v):
            if comp_of[v] != comp_of[w]:
                edges.add((comp_of[v], comp_of[w]))
    return comp_of, edges
