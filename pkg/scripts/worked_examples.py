#!/usr/bin/env python3
"""Survey of small self-similar machines.

Walks a handful of hand-picked systems through the whole toolchain:
classification and order, orbit-power closures, conjugator graphs with
synthesized witnesses, the restricted deciders, and the counting matrix
systems with their bounded-trajectory search.  Optionally writes DOT
renderings next to the report.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from arboreal import (
    Element,
    all_basic_conjugators,
    basic_conjugator,
    bounded_choice_search,
    choice_system,
    conj_graph,
    conj_graph_dot,
    conjugate_in_aut,
    conjugate_in_pol0_cyclic,
    conjugate_in_pol_minus1,
    format_word,
    inverse,
    multiply,
    order,
    order_graph,
    order_graph_dot,
    orbit_signalizer,
    polynomial_degree,
    verify_conjugator,
)
from arboreal.system import parse_system

ODOMETER = """\
alphabet 2
a = (e, a) [1 0]
b = (e, b^-1) [1 0]
"""

CARRY_PAIR = """\
alphabet 2
s = (e, e) [1 0]
p = (s, p)
q = (q, s)
"""

ZOO = """\
alphabet 2
s = (e, e) [1 0]
a = (e, a) [1 0]
m = (a, m)
l = (l, l) [1 0]
"""


@dataclass
class Config:
    cap: int = 512
    verify_depth: int = 10
    powers: int = 10
    dot_dir: Path | None = None


def _rule(title: str) -> None:
    print()
    print(title)
    print("-" * len(title))


def survey_classification(cfg: Config) -> None:
    _rule("classification and order")
    sys = parse_system(ZOO)
    for name in sys.symbols:
        g = Element(sys, ((name, 1),))
        cls = polynomial_degree(g)
        res = order(g, cfg.cap)
        os = orbit_signalizer(g, cfg.cap)
        print(
            "  %-2s  class=%-14s order=%-12s closure=%d element(s)"
            % (name, cls, res, len(os.elements))
        )


def _witnesses(label: str, a: Element, b: Element, cfg: Config) -> None:
    graph = conj_graph(a, b, cfg.cap)
    decision = conjugate_in_aut(a, b, cfg.cap)
    print("  %s: %s  (%d surviving vertices, %d root(s))"
          % (label, decision.tag, len(graph.vertices), len(graph.roots)))
    if not decision.conjugate:
        return
    for w in all_basic_conjugators(graph):
        ok = verify_conjugator(w.element, a, b, cfg.verify_depth)
        print("    conjugator %-18s verified to depth %d: %s"
              % (format_word(w.element.word), cfg.verify_depth, ok))
    if cfg.dot_dir:
        path = cfg.dot_dir / ("conj_%s.dot" % label.replace(" ", "_"))
        path.write_text(conj_graph_dot(graph))
        print("    wrote %s" % path)


def survey_conjugacy(cfg: Config) -> None:
    _rule("conjugator graphs over the full group")
    sys = parse_system(ODOMETER)
    a = Element(sys, (("a", 1),))
    b = Element(sys, (("b", 1),))
    _witnesses("a vs a^-1", a, inverse(a), cfg)
    _witnesses("a vs b", a, b, cfg)
    _witnesses("a vs a", a, a, cfg)
    print("  a vs a*a: %s" % conjugate_in_aut(a, multiply(a, a), cfg.cap).tag)


def survey_restricted(cfg: Config) -> None:
    _rule("restricted deciders on bounded inputs")
    sys = parse_system(ODOMETER)
    a = Element(sys, (("a", 1),))
    pairs = [("a vs a^-1", a, inverse(a))]
    carry = parse_system(CARRY_PAIR)
    p = Element(carry, (("p", 1),))
    q = Element(carry, (("q", 1),))
    pairs.append(("p vs q", p, q))
    for label, x, y in pairs:
        fin = conjugate_in_pol_minus1(x, y, cfg.cap)
        cyc = conjugate_in_pol0_cyclic(x, y, cfg.cap)
        print("  %-10s finitary-conjugator: %-14s bounded-conjugator: %s"
              % (label, fin.tag, cyc.tag))
        if cyc.conjugate:
            h = cyc.conjugator
            ok = verify_conjugator(h, x, y, cfg.verify_depth)
            print("    witness %s (%s), verified to depth %d: %s"
                  % (format_word(h.word), cyc.cls, cfg.verify_depth, ok))


def survey_matrices(cfg: Config) -> None:
    _rule("counting matrix systems and trajectory search")
    sys = parse_system(ODOMETER)
    a = Element(sys, (("a", 1),))
    carry = parse_system(CARRY_PAIR)
    p = Element(carry, (("p", 1),))
    q = Element(carry, (("q", 1),))
    for label, x, y in (("a vs a^-1", a, inverse(a)), ("p vs q", p, q)):
        csys = choice_system(x, y, cfg.cap)
        choices = list(csys.choices())
        print("  %s: %d coordinate(s), %d choice(s)" % (label, csys.dim, len(choices)))
        for choice in choices:
            mat = csys.matrix(choice)
            theta = csys.theta(choice)
            print("    choice %-24s theta=%s" % (choice, theta))
            for row in mat:
                print("      %s" % (row,))
        result = bounded_choice_search(csys)
        print("    search: %s" % (result,))
        if result.found:
            u = list(csys.u0)
            seq = [tuple(u)]
            plan = list(result.preperiod) + list(result.cycle) * cfg.powers
            for choice in plan[: cfg.powers]:
                mat = csys.matrix(choice)
                u = [sum(mat[r][c] * u[c] for c in range(csys.dim)) for r in range(csys.dim)]
                seq.append(tuple(u))
            print("    trajectory: %s" % seq)


def survey_order_graph(cfg: Config) -> None:
    _rule("order graphs")
    carry = parse_system(CARRY_PAIR)
    for name in ("p", "q"):
        g = Element(carry, ((name, 1),))
        graph = order_graph(g, cfg.cap)
        print("  %s: %d element(s), %d edge(s)" % (name, len(graph.elements), len(graph.edges)))
        if cfg.dot_dir:
            path = cfg.dot_dir / ("order_%s.dot" % name)
            path.write_text(order_graph_dot(graph))
            print("    wrote %s" % path)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=512, help="closure size cap")
    ap.add_argument("--verify-depth", type=int, default=10)
    ap.add_argument("--powers", type=int, default=10, help="trajectory length to print")
    ap.add_argument("--dot", type=Path, default=None, metavar="DIR",
                    help="write DOT files into DIR")
    ns = ap.parse_args(argv)
    cfg = Config(cap=ns.cap, verify_depth=ns.verify_depth, powers=ns.powers, dot_dir=ns.dot)
    if cfg.dot_dir:
        cfg.dot_dir.mkdir(parents=True, exist_ok=True)
    survey_classification(cfg)
    survey_order_graph(cfg)
    survey_conjugacy(cfg)
    survey_restricted(cfg)
    survey_matrices(cfg)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
