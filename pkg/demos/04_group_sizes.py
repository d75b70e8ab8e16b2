# Group sizes of the crafted families, checked against an independent
# Schreier-Sims computation on the returned generators.

import time

from dqbfsym import build_graph, find_automorphisms, group_order
from dqbfsym.cli import format_order
from dqbfsym.generators import kbkf, parity

print(f"{'family':>8} {'N':>4} {'vars':>5} {'clauses':>8} {'order':>10} {'gens':>5} {'seconds':>8}")
for name, fam in (("kbkf", kbkf), ("parity", parity)):
    for N in (5, 10, 20, 50):
        f = fam(N)
        graph = build_graph(f)
        start = time.perf_counter()
        rep = find_automorphisms(graph)
        elapsed = time.perf_counter() - start
        assert group_order(rep.generators, graph.vertex_count) == rep.order
        print(f"{name:>8} {N:>4} {f.num_vars:>5} {len(f.matrix):>8} {format_order(rep.order):>10} "
              f"{len(rep.generators):>5} {elapsed:>8.3f}")
