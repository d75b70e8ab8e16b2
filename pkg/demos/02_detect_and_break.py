# Detect the symmetries of a KBKF formula and add a symmetry breaker.

from dqbfsym import break_symmetries, detect, filter_eligible, topological_sort
from dqbfsym.cli import format_order
from dqbfsym.generators import kbkf
from dqbfsym.oracle import brute_truth

f = kbkf(3)
print(f"kbkf(3): {f.num_vars} variables, {len(f.matrix)} clauses")

det = detect(f)
print("graph:", det.graph.vertex_count, "vertices,", len(det.graph.edges), "edges")
print("group order:", format_order(det.report.order))

prefix, _ = topological_sort(f.prefix)
for g in det.permutations:
    print(" ", g, filter_eligible(prefix, g))

result = break_symmetries(f)
broken = result.formula
print(f"after breaking: {broken.num_vars} variables, {len(broken.matrix)} clauses")
for fresh in result.artifact.fresh_vars:
    print(f"  z = {fresh.var} depends on {sorted(fresh.deps)}")
for clause in result.artifact.clauses:
    print("  ", clause)

# The breaker must not change the truth value.
print("original:", brute_truth(f)[0], " broken:", brute_truth(broken)[0])

# Larger members are out of reach for the oracle, but detection stays fast.
for N in (10, 20, 40):
    g = kbkf(N)
    r = break_symmetries(g)
    print(f"kbkf({N}): order {format_order(r.detection.report.order)}, "
          f"+{r.formula.num_vars - g.num_vars} vars, +{len(r.formula.matrix) - len(g.matrix)} clauses")
