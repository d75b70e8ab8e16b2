# Truth values of a DQBF, computed by brute force.
#
#   forall x1 x2 exists y1({x1}) y2({x2}) . (x1 | y1) & (x2 | y2)
#
# Variables: x1=1, x2=2, y1=3, y2=4.

from dqbfsym import Dqbf, Interpretation, Prefix, truth_value
from dqbfsym.formula import induced_assignment
from dqbfsym.oracle import brute_truth, enumerate_interpretations

prefix = Prefix((1, 2), ((3, frozenset({1})), (4, frozenset({2}))))
phi = Dqbf(prefix, ((1, 3), (2, 4)))
print(prefix)

# An interpretation is one Skolem function per existential.
s = Interpretation.from_functions(prefix, [lambda a: a[1], lambda a: a[2]])
s_prime = Interpretation.from_functions(prefix, [lambda a: True, lambda a: not a[2]])

sigma = {1: False, 2: False}
print("sigma_s  =", induced_assignment(prefix, s, sigma))
print("sigma_s' =", induced_assignment(prefix, s_prime, sigma))
print("[phi]_s  =", truth_value(phi, s))
print("[phi]_s' =", truth_value(phi, s_prime))

models = [t for t in enumerate_interpretations(prefix) if truth_value(phi, t)]
print(f"{len(models)} of 16 interpretations are models")

value, witness = brute_truth(phi)
print("formula is", value, "witness tables:", witness.tables)
