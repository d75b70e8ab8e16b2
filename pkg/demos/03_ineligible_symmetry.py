# Not every symmetry may be broken.
#
#   forall x1 x2 x3 exists y1({x2}) y2({x3}) . (x1<->y1) | (x2<->y2) | (x1<->x3)
#
# The dependency sets {x2} and {x3} are incomparable.  The map x2 -> -x2,
# y2 -> -y2 is a symmetry, but its lex-leader breaker reduces to -y2 and
# makes the (true) formula false.

from dqbfsym import Dqbf, LiteralPermutation, Prefix, build_breaker_formula, detect, filter_eligible
from dqbfsym.symmetry import generate_group
from dqbfsym.oracle import brute_truth

prefix = Prefix((1, 2, 3), ((4, frozenset({2})), (5, frozenset({3}))))
clauses = [a + b + c for a in ([1, -4], [-1, 4]) for b in ([2, -5], [-2, 5]) for c in ([1, -3], [-1, 3])]
f = Dqbf(prefix, tuple(tuple(c) for c in clauses))
print("true?", brute_truth(f)[0])

det = detect(f)
group = generate_group(det.permutations, f.num_vars)
print("symmetry group:", sorted(str(g) for g in group))

flip = LiteralPermutation.from_mapping(5, {2: -2, 5: -5})
print("flip in group:", flip in group)
print("eligibility:", filter_eligible(prefix, flip))

psi = build_breaker_formula(prefix, [flip], require_eligible=False)
print("breaker built anyway:", psi)
print("with it, true?", brute_truth(f, constraint=psi)[0])
