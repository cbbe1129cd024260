# Is det(A) zero? Rewriting as a symbolic matrix where each variable occurs at most 3 times

import random

from zplap.symbolic import det_poly, det_zero_exact, det_zero_randomized, reduce_to_mult3, tutte

q = 1000003

# the Tutte matrix of a graph is nonsingular iff the graph has a perfect matching
square = tutte([(0, 1), (1, 2), (2, 3), (3, 0)], 4, q)
print("4-cycle det:", det_poly(square))
print("path on 3 vertices singular:", det_zero_exact(tutte([(0, 1), (1, 2)], 3, q)))

# a singular scalar matrix and its multiplicity-3 symbolic image
A = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
B = reduce_to_mult3(A, q)
print("size", B.n, "pdeg", B.pdeg(), "max multiplicity", B.maxm())
print("det zero (exact):", det_zero_exact(B))
print("det zero (random evaluation):", det_zero_randomized(B, 20, random.Random(0)))

A[1][1] = 5
B = reduce_to_mult3(A, q)
print("after changing one entry:", det_zero_exact(B), det_zero_randomized(B, 20, random.Random(0)))
