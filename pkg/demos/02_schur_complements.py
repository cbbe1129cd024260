# Schur complements of graph Laplacians mod p

from zplap.matrix import SpSymMatrix
from zplap.schur import check_commutativity, schur, star_mesh

p = 7

# path 0 - 2 - 1 with unit edges; eliminating the middle vertex
path = SpSymMatrix.from_edges(3, p, [(0, 2, 1), (2, 1, 1)])
print(path.to_dense())
sc = schur(path, [0, 1])
print("sc onto {0, 1}:", sc.to_dense())  # an edge of weight 1/2 = 4 mod 7

# a star with leaf weights 1 and 2 collapses to one edge of weight 1*2/3
star = SpSymMatrix.from_edges(3, p, [(0, 1, 1), (0, 2, 2)])
print("star-mesh edge weight:", star_mesh(star, 0).edge_weight(0, 1))

# eliminating in two stages gives the same result as eliminating at once
square = SpSymMatrix.from_edges(4, 13, [(0, 1, 3), (1, 2, 5), (2, 3, 1), (3, 0, 2)])
print("commutes:", check_commutativity(square, [0, 2], [0, 1, 2]))
