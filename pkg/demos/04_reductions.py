# Reducing linear systems to Laplacian systems and back

from zplap.matrix import SpSymMatrix, degrees, is_unit_weight
from zplap.reduce import general_to_laplacian, laplacian_to_lowdegree, laplacian_to_normalized_walk
from zplap.solve import LinSystem, solve_all, spaces_equal_under_map

p = 5

# a general system 2x = 3 becomes a Laplacian system of four times the size
A, b = [[2]], [3]
red = general_to_laplacian(A, b, p)
print(red.output.A.to_dense(), red.output.b)

y = solve_all(red.output)
print("Laplacian solution:", y.particular, "maps back to", red.back_map(list(y.particular)))

# the whole solution space is preserved, not just one solution
x = solve_all(LinSystem(A, b, p))
print("same solution set:", spaces_equal_under_map(x, y, red.back_map))
print("certificate:", red.certificate())

# a weighted star becomes a unit-weight, low-degree Laplacian
star = SpSymMatrix.from_edges(7, 13, [(0, k, k) for k in range(1, 7)])
rhs = star.matvec([0, 1, 2, 3, 4, 5, 6])
low = laplacian_to_lowdegree(star, rhs)
U = low.output.A
print("unit weight:", is_unit_weight(U), " vertices:", U.n, " degrees:", degrees(U))
print("same solution set:", spaces_equal_under_map(solve_all(LinSystem(star, rhs, 13)),
                                                  solve_all(low.output), low.back_map))

# normalizing needs square roots of degrees, so it works over Z_p[sqrt(t)]
L = SpSymMatrix.from_edges(3, 7, [(0, 1, 1), (0, 2, 2)])
rhs = L.matvec([1, 2, 3])
nw = laplacian_to_normalized_walk(L, rhs)
W = nw.output.A
print("diagonal of W:", [W.get(i, i) for i in range(W.n)])
sol = nw.back_map(list(solve_all(nw.output).particular))
print("recovered", sol, "solves L x = b:", LinSystem(L, rhs, 7).residual_zero(sol))
