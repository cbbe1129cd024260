# Unit-weight circuits with a prescribed resistance mod p

import math

from zplap.field import prev_prime
from zplap.gadget import build_ratio, build_resistance, build_resistance_naive, para, seri, unit
from zplap.schur import circuit_weight

p = 7

# series adds resistances, parallel adds weights
two = seri(unit(p), unit(p))
print("series of two units: resistance", two.resistance)
print("parallel of two units: weight", para(unit(p), unit(p)).weight)

# resistance 2/3 mod 7 from the Euclid-style recursion
c = build_ratio(2, 3, p)
print("2/3 mod 7 =", c.resistance, "on", c.n, "vertices")

# resistance 5: a path of 5 edges versus the compact construction
print("naive r=5:", build_resistance_naive(5, p))
print("auto  r=5:", build_resistance(5, p))

# at 61 bits a path is impossible but the compact circuit stays small
q = prev_prime(2**61)
r = 1234567890123456789
C = build_resistance(r, q)
print(f"r = {r} mod {q}")
print("vertices:", C.n, "nnz:", C.nnz(), "max degree:", C.degrees()[0])
print("ln^2 p / lnln p =", round(math.log(q) ** 2 / math.log(math.log(q)), 1))
print("weight checks out:", circuit_weight(C.matrix) == pow(r, -1, q))
