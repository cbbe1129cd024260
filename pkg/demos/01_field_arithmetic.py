# Arithmetic mod p and in the quadratic extension Z_p[sqrt(t)]

from zplap.field import ExtField, FieldElement, find_nonresidue, inv, sqrt_ext

p = 7
x = FieldElement(3, p)
print("3 + 5 mod 7 =", (x + 5).value)
print("inverse of 3 mod 7 =", inv(x).value)  # 3 * 5 = 15 = 1

# 3 is the smallest non-square mod 7, so sqrt(3) lives outside Z_7
t = find_nonresidue(p)
print("non-residue t =", t)

# every element of Z_7 has a square root once sqrt(t) is adjoined
F = ExtField(p, t)
for v in range(1, p):
    r = sqrt_ext(v, p, t)
    print(f"sqrt({v}) = {r.a} + {r.b}*sqrt({t})", " check:", (r * r).a == v and (r * r).b == 0)

# extension elements support the usual operators
y = F(2, 5)
print("(2 + 5 sqrt3)^-1 * (2 + 5 sqrt3) =", y.inverse() * y)
