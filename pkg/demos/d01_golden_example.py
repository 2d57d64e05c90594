"""
A generator for one summand of V_4 (x) V_5
==========================================

Build A_3, its adjugate and the vector y_3, then watch N^3 carry y_3 onto a
multiple of the kernel vector x_3.
"""

from tensorgen import ModuleShape, adjugate_int, apply_N_power, build_A, det_int, x_vector
from tensorgen.generators import verify_theorem1

shape = ModuleShape(4, 5, 3)

# A_3 is the matrix of N^3 from the high diagonal D_6 down to D_3
A = build_A(shape, 3)
print("A_3 =", A.tolist())
print("det =", det_int(A))
print("adj =", adjugate_int(A).tolist())

# B_3 = adj(A_3) (1, -1, 1), read on the high basis f[2,5], f[3,4], f[4,3]
cert = verify_theorem1(shape, 3)
print("B_3 =", cert.B)
print("y_3 =", cert.y)

# the identity holds over the integers, no reduction needed
lhs = apply_N_power(cert.y, 3)
print("N^3 y_3 =", lhs)
print("equals 10 x_3:", lhs == 10 * x_vector(shape, 3))

# mod 3 the determinant 10 is a unit, so y_3 generates a block of size 4
print("det mod 3 =", cert.detA % 3, "summand dim =", cert.summand_dim)
