"""
Decomposition certificates
==========================

For a standard pair every det(A_k) is a unit mod p and the cyclic submodules
generated by y_1, ..., y_m fill out the whole module.
"""

from tensorgen import ModuleShape, decompose, enumerate_standard
from tensorgen.errors import NonStandardError

cert = decompose(ModuleShape(4, 5, 3))
for g in cert.generators:
    print(f"k={g.k}  det={g.detA}  det mod 3={g.detA % 3}  dim={g.summand_dim}")
print("orbit dims", cert.orbit_dims, "rank", cert.spanning_rank, "of", cert.shape.dim)

# characteristic 2: the families (2, odd n) and (3, 6 + 4r)
for m, n in [(2, 9), (3, 10)]:
    c = decompose(ModuleShape(m, n, 2))
    print((m, n), c.summand_dims, c.certified)

# a pair that is not standard is refused
try:
    decompose(ModuleShape(4, 5, 5))
except NonStandardError as exc:
    print("refused:", exc)

# certify every standard pair for p = 7 with m + n <= 30
ok = all(decompose(ModuleShape(w.m, w.n, 7)).certified for w in enumerate_standard(7, 30))
print("all certified:", ok)
