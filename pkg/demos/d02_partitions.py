"""
Jordan partitions and the standard pairs
========================================

Compute the Jordan type of N on V_m (x) V_n from GF(p) ranks and compare it
with the arithmetic classifier.
"""

from tensorgen import classify_standard, enumerate_standard, is_standard, jordan_partition

# standard means the block sizes m+n-1, m+n-3, ..., n-m+1
for m, n, p in [(2, 3, 5), (4, 5, 3), (4, 5, 5), (4, 5, 7), (2, 2, 2)]:
    part = jordan_partition(m, n, p)
    print(f"p={p} ({m},{n}) -> {part.parts}  standard={is_standard(part, m, n)}")

# the graded oracle and the dense matrix-power oracle agree
print(jordan_partition(6, 9, 3) == jordan_partition(6, 9, 3, method="dense"))

# the classifier needs no linear algebra, so it reaches far past the oracle budget
w = classify_standard(14, 14, 3)
print(w)
big = classify_standard(729 + 365, 729 + 365 + 2 * 3**7, 3)
print(big.stratum, big.t, big.r)

# a small table: every standard pair for p = 5 with m + n <= 14
for w in enumerate_standard(5, 14):
    print(w.as_row())

# cross-check a window of pairs against the rank oracle
bad = [(m, n) for m in range(2, 20) for n in range(m, 40)
       if is_standard(jordan_partition(m, n, 7), m, n) != (classify_standard(m, n, 7) is not None)]
print("disagreements for p = 7:", bad)
