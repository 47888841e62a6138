"""Finite quotients of S2^1 and the element Theta defining the second differential.

    python demos/quotients_and_theta.py [level]
"""

import sys

from morava2.quotients import coset_space, quotient_group, subgroup_generators
from morava2.resolution import DualityComplex, verify_beta_congruences

level = int(sys.argv[1]) if len(sys.argv) > 1 else 6

for n in range(3, level + 1):
    q = quotient_group("S21", n)
    g24 = q.generated(subgroup_generators(q, "G24"))
    print(f"n={n}: |Q_n| = {q.order:6d}  |G24| = {len(g24)}  cosets of G24 = {coset_space('S21', n, 'G24').size}")

cx = DualityComplex(level, 3)
theta = cx.build_theta()
print(f"Theta at (n={level}, m=3) has {len(theta.coeffs)} terms")
print("d1 d2 = 0:", cx.d1_d2_zero())
print("Theta e1 = (3+i+j+k) e1 mod (4, IK1):", cx.theta_congruence_4_ik())
print("congruences:", verify_beta_congruences(theta))
