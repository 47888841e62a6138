"""Named elements of the maximal order and their S-adic digits.

    python demos/digits_and_congruences.py
"""

from morava2.expr import eval_expr
from morava2.order import format_digits, s_digits
from morava2.stabilizer import commutator, filtration_level, named_element, norm

N = 12

for name in ("omega", "i", "j", "alpha", "alpha_i", "alpha_j", "alpha_sq", "alpha_pi"):
    g = named_element(name, N)
    print(f"{name:9s} {format_digits(s_digits(g, 6), 6):32s} level {filtration_level(g)}")

i, alpha = named_element("i", N), named_element("alpha", N)
print("[i, alpha] == alpha_i:", commutator(i, alpha) == named_element("alpha_i", N))
print("norm(pi) mod 2^6:", norm(named_element("pi", N)))

# the parser accepts the same names
print("i from its definition:", eval_expr("(1+2*w)^-1 * (1 - alpha*S)", N) == i)
