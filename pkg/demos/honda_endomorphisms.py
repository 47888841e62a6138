"""Order elements acting as endomorphisms of the Honda formal group law.

    python demos/honda_endomorphisms.py
"""

from morava2.honda import endo_series, fgl_table, formal_negative, multiplication_by
from morava2.order import OrderElement
from morava2.stabilizer import named_element

D = 32
print("F(x, y) mod degree 16, rows x^i -> exponents of y:")
for i, js in fgl_table(16).items():
    print(f"  x^{i}: {js}")

print("[2](x) =", multiplication_by(2, D))
print("S(x)   =", endo_series(OrderElement(0, 1, 6), D))
print("w(x)   =", endo_series(named_element("omega", 6), D))
ei = endo_series(named_element("i", 6), D)
print("i(x)   =", ei)
print("i(i(x)) == [-1](x):", ei.compose(ei) == formal_negative(D))
