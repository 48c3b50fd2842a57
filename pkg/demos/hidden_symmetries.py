"""Symmetry groups and hidden symmetries.

M_n has 16n symmetries and no hidden ones. The partner M'_n with a single
untwisted crossing circle keeps only 8 symmetries but has 2n hidden
symmetries, and the volume bracket pins that count down once n is large.
"""

import mpmath

from pretzelfal.classify import PretzelFal, hidden_symmetry_bounds, smallest_bracket_n, symmetry_data

mpmath.mp.prec = 256

for n in (5, 7, 12):
    a = symmetry_data(PretzelFal(n))
    b = symmetry_data(PretzelFal(n, (0,) + (1,) * (n - 1)))
    print(f"n={n:<3} M_n: |Sym|={a.sym_order} hidden={a.hidden_count}   "
          f"M'_n: |Sym|={b.sym_order} hidden={b.hidden_count}")

eps = "0.01"
n0 = smallest_bracket_n(eps)
print()
print(f"bracket at eps={eps} contains 2n from n0 = {n0} on")
for n in (n0 - 1, n0, 50, 1000):
    b = hidden_symmetry_bounds(n, eps)
    print(f"  n={n:<5} [{mpmath.nstr(b.lower, 8)}, {mpmath.nstr(b.upper, 8)}]  2n={2 * n}  inside={b.contains_hidden}")
