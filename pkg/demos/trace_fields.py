"""Trace fields of the pretzel FALs M_n.

Prints the minimal polynomial of the cusp-shape generator for small n,
checks that its degree is phi(n), and shows why no two of the fields agree
by comparing their Galois stabilizers at a common level.
"""

from pretzelfal.numtheory import euler_totient, lcm
from pretzelfal.tracefield import build_trace_field, fields_equal

print("n   phi  level  minimal polynomial")
for n in range(3, 13):
    d = build_trace_field(n)
    print(f"{n:<3} {euler_totient(n):<4} {d.conductor:<6} {d.min_poly}")

# 3 and 6 share phi = 2 but give Q(i) and Q(sqrt(-3))
a, b = build_trace_field(3), build_trace_field(6)
level = lcm(a.conductor, b.conductor)
print()
print(f"stabilizers at level {level}:")
print("  n=3:", list(a.stabilizer.preimage(level).members))
print("  n=6:", list(b.stabilizer.preimage(level).members))
print("equal fields?", fields_equal(3, 6))

# every pair up to 40 is distinct
clash = [(m, n) for m in range(3, 41) for n in range(m + 1, 41) if fields_equal(m, n)]
print("coincidences among 3..40:", clash or "none")
