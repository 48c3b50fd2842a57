"""Crushtaceans and commensurability of half-twist partners.

The crushtacean of the pretzel FAL is a circular ladder with green rungs for
the crossing circles. Each green rung carries both a reflective and a
rotational involution, so every twist vector passes the criterion and all
2^n half-twist partners of M_n are commensurable with it.
"""

from pretzelfal.crushtacean import (
    automorphisms,
    build_pretzel_crushtacean,
    cdw_criterion,
    example_nested_forest,
    find_involutions,
    validate_forest,
    PRESERVING,
    REVERSING,
)

g = build_pretzel_crushtacean(5)
print(f"n=5: {g.num_vertices} vertices, {g.num_edges} edges, genus {g.genus()}")
print("green rungs:", g.green_edges())

r = find_involutions(g, g.green_edges()[0])
print("reflective:", r.has_reflective, " rotational:", r.has_rotational)
print("  reflective witness on vertices:", r.reflective_witness.vertex_perm)

print("map automorphisms: preserving", len(automorphisms(g, PRESERVING)),
      "reversing", len(automorphisms(g, REVERSING)))

report = cdw_criterion(g, (0, 1, 1, 0, 1))
print("criterion for twists 01101:", bool(report))

g2, forest = example_nested_forest()
print("example forest:", validate_forest(g2, forest).reason)
