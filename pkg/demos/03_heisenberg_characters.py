"""Finite Heisenberg actions on coordinates: commutator scalars and the
decomposition of cubics into character eigenspaces.

The shift and character generators commute only up to a root of unity;
that scalar is what forces every invariant construction downstream, so
we compute it rather than assume it.
"""

from pentangle.heisenberg import (TRIANGLE_LINES, commutator_scalar,
                                  character_decomposition,
                                  validate_character_table)

# -- commutator scalars, computed from the matrices -------------------

print("level 3, standard twist :", commutator_scalar(3, twist=1))
print("level 3, opposite twist :", commutator_scalar(3, twist=-1))
print("level 5, standard twist :", commutator_scalar(5, twist=1))
print("level 5, twist 2        :", commutator_scalar(5, twist=2))
print("level 15, fifth powers  :",
      commutator_scalar(15, sigma_power=5, tau_power=5))

# -- cubics in three variables split into ten character lines ---------

blocks = character_decomposition(3, 3)
dims = {label: len(basis) for label, basis in sorted(blocks.items())}
print()
print("degree-3 eigenspace dimensions:", dims)
print("total:", sum(dims.values()))

# the invariant block is two dimensional: cube sum and triple product
for poly in blocks[(0, 0)]:
    print("invariant cubic:", poly.render())

# -- the recorded character listing, with its one flagged slot --------

table = validate_character_table()
print()
print("listing matches computed eigenvectors:", table["matches"])
for bad in table["mismatches"]:
    print("flagged slot", bad["label"])
    print("  recorded:", bad["recorded"])
    print("  computed:", bad["computed"])

# -- the four split cubics are products of line triples ---------------

print()
for key, lines in sorted(TRIANGLE_LINES.items()):
    print("subgroup %s: lines %s" % (key,
                                     [tuple(str(c) for c in row)
                                      for row in lines]))
