"""The five invariant sections of the formal tensor space.

Sections live in the span of symbols y_i (x) x_j with cyclotomic
coefficients.  The five combinations s_0 .. s_4 are fixed by the
diagonal level-15 action and permuted or scaled by the level-5
generators; every identity here is checked symbol by symbol, never
numerically.
"""

from pentangle.sections import (delta_sigma, delta_tau, h5_sigma, h5_tau,
                                involution, sections,
                                verify_section_symmetries)

secs = sections()
print("number of sections:", len(secs))
print("s0 =", secs[0].render())
print("s1 =", secs[1].render())

# -- invariance under the diagonal action -----------------------------

print()
for i, s in enumerate(secs):
    print("s%d: shift-invariant %s, character-invariant %s"
          % (i, delta_sigma(s) == s, delta_tau(s) == s))

# -- the level-5 generators permute and scale the basis ---------------

print()
shifted = [h5_sigma(s) for s in secs]
print("shift sends s_i to s_{i-1}:",
      all(shifted[i] == secs[(i - 1) % 5] for i in range(5)))
scaled = [h5_tau(s) for s in secs]
print("character scales each s_i by a fifth root:",
      [scaled[i] == secs[i] for i in range(5)],
      "(only s0 has trivial scale)")

# the involution fixes s0 and swaps the rest in pairs
swapped = [involution(s) for s in secs]
print("involution pairing:",
      [next(j for j in range(5) if swapped[i] == secs[j])
       for i in range(5)])

# -- the packaged certificate -----------------------------------------

report = verify_section_symmetries()
print()
print("full symmetry certificate: %d checks, all passed = %s"
      % (len(report["checks"]), report["passed"]))
