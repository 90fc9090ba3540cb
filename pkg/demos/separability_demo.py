"""
Separability from vanishing invariants
======================================

Cumulants vanish on indices whose support straddles two factors of a
product state.  So a state is pi-separable exactly when every
splitting invariant of pi is zero, which turns separability testing
into reading off a short list of numbers.
"""

from luinv import (
    cumulant_invariant,
    generate_state,
    parse_partition,
    splitting_indices,
)

# a product of a random two-qubit factor on sites 1,3 and a single
# qubit on site 2: note the blocks need not be contiguous
psi = generate_state("separable", 3, seed=4, partition="1,3|2")
blocks = parse_partition("1,3|2", 3)

print("splitting indices of 1,3|2:")
for idx in splitting_indices(blocks, 3):
    label = "".join(map(str, idx))
    print(f"  I_{label} = {cumulant_invariant(psi, idx):.3e}")

# the non-splitting index 101 lives inside the first block and survives
print("non-splitting I_101 =", f"{cumulant_invariant(psi, '101'):.6f}")
print()

# GHZ splits every partition, and every splitting invariant says so
ghz = generate_state("ghz", 3)
for text in ("1|2|3", "1,2|3"):
    worst = min(
        cumulant_invariant(ghz, idx)
        for idx in splitting_indices(parse_partition(text, 3), 3)
    )
    print(f"GHZ vs {text}: smallest splitting invariant {worst:.4f}")
