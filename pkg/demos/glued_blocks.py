"""
Block-glued posets
==================

Glue random 2-connected pieces at single elements, decompose the cover
graph into blocks and build a Boolean realizer from realizers of the
blocks alone.
"""
import random
from collections import Counter

from booldim.blocks import block_input, block_size_bound, build_block_realizer
from booldim.realizer import query_bits, verify
from booldim.generators import block_glued

rng = random.Random(11)
P = block_glued(6, 8, rng)
inp = block_input(P)
bd = inp.decomposition
print(f"{P.n} elements, {bd.t} blocks, inner dimension {inp.d}")
for i, Z in enumerate(bd.zparts):
    print(f"  part {i}: root {bd.roots[i]}, parent {bd.parent[i]}, elements {sorted(Z)}")

R = build_block_realizer(inp)
print(f"size {R.size} (bound {block_size_bound(inp.d)}), verifies: {verify(P, R).ok}")

# which branch of the formula settles each ordered pair
branches = Counter(R.truth.explain(query_bits(R.orders, x, y))[1]
                   for x in range(P.n) for y in range(P.n) if x != y)
for name, count in branches.most_common():
    print(f"  {name:12s} {count}")
