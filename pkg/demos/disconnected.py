"""
Realizers for disconnected posets
=================================

Several small components, each with an optimal realizer, combined into one
Boolean realizer whose size depends only on the largest inner dimension.
"""
import random

from booldim.components import (build_component_realizer, component_input,
                                component_size_bound)
from booldim.generators import random_disconnected
from booldim.realizer import verify

rng = random.Random(3)
for trial in range(5):
    P = random_disconnected(rng.randint(2, 6), 10, rng)
    inp = component_input(P, d_max=4)
    R = build_component_realizer(inp)
    rep = verify(P, R)
    print(f"n={P.n:3d} components={len(inp.components)} d={inp.d} "
          f"size={R.size:3d} bound={component_size_bound(inp.d):3d} ok={rep.ok}")

# the families and their lengths for the last instance
print(dict(zip(R.layout.names, R.layout.lengths)))
