"""
Forests and the counting bound
==============================

Posets whose cover graph is a forest need at most three orders. In the
other direction, counting height-two posets forces the number of orders
of any Boolean realizer to grow with n.
"""
import random

from booldim.components import min_orders_lower_bound
from booldim.generators import random_forest_poset
from booldim.oracles import forest_realizer3, is_realizer

rng = random.Random(5)
for n in (10, 40, 120):
    P = random_forest_poset(n, rng)
    R = forest_realizer3(P)
    print(f"forest n={n}: {len(R)} orders, realizer: {is_realizer(P, R)}")

for n in (4, 5, 10, 100, 1000, 10**4):
    print(f"n={n:6d}: some height-two poset needs at least {min_orders_lower_bound(n)} orders")
