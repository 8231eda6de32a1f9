"""
Standard examples: dimension against Boolean dimension
======================================================

S_n has dimension n, yet a few orders combined with a Boolean formula
already decide every comparison.
"""
from booldim.oracles import exact_bdim_at_most, exact_dimension, optimal_realizer
from booldim.poset import standard_example
from booldim.realizer import and_realizer, verify

for n in range(2, 6):
    S = standard_example(n)
    d = exact_dimension(S)
    # the smallest s with a Boolean realizer of s orders (searched up to 3)
    b = next((s for s in (1, 2, 3) if S.n <= 6 and exact_bdim_at_most(S, s)), None)
    R = and_realizer(optimal_realizer(S))
    print(f"S_{n}: dimension {d}, AND realizer verifies: {verify(S, R).ok}, "
          f"Boolean dimension {'not searched (too many elements)' if b is None else b}")
