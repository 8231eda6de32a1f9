import random

from hypothesis import HealthCheck, settings, strategies as st

from booldim.generators import block_glued, random_forest_poset, random_poset

settings.register_profile(
    "repo", deadline=None, max_examples=60, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@st.composite
def posets(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    p = draw(st.sampled_from([0.1, 0.3, 0.5, 0.8]))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_poset(n, p, random.Random(seed))


@st.composite
def glued_posets(draw, min_t=1, max_t=6, max_block=6):
    t = draw(st.integers(min_t, max_t))
    seed = draw(st.integers(0, 2**32 - 1))
    return block_glued(t, max_block, random.Random(seed))


@st.composite
def forest_posets(draw, max_n=30):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_forest_poset(n, random.Random(seed), p_new_tree=0.1)
