import hypothesis.strategies as st
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def symbol_tuples(min_size=2, max_size=40, alphabet=2):
    return st.lists(
        st.integers(min_value=0, max_value=alphabet - 1),
        min_size=min_size,
        max_size=max_size,
    ).map(tuple)
