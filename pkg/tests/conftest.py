import hypothesis.strategies as st
from hypothesis import settings

from bppcalc.permutations import Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def permutations(draw, min_d=1, max_d=6):
    d = draw(st.integers(min_d, max_d))
    images = draw(st.permutations(list(range(1, d + 1))))
    return Permutation(tuple(images))


@st.composite
def permutation_pairs(draw, min_d=1, max_d=5):
    d = draw(st.integers(min_d, max_d))
    a = draw(st.permutations(list(range(1, d + 1))))
    b = draw(st.permutations(list(range(1, d + 1))))
    return Permutation(tuple(a)), Permutation(tuple(b))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number].line())
