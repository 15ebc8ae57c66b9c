import hypothesis.strategies as st
from hypothesis import settings

from branched_crystals.core import CrystalLabel

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def labels(draw, lo=0, hi=4, negative_lo=-4):
    kind = draw(st.sampled_from(["V", "M", "T", "Msigma"]))
    low = negative_lo if kind == "M" else lo
    return CrystalLabel(kind, draw(st.integers(low, hi)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
