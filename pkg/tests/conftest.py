import numpy as np
import pytest

from dirspace.measure import AreaDisc, Atom, CircleArc, CircleUniform, MeasureSpec, random_pairs

CIRCLE = MeasureSpec((CircleUniform(1.0),))
ATOM0 = MeasureSpec((Atom(0j, 1.0),))
ATOM05 = MeasureSpec((Atom(0.5 + 0j, 1.0),))
BOUNDARY1 = MeasureSpec((Atom(1 + 0j, 1.0),))
ZERO = MeasureSpec(())


def named_corpus():
    """Hand-picked measures covering every component kind."""
    return {
        "circle": CIRCLE,
        "atom0": ATOM0,
        "atom05": ATOM05,
        "boundary_atom": BOUNDARY1,
        "complex_atom": MeasureSpec((Atom(0.3 - 0.6j, 0.7),)),
        "arc": MeasureSpec((CircleArc(0.4, 2.5, 1.2),)),
        "area_half": MeasureSpec((AreaDisc(0.5, 0.8),)),
        "area_full": MeasureSpec((AreaDisc(1.0, 1.0),)),
        "mixture": MeasureSpec((Atom(-0.2 + 0.1j, 0.5), CircleArc(1.0, 4.0, 0.3),
                                AreaDisc(0.8, 0.4), Atom(np.exp(2j), 0.2))),
    }


@pytest.fixture(scope="session")
def corpus():
    return named_corpus()


@pytest.fixture(scope="session")
def random_corpus():
    return random_pairs(2024, 20)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
