import hypothesis.strategies as st
import pytest

from modaltab.enumeration import EnumerationBudget, enumerate_models
from modaltab.syntax import (
    And,
    Atom,
    Box,
    Diamond,
    Iff,
    Implies,
    Not,
    Or,
    StrictImplies,
)


def formula_strategy(atoms=("p", "q"), max_leaves=16, sugar=True):
    base = st.sampled_from([Atom(a) for a in atoms])

    def extend(children):
        options = (
            st.builds(Not, children)
            | st.builds(Box, children)
            | st.builds(Diamond, children)
            | st.builds(And, children, children)
            | st.builds(Or, children, children)
            | st.builds(Implies, children, children)
            | st.builds(Iff, children, children)
        )
        if sugar:
            options |= st.builds(StrictImplies, children, children)
        return options

    return st.recursive(base, extend, max_leaves=max_leaves)


@pytest.fixture(scope="session")
def small_models():
    """All models with at most 2 worlds over atoms p, q (264 of them)."""
    return list(enumerate_models(EnumerationBudget(2, ("p", "q")), frozenset()))


@pytest.fixture(scope="session")
def one_atom_models():
    """All models with at most 3 worlds over the single atom p."""
    return list(enumerate_models(EnumerationBudget(3, ("p",)), frozenset()))
