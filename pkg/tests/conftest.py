"""Pytest configuration and fixtures."""

import os
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction

import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Keep tests independent of a developer's .env
os.environ["WITT_RESIDUE_SEED"] = "0"
os.environ["WITT_RESIDUE_TORDER"] = "8"
os.environ["WITT_RESIDUE_MMAX"] = "4"

from app.models.poly import MultiPoly  # noqa: E402
from app.models.rings import QQ, CoefficientRing  # noqa: E402
from app.services.residues import MilnorAlgebra, milnor_algebra  # noqa: E402
from app.services.singularity import QHSingularity, qh_check  # noqa: E402
from app.utils.expr_parser import parse_poly, to_multipoly, variable_order  # noqa: E402

PolyFactory = Callable[..., MultiPoly]
GermFactory = Callable[..., QHSingularity]


def build_poly(
    text: str, variables: Sequence[str] | None = None, ring: CoefficientRing = QQ
) -> MultiPoly:
    tree = parse_poly(text)
    names = tuple(variables) if variables is not None else variable_order([tree])
    return to_multipoly(tree, ring, names)


def build_germ(
    text: str,
    weights: Sequence[Fraction | int | str],
    variables: Sequence[str] | None = None,
    ring: CoefficientRing = QQ,
) -> QHSingularity:
    return qh_check(build_poly(text, variables, ring), [Fraction(w) for w in weights])


@pytest.fixture
def make_poly() -> PolyFactory:
    """Factory building a MultiPoly from text."""
    return build_poly


@pytest.fixture
def make_germ() -> GermFactory:
    """Factory building a validated germ from text and weights."""
    return build_germ


@pytest.fixture
def a1() -> QHSingularity:
    """A_1 in two variables: x^2 + y^2."""
    return build_germ("x^2 + y^2", ["1/2", "1/2"])


@pytest.fixture
def a2() -> QHSingularity:
    """A_2: x^3."""
    return build_germ("x^3", ["1/3"])


@pytest.fixture
def a3() -> QHSingularity:
    """A_3: x^4."""
    return build_germ("x^4", ["1/4"])


@pytest.fixture
def a4() -> QHSingularity:
    """A_4: x^5."""
    return build_germ("x^5", ["1/5"])


@pytest.fixture
def d4() -> QHSingularity:
    """D_4: x^3 + x*y^2."""
    return build_germ("x^3 + x*y^2", ["1/3", "1/3"])


@pytest.fixture
def fermat_cubic() -> QHSingularity:
    """x^3 + y^3."""
    return build_germ("x^3 + y^3", ["1/3", "1/3"])


@pytest.fixture
def fermat_quartic() -> QHSingularity:
    """x^4 + y^4."""
    return build_germ("x^4 + y^4", ["1/4", "1/4"])


@pytest.fixture
def a2_algebra(a2: QHSingularity) -> MilnorAlgebra:
    """Milnor algebra of x^3."""
    return milnor_algebra(a2)


@pytest.fixture
def d4_algebra(d4: QHSingularity) -> MilnorAlgebra:
    """Milnor algebra of x^3 + x*y^2."""
    return milnor_algebra(d4)
