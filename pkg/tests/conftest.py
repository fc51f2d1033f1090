from fractions import Fraction

import pytest

from monorbit.scalars import MonomialScalar, parse_scalar


@pytest.fixture
def S():
    """Shorthand scalar builder: S('1/2 * zeta(12)^5')."""

    def build(text):
        if isinstance(text, MonomialScalar):
            return text
        if isinstance(text, (int, Fraction)):
            return MonomialScalar.make(Fraction(text))
        return parse_scalar(text)

    return build
