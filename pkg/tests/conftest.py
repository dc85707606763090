import random

import pytest

from g2moduli.fields import QQ
from g2moduli.forms import random_sextic


@pytest.fixture
def rng():
    return random.Random(20240901)


@pytest.fixture(scope="session")
def sextic_pool():
    """Shared pool of random squarefree integer sextics over Q."""
    r = random.Random(777)
    return [random_sextic(QQ, r, 9, squarefree=True) for _ in range(40)]
