import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from photon_soliton import CODATA2018, NormalizationPair, PhotonSpec  # noqa: E402

LAM = 650e-9


@pytest.fixture
def lam():
    return LAM


@pytest.fixture
def k():
    return CODATA2018


@pytest.fixture
def paper_norm():
    return NormalizationPair.paper(LAM)


@pytest.fixture(params=["spin+", "spin-", "linear"])
def spec(request):
    a, b = {"spin+": (1, 0), "spin-": (0, 1), "linear": (1, 1)}[request.param]
    return PhotonSpec(LAM, 1, a, b)
