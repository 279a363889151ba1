import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


CORPUS = [
    "golden.boop",
    "appendix_a_div1.boop",
    "appendix_a_div2.boop",
    "appendix_a_div3.boop",
    "appendix_c.boop",
]

LISTINGS = [
    "listings/listing1.ml",
    "listings/listing2.ml",
    "listings/appendix_a_div1.ml",
    "listings/appendix_a_div2.ml",
    "listings/appendix_a_div3.ml",
    "listings/appendix_c.ml",
]
