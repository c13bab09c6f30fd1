import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from classcover.engine import build_group

_TABLES = {}


def get_table(spec_text):
    if spec_text not in _TABLES:
        _TABLES[spec_text] = build_group(spec_text)
    return _TABLES[spec_text]


@pytest.fixture
def table_of():
    return get_table


# groups <= 500 elements with soluble derived series, plus S_4 and dihedrals
SOLUBLE_CORPUS = [
    "C_2", "C_3", "C_6", "C_12", "S_3", "S_4", "A_4",
    "D_3", "D_4", "D_5", "D_6", "D_8", "D_10", "D_12",
    "SL(2,3)", "prod(C_2,C_2)", "prod(S_3,C_2)", "prod(A_4,C_3)",
]

# the general test corpus, all orders <= 500
GENERAL_CORPUS = SOLUBLE_CORPUS + [
    "A_5", "S_5", "SL(2,5)", "PSL(2,7)", "A_6", "prod(A_5,C_2)", "tau(5)",
    "cprod(SL(2,3),SL(2,3))",
]

COVER_CORPUS = [
    "A_5", "A_6", "A_7", "A_8", "PSL(2,7)", "PSL(2,11)", "PSL(2,13)", "SL(2,5)",
]
