import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dinerq.equilibrium import enumerate_table
from dinerq.payoff import builtin_table


@pytest.fixture(scope="session")
def table():
    return builtin_table()


@pytest.fixture(scope="session")
def classical_records(table):
    return enumerate_table("classical", table)


@pytest.fixture(scope="session")
def quantum_records(table):
    return enumerate_table("quantum", table)
