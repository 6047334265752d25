import pytest

from hyperpd import PayoffParams, build_payoff_table


@pytest.fixture(scope="session")
def table9():
    return build_payoff_table(PayoffParams(temptation=9.0))


@pytest.fixture(scope="session")
def table5():
    return build_payoff_table(PayoffParams(temptation=5.0))
