import pytest

from gwtree import pmf_from_weights, OffspringSchedule


@pytest.fixture
def small_schedule():
    """Offspring law with P(0)=.3, P(1)=.3, P(2)=.4 on three levels."""
    return OffspringSchedule.homogeneous(pmf_from_weights({0: .3, 1: .3, 2: .4}), 3)


@pytest.fixture
def binary_schedule():
    """Zero or two children with equal probability on two levels."""
    return OffspringSchedule.homogeneous(pmf_from_weights({0: 1, 2: 1}), 2)


@pytest.fixture
def chain_schedule():
    """Exactly one child everywhere."""
    return OffspringSchedule.homogeneous(pmf_from_weights({1: 1}), 3)


@pytest.fixture(autouse=True)
def serial_jobs(monkeypatch):
    monkeypatch.setenv('GWTREE_N_JOBS', '1')
