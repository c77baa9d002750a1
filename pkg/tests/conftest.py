"""Shared fixtures and constants for the test suite."""
import math

import pytest

# Tip of the n=1 Mott lobe in mean field (hopping in units of U, f absorbed).
TC = 3.0 - 2.0 * math.sqrt(2.0)
MUC = math.sqrt(2.0) - 1.0


def mott_boundary(mu: float) -> float:
    """Mean-field lobe boundary t_b of the n=1 Mott lobe."""
    return mu * (1.0 - mu) / (1.0 + mu)


@pytest.fixture(scope="session")
def tip():
    return TC, MUC
