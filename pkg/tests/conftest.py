import numpy as np
import pytest

from triconcurrence import TripartiteDims, make_named, pure_to_density


@pytest.fixture(scope="session")
def qubit_dims():
    return TripartiteDims(2, 2, 2)


@pytest.fixture(scope="session")
def ghz(qubit_dims):
    return make_named("GHZ", qubit_dims)


@pytest.fixture(scope="session")
def ghz_density(ghz):
    return pure_to_density(ghz)


@pytest.fixture(scope="session")
def bell_times_zero(qubit_dims):
    """Bell pair on the first two qubits, |0> on the third."""
    from triconcurrence import PureState

    coeffs = np.zeros((2, 2, 2), dtype=complex)
    coeffs[0, 0, 0] = coeffs[1, 1, 0] = 1 / np.sqrt(2)
    return PureState(qubit_dims, coeffs)
