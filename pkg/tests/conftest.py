import pytest

from besovlab import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compile (or no-op on the numpy path) so timed tests measure math,
    # not compilation
    _kernels.warm_up()
