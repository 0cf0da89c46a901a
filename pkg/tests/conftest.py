import pytest

from nested_pi import _pykernels, kernels

KERNEL_NAMES = [
    "fixed_mul",
    "fixed_div",
    "fixed_sqrt",
    "radical_chain",
    "half_product",
    "inverse_odd_power",
    "conjugate_pair_sum",
    "atan_taylor",
]


@pytest.fixture
def pure_kernels(monkeypatch):
    """Route every kernel call through the pure-Python backend."""
    for name in KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(_pykernels, name))
    from nested_pi import radicals

    radicals._fixed_chain.cache_clear()
    yield
    radicals._fixed_chain.cache_clear()
