"""Fixed-point kernel backend, chosen at import.

The GMP extension is used when it was built; setting ``NESTED_PI_KERNEL=python``
forces the pure-Python kernels.  Both expose the same functions and return
identical integers.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("NESTED_PI_KERNEL", "").lower() not in ("python", "py", "pure"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "gmp"
    except ImportError:
        _impl = _pykernels

fixed_mul = _impl.fixed_mul
fixed_div = _impl.fixed_div
fixed_sqrt = _impl.fixed_sqrt
radical_chain = _impl.radical_chain
half_product = _impl.half_product
inverse_odd_power = _impl.inverse_odd_power
conjugate_pair_sum = _impl.conjugate_pair_sum
atan_taylor = _impl.atan_taylor

__all__ = [
    "BACKEND",
    "fixed_mul",
    "fixed_div",
    "fixed_sqrt",
    "radical_chain",
    "half_product",
    "inverse_odd_power",
    "conjugate_pair_sum",
    "atan_taylor",
]
