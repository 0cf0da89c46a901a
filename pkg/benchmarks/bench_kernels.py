"""Time the GMP kernels against the pure-Python fallback on the heavy workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from fractions import Fraction

from nested_pi import _pykernels, arctan_argument, make_context
from nested_pi.precision import HPReal, to_fixed

try:
    from nested_pi import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def workloads():
    """(name, callable(backend)) pairs; each returns the kernel's integer result."""
    table = make_context(2200, 20)
    tbits = table.working_bits
    x15 = to_fixed(arctan_argument(15, table).argument, tbits)
    fifth = to_fixed(HPReal.of(Fraction(1, 5), table), tbits)
    vbits = make_context(1100, 1700).working_bits
    return [
        ("series k=15 m=169 (2200 digits)", lambda kb: kb.conjugate_pair_sum(x15, 1, 169, tbits)),
        ("series L=3 m=120 (2200 digits)", lambda kb: kb.conjugate_pair_sum(1 << tbits, 3, 120, tbits)),
        ("atan(1/5) (2200 digits)", lambda kb: kb.atan_taylor(fifth, tbits)),
        ("radical chain K=1700 (1100 digits)", lambda kb: kb.radical_chain(1700, vbits)),
        ("viete product K=1700 (1100 digits)",
         lambda kb: kb.half_product(kb.radical_chain(1700, vbits)[1:], vbits)),
    ]


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels unavailable; build with `pip install -e .`", file=sys.stderr)
        return 1

    rows = []
    for name, run in workloads():
        if run(_ckernels) != run(_pykernels):
            print(f"backends disagree on {name}", file=sys.stderr)
            return 1
        gmp = best_of(lambda: run(_ckernels), args.repeat)
        py = best_of(lambda: run(_pykernels), args.repeat)
        rows.append({"workload": name, "gmp_ms": round(gmp * 1e3, 3), "python_ms": round(py * 1e3, 3),
                     "speedup": round(py / gmp, 2)})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'workload':<38} {'gmp ms':>10} {'python ms':>10} {'speedup':>8}")
        for r in rows:
            print(f"{r['workload']:<38} {r['gmp_ms']:>10.3f} {r['python_ms']:>10.3f} {r['speedup']:>7.2f}x")
        print(f"geometric mean speedup: {statistics.geometric_mean(r['speedup'] for r in rows):.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
