"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N] [--restarts N]

Reports objective evaluations per second and the wall time of one simplex
restart for each measured-dimension shape, plus the agreement between the
two backends' results.
"""

import argparse
import time

import numpy as np

from gendiscord._backend import load_backend
from gendiscord.discord import _front_tensor, initial_params
from gendiscord.entropy import von_neumann_entropy
from gendiscord.qcore import Partition, partial_trace
from gendiscord.states import random_state

CASES = [
    ("2 qubits, gamma=1", (2, 2), (1,)),
    ("3 qubits, gamma=1", (2, 2, 2), (1,)),
    ("3 qubits, gamma=12", (2, 2, 2), (1, 2)),
    ("qutrit-qubit, gamma=1", (3, 2), (1,)),
]


def _problem(dims, gamma, seed):
    rho = random_state(dims, seed=seed)
    part = Partition(gamma, len(dims))
    r, m = _front_tensor(rho, part)
    offset = von_neumann_entropy(partial_trace(rho, part)) - von_neumann_entropy(rho)
    return r, m, offset


def _rate(backend, r, m, offset, repeat):
    rng = np.random.default_rng(0)
    xs = rng.uniform(0, 2 * np.pi, (repeat, m * (m - 1)))
    t0 = time.perf_counter()
    for x in xs:
        backend.gamma_objective(r, x, offset)
    return repeat / (time.perf_counter() - t0)


def _restart(backend, r, m, offset, restarts):
    t0 = time.perf_counter()
    best = min(
        backend.minimize_gamma(r, offset, initial_params(m, 0, i), 0.3, 1e-9, 2000).value
        for i in range(restarts)
    )
    return (time.perf_counter() - t0) / restarts, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=2000, help="objective evaluations per timing")
    ap.add_argument("--restarts", type=int, default=4, help="simplex restarts per timing")
    args = ap.parse_args(argv)

    backends = {"python": load_backend("python")}
    try:
        backends["compiled"] = load_backend("compiled")
    except ImportError:
        print("compiled backend unavailable; timing the Python fallback only")

    header = f"{'case':<24}{'backend':<10}{'evals/s':>12}{'s/restart':>12}{'best':>16}"
    print(header)
    print("-" * len(header))
    for name, dims, gamma in CASES:
        r, m, offset = _problem(dims, gamma, seed=42)
        rows = {}
        for label, be in backends.items():
            rate = _rate(be, r, m, offset, args.repeat)
            per, best = _restart(be, r, m, offset, args.restarts)
            rows[label] = (rate, per, best)
            print(f"{name:<24}{label:<10}{rate:>12.0f}{per:>12.4f}{best:>16.12f}")
        if len(rows) == 2:
            speed = rows["python"][1] / rows["compiled"][1]
            diff = abs(rows["python"][2] - rows["compiled"][2])
            print(f"{'':<24}speedup {speed:.1f}x, |difference| {diff:.1e}")


if __name__ == "__main__":
    main()
