"""Compare the compiled and pure-Python kernel backends.

Each workload runs in a fresh interpreter per backend (the backend is fixed
at import time by FCOMPAT_PURE_PYTHON). Prints best-of-N wall times and the
speedup.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
from fcompat import kernels
from fcompat.frobenius import bracket_power, cartier_multiplier
from fcompat.fsing import Presentation, compatible_ideals
from fcompat.groebner import Ideal, colon
from fcompat.poly import Ring
from fcompat.sampling import random_ideal

def gb_random():
    rng = random.Random(0)
    R = Ring(32003, ["a", "b", "c", "d"])
    for _ in range(40):
        Ideal(R, list(random_ideal(R, rng, max_gens=4, max_deg=3, max_terms=4).generators)).gb

def cyclic6():
    names = ["a", "b", "c", "d", "e", "f"]
    R = Ring(32003, names)
    n = len(names)
    gens = [" + ".join("*".join(names[(i + j) % n] for j in range(k)) for i in range(n)) for k in range(1, n)]
    gens.append("*".join(names) + " - 1")
    assert len(Ideal.parse(R, ", ".join(gens)).gb) == 45

def katsura4():
    R = Ring(32003, ["a", "b", "c", "d", "e"])
    Ideal.parse(R, "a+2*b+2*c+2*d+2*e-1, a^2+2*b^2+2*c^2+2*d^2+2*e^2-a, 2*a*b+2*b*c+2*c*d+2*d*e-b, "
                   "b^2+2*a*c+2*b*d+2*c*e-c, 2*b*c+2*a*d+2*b*e-d").gb

def cubic_levels():
    R = Ring(7, ["x", "y", "z"])
    A = Ideal.parse(R, "x^3 + y^3 + z^3")
    cartier_multiplier(A, 3)

def cubic_lattice():
    R = Ring(7, ["x", "y", "z"])
    compatible_ideals(Presentation(R, "x^3 + y^3 + z^3"))

name = sys.argv[1]
fn = globals()[name]
start = time.perf_counter()
fn()
print(json.dumps({"backend": kernels.BACKEND, "seconds": time.perf_counter() - start}))
"""

WORKLOADS = ["gb_random", "cyclic6", "katsura4", "cubic_levels", "cubic_lattice"]


def run(name, pure):
    env = dict(os.environ, FCOMPAT_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD, name], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':<16}{'compiled':>12}{'python':>12}{'speedup':>10}")
    for name in WORKLOADS:
        best = {}
        for pure in (False, True):
            runs = [run(name, pure) for _ in range(args.repeat)]
            best[pure] = (runs[0]["backend"], min(r["seconds"] for r in runs))
        (cb, ct), (_, pt) = best[False], best[True]
        label = f"{ct:10.3f}s" if cb == "cython" else "  (absent)"
        print(f"{name:<16}{label:>12}{pt:10.3f}s{pt / ct if cb == 'cython' else float('nan'):9.2f}x")


if __name__ == "__main__":
    main()
