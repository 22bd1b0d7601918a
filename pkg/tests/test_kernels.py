import json
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from conftest import corpus_path
from fcompat import _pykernels, kernels
from fcompat.groebner import Ideal
from fcompat.poly import Ring
from fcompat.sampling import random_ideal, random_polynomial

ckernels = pytest.importorskip("fcompat._ckernels")


def packed(f):
    return dict(f.terms)


@given(st.integers(0, 100_000), st.sampled_from([2, 3, 7, 2_147_483_647]))
def test_arithmetic_kernels_agree(seed, p):
    rng = random.Random(seed)
    R = Ring(p, ["x", "y", "z"])
    f, g = (packed(random_polynomial(R, rng, max_deg=4, max_terms=5, constant=True)) for _ in range(2))
    c = rng.randrange(1, p)
    shift = R.monomial((1, 0, 2)).lead_monomial
    for name, args in (("poly_add", (f, g, p)), ("poly_mul", (f, g, p)), ("poly_scale", (f, c, shift, p)),
                       ("poly_sub_scaled", (f, g, c, shift, p))):
        assert getattr(ckernels, name)(*args) == getattr(_pykernels, name)(*args)


@given(st.integers(0, 100_000), st.sampled_from([2, 5]))
def test_reduction_kernels_agree(seed, p):
    rng = random.Random(seed)
    R = Ring(p, ["x", "y", "z"])
    G = list(random_ideal(R, rng).gb)
    leads = [g.lead_monomial for g in G]
    tails = [[(m, c) for m, c in g.terms.items() if m != l] for g, l in zip(G, leads)]
    f = packed(random_polynomial(R, rng, max_deg=5, max_terms=6, constant=True))
    guard = R.codec.guard
    assert ckernels.reduce_full(f, leads, tails, guard, p) == _pykernels.reduce_full(f, leads, tails, guard, p)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_backend_gives_same_reports():
    code = ("import json, sys; from fcompat import kernels, cli; "
            "sys.stdout.write(kernels.BACKEND + '\\n'); cli.main(sys.argv[1:])")
    outs = {}
    for flag in ("0", "1"):
        env = dict(os.environ, FCOMPAT_PURE_PYTHON=flag)
        proc = subprocess.run([sys.executable, "-c", code, "compat-list", "-i", str(corpus_path("stanley_reisner_p2")),
                               "--format", "json"], capture_output=True, text=True, env=env, check=True)
        backend, _, body = proc.stdout.partition("\n")
        outs[backend] = json.loads(body)
    assert "python" in outs
    assert len(set(json.dumps(v, sort_keys=True) for v in outs.values())) == 1
