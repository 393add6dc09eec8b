"""Compare the pure Python and compiled kernels.

Two levels: raw kernel calls on identical inputs (both modules imported
side by side), and an element-level workload run in subprocesses so each
one binds its own backend through the normal import path.

Run as: python3 benchmarks/bench_core.py
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import srlab._kernel_py as kpy

try:
    import srlab._kernel_cy as kcy
except ImportError:
    kcy = None


def _support(rng: random.Random, nterms: int, q: int) -> dict:
    out = {}
    while len(out) < nterms:
        key = (rng.randint(-40, 40), rng.randint(-10, 10))
        out[key] = rng.randrange(1, q)
    return out


def _tables(q: int, p: int) -> tuple[list, list]:
    addf = [0] * (q * q)
    mulf = [0] * (q * q)
    for x in range(q):
        for y in range(q):
            addf[x * q + y] = (x + y) % p
            mulf[x * q + y] = (x * y) % p
    return addf, mulf


def bench_kernels(reps: int = 200) -> None:
    rng = random.Random(1)
    q = p = 3
    addf, mulf = _tables(q, p)
    ta = _support(rng, 64, q)
    tb = _support(rng, 64, q)
    bound = (60, 0)
    rows = []
    for name, mod in (("python", kpy), ("cython", kcy)):
        if mod is None:
            rows.append((name, None, None))
            continue
        t0 = time.perf_counter()
        for _ in range(reps):
            mod.ser_mul(ta, tb, q, addf, mulf, None, p)
        unbounded = time.perf_counter() - t0
        t0 = time.perf_counter()
        for _ in range(reps):
            mod.ser_mul(ta, tb, q, addf, mulf, bound, p)
        bounded = time.perf_counter() - t0
        rows.append((name, unbounded, bounded))
    print(f"kernel ser_mul, 64x64 terms, {reps} reps")
    for name, unbounded, bounded in rows:
        if unbounded is None:
            print(f"  {name:8s}  (not built)")
        else:
            print(f"  {name:8s}  unbounded {unbounded:.3f}s   bounded {bounded:.3f}s")
    if rows[1][1] is not None:
        print(f"  speedup   unbounded {rows[0][1] / rows[1][1]:.1f}x   bounded {rows[0][2] / rows[1][2]:.1f}x")


_CHILD = r"""
import time
from srlab.core import BACKEND
from srlab.field import FieldCfg, TitsField
from srlab.groups import TElem
import random

field = TitsField(FieldCfg(char=3, mode="hahn", m=1))
rng = random.Random(5)

def mono():
    exp = field.unlat((rng.randint(-6, 6), rng.randint(-2, 2)))
    return field.monomial(exp, rng.randrange(1, 3))

def short():
    return mono() + mono()

elems = [TElem(mono(), short(), mono()) for _ in range(120)]
t0 = time.perf_counter()
for a in elems:
    assert a.omega().omega().agrees(a)
print(f"{BACKEND}: {time.perf_counter() - t0:.3f}s")
"""


def bench_elements() -> None:
    print("element-level omega round trips, 120 mixed samples")
    for env_extra in ({"SRLAB_PURE": "1"}, {}):
        env = dict(os.environ)
        env.pop("SRLAB_PURE", None)
        env.update(env_extra)
        out = subprocess.run(
            [sys.executable, "-c", _CHILD], env=env, capture_output=True, text=True
        )
        sys.stdout.write("  " + (out.stdout or out.stderr))


if __name__ == "__main__":
    bench_kernels()
    bench_elements()
