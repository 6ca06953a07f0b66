"""Fused evolution kernels: oracle query + coin + flip-flop shift in one pass.

Two interchangeable implementations are kept side by side:

* ``step_numba`` -- serial ``@njit`` kernel, the default when numba imports;
* ``step_numpy`` -- vectorized pure-numpy fallback.

Selection happens once at import time.  Set ``LACKWALK_BACKEND=numpy`` to
force the fallback, ``LACKWALK_BACKEND=numba`` to require the JIT path.
Both kernels are deterministic (no parallel reductions, no fastmath), so a
fixed backend reproduces a series bitwise.

The oracle is folded into the coin using the per-vertex identities
oracle-then-coin = -C at the marked vertex (Grover query) and = -I at the
marked vertex (SKW query); everywhere else the plain coin applies.
"""

from __future__ import annotations

import os

import numpy as np

ORACLE_NONE = 0
ORACLE_GROVER = 1
ORACLE_SKW = 2


def step_numpy(amps, out, scratch, coin, marked, oracle, perm):
    """One walk step, pure numpy.  Reads ``amps``, writes ``out``.

    ``scratch`` must be a distinct buffer of the same shape; ``perm`` is the
    self-inverse flip-flop index permutation.
    """
    blocks = amps.reshape(-1, 5)
    coined = scratch.reshape(-1, 5)
    dots = blocks @ coin
    np.outer(dots, coin, out=coined)
    coined *= 2.0
    coined -= blocks
    if oracle == ORACLE_GROVER:
        coined[marked] = blocks[marked] - 2.0 * dots[marked] * coin
    elif oracle == ORACLE_SKW:
        coined[marked] = -blocks[marked]
    np.take(scratch, perm, out=out)
    return out


try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


if njit is not None:

    @njit(cache=True)
    def _step_jit(amps, out, scratch, coin, marked, oracle, perm):
        n_vertices = amps.shape[0] // 5
        for v in range(n_vertices):
            b = 5 * v
            dot = (
                coin[0] * amps[b]
                + coin[1] * amps[b + 1]
                + coin[2] * amps[b + 2]
                + coin[3] * amps[b + 3]
                + coin[4] * amps[b + 4]
            )
            if v == marked and oracle == 1:
                for k in range(5):
                    scratch[b + k] = amps[b + k] - 2.0 * dot * coin[k]
            elif v == marked and oracle == 2:
                for k in range(5):
                    scratch[b + k] = -amps[b + k]
            else:
                for k in range(5):
                    scratch[b + k] = 2.0 * dot * coin[k] - amps[b + k]
        for i in range(amps.shape[0]):
            out[i] = scratch[perm[i]]
        return out

    def step_numba(amps, out, scratch, coin, marked, oracle, perm):
        """One walk step through the JIT kernel.  Same contract as step_numpy."""
        return _step_jit(amps, out, scratch, coin, int(marked), int(oracle), perm)

else:
    step_numba = None


def select_backend(env: str | None = None) -> str:
    """Resolve the backend name from an env-style string.

    ``None``/empty picks numba when importable, numpy otherwise.
    """
    choice = (env or "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if step_numba is None:
            raise ImportError("LACKWALK_BACKEND=numba requested but numba is not importable")
        return "numba"
    if choice:
        raise ValueError(f"unknown LACKWALK_BACKEND value {choice!r}; use 'numba' or 'numpy'")
    return "numba" if step_numba is not None else "numpy"


BACKEND = select_backend(os.environ.get("LACKWALK_BACKEND"))
step = step_numba if BACKEND == "numba" else step_numpy
