"""Backend selection for the hot kernels.

The compiled module is used when it was built; setting the environment
variable ``MONOREG_PURE_PYTHON=1`` (or calling :func:`set_backend`) selects
the pure-Python reference instead.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_impl = _kernels_py


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def set_backend(name: str) -> None:
    global _impl
    if name == "python":
        _impl = _kernels_py
    elif name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _impl = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


def backend() -> str:
    return _impl.BACKEND


def get(name: str):
    if name == "python":
        return _kernels_py
    if name == "cython" and _compiled is not None:
        return _compiled
    raise ValueError(f"backend {name!r} unavailable")


def rank_mod_p(rows, p):
    return _impl.rank_mod_p(rows, p)


def rank_integer(rows):
    return _impl.rank_integer(rows)


def lcm_lattice(gens, max_subsets=1 << 20, method=None):
    return _impl.lcm_lattice(gens, max_subsets, method)


def koszul_homology(gens, a, p):
    return _impl.koszul_homology(gens, a, p)


def koszul_batch(gens, points, chars):
    return _impl.koszul_batch(gens, points, chars)


set_backend(
    "cython" if _compiled is not None and not os.environ.get("MONOREG_PURE_PYTHON") else "python"
)
