"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``AMPLIKIT_PURE_PYTHON=1`` to force the fallback (used by the benchmark
to compare both implementations in one process the honest way: via a fresh
interpreter per implementation).
"""
import os

if os.environ.get("AMPLIKIT_PURE_PYTHON") == "1":
    from . import _signcore_py as _impl

    IMPLEMENTATION = "python"
else:
    try:
        from . import _signcore as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "cython"
    except ImportError:
        from . import _signcore_py as _impl

        IMPLEMENTATION = "python"

var_bytes = _impl.var_bytes
varbar_bytes = _impl.varbar_bytes
compose_bytes = _impl.compose_bytes
compose_closure = _impl.compose_closure

_TO_BYTE = {0: 0, 1: 1, -1: 2}
_FROM_BYTE = (0, 1, -1)


def pack(entries):
    """Pack a sequence over {-1, 0, 1} into kernel bytes."""
    return bytes(_TO_BYTE[e] for e in entries)


def unpack(packed):
    """Inverse of :func:`pack`."""
    return tuple(_FROM_BYTE[b] for b in packed)
