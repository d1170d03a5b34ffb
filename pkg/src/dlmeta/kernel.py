"""Backend selection for the saturation kernel.

The compiled extension is used when it was built; set ``DLMETA_PURE=1`` to
force the pure-Python implementation.
"""

import os

from . import _pykernel

ATOM, AND, OR, TRUE = _pykernel.ATOM, _pykernel.AND, _pykernel.OR, _pykernel.TRUE

try:
    if os.environ.get("DLMETA_PURE"):
        raise ImportError("pure backend requested")
    from ._kernel import saturate as _compiled_saturate
except ImportError:
    _compiled_saturate = None

BACKENDS = {"python": _pykernel.saturate}
if _compiled_saturate is not None:
    BACKENDS["compiled"] = _compiled_saturate

DEFAULT_BACKEND = "compiled" if _compiled_saturate is not None else "python"


def get_saturate(backend=None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}; available: {sorted(BACKENDS)}") from None
