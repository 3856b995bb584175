"""Backend selection for the ring kernel.

The compiled extension is used when it imports; set ``WITTEN_GCI_PURE=1``
to force the pure-Python twin. ``use_backend`` switches temporarily and is
meant for benchmarks and parity tests, not for concurrent use.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _ringcore_py

try:
    from . import _ringcore as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _ringcore_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and not os.environ.get("WITTEN_GCI_PURE"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_active = BACKENDS[BACKEND]


def active():
    return _active


def backend_name() -> str:
    return next(name for name, mod in BACKENDS.items() if mod is _active)


@contextmanager
def use_backend(name: str):
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    previous = _active
    _active = BACKENDS[name]
    try:
        yield
    finally:
        _active = previous
