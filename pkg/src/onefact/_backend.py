"""Pick the kernel implementation at import time.

The compiled ``_ccore`` is used when it imports; ``ONEFACT_BACKEND=python``
forces the pure-Python ``_pycore``.  ``ONEFACT_BACKEND=cython`` makes a
missing extension an error instead of a silent fallback.
"""
import os

_want = os.environ.get("ONEFACT_BACKEND", "").strip().lower()

if _want == "python":
    from . import _pycore as core
    BACKEND = "python"
else:
    try:
        from . import _ccore as core
        BACKEND = "cython"
    except ImportError:
        if _want == "cython":
            raise
        from . import _pycore as core
        BACKEND = "python"

canon_search = core.canon_search
cert_bits = core.cert_bits
canon_dense = core.canon_dense
dense_extensions = core.dense_extensions
