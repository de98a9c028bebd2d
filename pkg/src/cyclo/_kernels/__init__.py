"""Kernel backend selection.

Prefers the compiled extension, falls back to the NumPy module when the
extension is absent.  CYCLO_BACKEND=numpy or CYCLO_BACKEND=c forces a
choice; forcing the compiled backend when it is missing raises ImportError
rather than silently degrading.
"""

import os

_forced = os.environ.get("CYCLO_BACKEND", "").strip().lower()

if _forced in ("py", "python", "numpy"):
    from . import _pk as _impl
elif _forced in ("c", "ext", "compiled"):
    from . import _ck as _impl
elif _forced:
    raise ImportError(f"unknown CYCLO_BACKEND value: {_forced!r}")
else:
    try:
        from . import _ck as _impl
    except ImportError:
        from . import _pk as _impl

BACKEND = _impl.BACKEND_NAME
GUARD_LIMIT = _impl.GUARD_LIMIT
mul_one_minus_pass = _impl.mul_one_minus_pass
div_one_minus_pass = _impl.div_one_minus_pass
chi_profile = _impl.chi_profile
height_scan = _impl.height_scan
