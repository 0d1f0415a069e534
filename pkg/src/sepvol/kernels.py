"""Backend selection for the hot per-state kernels.

Prefers the compiled extension, falls back to the NumPy implementations
when it is missing, and honors ``SEPVOL_PURE_PYTHON=1`` to force the
fallback (useful for testing and for the backend benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SEPVOL_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND_NAME

adjusted_from_density = _impl.adjusted_from_density
density_from_adjusted = _impl.density_from_adjusted
spin_from_density = _impl.spin_from_density
density_from_spin = _impl.density_from_spin
l1_spin_norm = _impl.l1_spin_norm
purity = _impl.purity
partial_transpose = _impl.partial_transpose
partial_trace = _impl.partial_trace
