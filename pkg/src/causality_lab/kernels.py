"""Dispatch to the active kernel backend (numba by default, numpy via
CAUSALITY_LAB_NO_NUMBA=1). Both implementations are importable directly for
agreement tests and the benchmark."""
from . import backend
from . import _kernels_np as numpy_impl

TERM_SPAN = numpy_impl.TERM_SPAN
TERM_DOMAIN = numpy_impl.TERM_DOMAIN
TERM_EXCISION = numpy_impl.TERM_EXCISION

if backend.USE_NUMBA:
    from . import _kernels_nb as _active
else:
    _active = numpy_impl

integrate_null_raw = _active.integrate_null_raw
longest_path_raw = _active.longest_path_raw
wrap_angle = numpy_impl.wrap_angle
metric_diag = numpy_impl.metric_diag

ACTIVE_BACKEND = backend.ACTIVE_BACKEND


def load_numba_impl():
    """Import the numba implementation regardless of the env flag.

    Raises ImportError when numba is not installed.
    """
    from . import _kernels_nb
    return _kernels_nb
