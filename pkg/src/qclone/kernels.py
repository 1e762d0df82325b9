"""Batched 4x4 Hermitian eigenvalue kernel with compiled/pure dispatch.

Region scans and the bulk separability checks reduce to eigenvalues of
many 4x4 Hermitian matrices.  A Cython extension (``qclone._kernels``,
LAPACK ``zheevd`` per matrix) covers that hot loop; when the extension is
not built the package falls back to ``numpy.linalg.eigvalsh`` on the
whole stack.  Both paths return identical results to floating-point
round-off and are compared by the benchmark in ``benchmarks/``.
"""

from __future__ import annotations

import numpy as np

try:
    from ._kernels import eigvalsh4_batch as _eigvalsh4_compiled

    HAVE_COMPILED = True
except ImportError:  # extension not built; pure fallback
    _eigvalsh4_compiled = None
    HAVE_COMPILED = False


def _eigvalsh4_numpy(stack: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(stack)


def eigvalsh4(stack: np.ndarray, *, force: str | None = None) -> np.ndarray:
    """Eigenvalues (ascending) of a stack of 4x4 Hermitian matrices.

    ``stack`` has shape (n, 4, 4); the result has shape (n, 4).  ``force``
    selects an implementation explicitly: "compiled" or "numpy".
    """
    stack = np.ascontiguousarray(stack, dtype=complex)
    if stack.ndim != 3 or stack.shape[1:] != (4, 4):
        raise ValueError(f"expected shape (n, 4, 4), got {stack.shape}")
    if force == "numpy":
        return _eigvalsh4_numpy(stack)
    if force == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel requested but qclone._kernels is not built")
        return _eigvalsh4_compiled(stack)
    if HAVE_COMPILED:
        return _eigvalsh4_compiled(stack)
    return _eigvalsh4_numpy(stack)


def min_eigvalsh4(stack: np.ndarray, *, force: str | None = None) -> np.ndarray:
    """Smallest eigenvalue of each 4x4 Hermitian matrix in a stack."""
    return eigvalsh4(stack, force=force)[:, 0]
