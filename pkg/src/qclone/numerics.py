"""Dense complex linear algebra on small composite Hilbert spaces.

Everything operates on plain ``numpy.ndarray`` matrices (square, complex).
Subsystems of a composite space are indexed from 0, with index 0 the
leftmost tensor factor.  All functions are pure.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import DimensionError, HermiticityError

HERMITICITY_TOL = 1e-9


def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def tensor(a: np.ndarray, b: np.ndarray, *rest: np.ndarray) -> np.ndarray:
    """Kronecker product of two or more square matrices."""
    out = np.kron(_as_square(a), _as_square(b))
    for m in rest:
        out = np.kron(out, _as_square(m))
    return out


def _check_dims(rho: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dims must be positive, got {dims}")
    if int(np.prod(dims)) != rho.shape[0]:
        raise DimensionError(
            f"product of dims {dims} does not match matrix dimension {rho.shape[0]}"
        )
    return dims


def partial_trace(
    rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]
) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    Kept subsystems remain in their original left-to-right order.  The
    trace of the input is preserved.
    """
    rho = _as_square(rho)
    dims = _check_dims(rho, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"keep indices {keep} out of range for {n} subsystems")

    tensor_form = rho.reshape(dims + dims)
    # Contract row/column index pairs of every traced subsystem.
    traced = [i for i in range(n) if i not in keep]
    for offset, i in enumerate(traced):
        axis = i - offset  # earlier contractions removed one axis pair each
        nleft = tensor_form.ndim // 2
        tensor_form = np.trace(tensor_form, axis1=axis, axis2=axis + nleft)
    d_keep = int(np.prod([dims[i] for i in keep]))
    return tensor_form.reshape(d_keep, d_keep)


def permute_subsystems(
    rho: np.ndarray, dims: Sequence[int], order: Sequence[int]
) -> np.ndarray:
    """Reorder tensor factors so that factor ``order[i]`` moves to slot ``i``."""
    rho = _as_square(rho)
    dims = _check_dims(rho, dims)
    n = len(dims)
    order = [int(i) for i in order]
    if sorted(order) != list(range(n)):
        raise DimensionError(f"order {order} is not a permutation of 0..{n - 1}")
    axes = order + [i + n for i in order]
    out = rho.reshape(dims + dims).transpose(axes)
    return out.reshape(rho.shape)


def partial_transpose(rho: np.ndarray, subsystem: int = 1) -> np.ndarray:
    """Partial transpose of a two-qubit matrix over one qubit.

    ``subsystem`` is 0 or 1 (default: the second qubit).  Hermiticity and
    trace are preserved; applying the map twice returns the input.
    """
    rho = _as_square(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"partial_transpose expects a 4x4 matrix, got {rho.shape}")
    if subsystem not in (0, 1):
        raise DimensionError(f"subsystem must be 0 or 1, got {subsystem}")
    t = rho.reshape(2, 2, 2, 2)
    if subsystem == 1:
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return t.reshape(4, 4)


def herm_eigenvalues(rho: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Raises :class:`HermiticityError` if the matrix deviates from its
    conjugate transpose by more than ``tol`` in any entry.
    """
    rho = _as_square(rho)
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev > tol:
        raise HermiticityError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(rho)


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm Tr[A^2] of a Hermitian matrix."""
    a = _as_square(a)
    return float(np.einsum("ij,ji->", a, a).real)
