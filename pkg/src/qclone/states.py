"""State representations: pure states, density matrices, Bloch form, Bell-diagonal family.

A two-qubit state is related to its Bloch-vector/correlation-matrix form by

    rho = (1/4) [ I4 + sum_u (x_u sigma_u (x) I2  +  y_u I2 (x) sigma_u)
                       + sum_{uv} t_uv sigma_u (x) sigma_v ]

with u, v running over the three Pauli axes.  ``TwoQubitBloch`` stores the
triple (x, y, T); construction fails unless the reconstructed matrix is a
valid density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionError, InvalidStateError
from .numerics import herm_eigenvalues, tensor

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

#: sign patterns (c1, c2, c3) whose Bell-diagonal state is a pure Bell state,
#: in the order used by :func:`bds_probs`
BDS_CORNERS = np.array(
    [
        [1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [-1.0, -1.0, -1.0],
    ]
)

TRACE_TOL = 1e-9
PSD_TOL = 1e-9
NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state on an M-dimensional system."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise InvalidStateError(f"amplitudes have squared norm {norm_sq}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def pure_qubit(theta: float, phi: float) -> PureState:
    """Qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    return PureState(
        np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    )


def schmidt_pair(alpha: float) -> PureState:
    """Two-qubit state alpha|00> + sqrt(1 - alpha^2)|11> as a 4-dim vector."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidStateError(f"alpha must lie in [0, 1], got {alpha}")
    return PureState(np.array([alpha, 0.0, 0.0, np.sqrt(1.0 - alpha * alpha)]))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one Hermitian PSD matrix with subsystem dimension metadata."""

    matrix: np.ndarray
    dims: tuple[int, ...] = (2, 2)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"density matrix must be square, got {mat.shape}")
        if int(np.prod(dims)) != mat.shape[0]:
            raise DimensionError(f"dims {dims} inconsistent with shape {mat.shape}")
        dev = np.max(np.abs(mat - mat.conj().T))
        if dev > TRACE_TOL:
            raise InvalidStateError(f"not Hermitian (max deviation {dev:.3e})")
        tr = mat.trace().real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace is {tr}, expected 1")
        lo = float(np.linalg.eigvalsh(mat)[0])
        if lo < -PSD_TOL:
            raise InvalidStateError(f"not positive semidefinite (min eigenvalue {lo:.3e})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _bloch_matrix(x: np.ndarray, y: np.ndarray, t: np.ndarray) -> np.ndarray:
    out = np.eye(4, dtype=complex)
    for u in range(3):
        out += x[u] * tensor(PAULIS[u], I2) + y[u] * tensor(I2, PAULIS[u])
        for v in range(3):
            out += t[u, v] * tensor(PAULIS[u], PAULIS[v])
    return out / 4.0


@dataclass(frozen=True, eq=False)
class TwoQubitBloch:
    """Bloch vectors and correlation matrix of a physical two-qubit state."""

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).reshape(3)
        y = np.asarray(self.y, dtype=float).reshape(3)
        t = np.asarray(self.t, dtype=float).reshape(3, 3)
        for arr in (x, y, t):
            arr.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "t", t)
        # Fails with InvalidStateError when the triple is unphysical.
        DensityMatrix(_bloch_matrix(x, y, t))

    def matrix(self) -> np.ndarray:
        return _bloch_matrix(self.x, self.y, self.t)


def density_from_bloch(s: TwoQubitBloch) -> DensityMatrix:
    """Reconstruct the 4x4 density matrix from a Bloch triple."""
    return DensityMatrix(s.matrix())


def bloch_from_density(rho: DensityMatrix | np.ndarray) -> TwoQubitBloch:
    """Extract (x, y, T) from a two-qubit density matrix.

    Components are the traces against sigma_u (x) I, I (x) sigma_u and
    sigma_u (x) sigma_v; the result round-trips with
    :func:`density_from_bloch` to 1e-12.
    """
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if mat.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 matrix, got {mat.shape}")
    x = np.array([np.trace(mat @ tensor(PAULIS[u], I2)).real for u in range(3)])
    y = np.array([np.trace(mat @ tensor(I2, PAULIS[u])).real for u in range(3)])
    t = np.array(
        [
            [np.trace(mat @ tensor(PAULIS[u], PAULIS[v])).real for v in range(3)]
            for u in range(3)
        ]
    )
    return TwoQubitBloch(x, y, t)


def bds_matrix(c1: float, c2: float, c3: float) -> np.ndarray:
    """Raw 4x4 matrix of a Bell-diagonal triple, without physicality checks."""
    return _bloch_matrix(np.zeros(3), np.zeros(3), np.diag([c1, c2, c3]))


@lru_cache(maxsize=1)
def bell_projectors() -> tuple[np.ndarray, ...]:
    """The four Bell projectors, ordered by the corner rows of ``BDS_CORNERS``.

    Each corner triple gives a rank-one Bell-diagonal state; the projector is
    its top eigenvector's outer product.  This pins the pairing between
    mixing weights and Bell states without choosing a sign convention for
    the |Psi+->/|phi+-> labels.
    """
    projs = []
    for c1, c2, c3 in BDS_CORNERS:
        w, v = np.linalg.eigh(bds_matrix(c1, c2, c3))
        vec = v[:, np.argmax(w)]
        projs.append(np.outer(vec, vec.conj()))
    return tuple(projs)


@dataclass(frozen=True)
class BellDiagonal:
    """Bell-diagonal state parameters: zero Bloch vectors, T = diag(c1, c2, c3).

    Instances may be unphysical; validity is judged through the sign of the
    mixing weights returned by :func:`bds_probs`.
    """

    c1: float
    c2: float
    c3: float

    def probs(self) -> np.ndarray:
        return bds_probs(self)

    @property
    def is_valid(self) -> bool:
        return bool(self.probs().min() >= -1e-12)

    def bloch(self) -> TwoQubitBloch:
        return TwoQubitBloch(np.zeros(3), np.zeros(3), np.diag([self.c1, self.c2, self.c3]))

    def matrix(self) -> np.ndarray:
        return bds_matrix(self.c1, self.c2, self.c3)


def bds_probs(s: BellDiagonal) -> np.ndarray:
    """Mixing weights of a Bell-diagonal triple, paired to the Bell projectors.

    The weights are the eigenvalues of the reconstructed matrix: every
    Bell-diagonal state is diagonal in the Bell basis, so each weight is
    the overlap with the corresponding projector of :func:`bell_projectors`.
    They always sum to 1; negative entries flag an unphysical triple.
    """
    c = np.array([s.c1, s.c2, s.c3])
    return (1.0 + BDS_CORNERS @ c) / 4.0


def haar_pure(dim: int, rng: np.random.Generator) -> PureState:
    """Haar-random pure state via a normalized complex Gaussian vector."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(v / np.linalg.norm(v))


def random_density_matrix(
    dim: int, rng: np.random.Generator, k: int | None = None
) -> DensityMatrix:
    """Hilbert-Schmidt-distributed random density matrix.

    Samples a complex Gaussian ``dim x k`` matrix G (k defaults to dim) and
    normalizes G G^dagger to unit trace.
    """
    k = dim if k is None else k
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    m = g @ g.conj().T
    dims = (2, 2) if dim == 4 else (dim,)
    return DensityMatrix(m / m.trace().real, dims)


def verify_density(mat: np.ndarray) -> tuple[bool, float]:
    """Cheap physicality probe: (is valid, min eigenvalue).

    Unlike the ``DensityMatrix`` constructor this never raises; used where
    invalid matrices are expected data rather than errors.
    """
    mat = np.asarray(mat, dtype=complex)
    if np.max(np.abs(mat - mat.conj().T)) > TRACE_TOL:
        return False, float("nan")
    if abs(mat.trace().real - 1.0) > TRACE_TOL:
        return False, float("nan")
    lo = float(herm_eigenvalues(mat)[0])
    return lo >= -PSD_TOL, lo
