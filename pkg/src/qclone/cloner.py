"""Symmetric quantum cloning machines and their verification oracle.

Two machine families act on an M-dimensional input, a blank system and a
machine (ancilla) system, producing two approximate copies:

* orthogonal machines, parameterized by an amplitude d with
  c^2 = 1 - 2(M-1) d^2, whose machine vectors are built from an
  orthonormal set;
* non-orthogonal machines, parameterized by (lambda, mu), whose machine
  vectors overlap with inner products fixed by the unitarity table
  (norms 1 - 2(M-1)lambda and lambda, cross overlaps mu/2 between the
  copy-success vector of one basis state and the spread vectors of
  another).

``clone_joint`` evaluates the closed-form two-copy output; the
independent ground truth is ``oracle_clone_joint``, which reconstructs
explicit machine vectors from the Gram matrix of the inner-product table,
assembles the full isometry, applies it and traces out the machine.  The
two must agree wherever the Gram matrix is realizable (positive
semidefinite).

Both families share one Gram construction: the orthogonal machine's c and
d coefficients are absorbed into the machine-vector norms, so its Gram
table reads c^2 on copy-success vectors, d^2 on spread vectors, with
cross overlaps c*d between a copy-success vector and spread vectors that
point back at the same basis state.

Feasibility notes.  The pairwise Schwartz bound (mu/2)^2 <= lambda (1 -
2(M-1)lambda) is necessary for realizability but, for M >= 3, not
sufficient: one copy-success vector must overlap many mutually orthogonal
spread vectors at mu/2 simultaneously, which caps mu more tightly.  The
Gram positivity check in ``build_isometry`` is the exact criterion; for
M = 2 it coincides with the Schwartz bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionError,
    InfeasibleMachineError,
    NoUniversalMachineError,
)
from .numerics import hs_norm_sq, partial_trace
from .states import PureState

ORTHOGONAL = "orthogonal"
NONORTHOGONAL = "nonorthogonal"

FEASIBILITY_SLACK = 1e-12
GRAM_CLIP = -1e-12
RANK_CUTOFF = 1e-12


def schwartz_feasible(lam: float, mu: float, m: int) -> bool:
    """Whether (lambda, mu) satisfy the pairwise feasibility bound at dimension m.

    True iff 0 <= lambda <= 1/(2(m-1)) and (mu/2)^2 <= lambda (1 - 2(m-1)lambda),
    with 1e-12 slack so boundary machines count as feasible.
    """
    if m < 2:
        raise DimensionError(f"machine dimension must be >= 2, got {m}")
    if lam < -FEASIBILITY_SLACK or lam > 1.0 / (2 * (m - 1)) + FEASIBILITY_SLACK:
        return False
    return (mu / 2.0) ** 2 <= lam * (1.0 - 2 * (m - 1) * lam) + FEASIBILITY_SLACK


@dataclass(frozen=True)
class CloningMachine:
    """Tagged union of the two machine families.

    ``kind`` is "orthogonal" (parameter d; c derived) or "nonorthogonal"
    (parameters lam, mu).  Parameter ranges are enforced on construction;
    violating the pairwise feasibility bound raises
    :class:`InfeasibleMachineError`.
    """

    kind: str
    m: int
    d: float | None = None
    lam: float | None = None
    mu: float | None = None

    def __post_init__(self):
        if self.m < 2:
            raise DimensionError(f"machine dimension must be >= 2, got {self.m}")
        if self.kind == ORTHOGONAL:
            if self.d is None or self.lam is not None or self.mu is not None:
                raise ValueError("orthogonal machines take exactly the parameter d")
            d2 = self.d * self.d
            if self.d < 0 or d2 > 1.0 / (2 * (self.m - 1)) + FEASIBILITY_SLACK:
                raise InfeasibleMachineError(
                    f"d={self.d} outside [0, sqrt(1/(2(m-1)))] for m={self.m}"
                )
        elif self.kind == NONORTHOGONAL:
            if self.lam is None or self.mu is None or self.d is not None:
                raise ValueError("non-orthogonal machines take exactly (lam, mu)")
            if self.mu < 0:
                raise InfeasibleMachineError(f"mu must be nonnegative, got {self.mu}")
            if not schwartz_feasible(self.lam, self.mu, self.m):
                raise InfeasibleMachineError(
                    f"(lam={self.lam}, mu={self.mu}) violates the feasibility bound at m={self.m}"
                )
        else:
            raise ValueError(f"unknown machine kind {self.kind!r}")

    @classmethod
    def orthogonal(cls, m: int, d: float) -> "CloningMachine":
        return cls(kind=ORTHOGONAL, m=m, d=float(d))

    @classmethod
    def nonorthogonal(cls, m: int, lam: float, mu: float) -> "CloningMachine":
        return cls(kind=NONORTHOGONAL, m=m, lam=float(lam), mu=float(mu))

    @property
    def c(self) -> float:
        """Copy-success amplitude of an orthogonal machine."""
        if self.kind != ORTHOGONAL:
            raise ValueError("c is defined only for orthogonal machines")
        return float(np.sqrt(max(0.0, 1.0 - 2 * (self.m - 1) * self.d * self.d)))

    def reduced_coefficients(self) -> tuple[float, float]:
        """(diagonal shrink, off-diagonal scale) of the single-clone map.

        The single-copy output has diagonal entries
        (1 - m*s) |alpha_i|^2 + s and off-diagonal entries eta *
        alpha_i alpha_j^*, where (s, eta) is the returned pair:
        s = lambda, eta = mu for non-orthogonal machines and s = d^2,
        eta = 2 c d + (m - 2) d^2 for orthogonal ones.
        """
        if self.kind == ORTHOGONAL:
            d = self.d
            return d * d, 2 * self.c * d + (self.m - 2) * d * d
        return self.lam, self.mu


def si_params(kind: str, m: int) -> CloningMachine:
    """State-independent (universal) machine parameters at dimension m.

    Orthogonal: d^2 = 1/(2(m+1)).  Non-orthogonal: the unique
    (lambda, mu) on the line mu = 1 - m*lambda that the feasibility bound
    admits, which exists only for m <= 3; the distortion there is
    m(m-1) lambda^2.
    """
    if m < 2:
        raise DimensionError(f"machine dimension must be >= 2, got {m}")
    if kind == ORTHOGONAL:
        return CloningMachine.orthogonal(m, np.sqrt(1.0 / (2 * (m + 1))))
    if kind != NONORTHOGONAL:
        raise ValueError(f"unknown machine kind {kind!r}")
    # Substituting mu = 1 - m*lambda into the feasibility bound gives
    # (m^2 + 8m - 8) lambda^2 - (2m + 4) lambda + 1 <= 0, whose
    # discriminant 16(3 - m) is negative for m >= 4.
    disc = 16.0 * (3 - m)
    if disc < 0:
        raise NoUniversalMachineError(
            f"no state-independent non-orthogonal machine exists for m={m} (only m <= 3)"
        )
    a = m * m + 8 * m - 8
    lam = ((2 * m + 4) - np.sqrt(disc)) / (2 * a)
    return CloningMachine.nonorthogonal(m, lam, 1.0 - m * lam)


def _pair_ket(i: int, j: int, m: int) -> np.ndarray:
    """Unnormalized symmetric pair vector |ij> + |ji> (equals 2|ii> when i == j)."""
    v = np.zeros(m * m, dtype=complex)
    v[i * m + j] += 1.0
    v[j * m + i] += 1.0
    return v


def _check_input(machine: CloningMachine, psi: PureState) -> None:
    if psi.dim != machine.m:
        raise DimensionError(
            f"machine copies {machine.m}-dimensional states, got dimension {psi.dim}"
        )


def clone_joint(machine: CloningMachine, psi: PureState) -> np.ndarray:
    """Closed-form two-copy output state on the M (x) M space.

    Derived by tracing the machine system out of the transformed state
    using the machine-vector inner-product table; unit trace, Hermitian,
    PSD for realizable machines.
    """
    _check_input(machine, psi)
    m = machine.m
    alpha = psi.amplitudes
    rho = np.zeros((m * m, m * m), dtype=complex)

    if machine.kind == ORTHOGONAL:
        c, d = machine.c, machine.d
        for i in range(m):
            ii = np.zeros(m * m, dtype=complex)
            ii[i * m + i] = 1.0
            rho += (c * c) * abs(alpha[i]) ** 2 * np.outer(ii, ii)
            for j in range(m):
                if j == i:
                    continue
                phi = _pair_ket(i, j, m)
                cross = c * d * alpha[i] * alpha[j].conjugate() * np.outer(ii, phi)
                rho += cross + cross.conj().T
        for i in range(m):
            for j in range(m):
                w = (d * d) * alpha[i] * alpha[j].conjugate()
                if w == 0:
                    continue
                for k in range(m):
                    if k == i or k == j:
                        continue
                    rho += w * np.outer(_pair_ket(i, k, m), _pair_ket(j, k, m).conj())
    else:
        lam, mu = machine.lam, machine.mu
        keep = 1.0 - 2 * (m - 1) * lam
        for i in range(m):
            ii = np.zeros(m * m, dtype=complex)
            ii[i * m + i] = 1.0
            rho += keep * abs(alpha[i]) ** 2 * np.outer(ii, ii)
            for j in range(m):
                if j == i:
                    continue
                phi = _pair_ket(i, j, m)
                rho += lam * abs(alpha[i]) ** 2 * np.outer(phi, phi)
        for i in range(m):
            for j in range(m):
                if j == i:
                    continue
                w = (mu / 2.0) * alpha[i] * alpha[j].conjugate()
                if w == 0:
                    continue
                ii = np.zeros(m * m, dtype=complex)
                ii[i * m + i] = 1.0
                for k in range(m):
                    if k == j:
                        continue
                    cross = w * np.outer(ii, _pair_ket(j, k, m).conj())
                    rho += cross + cross.conj().T
    return rho


def clone_reduced(machine: CloningMachine, psi: PureState) -> np.ndarray:
    """Single-copy output state; the cloner is symmetric so either port works."""
    return partial_trace(clone_joint(machine, psi), [machine.m, machine.m], {0})


def fidelity(machine: CloningMachine, psi: PureState) -> float:
    """Overlap of one clone with the input state."""
    out = clone_reduced(machine, psi)
    return float(np.vdot(psi.amplitudes, out @ psi.amplitudes).real)


def distortion_single(machine: CloningMachine, psi: PureState) -> float:
    """Squared Hilbert-Schmidt distance of one clone from the ideal output."""
    delta = clone_reduced(machine, psi) - psi.projector()
    return hs_norm_sq(delta)


def distortion_joint(machine: CloningMachine, psi: PureState) -> float:
    """Squared Hilbert-Schmidt distance of the clone pair from two ideal copies."""
    ideal = psi.projector()
    delta = clone_joint(machine, psi) - np.kron(ideal, ideal)
    return hs_norm_sq(delta)


def _machine_labels(m: int) -> list[tuple]:
    labels: list[tuple] = [("X", i) for i in range(m)]
    labels.extend(("Y", i, j) for i in range(m) for j in range(m) if j != i)
    return labels


def machine_gram(machine: CloningMachine) -> np.ndarray:
    """Gram matrix of the machine vectors, ordered as X_0..X_{m-1}, Y_{ij}.

    Cross overlaps between spread vectors that share their first index but
    differ in the second are not fixed by the unitarity table for m >= 3;
    they are set to 0, the minimal consistent completion.
    """
    m = machine.m
    labels = _machine_labels(m)
    n = len(labels)
    g = np.zeros((n, n))
    if machine.kind == ORTHOGONAL:
        c, d = machine.c, machine.d
        for a, la in enumerate(labels):
            for b, lb in enumerate(labels):
                if la[0] == "X" and lb[0] == "X":
                    g[a, b] = c * c if la[1] == lb[1] else 0.0
                elif la[0] == "Y" and lb[0] == "Y":
                    g[a, b] = d * d if la[2] == lb[2] else 0.0
                else:
                    xi = la[1] if la[0] == "X" else lb[1]
                    yk = lb[2] if lb[0] == "Y" else la[2]
                    g[a, b] = c * d if xi == yk else 0.0
    else:
        lam, mu = machine.lam, machine.mu
        keep = 1.0 - 2 * (m - 1) * lam
        for a, la in enumerate(labels):
            for b, lb in enumerate(labels):
                if la[0] == "X" and lb[0] == "X":
                    g[a, b] = keep if la[1] == lb[1] else 0.0
                elif la[0] == "Y" and lb[0] == "Y":
                    g[a, b] = lam if la[1:] == lb[1:] else 0.0
                else:
                    xi = la[1] if la[0] == "X" else lb[1]
                    yj = lb[1] if lb[0] == "Y" else la[1]
                    g[a, b] = mu / 2.0 if xi != yj else 0.0
    return g


@lru_cache(maxsize=64)
def build_isometry(machine: CloningMachine) -> np.ndarray:
    """Explicit isometry from the input space into copies (x) machine space.

    Factors the machine-vector Gram matrix G = V^dagger V (Hermitian
    eigendecomposition, eigenvalues below -1e-12 are infeasible, small
    negatives are clipped to 0) and emits the linear map sending each basis
    input to its transformed output in an M*M*rank(G)-dimensional space.
    The columns of the result are orthonormal within 1e-10.
    """
    m = machine.m
    g = machine_gram(machine)
    w, u = np.linalg.eigh(g)
    if w.min() < GRAM_CLIP:
        raise InfeasibleMachineError(
            f"machine-vector Gram matrix is not PSD (min eigenvalue {w.min():.3e}); "
            "the parameters admit no realization"
        )
    w = np.clip(w, 0.0, None)
    keep = w > RANK_CUTOFF
    rank = int(np.count_nonzero(keep))
    # Rows of `vectors` are the machine vectors in a rank-dimensional space.
    vectors = u[:, keep] * np.sqrt(w[keep])

    labels = _machine_labels(m)
    index = {lab: a for a, lab in enumerate(labels)}
    iso = np.zeros((m * m * rank, m), dtype=complex)
    for i in range(m):
        col = np.zeros((m * m, rank), dtype=complex)
        col[i * m + i] += vectors[index[("X", i)]]
        for j in range(m):
            if j == i:
                continue
            v = vectors[index[("Y", i, j)]]
            col[i * m + j] += v
            col[j * m + i] += v
        iso[:, i] = col.reshape(-1)

    gram_out = iso.conj().T @ iso
    if np.max(np.abs(gram_out - np.eye(m))) > 1e-10:
        raise InfeasibleMachineError(
            "constructed map is not an isometry; machine overlaps are inconsistent"
        )
    return iso


def isometry_rank(machine: CloningMachine) -> int:
    """Dimension of the machine-space factor used by the isometry."""
    return build_isometry(machine).shape[0] // (machine.m * machine.m)


def oracle_clone_joint(machine: CloningMachine, psi: PureState) -> np.ndarray:
    """Two-copy output computed through the explicit isometry.

    Applies the isometry to the input, forms the projector and traces out
    the machine factor.  Independent of the closed form in
    :func:`clone_joint`; agreement within 1e-10 is the verification
    criterion for the closed form.
    """
    _check_input(machine, psi)
    m = machine.m
    iso = build_isometry(machine)
    rank = iso.shape[0] // (m * m)
    out = (iso @ psi.amplitudes).reshape(m * m, rank)
    return out @ out.conj().T
