"""Parameter-space exploration: Bell-diagonal scans and distortion optimization.

``scan_bds`` classifies a grid over the Bell-diagonal tetrahedron for one
broadcast variant.  Both channel paths (published closed forms, explicit
isometry oracle) are affine in the correlation triple (c1, c2, c3), so
the scan probes the channel on four Bell-diagonal inputs, extracts the
affine map for each output, and evaluates the whole grid with stacked
matrix arithmetic; partial-transpose spectra go through the batched
eigenvalue kernel.  Records come back in lexicographic (c1, c2, c3)
order.

``ensemble_distortion``/``optimize_machine`` evaluate and minimize the
mean single-clone distortion over restricted input ensembles: qubits with
polar angle limited to [z, pi - z] (weighted by the spherical area
element, i.e. uniform over the accessible zone), or two-qubit states
alpha|00> + sqrt(1-alpha^2)|11> with alpha^2 in [z, 1-z] (uniform in
alpha^2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .channels import (
    LOCAL,
    ClonerVariant,
    apply_closed_form,
    apply_oracle,
    get_variant,
)
from .cloner import (
    NONORTHOGONAL,
    ORTHOGONAL,
    CloningMachine,
    distortion_single,
)
from .errors import GridMismatchError, UsageError
from .separability import PT_NEG_TOL
from .states import BDS_CORNERS as _CORNERS
from .states import BellDiagonal, bds_probs, pure_qubit, schmidt_pair

BDS_VALID_TOL = -1e-12


@dataclass(frozen=True)
class ScanRecord:
    """Classification of one Bell-diagonal grid point under one variant.

    ``min_pt_local`` is the smaller of the two local pairs' minimum
    partial-transpose eigenvalues (the one binding separability);
    ``min_pt_nonlocal`` is the larger of the two non-local pairs' minima
    (the pair closer to separability, binding inseparability).  Both are
    NaN when the input triple is not a physical state.
    """

    c1: float
    c2: float
    c3: float
    variant: str
    valid_bds: bool
    local_separable: bool
    nonlocal_inseparable: bool
    broadcast: bool
    min_pt_local: float
    min_pt_nonlocal: float


def grid_values(step: float) -> np.ndarray:
    """The grid {-1, -1 + step, ...} clipped to [-1, 1]."""
    if not 0.0 < step <= 0.5:
        raise UsageError(f"step must lie in (0, 0.5], got {step}")
    count = int(math.floor(2.0 / step + 1e-9))
    return np.array([-1.0 + k * step for k in range(count + 1)])


def _pt_min_eigs(stack: np.ndarray) -> np.ndarray:
    """Minimum partial-transpose eigenvalue of each 4x4 matrix in a stack."""
    pt = stack.reshape(-1, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(-1, 4, 4)
    return kernels.min_eigvalsh4(pt)


def _affine_probes(
    variant: ClonerVariant, channel: str, pairing: str | None
) -> tuple[np.ndarray, np.ndarray]:
    """Affine representation of the four outputs over Bell-diagonal inputs.

    Returns (base, lin): output o on input (c1, c2, c3) equals
    base[o] + sum_u c_u lin[u, o].  Output order: local 13, local 24,
    non-local pair 1, non-local pair 2.
    """

    def outputs(c: tuple[float, float, float]) -> np.ndarray:
        s = BellDiagonal(*c).bloch()
        if channel == "closed":
            if pairing not in (None, "default"):
                raise UsageError(
                    "closed-form scans support only the default pairing; "
                    "use channel='oracle' to swap pairs"
                )
            outs = apply_closed_form(variant, s)
        elif channel == "oracle":
            outs = apply_oracle(variant, s.matrix(), pairing=pairing)
        else:
            raise UsageError(f"channel must be 'closed' or 'oracle', got {channel!r}")
        return np.stack(
            [
                outs.local_pairs[0].matrix,
                outs.local_pairs[1].matrix,
                outs.nonlocal_pairs[0].matrix,
                outs.nonlocal_pairs[1].matrix,
            ]
        )

    base = outputs((0.0, 0.0, 0.0))
    lin = np.stack(
        [
            outputs((1.0, 0.0, 0.0)) - base,
            outputs((0.0, 1.0, 0.0)) - base,
            outputs((0.0, 0.0, 1.0)) - base,
        ]
    )
    return base, lin


def scan_bds(
    variant: ClonerVariant | str,
    step: float,
    channel: str = "closed",
    pairing: str | None = None,
) -> list[ScanRecord]:
    """Classify the Bell-diagonal grid under one broadcast variant.

    ``channel`` selects the evaluation path; the closed forms are the
    reference for the published regions (and the only path for NOSDNL,
    whose machine is not realizable as an isometry).
    """
    if isinstance(variant, str):
        variant = get_variant(variant)
    vals = grid_values(step)
    c_grid = np.array(list(itertools.product(vals, repeat=3)))
    n = len(c_grid)

    probs = (1.0 + c_grid @ _CORNERS.T) / 4.0
    valid = probs.min(axis=1) >= BDS_VALID_TOL
    idx = np.flatnonzero(valid)

    base, lin = _affine_probes(variant, channel, pairing)
    min_local = np.full(n, np.nan)
    min_nonlocal = np.full(n, np.nan)
    if idx.size:
        cv = c_grid[idx]
        mins = np.empty((4, idx.size))
        for o in range(4):
            stack = base[o][None, :, :] + np.einsum("nu,uij->nij", cv, lin[:, o])
            mins[o] = _pt_min_eigs(stack)
        min_local[idx] = np.minimum(mins[0], mins[1])
        min_nonlocal[idx] = np.maximum(mins[2], mins[3])

    local_sep = valid & (min_local >= PT_NEG_TOL)
    nonlocal_insep = valid & (min_nonlocal < PT_NEG_TOL)
    broadcast = valid & local_sep & nonlocal_insep

    return [
        ScanRecord(
            c1=float(c_grid[i, 0]),
            c2=float(c_grid[i, 1]),
            c3=float(c_grid[i, 2]),
            variant=variant.name,
            valid_bds=bool(valid[i]),
            local_separable=bool(local_sep[i]),
            nonlocal_inseparable=bool(nonlocal_insep[i]),
            broadcast=bool(broadcast[i]),
            min_pt_local=float(min_local[i]),
            min_pt_nonlocal=float(min_nonlocal[i]),
        )
        for i in range(n)
    ]


def bds_input_min_pt(c1: float, c2: float, c3: float) -> float:
    """Minimum partial-transpose eigenvalue of the input Bell-diagonal triple."""
    pt_probs = bds_probs(BellDiagonal(c1, -c2, c3))
    return float(pt_probs.min())


def region_fraction(records: list[ScanRecord]) -> float:
    """Broadcastable fraction among valid Bell-diagonal grid points."""
    valid = sum(r.valid_bds for r in records)
    if valid == 0:
        return 0.0
    return sum(r.broadcast for r in records) / valid


def _check_same_grid(a: list[ScanRecord], b: list[ScanRecord]) -> None:
    if len(a) != len(b) or any(
        (ra.c1, ra.c2, ra.c3) != (rb.c1, rb.c2, rb.c3) for ra, rb in zip(a, b)
    ):
        raise GridMismatchError("scan record lists do not share the same grid")


def region_contains(a: list[ScanRecord], b: list[ScanRecord]) -> bool:
    """Whether every broadcastable point of ``b`` is broadcastable in ``a``."""
    _check_same_grid(a, b)
    return all(ra.broadcast for ra, rb in zip(a, b) if rb.broadcast)


@dataclass(frozen=True)
class EnsembleSpec:
    """Restricted input ensemble with prior-information parameter z.

    mode "local": qubits with polar angle theta in [z, pi - z] (z up to
    pi/2) and azimuth phi free.  mode "nonlocal": two-qubit states
    alpha|00> + sqrt(1 - alpha^2)|11> with alpha^2 in [z, 1 - z] (z up
    to 1/2).
    """

    mode: str
    z: float
    n_theta: int = 61
    n_phi: int = 61
    n_alpha: int = 101

    def __post_init__(self):
        if self.mode == LOCAL:
            if not 0.0 <= self.z <= math.pi / 2 + 1e-12:
                raise UsageError(f"local-mode z must lie in [0, pi/2], got {self.z}")
        elif self.mode == "nonlocal":
            if not 0.0 <= self.z <= 0.5 + 1e-12:
                raise UsageError(f"nonlocal-mode z must lie in [0, 1/2], got {self.z}")
        else:
            raise UsageError(f"mode must be 'local' or 'nonlocal', got {self.mode!r}")
        if min(self.n_theta, self.n_phi, self.n_alpha) < 1:
            raise UsageError("grid counts must be positive")

    @property
    def machine_dim(self) -> int:
        return 2 if self.mode == LOCAL else 4


def ensemble_distortion(
    machine: CloningMachine | ClonerVariant,
    spec: EnsembleSpec,
    objective: str = "mean",
) -> float:
    """Average (or worst-case) single-clone distortion over the ensemble.

    The local-mode mean weights each polar angle by sin(theta), the area
    element of the spherical zone the ensemble occupies; the nonlocal
    mode averages uniformly over the alpha^2 grid.
    """
    if isinstance(machine, ClonerVariant):
        machine = machine.machine
    if machine.m != spec.machine_dim:
        raise UsageError(
            f"machine dimension {machine.m} does not match {spec.mode} mode"
        )
    if objective not in ("mean", "worst"):
        raise UsageError(f"objective must be 'mean' or 'worst', got {objective!r}")

    if spec.mode == LOCAL:
        thetas = np.linspace(spec.z, math.pi - spec.z, spec.n_theta)
        phis = np.linspace(0.0, 2 * math.pi, spec.n_phi, endpoint=False)
        per_theta = np.array(
            [
                np.mean([distortion_single(machine, pure_qubit(t, p)) for p in phis])
                for t in thetas
            ]
        )
        if objective == "worst":
            return float(per_theta.max())
        weights = np.sin(thetas)
        total = weights.sum()
        if total <= 0.0:  # z == pi/2 collapses the zone to the equator
            return float(per_theta.mean())
        return float(np.dot(weights, per_theta) / total)

    alpha_sq = np.linspace(spec.z, 1.0 - spec.z, spec.n_alpha)
    d = np.array(
        [distortion_single(machine, schmidt_pair(math.sqrt(a))) for a in alpha_sq]
    )
    return float(d.max() if objective == "worst" else d.mean())


def golden_section(f, lo: float, hi: float, tol: float = 1e-5) -> tuple[float, float]:
    """Minimize a unimodal function on [lo, hi]; returns (x, f(x))."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 < f2 else (x2, f2)


def _mu_max(lam: float, m: int) -> float:
    return 2.0 * math.sqrt(max(lam * (1.0 - 2 * (m - 1) * lam), 0.0))


def optimize_machine(
    kind: str,
    mode: str,
    z: float,
    objective: str = "mean",
    spec: EnsembleSpec | None = None,
    coarse: int = 17,
) -> tuple[CloningMachine, float]:
    """Minimize the ensemble distortion over the feasible machine parameters.

    Orthogonal machines search over d; non-orthogonal ones over
    (lambda, mu) inside the feasibility region.  The distortion decreases
    in mu at fixed lambda (only (1 - mu)^2 depends on it and mu stays
    below 1), which a coarse grid over the 2-D region confirms, so the
    refinement runs along the mu = mu_max(lambda) boundary.  Golden
    section narrows the remaining parameter to well under the 1e-6
    distortion tolerance.
    """
    if spec is None:
        spec = EnsembleSpec(mode=mode, z=z)
    elif spec.mode != mode or spec.z != z:
        raise UsageError("spec mode/z must match the optimize_machine arguments")
    m = spec.machine_dim
    span = 1.0 / (2 * (m - 1))

    if kind == ORTHOGONAL:
        def f_d(d: float) -> float:
            return ensemble_distortion(CloningMachine.orthogonal(m, d), spec, objective)

        grid = np.linspace(0.0, math.sqrt(span), coarse)
        vals = [f_d(d) for d in grid]
        i = int(np.argmin(vals))
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, coarse - 1)]
        d_best, dist = golden_section(f_d, lo, hi)
        if vals[i] < dist:
            d_best, dist = grid[i], vals[i]
        return CloningMachine.orthogonal(m, d_best), dist

    if kind != NONORTHOGONAL:
        raise UsageError(f"kind must be 'orthogonal' or 'nonorthogonal', got {kind!r}")

    def f_lam(lam: float) -> float:
        machine = CloningMachine.nonorthogonal(m, lam, _mu_max(lam, m))
        return ensemble_distortion(machine, spec, objective)

    # Coarse 2-D sweep: confirms the optimum sits on the mu boundary.
    best = (math.inf, 0.0, 0.0)
    for lam in np.linspace(0.0, span, coarse):
        for frac in (0.25, 0.5, 0.75, 1.0):
            mu = frac * _mu_max(lam, m)
            val = ensemble_distortion(
                CloningMachine.nonorthogonal(m, lam, mu), spec, objective
            )
            if val < best[0]:
                best = (val, lam, mu)
    _, lam0, _ = best
    lam_step = span / (coarse - 1)
    lo = max(0.0, lam0 - lam_step)
    hi = min(span, lam0 + lam_step)
    lam_best, dist = golden_section(f_lam, lo, hi)
    if best[0] < dist:
        machine = CloningMachine.nonorthogonal(m, best[1], best[2])
        return machine, best[0]
    machine = CloningMachine.nonorthogonal(m, lam_best, _mu_max(lam_best, m))
    return machine, dist
