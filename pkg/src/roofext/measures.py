"""User-facing entanglement measures composed from the closed forms and the solver.

Conventions frozen here: the two-qubit concurrence uses the anti-linear
operator (flip (x) flip)/2, giving C(Bell) = 1 and C(product) = 0; the map
concurrence is C_T = 2 (sqrt det T)^roof; entropies are natural-log.
"""

from __future__ import annotations

import dataclasses
from typing import Optional

import numpy as np
from scipy.special import xlogy

from .antilinear import lambda_spectrum, wootters_conjugation
from .errors import DimMismatch, OutOfRange, RoofextError
from .qubitmaps import (
    QubitStochasticMap,
    apply_map,
    axial_tangle,
    concurrence_sq,
    subtraction_weight,
)
from .solver import (
    SolverConfig,
    det_output_objective,
    minimize_roof,
    output_entropy_objective,
    verify_roof_point,
)
from .states import (
    PureDecomposition,
    spectral_decomposition,
    state_rank,
    validate_density,
)


def eta(x):
    """-x ln x, extended by 0 at x = 0."""
    return float(-xlogy(x, x)) if np.isscalar(x) else -xlogy(x, x)


def shannon_entropy(p):
    p = np.asarray(p, dtype=float)
    return float(np.sum(-xlogy(p, p)))


def von_neumann_entropy(rho):
    rho = np.asarray(rho, dtype=complex)
    vals = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    return shannon_entropy(np.clip(vals, 0.0, None))


def xi(x):
    """Binary-entropy profile of a concurrence value: eta((1-y)/2) + eta((1+y)/2), y = sqrt(1-x^2).

    Convex and increasing on [0,1] with xi(0) = 0 and xi(1) = log 2.
    """
    x = float(x)
    if abs(x) > 1.0 + 1e-12:
        raise OutOfRange(f"xi argument must lie in [-1,1], got {x}")
    x = min(1.0, max(-1.0, x))
    y = float(np.sqrt(1.0 - x * x))
    return shannon_entropy([(1.0 - y) / 2.0, (1.0 + y) / 2.0])


@dataclasses.dataclass(frozen=True)
class MeasureReport:
    quantity: str
    value: float
    method: str  # "closed_form" | "solver"
    decomposition: Optional[PureDecomposition] = None
    bounds: Optional[tuple] = None  # (lower, upper)
    extras: dict = dataclasses.field(default_factory=dict)


def partial_trace_kraus():
    """Kraus pair (<0| (x) 1, <1| (x) 1) implementing the two-qubit partial trace."""
    a1 = np.zeros((2, 4), dtype=complex)
    a1[0, 0] = a1[1, 1] = 1.0
    a2 = np.zeros((2, 4), dtype=complex)
    a2[0, 2] = a2[1, 3] = 1.0
    return a1, a2


def concurrence_2qubit(rho):
    """Two-qubit concurrence 2 max(0, l1 - l2 - l3 - l4) from the flip spectrum."""
    rho = validate_density(rho)
    if rho.shape[0] != 4:
        raise DimMismatch(f"two-qubit concurrence needs dim 4, got {rho.shape[0]}")
    theta = wootters_conjugation() / 2.0
    lam = lambda_spectrum(theta, rho)
    val = 2.0 * max(0.0, float(lam[0] - lam[1:].sum()))
    return MeasureReport(quantity="concurrence", value=val, method="closed_form")


def eof_2qubit(rho):
    """Entanglement of formation of a two-qubit state: xi of the concurrence."""
    c = concurrence_2qubit(rho)
    return MeasureReport(
        quantity="eof",
        value=xi(c.value),
        method="closed_form",
        extras={"concurrence": c.value},
    )


def _spectral_ensemble(omega):
    vals, vecs = spectral_decomposition(omega)
    r = state_rank(omega)
    w = np.clip(vals[:r], 0.0, None)
    w = w / w.sum()
    return PureDecomposition(tuple(float(x) for x in w), tuple(vecs[:, j] for j in range(r)))


def _entropy_objective(T):
    if T.kraus is not None:
        return output_entropy_objective(kraus=T.kraus)
    return output_entropy_objective(bloch=T.bloch)


def _det_objective(T):
    if T.kraus is not None:
        return det_output_objective(kraus=T.kraus)
    return det_output_objective(bloch=T.bloch)


def map_concurrence(T, omega, weight=None):
    """C_T(omega) = sqrt of the subtracted determinant form (closed form)."""
    if weight is None:
        weight = subtraction_weight(T)
    val = float(np.sqrt(concurrence_sq(T, omega, weight)))
    return MeasureReport(
        quantity="concurrence",
        value=val,
        method="closed_form",
        extras={"w_lo": weight.w_lo, "w_hi": weight.w_hi},
    )


def channel_tangle(T, omega, config=None):
    """tau_T(omega): closed form for axial maps, roof-solver for anything else."""
    omega = validate_density(omega)
    if T.kind == "axial":
        a, b, g = T.params
        return MeasureReport(
            quantity="tangle", value=axial_tangle(a, b, g, omega), method="closed_form"
        )
    res = minimize_roof(_det_objective(T), omega, config)
    return MeasureReport(
        quantity="tangle",
        value=4.0 * res.value,
        method="solver",
        decomposition=res.decomposition,
    )


def channel_entanglement(T, omega, config=None):
    """E_T(omega) = convex roof of the output entropy, with the xi(C_T) lower bound.

    Pure inputs are evaluated exactly; mixed inputs go to the solver.  The
    upper bound is the spectral-ensemble average; the report is flagged flat
    when the value sits on the lower bound (within 1e-3).
    """
    omega = validate_density(omega)
    if omega.shape[0] != 2:
        raise DimMismatch(f"channel entanglement needs a qubit state, got dim {omega.shape[0]}")
    weight = subtraction_weight(T)
    c_t = float(np.sqrt(concurrence_sq(T, omega, weight)))
    lower = xi(c_t)
    objective = _entropy_objective(T)
    if state_rank(omega) == 1:
        value = von_neumann_entropy(apply_map(T, omega))
        _, vecs = spectral_decomposition(omega)
        dec = PureDecomposition((1.0,), (vecs[:, 0],))
        method = "closed_form"
        upper = value
    else:
        res = minimize_roof(objective, omega, config)
        value = res.value
        dec = res.decomposition
        method = "solver"
        upper = verify_roof_point(objective, _spectral_ensemble(omega))
    return MeasureReport(
        quantity="entropy-out",
        value=float(value),
        method=method,
        decomposition=dec,
        bounds=(float(lower), float(upper)),
        extras={"flat": bool(abs(value - lower) < 1e-3), "concurrence": c_t},
    )


@dataclasses.dataclass(frozen=True)
class BoundReport:
    """The four quantities of the bound chain and the two inequality verdicts."""

    concurrence_sq: float
    tangle: float
    xi_of_concurrence: float
    entanglement: float
    tangle_ok: bool
    entanglement_ok: bool


def bound_suite(T, omega, config=None, strict=True):
    """Check tau >= C^2 and E >= xi(C) for one map and state.

    With strict=True a violated inequality raises (the CLI maps that to the
    invariant-violation exit code); otherwise the verdicts are just reported.
    """
    omega = validate_density(omega)
    weight = subtraction_weight(T)
    c_sq = concurrence_sq(T, omega, weight)
    tau = channel_tangle(T, omega, config).value
    xi_c = xi(float(np.sqrt(c_sq)))
    ent = channel_entanglement(T, omega, config).value
    tangle_ok = bool(tau >= c_sq - 1e-9)
    entanglement_ok = bool(ent >= xi_c - 5e-3)
    if strict and not tangle_ok:
        raise RoofextError(
            f"invariant tangle >= concurrence^2 violated: tau={tau:.6e} < C^2={c_sq:.6e}"
        )
    if strict and not entanglement_ok:
        raise RoofextError(
            f"invariant entanglement >= xi(concurrence) violated: E={ent:.6e} < xi={xi_c:.6e}"
        )
    return BoundReport(
        concurrence_sq=float(c_sq),
        tangle=float(tau),
        xi_of_concurrence=float(xi_c),
        entanglement=float(ent),
        tangle_ok=tangle_ok,
        entanglement_ok=entanglement_ok,
    )
