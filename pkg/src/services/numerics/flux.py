"""Shallow-water flux, Jacobian eigenstructure and the Q-scheme numerical flux.

The Jacobian at an interface is evaluated at the arithmetic mean of the two
conserved states. Every 2x2 product ``X diag(f1, f2) X^-1`` is written in
closed form; no general linear solver is involved.

The scalar functions take ``State`` objects and validate their inputs. The
array functions (``interface_fluxes``, ``sign_matrix``) are the ones the
steppers call once per step for all interfaces at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.domain.errors import DepthDomainError, SonicDegeneracyError
from src.domain.grid import DEFAULT_DRY_EPS, State

Entries = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

DEFAULT_EIGEN_EPS_FACTOR = 1e-8


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenstructure A = X diag(lambda1, lambda2) X^-1 of the flux Jacobian."""

    lambda1: float
    lambda2: float
    X: np.ndarray
    X_inv: np.ndarray

    @property
    def Lambda(self) -> np.ndarray:
        return np.diag([self.lambda1, self.lambda2])

    def reconstruct(self) -> np.ndarray:
        return self.X @ self.Lambda @ self.X_inv


@dataclass(frozen=True, eq=False)
class InterfaceDecomposition:
    """Everything the Q-scheme and the upwinded source need at one interface."""

    eig: EigenDecomposition
    abs_Q: np.ndarray
    D_L: np.ndarray
    D_R: np.ndarray


def _require_wet(h: float, dry_eps: float, what: str) -> None:
    if not h > dry_eps:
        raise DepthDomainError(f"{what} depth {h:.3e} m is not above the dry threshold {dry_eps:g}")


def spectral_entries(lambda1, lambda2, f1, f2) -> Entries:
    """Entries (m11, m12, m21, m22) of X diag(f1, f2) X^-1 with X = [[1, 1], [l1, l2]]."""
    inv = 1.0 / (lambda2 - lambda1)
    m11 = (f1 * lambda2 - f2 * lambda1) * inv
    m12 = (f2 - f1) * inv
    m21 = lambda1 * lambda2 * (f1 - f2) * inv
    m22 = (f2 * lambda2 - f1 * lambda1) * inv
    return m11, m12, m21, m22


def eigenvalues(h, q, g: float):
    """lambda1 = u + sqrt(gh), lambda2 = u - sqrt(gh); works on scalars and arrays."""
    celerity = np.sqrt(g * h)
    u = q / h
    return u + celerity, u - celerity


def jacobian(w: State, g: float) -> np.ndarray:
    """Flux Jacobian A(W) = [[0, 1], [-u² + gh, 2u]]."""
    _require_wet(w.h, 0.0, "Jacobian")
    u = w.q / w.h
    return np.array([[0.0, 1.0], [-u * u + g * w.h, 2.0 * u]])


def physical_flux(w: State, g: float) -> np.ndarray:
    """F(W) = (q, q²/h + g h²/2).

    Raises:
        DepthDomainError: non-positive depth
    """
    if not w.h > 0.0:
        raise DepthDomainError(f"Physical flux needs h > 0, got h={w.h}")
    return np.array([w.q, w.q * w.q / w.h + 0.5 * g * w.h * w.h])


def eigendecompose(w_avg: State, g: float, dry_eps: float = DEFAULT_DRY_EPS) -> EigenDecomposition:
    """Eigenvalues and eigenvector matrices of A at ``w_avg``.

    X has columns (1, lambda1) and (1, lambda2).
    """
    _require_wet(w_avg.h, dry_eps, "Eigendecomposition")
    lambda1, lambda2 = eigenvalues(w_avg.h, w_avg.q, g)
    lambda1, lambda2 = float(lambda1), float(lambda2)
    X = np.array([[1.0, 1.0], [lambda1, lambda2]])
    X_inv = np.array([[lambda2, -1.0], [-lambda1, 1.0]]) / (lambda2 - lambda1)
    return EigenDecomposition(lambda1=lambda1, lambda2=lambda2, X=X, X_inv=X_inv)


def abs_q_matrix(
    u_state: State, v_state: State, g: float, dry_eps: float = DEFAULT_DRY_EPS
) -> np.ndarray:
    """|Q(U, V)| = X |Lambda| X^-1 at the arithmetic mean of U and V."""
    mean = State.mean(u_state, v_state)
    _require_wet(mean.h, dry_eps, "Interface mean")
    lambda1, lambda2 = eigenvalues(mean.h, mean.q, g)
    m11, m12, m21, m22 = spectral_entries(lambda1, lambda2, abs(lambda1), abs(lambda2))
    return np.array([[m11, m12], [m21, m22]], dtype=np.float64)


def numerical_flux(
    u_state: State, v_state: State, g: float, dry_eps: float = DEFAULT_DRY_EPS
) -> np.ndarray:
    """Q-scheme flux phi(U, V) = (F(U) + F(V))/2 - |Q(U, V)| (V - U)/2."""
    _require_wet(u_state.h, dry_eps, "Left")
    _require_wet(v_state.h, dry_eps, "Right")
    abs_q = abs_q_matrix(u_state, v_state, g, dry_eps)
    jump = v_state.as_array() - u_state.as_array()
    return 0.5 * (physical_flux(u_state, g) + physical_flux(v_state, g)) - 0.5 * abs_q @ jump


def sign_matrix(
    h_mean,
    q_mean,
    g: float,
    regularize: bool = True,
    eigen_eps_factor: float = DEFAULT_EIGEN_EPS_FACTOR,
) -> Entries:
    """Entries of |Q| Q^-1 = X sign(Lambda) X^-1 at the given mean states.

    With ``regularize`` the sign is smoothed as lambda / max(|lambda|, eps),
    eps = eigen_eps_factor * sqrt(g h_mean); otherwise a near-zero eigenvalue
    raises SonicDegeneracyError.
    """
    h_mean = np.asarray(h_mean, dtype=np.float64)
    q_mean = np.asarray(q_mean, dtype=np.float64)
    lambda1, lambda2 = eigenvalues(h_mean, q_mean, g)
    eps = eigen_eps_factor * np.sqrt(g * h_mean)
    if regularize:
        s1 = lambda1 / np.maximum(np.abs(lambda1), eps)
        s2 = lambda2 / np.maximum(np.abs(lambda2), eps)
    else:
        critical = (np.abs(lambda1) < eps) | (np.abs(lambda2) < eps)
        if np.any(critical):
            raise SonicDegeneracyError(
                f"Critical interface state (|lambda| < eigen_eps) at "
                f"{int(np.count_nonzero(critical))} interface(s)"
            )
        s1 = np.sign(lambda1)
        s2 = np.sign(lambda2)
    return spectral_entries(lambda1, lambda2, s1, s2)


def upwind_matrices(
    u_state: State,
    v_state: State,
    g: float,
    dry_eps: float = DEFAULT_DRY_EPS,
    regularize: bool = True,
    eigen_eps_factor: float = DEFAULT_EIGEN_EPS_FACTOR,
) -> Tuple[np.ndarray, np.ndarray]:
    """Source projections D_L = I + |Q|Q^-1 and D_R = I - |Q|Q^-1."""
    mean = State.mean(u_state, v_state)
    _require_wet(mean.h, dry_eps, "Interface mean")
    s11, s12, s21, s22 = (
        float(x) for x in sign_matrix(mean.h, mean.q, g, regularize, eigen_eps_factor)
    )
    S = np.array([[s11, s12], [s21, s22]])
    identity = np.eye(2)
    return identity + S, identity - S


def decompose_interface(
    u_state: State,
    v_state: State,
    g: float,
    dry_eps: float = DEFAULT_DRY_EPS,
    regularize: bool = True,
) -> InterfaceDecomposition:
    """Eigenstructure, |Q| and D matrices at the mean of U and V."""
    mean = State.mean(u_state, v_state)
    D_L, D_R = upwind_matrices(u_state, v_state, g, dry_eps, regularize)
    return InterfaceDecomposition(
        eig=eigendecompose(mean, g, dry_eps),
        abs_Q=abs_q_matrix(u_state, v_state, g, dry_eps),
        D_L=D_L,
        D_R=D_R,
    )


def flux_arrays(h: np.ndarray, q: np.ndarray, g: float, dry_eps: float) -> Tuple[np.ndarray, np.ndarray]:
    """Physical flux of many states; the advective term of a dry state is zero."""
    advective = np.divide(q * q, h, out=np.zeros_like(h), where=h > dry_eps)
    return q.copy(), advective + 0.5 * g * h * h


def interface_fluxes(
    h_left: np.ndarray,
    q_left: np.ndarray,
    h_right: np.ndarray,
    q_right: np.ndarray,
    g: float,
    dry_eps: float = DEFAULT_DRY_EPS,
) -> Tuple[np.ndarray, np.ndarray]:
    """Q-scheme flux at every interface between (left, right) state pairs.

    Interfaces whose mean depth is not above ``dry_eps`` carry no flux.
    """
    h_mean = 0.5 * (h_left + h_right)
    q_mean = 0.5 * (q_left + q_right)
    active = h_mean > dry_eps

    flux_h = np.zeros_like(h_mean)
    flux_q = np.zeros_like(h_mean)
    if not np.any(active):
        return flux_h, flux_q

    hl, ql, hr, qr = h_left[active], q_left[active], h_right[active], q_right[active]
    fl_h, fl_q = flux_arrays(hl, ql, g, dry_eps)
    fr_h, fr_q = flux_arrays(hr, qr, g, dry_eps)

    lambda1, lambda2 = eigenvalues(h_mean[active], q_mean[active], g)
    a11, a12, a21, a22 = spectral_entries(lambda1, lambda2, np.abs(lambda1), np.abs(lambda2))
    jump_h = hr - hl
    jump_q = qr - ql

    flux_h[active] = 0.5 * (fl_h + fr_h) - 0.5 * (a11 * jump_h + a12 * jump_q)
    flux_q[active] = 0.5 * (fl_q + fr_q) - 0.5 * (a21 * jump_h + a22 * jump_q)
    return flux_h, flux_q
