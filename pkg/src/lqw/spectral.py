"""Momentum-space representation of the walk and the Fourier propagation oracle.

Fourier-transforming the position index turns one walk step into
multiplication by the delta x delta unitary

    U_k = diag(e^{ik}, e^{-ik}, 1, ..., 1) @ G,

i.e. the Grover coin with its first row scaled by kappa = e^{ik} and its
second row by 1/kappa.  Its spectrum is known in closed form: phases
(theta, -theta, 0) each simple and pi with multiplicity tau - 1, where

    cos(theta) = -(tau cos k + 2) / (tau + 2),
    sin(theta) = sqrt(tau (1 - cos k) (tau + 4 + tau cos k)) / (tau + 2),

with the branch theta in [0, pi].  ``eigen_system`` returns the closed-form
eigenvectors; ``propagate_fourier`` deliberately avoids them and powers U_k
directly on a momentum grid, which makes it an independent oracle for the
position-space kernel in :mod:`lqw.core`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import InitialCondition, WalkParams, WalkerState
from .errors import DegenerateMomentumError, GridTooSmallError

__all__ = [
    "MomentumPoint",
    "EigenSystem",
    "momentum_operator",
    "eigen_system",
    "default_grid_size",
    "momentum_grid_solution",
    "propagate_fourier",
]


@dataclass(frozen=True)
class MomentumPoint:
    """A momentum k in (-pi, pi] together with kappa = e^{ik}."""

    k: float

    def __post_init__(self):
        if not (-math.pi < self.k <= math.pi):
            raise ValueError(f"k must lie in (-pi, pi], got {self.k}")

    @property
    def kappa(self) -> complex:
        return complex(math.cos(self.k), math.sin(self.k))


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form eigen-decomposition of U_k at one momentum.

    ``omegas[j]`` is the phase of eigenvalue j in the fixed order
    (theta, -theta, 0, pi, ..., pi); ``eigenvectors[:, j]`` is the matching
    unit eigenvector.  ``normalizations[j]`` is the factor N_j with
    sqrt(N_j) * (raw closed-form vector) of unit norm; for the pi-sector the
    raw vector is the difference pattern before Gram-Schmidt.
    """

    k: float
    theta: float
    omegas: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    normalizations: np.ndarray = field(repr=False)


def momentum_operator(params: WalkParams, k: float) -> np.ndarray:
    """The step operator U_k in momentum space (unitary, delta x delta)."""
    d = params.delta
    u = np.full((d, d), 2.0 / d, dtype=np.complex128)
    np.fill_diagonal(u, -params.tau / d)
    u[0] *= np.exp(1j * k)
    u[1] *= np.exp(-1j * k)
    return u


def _pi_minus_theta(tau: int, k: float) -> float:
    """phi = pi - theta, accurate to full relative precision even as k -> 0.

    theta itself rounds to pi near k = 0; phi ~ sqrt(tau/(tau+2)) |k| is the
    quantity every eigenvector denominator actually depends on.
    """
    # 1 - cos k as 2 sin^2(k/2): no cancellation for small k
    one_minus_c = 2.0 * math.sin(k / 2.0) ** 2
    cos_k = 1.0 - one_minus_c
    cos_phi = (tau * cos_k + 2.0) / (tau + 2.0)
    sin_phi = math.sqrt(max(tau * one_minus_c * (tau + 4.0 + tau * cos_k), 0.0)) / (tau + 2.0)
    return math.atan2(sin_phi, cos_phi)


def _inv_one_plus_exp(x: float) -> complex:
    """1 / (1 + e^{i (pi - x)}) = e^{ix/2} / (2i sin(x/2)), exact identity."""
    return np.exp(0.5j * x) / (2j * math.sin(0.5 * x))


def eigen_system(params: WalkParams, k: float) -> EigenSystem:
    """Closed-form eigenphases and eigenvectors of U_k.

    Raises DegenerateMomentumError at k = 0, where theta collides with the
    pi-sector and the component denominators 1 + e^{i omega} vanish.

    At k = pi the raw omega = 0 eigenvector degenerates (its components
    diverge while the normalization tends to zero); the half-angle rescaling
    used here hits the normalized limit [i, -i, 0, ..., 0]/sqrt(2) instead.
    """
    tau, d = params.tau, params.delta
    if not (-math.pi < k <= math.pi):
        raise ValueError(f"k must lie in (-pi, pi], got {k}")
    if abs(k) < 1e-12:  # component denominators 1 + e^{i omega} vanish as theta -> pi
        raise DegenerateMomentumError(
            "k = 0 is degenerate: theta -> pi merges with the pi-sector"
        )

    phi = _pi_minus_theta(tau, k)
    theta = math.pi - phi
    omegas = np.concatenate([[theta, -theta, 0.0], np.full(tau - 1, math.pi)])
    vecs = np.zeros((d, d), dtype=np.complex128)
    norms = np.zeros(d)

    # j = 1: components 1/(1 + e^{i(theta -+ k)}) and 1/(1 + e^{i theta}),
    # written via theta = pi - phi so the vanishing denominators near k = 0
    # are sines of small, relatively-accurate arguments
    u = np.empty(d, dtype=np.complex128)
    u[0] = _inv_one_plus_exp(phi + k)
    u[1] = _inv_one_plus_exp(phi - k)
    u[2:] = _inv_one_plus_exp(phi)
    nsq = float(np.sum(np.abs(u) ** 2))
    norms[0] = 1.0 / nsq
    vecs[:, 0] = u / math.sqrt(nsq)

    # j = 2 (omega = -theta): the conjugate with left/right components swapped
    u = np.concatenate((u[[1, 0]], u[2:])).conj()
    norms[1] = 1.0 / nsq
    vecs[:, 1] = u / math.sqrt(nsq)

    # j = 3 (omega = 0): [kappa_1, kappa_2, 1, ..., 1] equals
    # (2/(2 cos(k/2))) * [e^{ik/2}, e^{-ik/2}, cos(k/2), ...]; the half-angle
    # form has no cancellation and reaches the k = pi limit [i, -i, 0, ...]
    # continuously.
    half = 0.5 * k
    u = np.empty(d, dtype=np.complex128)
    u[0] = np.exp(1j * half)
    u[1] = np.exp(-1j * half)
    u[2:] = math.cos(half)
    nsq = 2.0 + tau * math.cos(half) ** 2
    vecs[:, 2] = u / math.sqrt(nsq)
    # N_3 of the unscaled vector [kappa_1, kappa_2, 1, ..., 1]
    one_plus_c = 2.0 * math.cos(half) ** 2
    norms[2] = one_plus_c / (tau + 4.0 + tau * (one_plus_c - 1.0))

    # pi-sector: difference pattern (-1 at row 3, +1 at row j), Gram-Schmidt
    for j in range(3, d):
        u = np.zeros(d, dtype=np.complex128)
        u[2] = -1.0
        u[j] = 1.0
        for p in range(3, j):
            u -= vecs[:, p] * (vecs[:, p].conj() @ u)
        nsq = float(np.sum(np.abs(u) ** 2))
        norms[j] = 1.0 / nsq
        vecs[:, j] = u / math.sqrt(nsq)

    return EigenSystem(k=k, theta=theta, omegas=omegas, eigenvectors=vecs, normalizations=norms)


def default_grid_size(t: int) -> int:
    """Smallest power of two with at least 2t + 2 points."""
    return 1 << max(1, math.ceil(math.log2(2 * t + 2)))


def momentum_grid_solution(
    init: InitialCondition,
    params: WalkParams,
    t: int,
    grid_size: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Psi~(t, k_m) on the uniform grid k_m = -pi + 2 pi m / M.

    U_k is powered by repeated matrix-vector products per grid point; the
    closed-form eigenbasis is deliberately not used here, so this path stays
    an independent oracle (and has no k = 0 special case).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    m = default_grid_size(t) if grid_size is None else int(grid_size)
    if m < 2 * t + 1:
        raise GridTooSmallError(f"grid_size {m} < 2t+1 = {2 * t + 1}: inverse transform would alias")

    d = params.delta
    ks = -np.pi + 2.0 * np.pi * np.arange(m) / m
    ops = np.empty((m, d, d), dtype=np.complex128)
    for i, k in enumerate(ks):
        ops[i] = momentum_operator(params, k)

    # Psi~(0, k) is k-independent for a walker starting at the origin.
    psi = np.broadcast_to(init.coin_vector(params), (m, d)).copy()
    for _ in range(t):
        psi = np.einsum("mij,mj->mi", ops, psi)
    return ks, psi


def propagate_fourier(
    init: InitialCondition,
    params: WalkParams,
    t: int,
    grid_size: int | None = None,
) -> WalkerState:
    """Evolve t steps in momentum space and transform back to positions.

    Because the walk is supported on 2t + 1 sites, any grid with
    M >= 2t + 1 points makes the inverse transform exact up to roundoff.
    """
    ks, psi = momentum_grid_solution(init, params, t, grid_size)
    m = ks.shape[0]
    # Psi(t, n) = (-1)^n * IDFT[Psi~](n mod M) for the -pi-based grid.
    pos = np.fft.ifft(psi, axis=0)
    ns = np.arange(-t, t + 1)
    amps = pos[np.mod(ns, m)] * ((-1.0) ** ns)[:, None]
    return WalkerState(t=t, amplitudes=np.ascontiguousarray(amps))
