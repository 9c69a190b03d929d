"""Compiled fixed-step RK4 propagation kernels.

Hot loops are fully scalar-unrolled: the Hermitian density matrix is carried
as six complex scalars (diagonal plus upper triangle), which keeps the state
in registers and makes Hermiticity exact by construction. The master-equation
terms are specialized to the three-level system: decay channels |2> -> |1>
and |2> -> |3>, and dephasing of |2> against the ground manifold, which damps
the two optical coherences at twice the dephasing rate and leaves the
ground-ground coherence untouched.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import ENVELOPE_CUTOFF_LOG

_CUT = ENVELOPE_CUTOFF_LOG


@njit(cache=True, nogil=True, inline="always")
def _pair_amplitudes(t, omega_max, inv2s2, tau, t_center):
    d12 = t - t_center - 0.5 * tau
    d23 = t - t_center + 0.5 * tau
    e12 = -d12 * d12 * inv2s2
    e23 = -d23 * d23 * inv2s2
    o12 = omega_max * np.exp(e12) if e12 > _CUT else 0.0
    o23 = omega_max * np.exp(e23) if e23 > _CUT else 0.0
    return o12, o23


@njit(cache=True, nogil=True, inline="always")
def _hamiltonian_elements(t, omega_max, inv2s2, tau, t_center, delta_eff,
                          cross, omega13):
    """Upper-triangle Hamiltonian elements (h01, h12); h11 = delta_eff, rest 0."""
    o12, o23 = _pair_amplitudes(t, omega_max, inv2s2, tau, t_center)
    h01 = 0.5 * o12 + 0.0j
    h12 = 0.5 * o23 + 0.0j
    if cross:
        ph = complex(np.cos(omega13 * t), -np.sin(omega13 * t))
        h01 += 0.5 * o23 * ph
        h12 += 0.5 * o12 * ph
    return h01, h12


@njit(cache=True, nogil=True, inline="always")
def _lindblad_rhs6(t, c00, c01, c02, c11, c12, c22,
                   omega_max, inv2s2, tau, t_center, delta_eff,
                   g21, g23, coh_damp, cross, omega13):
    h01, h12 = _hamiltonian_elements(t, omega_max, inv2s2, tau, t_center,
                                     delta_eff, cross, omega13)
    h11 = delta_eff
    c10 = np.conj(c01)
    c21 = np.conj(c12)
    k00 = -1j * (h01 * c10 - c01 * np.conj(h01))
    k01 = -1j * (h01 * c11 - c00 * h01 - c01 * h11 - c02 * np.conj(h12))
    k02 = -1j * (h01 * c12 - c01 * h12)
    k11 = -1j * (np.conj(h01) * c01 + h12 * c21 - c10 * h01 - c12 * np.conj(h12))
    k12 = -1j * (np.conj(h01) * c02 + h11 * c12 + h12 * c22 - c11 * h12)
    k22 = -1j * (np.conj(h12) * c12 - c21 * h12)
    if g21 > 0.0 or g23 > 0.0:
        k00 += g21 * c11
        k22 += g23 * c11
        k11 -= (g21 + g23) * c11
    if coh_damp > 0.0:
        k01 -= coh_damp * c01
        k12 -= coh_damp * c12
    return k00, k01, k02, k11, k12, k22


@njit(cache=True, nogil=True)
def lindblad_window(rho, t0, t1, n_steps, omega_max, sigma, tau, t_center,
                    delta_eff, g21, g23, gamma_deph, cross, omega13):
    """Advance rho in place over [t0, t1] with n_steps RK4 steps.

    Returns the maximum excited-state population seen at step boundaries.
    """
    h = (t1 - t0) / n_steps
    inv2s2 = 1.0 / (2.0 * sigma * sigma)
    coh_damp = 0.5 * (g21 + g23) + 2.0 * gamma_deph
    r00 = rho[0, 0]
    r01 = rho[0, 1]
    r02 = rho[0, 2]
    r11 = rho[1, 1]
    r12 = rho[1, 2]
    r22 = rho[2, 2]
    max_p2 = r11.real
    h2 = 0.5 * h
    h6 = h / 6.0
    for n in range(n_steps):
        t = t0 + n * h
        a0, a1, a2, a3, a4, a5 = _lindblad_rhs6(
            t, r00, r01, r02, r11, r12, r22,
            omega_max, inv2s2, tau, t_center, delta_eff, g21, g23, coh_damp,
            cross, omega13)
        b0, b1, b2, b3, b4, b5 = _lindblad_rhs6(
            t + h2, r00 + h2 * a0, r01 + h2 * a1, r02 + h2 * a2,
            r11 + h2 * a3, r12 + h2 * a4, r22 + h2 * a5,
            omega_max, inv2s2, tau, t_center, delta_eff, g21, g23, coh_damp,
            cross, omega13)
        c0, c1, c2, c3, c4, c5 = _lindblad_rhs6(
            t + h2, r00 + h2 * b0, r01 + h2 * b1, r02 + h2 * b2,
            r11 + h2 * b3, r12 + h2 * b4, r22 + h2 * b5,
            omega_max, inv2s2, tau, t_center, delta_eff, g21, g23, coh_damp,
            cross, omega13)
        d0, d1, d2, d3, d4, d5 = _lindblad_rhs6(
            t + h, r00 + h * c0, r01 + h * c1, r02 + h * c2,
            r11 + h * c3, r12 + h * c4, r22 + h * c5,
            omega_max, inv2s2, tau, t_center, delta_eff, g21, g23, coh_damp,
            cross, omega13)
        r00 += h6 * (a0 + 2.0 * (b0 + c0) + d0)
        r01 += h6 * (a1 + 2.0 * (b1 + c1) + d1)
        r02 += h6 * (a2 + 2.0 * (b2 + c2) + d2)
        r11 += h6 * (a3 + 2.0 * (b3 + c3) + d3)
        r12 += h6 * (a4 + 2.0 * (b4 + c4) + d4)
        r22 += h6 * (a5 + 2.0 * (b5 + c5) + d5)
        if r11.real > max_p2:
            max_p2 = r11.real
    rho[0, 0] = r00
    rho[0, 1] = r01
    rho[0, 2] = r02
    rho[1, 0] = np.conj(r01)
    rho[1, 1] = r11
    rho[1, 2] = r12
    rho[2, 0] = np.conj(r02)
    rho[2, 1] = np.conj(r12)
    rho[2, 2] = r22
    return max_p2


@njit(cache=True, nogil=True, inline="always")
def _schrodinger_rhs3(t, c0, c1, c2, omega_max, inv2s2, tau, t_center,
                      delta_eff, cross, omega13):
    h01, h12 = _hamiltonian_elements(t, omega_max, inv2s2, tau, t_center,
                                     delta_eff, cross, omega13)
    k0 = -1j * (h01 * c1)
    k1 = -1j * (np.conj(h01) * c0 + delta_eff * c1 + h12 * c2)
    k2 = -1j * (np.conj(h12) * c1)
    return k0, k1, k2


@njit(cache=True, nogil=True)
def schrodinger_window(psi, t0, t1, n_steps, omega_max, sigma, tau, t_center,
                       delta_eff, cross, omega13):
    """Advance the pure state psi in place over [t0, t1]; returns max |psi_2|^2."""
    h = (t1 - t0) / n_steps
    inv2s2 = 1.0 / (2.0 * sigma * sigma)
    p0 = psi[0]
    p1 = psi[1]
    p2 = psi[2]
    max_p2 = (p1.real * p1.real + p1.imag * p1.imag)
    h2 = 0.5 * h
    h6 = h / 6.0
    for n in range(n_steps):
        t = t0 + n * h
        a0, a1, a2 = _schrodinger_rhs3(
            t, p0, p1, p2, omega_max, inv2s2, tau, t_center, delta_eff, cross, omega13)
        b0, b1, b2 = _schrodinger_rhs3(
            t + h2, p0 + h2 * a0, p1 + h2 * a1, p2 + h2 * a2,
            omega_max, inv2s2, tau, t_center, delta_eff, cross, omega13)
        c0, c1, c2 = _schrodinger_rhs3(
            t + h2, p0 + h2 * b0, p1 + h2 * b1, p2 + h2 * b2,
            omega_max, inv2s2, tau, t_center, delta_eff, cross, omega13)
        d0, d1, d2 = _schrodinger_rhs3(
            t + h, p0 + h * c0, p1 + h * c1, p2 + h * c2,
            omega_max, inv2s2, tau, t_center, delta_eff, cross, omega13)
        p0 += h6 * (a0 + 2.0 * (b0 + c0) + d0)
        p1 += h6 * (a1 + 2.0 * (b1 + c1) + d1)
        p2 += h6 * (a2 + 2.0 * (b2 + c2) + d2)
        pop2 = p1.real * p1.real + p1.imag * p1.imag
        if pop2 > max_p2:
            max_p2 = pop2
    psi[0] = p0
    psi[1] = p1
    psi[2] = p2
    return max_p2
