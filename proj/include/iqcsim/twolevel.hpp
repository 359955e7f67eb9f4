/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "iqcsim/chain.hpp"

namespace iqc {

/// Exact propagator of one driven two-level pair in the frame rotating
/// at the drive frequency, lifted back to the lab frame.  The pair is
/// (|b_i=0>, |b_i=1>) with transition energy dE; the mean pair energy
/// drops out of every quantity we use, so only dE enters.
///
/// H_pair(t) = diag(-dE/2, +dE/2) - Omega/2 (e^{i(nu t+phi)}|0><1| + h.c.)
inline Mat2 lab_pair_block(double dE, double nu, double omega, double tau, double phi,
                           long double t0) {
    const double hz = 0.5 * (nu - dE);
    const double hx = -0.5 * omega;
    const double h = std::hypot(hz, hx);
    Mat2 m0;
    if (h == 0.0) {
        m0.setIdentity();
    } else {
        const double ang = reduce_phase(static_cast<long double>(h) * tau);
        const double c = std::cos(ang), s = std::sin(ang);
        m0 << cd(c, -s * hz / h), cd(0, -s * hx / h), cd(0, -s * hx / h), cd(c, s * hz / h);
    }
    const long double t1 = t0 + static_cast<long double>(tau);
    const long double xl = static_cast<long double>(nu) * t1 + phi;
    const long double xr = -(static_cast<long double>(nu) * t0 + phi);
    const cd pl = phase_factor(0.5L * xl), pr = phase_factor(0.5L * xr);
    Mat2 u;
    u(0, 0) = pl * m0(0, 0) * pr;
    u(0, 1) = pl * m0(0, 1) * std::conj(pr);
    u(1, 0) = std::conj(pl) * m0(1, 0) * pr;
    u(1, 1) = std::conj(pl) * m0(1, 1) * std::conj(pr);
    return u;
}

/// Same block in the interaction frame of the static Hamiltonian,
/// W(t) = exp(-i H0 t):  U_int = W^dag(t1) U_lab W(t0).
inline Mat2 int_pair_block(double dE, double nu, double omega, double tau, double phi,
                           long double t0) {
    Mat2 u = lab_pair_block(dE, nu, omega, tau, phi, t0);
    const long double t1 = t0 + static_cast<long double>(tau);
    const long double e0 = -0.5L * static_cast<long double>(dE);
    const long double e1 = +0.5L * static_cast<long double>(dE);
    const cd r0 = phase_factor(e0 * t1), r1 = phase_factor(e1 * t1);
    const cd c0 = phase_factor(-e0 * t0), c1 = phase_factor(-e1 * t0);
    u(0, 0) *= r0 * c0;
    u(0, 1) *= r0 * c1;
    u(1, 0) *= r1 * c0;
    u(1, 1) *= r1 * c1;
    return u;
}

}  // namespace iqc
