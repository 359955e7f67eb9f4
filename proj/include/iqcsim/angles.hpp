/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <stdexcept>

#include "iqcsim/chain.hpp"

namespace iqc {

/// Closed-form angles of the generalized 2-pi-k pulse unit for rotation
/// fraction rho.  theta is the detuning phase of the 2-pi-k conditioned
/// near-resonant class, alpha the half Rabi angle of the class at half
/// that detuning, and (Theta, beta, gamma) parametrize the correcting
/// pulse: resonant half-angle pi+beta, duration gamma/J.
struct AngleSet {
    double k_rho = 0;
    double rho = 0;
    double theta = 0;
    double alpha = 0;
    double Theta = 0;
    double beta = 0;
    double gamma = 0;
};

inline AngleSet angle_set(double k_rho, double rho) {
    if (k_rho < 1) throw std::invalid_argument("angle_set: k_rho >= 1");
    AngleSet s;
    s.k_rho = k_rho;
    s.rho = rho;
    s.theta = pi * std::sqrt(k_rho * k_rho - rho * rho / 4.0);
    s.alpha = 0.5 * pi * std::sqrt(k_rho * k_rho + 3.0 * rho * rho / 4.0);
    // Principal branches; a wrong branch shows up as a failed gate solve,
    // not here, so the end-to-end compiler tests guard this choice.
    s.Theta = std::atan(-(s.theta / (2.0 * s.alpha)) * std::tan(s.alpha));
    s.beta = std::atan(-(pi / (2.0 * s.alpha)) * std::tan(s.alpha) * std::cos(s.Theta));
    const double r2 = pi * pi * k_rho * k_rho - (pi + s.beta) * (pi + s.beta);
    if (r2 < 0) throw std::domain_error("angle_set: gamma radicand negative (invalid k_rho)");
    s.gamma = std::sqrt(r2);
    return s;
}

/// k_rho convention: k for pi pulses, 2k for pi/2 pulses (and for the
/// internal 2-pi rotations the compiler uses as phase units).
inline double k_rho_for(double rho, int k) {
    if (rho == 1.0) return k;
    if (rho == 0.5) return 2.0 * k;
    if (rho == 2.0) return 2.0 * k;
    throw std::invalid_argument("k_rho_for: unsupported rho");
}

}  // namespace iqc
