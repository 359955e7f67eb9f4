/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqcsim/chain.hpp"

namespace iqc {

/// One rectangular circularly polarized pulse of the drive
///   -Omega/4 * sum_l (sigma_l^- e^{-i(nu t + phi)} + h.c.)
/// active on [t_start, t_start + tau].  The phase is referenced to the
/// global clock, so t_start enters the drive phase as nu*t_start + phi.
struct Pulse {
    double nu = 0;
    double omega = 0;
    double phi = 0;
    double tau = 0;
    long double t_start = 0;

    long double t_end() const { return t_start + static_cast<long double>(tau); }
};

/// Gate vocabulary of the compiler.
enum class GateKind { A, B, Z, N, CN, R, Rdag, S, G, T };

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::A: return "A";
        case GateKind::B: return "B";
        case GateKind::Z: return "Z";
        case GateKind::N: return "N";
        case GateKind::CN: return "CN";
        case GateKind::R: return "R";
        case GateKind::Rdag: return "Rdag";
        case GateKind::S: return "S";
        case GateKind::G: return "G";
        case GateKind::T: return "T";
    }
    return "?";
}

/// Abstract gate: kind plus qubit indices and an optional phase
/// parameter (the controlled-phase angle of B gates).
struct GateSpec {
    GateKind kind = GateKind::A;
    int i = 0;       // first qubit (target for A/Z/N, control for CN/R)
    int j = -1;      // second qubit where applicable
    double phi = 0;  // phase parameter (B gates)

    std::string name() const {
        std::string s = gate_kind_name(kind);
        if (kind == GateKind::T) return s;
        s += "_" + std::to_string(i);
        if (j >= 0) s += "," + std::to_string(j);
        return s;
    }
};

/// Half-open span [begin, end) of raw pulses forming one Q-pulse.
struct QPulseMarker {
    std::size_t begin = 0, end = 0;
    int qubit = 0;
    Config config = Config::IntSym;
    double rho = 1.0;
    double phase = 0.0;
};

/// Half-open span [begin, end) of Q-pulses forming one gate.
struct GateMarker {
    std::size_t begin = 0, end = 0;
    GateSpec gate;
};

/// A compiled, timed pulse program.  Markers partition the pulse list:
/// q-pulse spans tile [0, pulses.size()) and gate spans tile the q-pulse
/// list, in order.
struct PulseSchedule {
    ChainParams params;
    std::vector<Pulse> pulses;
    std::vector<QPulseMarker> qpulses;
    std::vector<GateMarker> gates;

    long double duration() const { return pulses.empty() ? 0.0L : pulses.back().t_end(); }

    void check_contiguous(double tol = 1e-9) const {
        long double t = 0.0L;
        for (std::size_t m = 0; m < pulses.size(); ++m) {
            if (std::abs(static_cast<double>(pulses[m].t_start - t)) > tol)
                throw std::runtime_error("PulseSchedule: gap or overlap before pulse " +
                                         std::to_string(m));
            t = pulses[m].t_end();
        }
        std::size_t p = 0;
        for (const auto& q : qpulses) {
            if (q.begin != p || q.end <= q.begin) throw std::runtime_error("PulseSchedule: bad q-pulse span");
            p = q.end;
        }
        if (p != pulses.size()) throw std::runtime_error("PulseSchedule: q-pulse spans do not tile pulses");
        std::size_t g = 0;
        for (const auto& gm : gates) {
            if (gm.begin != g || gm.end <= gm.begin) throw std::runtime_error("PulseSchedule: bad gate span");
            g = gm.end;
        }
        if (g != qpulses.size()) throw std::runtime_error("PulseSchedule: gate spans do not tile q-pulses");
    }
};

/// Two-level transition probability for a pulse of dimensionless
/// duration rho (rho = 1 for a pi pulse) at detuning delta:
///   p = Omega^2/(Omega^2+Delta^2) sin^2( rho pi/2 sqrt(1+Delta^2/Omega^2) ).
inline double two_level_transition_probability(double omega, double delta, double rho) {
    if (!(omega > 0)) throw std::invalid_argument("two_level_transition_probability: omega > 0");
    const double r2 = 1.0 + delta * delta / (omega * omega);
    const double s = std::sin(rho * 0.5 * pi * std::sqrt(r2));
    return s * s / r2;
}

enum class TransitionKind { Resonant, NearResonant, NonResonant };

struct TransitionClass {
    TransitionKind kind = TransitionKind::Resonant;
    double delta = 0;  // nu_pulse - Delta E of the flip
};

/// Classify the flip of qubit i with neighbour configuration c under a
/// drive of frequency nu.  Near-resonant detunings are 2J or 4J; in the
/// selective regime anything beyond a few J belongs to another qubit.
inline TransitionClass classify_transition(const Pulse& pulse, int i, Config c,
                                           const ChainParams& p) {
    TransitionClass t;
    t.delta = pulse.nu - transition_energy(i, c, p);
    const double ad = std::abs(t.delta);
    if (ad < 1e-9 * std::max(1.0, p.a))
        t.kind = TransitionKind::Resonant;
    else if (ad <= 5.0 * p.J)
        t.kind = TransitionKind::NearResonant;
    else
        t.kind = TransitionKind::NonResonant;
    return t;
}

}  // namespace iqc
