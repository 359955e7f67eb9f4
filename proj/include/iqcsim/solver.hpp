/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "iqcsim/qpulse.hpp"
#include "iqcsim/templates.hpp"

namespace iqc {

/// Result of solving the free Q-pulse phases of one gate template.
struct PhaseSolution {
    std::vector<double> phases;  // one entry per template unit
    double residual = 1.0;       // 1 - |tr(G^dag U)| / D at the solution
    bool used_init = false;      // the seeded (usually appendix) phases already solved it
    int restarts = 0;
};

namespace solver_detail {

/// Per-unit two-level blocks at phase 0 for every configuration class of
/// its qubit, with the unit's absolute start time baked in.
struct UnitModel {
    int qubit;
    double rho;
    Mat2 base[5];     // indexed by Config
    bool has[5] = {false, false, false, false, false};
};

inline std::vector<UnitModel> build_unit_models(const GateTemplate& t, const ChainParams& p) {
    std::vector<UnitModel> ms;
    ms.reserve(t.units.size());
    long double clock = 0.0L;
    for (const auto& u : t.units) {
        QPulse q = q_pulse(u.qubit, u.config, u.rho, 0.0, p, clock);
        clock = q.t_end();
        UnitModel m;
        m.qubit = u.qubit;
        m.rho = u.rho;
        for (Config c : all_configs_for(u.qubit, p)) {
            m.base[static_cast<int>(c)] = qpulse_class_block(q, c, p);
            m.has[static_cast<int>(c)] = true;
        }
        ms.push_back(m);
    }
    return ms;
}

/// Dense window-space matrix of one unit at axis phase chi.
inline Mat unit_matrix(const UnitModel& m, double chi, const std::vector<int>& window,
                       const ChainParams& p) {
    const int wn = static_cast<int>(window.size());
    const int d = 1 << wn;
    int li = -1;
    for (int i = 0; i < wn; ++i)
        if (window[i] == m.qubit) li = i;
    if (li < 0) throw std::logic_error("unit_matrix: unit qubit outside window");
    int lhi = -1, llo = -1;
    for (int i = 0; i < wn; ++i) {
        if (window[i] == m.qubit + 1) lhi = i;
        if (window[i] == m.qubit - 1) llo = i;
    }
    const bool edge = p.is_edge(m.qubit);
    if (!edge && (lhi < 0 || llo < 0))
        throw std::logic_error("unit_matrix: neighbour outside window");
    const cd eip = std::polar(1.0, chi), eim = std::conj(eip);

    Mat u = Mat::Zero(d, d);
    for (int s = 0; s < d; ++s) {
        if ((s >> li) & 1) continue;  // handle each pair once, from its 0 branch
        const int s1 = s | (1 << li);
        Config c;
        if (edge) {
            const int nb = (m.qubit == 0) ? lhi : llo;
            c = ((s >> nb) & 1) ? Config::Edge1 : Config::Edge0;
        } else {
            const unsigned hi = (s >> lhi) & 1u, lo = (s >> llo) & 1u;
            c = (hi == 0 && lo == 0) ? Config::Int00
                                     : ((hi == 1 && lo == 1) ? Config::Int11 : Config::IntSym);
        }
        const Mat2& b = m.base[static_cast<int>(c)];
        u(s, s) = b(0, 0);
        u(s, s1) = b(0, 1) * eip;
        u(s1, s) = b(1, 0) * eim;
        u(s1, s1) = b(1, 1);
    }
    return u;
}

}  // namespace solver_detail

/// Solve the free phases of a template so that its two-level-model
/// unitary equals the ideal gate up to a global phase.  Trigonometric
/// coordinate ascent on |tr(G^dag U)|: the trace is a + b e^{i chi} +
/// c e^{-i chi} in each single phase, so every coordinate step is an
/// exact one-dimensional maximization.
inline PhaseSolution solve_template_phases(const GateTemplate& t, const ChainParams& p,
                                           double tol = 1e-10, int max_restarts = 80,
                                           std::uint64_t seed = 0x5eed5eedULL) {
    using namespace solver_detail;
    const std::vector<UnitModel> models = build_unit_models(t, p);
    const int nu = static_cast<int>(t.units.size());
    const int d = 1 << t.window.size();
    const Mat gdag = t.ideal.adjoint();

    auto trace_of = [&](const std::vector<double>& phases) {
        Mat u = Mat::Identity(d, d);
        for (int i = 0; i < nu; ++i) u = unit_matrix(models[i], phases[i], t.window, p) * u;
        return (gdag * u).trace();
    };

    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(t.name));
    std::uniform_real_distribution<double> uni(-pi, pi);

    PhaseSolution best;
    best.residual = 2.0;

    for (int restart = 0; restart <= max_restarts; ++restart) {
        std::vector<double> ph(nu);
        for (int i = 0; i < nu; ++i) {
            if (restart == 0)
                ph[i] = t.units[i].init;
            else if (restart == 1)
                ph[i] = 0.0;
            else
                ph[i] = t.units[i].free_phase ? uni(rng) : t.units[i].init;
        }

        double f = 1.0 - std::abs(trace_of(ph)) / d;
        if (restart == 0 && f < tol) {
            best.phases = ph;
            best.residual = f;
            best.used_init = true;
            best.restarts = 0;
            return best;
        }

        // coordinate ascent with cached prefix/suffix products
        for (int sweep = 0; sweep < 400; ++sweep) {
            std::vector<Mat> suffix(nu + 1);
            suffix[nu] = Mat::Identity(d, d);
            for (int i = nu - 1; i >= 0; --i)
                suffix[i] = suffix[i + 1] * unit_matrix(models[i], ph[i], t.window, p);
            Mat prefix = Mat::Identity(d, d);
            double improved = 0.0;
            for (int i = 0; i < nu; ++i) {
                if (!t.units[i].free_phase) {
                    prefix = unit_matrix(models[i], ph[i], t.window, p) * prefix;
                    continue;
                }
                // tr(G^dag suffix M_i(chi) prefix) = a + b e^{i chi} + c e^{-i chi}
                const Mat head = prefix * gdag * suffix[i + 1];
                cd t0 = (head * unit_matrix(models[i], 0.0, t.window, p)).trace();
                cd t1 = (head * unit_matrix(models[i], 2.0 * pi / 3.0, t.window, p)).trace();
                cd t2 = (head * unit_matrix(models[i], -2.0 * pi / 3.0, t.window, p)).trace();
                const cd w = std::polar(1.0, 2.0 * pi / 3.0);
                const cd a = (t0 + t1 + t2) / 3.0;
                const cd b = (t0 + t1 * std::conj(w) + t2 * w) / 3.0;
                const cd c = (t0 + t1 * w + t2 * std::conj(w)) / 3.0;
                // maximize |a + b e^{ix} + c e^{-ix}| over x
                double bestx = ph[i], bestv = std::abs(a + b * std::polar(1.0, ph[i]) +
                                                       c * std::polar(1.0, -ph[i]));
                constexpr int ngrid = 720;
                for (int g = 0; g < ngrid; ++g) {
                    const double x = -pi + 2.0 * pi * g / ngrid;
                    const double v = std::abs(a + b * std::polar(1.0, x) + c * std::polar(1.0, -x));
                    if (v > bestv) {
                        bestv = v;
                        bestx = x;
                    }
                }
                // golden-section refine around bestx
                double xl = bestx - 2.0 * pi / ngrid, xr = bestx + 2.0 * pi / ngrid;
                for (int it = 0; it < 60; ++it) {
                    const double x1 = xl + 0.381966 * (xr - xl);
                    const double x2 = xr - 0.381966 * (xr - xl);
                    const double v1 = std::abs(a + b * std::polar(1.0, x1) + c * std::polar(1.0, -x1));
                    const double v2 = std::abs(a + b * std::polar(1.0, x2) + c * std::polar(1.0, -x2));
                    if (v1 < v2)
                        xl = x1;
                    else
                        xr = x2;
                }
                const double xf = 0.5 * (xl + xr);
                const double vf = std::abs(a + b * std::polar(1.0, xf) + c * std::polar(1.0, -xf));
                if (vf > bestv) {
                    bestv = vf;
                    bestx = xf;
                }
                improved += std::abs(bestx - ph[i]);
                ph[i] = bestx;
                prefix = unit_matrix(models[i], ph[i], t.window, p) * prefix;
            }
            f = 1.0 - std::abs(trace_of(ph)) / d;
            if (f < tol || improved < 1e-14) break;
        }

        if (f < best.residual) {
            best.phases = ph;
            best.residual = f;
            best.used_init = (restart == 0);
            best.restarts = restart;
        }
        if (best.residual < tol) break;
    }
    return best;
}

}  // namespace iqc
