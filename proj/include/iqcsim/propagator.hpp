/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include <Eigen/Dense>

#include "iqcsim/chain.hpp"
#include "iqcsim/pulse.hpp"

namespace iqc {

/// N_z eigenvalue of basis state b, in units of 1/2:  n - 2*popcount.
inline int nz_twice(unsigned b, int n) { return n - 2 * std::popcount(b); }

/// Dense Hamiltonian in the frame co-rotating at nu with drive phase 0:
///   H' = H0 + nu N_z - Omega/2 * sum_l (|b><b^2^l| + h.c.)
/// Real symmetric by construction.
inline Eigen::MatrixXd corotating_hamiltonian(const ChainParams& p, double nu, double omega) {
    const int d = p.dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    const RVec e0 = static_hamiltonian_diagonal(p);
    for (int b = 0; b < d; ++b) {
        h(b, b) = e0[b] + nu * 0.5 * nz_twice(static_cast<unsigned>(b), p.n);
        for (int l = 0; l < p.n; ++l) h(b ^ (1 << l), b) = -0.5 * omega;
    }
    return h;
}

/// Cache of exp(-i tau H'(nu, Omega)) keyed on the exact bit patterns of
/// (nu, Omega, tau).  A schedule reuses a handful of distinct pulse
/// shapes thousands of times, so this is the whole cost of propagation.
/// Reads are concurrent; inserts serialized.
class PropagatorCache {
  public:
    explicit PropagatorCache(const ChainParams& p) : p_(p) {}

    const Mat& exponential(double nu, double omega, double tau) {
        const Key key{std::bit_cast<std::uint64_t>(nu), std::bit_cast<std::uint64_t>(omega),
                      std::bit_cast<std::uint64_t>(tau)};
        {
            std::shared_lock lk(mtx_);
            auto it = map_.find(key);
            if (it != map_.end()) return *it->second;
        }
        auto mat = std::make_shared<Mat>(compute(nu, omega, tau));
        std::unique_lock lk(mtx_);
        auto [it, inserted] = map_.emplace(key, std::move(mat));
        return *it->second;
    }

    const ChainParams& params() const { return p_; }
    std::size_t size() const {
        std::shared_lock lk(mtx_);
        return map_.size();
    }

  private:
    struct Key {
        std::uint64_t nu, om, tau;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 1469598103934665603ull;
            for (std::uint64_t v : {k.nu, k.om, k.tau}) {
                h ^= v;
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

    Mat compute(double nu, double omega, double tau) const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corotating_hamiltonian(p_, nu, omega));
        const Eigen::MatrixXd& v = es.eigenvectors();
        const Eigen::VectorXd& lam = es.eigenvalues();
        const int d = p_.dim();
        Vec ph(d);
        for (int i = 0; i < d; ++i)
            ph[i] = phase_factor(-static_cast<long double>(lam[i]) * static_cast<long double>(tau));
        return v.cast<cd>() * ph.asDiagonal() * v.transpose().cast<cd>();
    }

    ChainParams p_;
    mutable std::shared_mutex mtx_;
    std::unordered_map<Key, std::shared_ptr<const Mat>, KeyHash> map_;
};

namespace detail {
/// Diagonal phase exp(i x N_z) applied in place to a vector.
inline void apply_nz_phase(Vec& v, long double x, int n) {
    for (Eigen::Index b = 0; b < v.size(); ++b)
        v[b] *= phase_factor(x * 0.5L * nz_twice(static_cast<unsigned>(b), n));
}
inline void scale_rows_nz(Mat& m, long double x, int n) {
    for (Eigen::Index b = 0; b < m.rows(); ++b)
        m.row(b) *= phase_factor(x * 0.5L * nz_twice(static_cast<unsigned>(b), n));
}
inline void scale_cols_nz(Mat& m, long double x, int n) {
    for (Eigen::Index b = 0; b < m.cols(); ++b)
        m.col(b) *= phase_factor(x * 0.5L * nz_twice(static_cast<unsigned>(b), n));
}
}  // namespace detail

/// Exact lab-frame propagator of a single pulse:
///   U = e^{i(nu t1 + phi) N_z} exp(-i tau H') e^{-i(nu t0 + phi) N_z}
inline Mat pulse_propagator(const ChainParams& p, const Pulse& pl, PropagatorCache& cache) {
    if (!std::isfinite(pl.nu) || !std::isfinite(pl.omega) || !std::isfinite(pl.phi) ||
        !std::isfinite(pl.tau))
        throw std::invalid_argument("pulse_propagator: non-finite pulse parameters");
    Mat u = cache.exponential(pl.nu, pl.omega, pl.tau);
    const long double xl = static_cast<long double>(pl.nu) * pl.t_end() + pl.phi;
    const long double xr = static_cast<long double>(pl.nu) * pl.t_start + pl.phi;
    detail::scale_rows_nz(u, xl, p.n);
    detail::scale_cols_nz(u, -xr, p.n);
    return u;
}

/// Apply one pulse to a state (lab frame), using the cached exponential.
inline void apply_pulse(Vec& v, const ChainParams& p, const Pulse& pl, PropagatorCache& cache) {
    const Mat& e = cache.exponential(pl.nu, pl.omega, pl.tau);
    const long double xr = static_cast<long double>(pl.nu) * pl.t_start + pl.phi;
    const long double xl = static_cast<long double>(pl.nu) * pl.t_end() + pl.phi;
    detail::apply_nz_phase(v, -xr, p.n);
    v = e * v;
    detail::apply_nz_phase(v, xl, p.n);
}

/// State/propagator transforms into the interaction frame of H0,
/// W(t) = exp(-i H0 t):  psi_int = W^dag(t) psi_lab.
inline void to_interaction_frame(Vec& v, long double t, const ChainParams& p) {
    const RVec e0 = static_hamiltonian_diagonal(p);
    for (Eigen::Index b = 0; b < v.size(); ++b)
        v[b] *= phase_factor(static_cast<long double>(e0[b]) * t);
}

/// U_int = W^dag(t1) U_lab W(t0).
inline Mat to_interaction_frame(const Mat& u_lab, long double t0, long double t1,
                                const ChainParams& p) {
    const RVec e0 = static_hamiltonian_diagonal(p);
    Mat u = u_lab;
    for (Eigen::Index b = 0; b < u.rows(); ++b)
        u.row(b) *= phase_factor(static_cast<long double>(e0[b]) * t1);
    for (Eigen::Index b = 0; b < u.cols(); ++b)
        u.col(b) *= phase_factor(-static_cast<long double>(e0[b]) * t0);
    return u;
}

/// Hooks fired during evolve.  Each receives the unit index, the state
/// (mutable, so error-injection hooks can act), and the absolute time at
/// the unit boundary.
struct EvolveHooks {
    std::function<void(std::size_t, Vec&, long double)> after_pulse;
    std::function<void(std::size_t, Vec&, long double)> after_qpulse;
    std::function<void(std::size_t, Vec&, long double)> after_gate;
};

/// Run a schedule on a state (lab frame in, lab frame out).
inline Vec evolve(const Vec& initial, const PulseSchedule& sched, PropagatorCache& cache,
                  const EvolveHooks& hooks = {}) {
    const ChainParams& p = sched.params;
    if (initial.size() != p.dim()) throw std::invalid_argument("evolve: state dimension mismatch");
    sched.check_contiguous();
    Vec v = initial;
    std::size_t iq = 0, ig = 0;
    for (std::size_t m = 0; m < sched.pulses.size(); ++m) {
        apply_pulse(v, p, sched.pulses[m], cache);
        const long double t = sched.pulses[m].t_end();
        if (hooks.after_pulse) hooks.after_pulse(m, v, t);
        while (iq < sched.qpulses.size() && sched.qpulses[iq].end == m + 1) {
            if (hooks.after_qpulse) hooks.after_qpulse(iq, v, t);
            ++iq;
            while (ig < sched.gates.size() && sched.gates[ig].end == iq) {
                if (hooks.after_gate) hooks.after_gate(ig, v, t);
                ++ig;
            }
        }
    }
    const double nrm = v.norm();
    if (std::abs(nrm - 1.0) > 1e-10)
        throw std::runtime_error("evolve: norm drifted by " + std::to_string(nrm - 1.0));
    return v;
}

/// Lab-frame unitary of a pulse span [begin, end).
inline Mat fragment_unitary(const PulseSchedule& sched, std::size_t begin, std::size_t end,
                            PropagatorCache& cache) {
    const int d = sched.params.dim();
    Mat u = Mat::Identity(d, d);
    for (std::size_t m = begin; m < end; ++m)
        u = pulse_propagator(sched.params, sched.pulses[m], cache) * u;
    return u;
}

/// Interaction-frame unitary of the whole schedule.
inline Mat schedule_unitary_int(const PulseSchedule& sched, PropagatorCache& cache) {
    const long double t0 = sched.pulses.empty() ? 0.0L : sched.pulses.front().t_start;
    Mat u = fragment_unitary(sched, 0, sched.pulses.size(), cache);
    return to_interaction_frame(u, t0, sched.duration(), sched.params);
}

}  // namespace iqc
