/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "iqcsim/ideal.hpp"
#include "iqcsim/qpulse.hpp"
#include "iqcsim/solver.hpp"
#include "iqcsim/templates.hpp"

namespace iqc {

/// Closed-form raw pulse counts of the compiled algorithms.
inline long pulse_count(Algorithm a, long n) {
    if (n < 2) throw std::invalid_argument("pulse_count: n >= 2");
    if (a == Algorithm::QFT) return 18 * n * n * n - 16 * n * n - 49 * n + 57;
    return 54 * n * n * n - 86 * n * n - 105 * n + 191;
}

struct CompileStats {
    long pulses = 0;
    long qpulses = 0;
    long gates = 0;
    bool appendix_phases_used = false;  // any solve satisfied by its seeded phases
    std::map<std::string, long> pulses_per_gate;
};

/// Compiles gates and algorithms into timed pulse schedules.  Phase
/// solutions are cached per template geometry, so a full algorithm
/// costs a handful of solves plus linear assembly work.
class Compiler {
  public:
    explicit Compiler(const ChainParams& p) : p_(p) {}

    const ChainParams& params() const { return p_; }

    /// Compile a full algorithm; throws if the emitted pulse count does
    /// not match the closed form (compiler defect), with a per-gate
    /// breakdown in the message.
    PulseSchedule compile(Algorithm a) {
        PulseSchedule s = compile_sequence(gate_sequence(a, p_.n));
        const long expect = pulse_count(a, p_.n);
        if (static_cast<long>(s.pulses.size()) != expect) {
            std::ostringstream os;
            os << "compile: pulse count mismatch for " << algorithm_name(a) << " n=" << p_.n
               << ": got " << s.pulses.size() << ", closed form " << expect << "\n";
            for (const auto& [k, v] : last_stats_.pulses_per_gate) os << "  " << k << ": " << v << "\n";
            throw std::runtime_error(os.str());
        }
        return s;
    }

    /// Compile an explicit gate sequence (time order).
    PulseSchedule compile_sequence(const std::vector<GateSpec>& gates) {
        PulseSchedule s;
        s.params = p_;
        last_stats_ = CompileStats{};
        for (const auto& g : gates) {
            const std::size_t q0 = s.qpulses.size();
            const std::size_t p0 = s.pulses.size();
            emit_gate(g, s);
            s.gates.push_back({q0, s.qpulses.size(), g});
            last_stats_.pulses_per_gate[g.name()] += static_cast<long>(s.pulses.size() - p0);
        }
        last_stats_.pulses = static_cast<long>(s.pulses.size());
        last_stats_.qpulses = static_cast<long>(s.qpulses.size());
        last_stats_.gates = static_cast<long>(s.gates.size());
        s.check_contiguous();
        return s;
    }

    /// Compile one gate as a standalone schedule (for gate-level tests).
    PulseSchedule compile_gate(const GateSpec& g) { return compile_sequence({g}); }

    const CompileStats& last_stats() const { return last_stats_; }

    /// Solved template access, exposed for calibration-style inspection.
    struct SolvedTemplate {
        GateTemplate tmpl;
        PhaseSolution sol;
    };
    const SolvedTemplate& solved(const GateTemplate& t) {
        const std::string key = cache_key(t);
        {
            std::lock_guard lk(mtx_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return *it->second;
        }
        auto st = std::make_shared<SolvedTemplate>();
        st->tmpl = t;
        st->sol = solve_template_phases(t, p_);
        if (st->sol.residual > 1e-9) {
            std::ostringstream os;
            os << "compile: phase solve failed for template " << t.name << " at";
            for (int q : t.window) os << " " << q;
            os << " (residual " << st->sol.residual << ")";
            throw std::runtime_error(os.str());
        }
        std::lock_guard lk(mtx_);
        auto [it, ins] = cache_.emplace(key, std::move(st));
        if (it->second->sol.used_init) last_stats_.appendix_phases_used = true;
        return *it->second;
    }

  private:
    // -- assembly ------------------------------------------------------

    void emit_template(const GateTemplate& t, PulseSchedule& s) {
        const SolvedTemplate& st = solved(t);
        long double clock = s.duration();
        for (std::size_t i = 0; i < t.units.size(); ++i) {
            const TemplateUnit& u = t.units[i];
            QPulse q = q_pulse(u.qubit, u.config, u.rho, st.sol.phases[i], p_, clock);
            clock = q.t_end();
            const std::size_t b = s.pulses.size();
            for (const auto& pl : q.pulses) s.pulses.push_back(pl);
            s.qpulses.push_back({b, s.pulses.size(), u.qubit, u.config, u.rho, st.sol.phases[i]});
        }
    }

    /// Adjacent-swap chain that brings qubit j up next to k (time order),
    /// used around gates that need neighbouring operands.
    std::vector<std::pair<int, int>> route(int j, int k) const {
        std::vector<std::pair<int, int>> sw;
        for (int m = 0; m + 1 < k - j; ++m) sw.push_back({j + m, j + m + 1});
        return sw;
    }

    void emit_swap(int lo, int hi, PulseSchedule& s) { emit_template(tmpl::swap_gate(lo, hi, p_), s); }

    void emit_b_adjacent(int x, int y, double phi, PulseSchedule& s) {
        emit_template(tmpl::b_gate_adjacent(x, y, phi, p_), s);
    }

    void emit_cn_adjacent(int c, int t, PulseSchedule& s) {
        emit_template(tmpl::cn_gate(c, t, p_), s);
    }

    void emit_routed_b(int j, int k, double phi, PulseSchedule& s) {
        const auto sw = route(j, k);
        for (const auto& [lo, hi] : sw) emit_swap(lo, hi, s);
        emit_b_adjacent(k - 1, k, phi, s);
        for (auto it = sw.rbegin(); it != sw.rend(); ++it) emit_swap(it->first, it->second, s);
    }

    void emit_routed_cn(int j, int k, PulseSchedule& s) {
        // control j, target k; j is walked up next to k
        const auto sw = route(j, k);
        for (const auto& [lo, hi] : sw) emit_swap(lo, hi, s);
        emit_cn_adjacent(k - 1 < j ? j : k - 1, k, s);
        for (auto it = sw.rbegin(); it != sw.rend(); ++it) emit_swap(it->first, it->second, s);
    }

    void emit_gate(const GateSpec& g, PulseSchedule& s) {
        switch (g.kind) {
            case GateKind::A:
                emit_template(tmpl::a_gate(g.i, p_), s);
                return;
            case GateKind::Z:
                emit_template(tmpl::z_gate(g.i, p_), s);
                return;
            case GateKind::N:
                emit_template(tmpl::n_gate(g.i, p_), s);
                return;
            case GateKind::B: {
                const int j = std::min(g.i, g.j), k = std::max(g.i, g.j);
                if (k - j == 1)
                    emit_b_adjacent(j, k, g.phi, s);
                else
                    emit_routed_b(j, k, g.phi, s);
                return;
            }
            case GateKind::CN: {
                if (std::abs(g.i - g.j) == 1)
                    emit_cn_adjacent(g.i, g.j, s);
                else if (g.i < g.j)
                    emit_routed_cn(g.i, g.j, s);
                else {
                    // control above target: walk the target up instead
                    const auto sw = route(g.j, g.i);
                    for (const auto& [lo, hi] : sw) emit_swap(lo, hi, s);
                    emit_cn_adjacent(g.i, g.i - 1, s);
                    for (auto it = sw.rbegin(); it != sw.rend(); ++it)
                        emit_swap(it->first, it->second, s);
                }
                return;
            }
            case GateKind::S: {
                const int lo = std::min(g.i, g.j), hi = std::max(g.i, g.j);
                if (hi - lo != 1) throw std::invalid_argument("compile: S on non-adjacent pair");
                emit_swap(lo, hi, s);
                return;
            }
            case GateKind::R:
            case GateKind::Rdag: {
                // R_jk = N_j CN_jk N_j Z_k ; Rdag_jk = N_j Z_k CN_jk N_j
                // (rightmost factor first in time)
                const int j = g.i, k = g.j;
                if (!(j < k)) throw std::invalid_argument("compile: R needs i < j");
                auto cn = [&] {
                    if (k - j == 1)
                        emit_cn_adjacent(j, k, s);
                    else
                        emit_routed_cn(j, k, s);
                };
                if (g.kind == GateKind::R) {
                    emit_template(tmpl::z_gate(k, p_), s);
                    emit_template(tmpl::n_gate(j, p_), s);
                    cn();
                    emit_template(tmpl::n_gate(j, p_), s);
                } else {
                    emit_template(tmpl::n_gate(j, p_), s);
                    cn();
                    emit_template(tmpl::z_gate(k, p_), s);
                    emit_template(tmpl::n_gate(j, p_), s);
                }
                return;
            }
            case GateKind::G: {
                // G_jk = Rdag_jk B_jk : B acts first in time
                GateSpec b{GateKind::B, g.i, g.j, g.phi};
                GateSpec rd{GateKind::Rdag, g.i, g.j};
                emit_gate(b, s);
                emit_gate(rd, s);
                return;
            }
            case GateKind::T: {
                // bubble network of n(n-1)/2 adjacent swaps (full reversal)
                const int q = p_.n;
                for (int i = 1; i <= q; ++i)
                    for (int jj = 1; jj <= q - i; ++jj) emit_swap(q - jj - 1, q - jj, s);
                return;
            }
        }
        throw std::invalid_argument("compile: unknown gate kind");
    }

    std::string cache_key(const GateTemplate& t) const {
        std::ostringstream os;
        os << t.name << "|k" << p_.k << "|phi" << std::hexfloat << t.spec.phi << "|w";
        for (int q : t.window) os << (p_.is_edge(q) ? 'e' : 'i');
        os << "|";
        for (const auto& u : t.units)
            os << (u.qubit - t.window.front()) << config_name(u.config) << u.rho << ";";
        return os.str();
    }

    ChainParams p_;
    CompileStats last_stats_;
    std::mutex mtx_;
    std::map<std::string, std::shared_ptr<SolvedTemplate>> cache_;
};

}  // namespace iqc
