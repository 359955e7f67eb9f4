/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqcsim/angles.hpp"
#include "iqcsim/chain.hpp"
#include "iqcsim/ideal.hpp"
#include "iqcsim/pulse.hpp"

namespace iqc {

/// One Q-pulse slot of a gate template.  Phases marked free are
/// determined by the phase solver against the ideal gate; the init
/// value seeds the solve (the appendix formulas where they exist).
struct TemplateUnit {
    int qubit = 0;
    Config config = Config::IntSym;
    double rho = 1.0;
    bool free_phase = true;
    double init = 0.0;
};

/// A gate template: the fixed Q-pulse skeleton of one gate at concrete
/// chain positions, plus the ideal unitary it must realize.
struct GateTemplate {
    std::string name;
    std::vector<TemplateUnit> units;
    GateSpec spec;               // local gate the template realizes
    std::vector<int> window;     // chain positions spanned by the model
    Mat ideal;                   // ideal unitary on the window
};

namespace tmpl {

inline Config sym_or_edge(int q, const ChainParams& p, int neighbour_bit) {
    if (!p.is_edge(q)) return Config::IntSym;
    return neighbour_bit ? Config::Edge1 : Config::Edge0;
}

/// Window of a unit list: all touched qubits plus their chain neighbours.
inline std::vector<int> window_of(const std::vector<TemplateUnit>& us, const ChainParams& p) {
    std::vector<int> w;
    auto add = [&](int q) {
        if (q >= 0 && q < p.n && std::find(w.begin(), w.end(), q) == w.end()) w.push_back(q);
    };
    for (const auto& u : us) {
        add(u.qubit);
        add(u.qubit - 1);
        add(u.qubit + 1);
    }
    std::sort(w.begin(), w.end());
    return w;
}

/// Ideal gate embedded on the window coordinates.
inline Mat ideal_on_window(const GateSpec& g, const std::vector<int>& window) {
    const int wn = static_cast<int>(window.size());
    auto local = [&](int q) {
        for (int i = 0; i < wn; ++i)
            if (window[i] == q) return i;
        throw std::logic_error("ideal_on_window: qubit not in window");
    };
    GateSpec lg = g;
    lg.i = local(g.i);
    if (g.j >= 0) lg.j = local(g.j);
    return ideal_gate_matrix(lg, wn);
}

inline GateTemplate finish(std::string name, GateSpec spec, std::vector<TemplateUnit> us,
                           const ChainParams& p) {
    GateTemplate t;
    t.name = std::move(name);
    t.units = std::move(us);
    t.spec = spec;
    t.window = window_of(t.units, p);
    t.ideal = ideal_on_window(spec, t.window);
    return t;
}

// ---------------------------------------------------------------------
// Literal appendix templates: A, B, Z.
// ---------------------------------------------------------------------

/// Hadamard A_j.  Interior: 6 Q-pulses (10 pulses); edge: 4 (4 pulses).
inline GateTemplate a_gate(int j, const ChainParams& p) {
    const AngleSet s1 = angle_set(k_rho_for(1.0, p.k), 1.0);
    const AngleSet sh = angle_set(k_rho_for(0.5, p.k), 0.5);
    const double th = s1.theta, Th = s1.Theta, ga = s1.gamma;
    const double thh = sh.theta, Thh = sh.Theta, gah = sh.gamma;
    std::vector<TemplateUnit> us;
    if (p.is_edge(j)) {
        const double f6 = -th - thh, f7 = -th + thh, f8 = 0.5 * pi - 2.0 * thh;
        us = {{j, Config::Edge1, 0.5, true, 0.5 * pi},
              {j, Config::Edge0, 0.5, true, f8},
              {j, Config::Edge1, 1.0, true, f7},
              {j, Config::Edge0, 1.0, true, f6}};
    } else {
        const double f1 = -2.0 * (th + gah + thh);
        const double f2 = -th - 2.0 * Th;
        const double f3 = -2.0 * (th + ga - gah - thh);
        const double f4 = 0.5 * pi - 2.0 * ga - 4.0 * thh;
        const double f5 = 0.5 * pi - thh - 2.0 * Thh;
        us = {{j, Config::Int11, 0.5, true, 0.5 * pi}, {j, Config::IntSym, 0.5, true, f5},
              {j, Config::Int00, 0.5, true, f4},       {j, Config::Int11, 1.0, true, f3},
              {j, Config::IntSym, 1.0, true, f2},      {j, Config::Int00, 1.0, true, f1}};
    }
    return finish("A", GateSpec{GateKind::A, j}, std::move(us), p);
}

/// sigma_z gate Z_j: two pi sweeps over all configurations.
inline GateTemplate z_gate(int j, const ChainParams& p) {
    std::vector<TemplateUnit> us;
    if (p.is_edge(j)) {
        us = {{j, Config::Edge0, 1.0, true, 0.5 * pi},
              {j, Config::Edge1, 1.0, true, 0.5 * pi},
              {j, Config::Edge0, 1.0, true, 0.0},
              {j, Config::Edge1, 1.0, true, 0.0}};
    } else {
        us = {{j, Config::Int00, 1.0, true, 0.5 * pi}, {j, Config::IntSym, 1.0, true, 0.5 * pi},
              {j, Config::Int11, 1.0, true, 0.5 * pi}, {j, Config::Int00, 1.0, true, 0.0},
              {j, Config::IntSym, 1.0, true, 0.0},     {j, Config::Int11, 1.0, true, 0.0}};
    }
    return finish("Z", GateSpec{GateKind::Z, j}, std::move(us), p);
}

/// Controlled-phase B on an adjacent pair (x, y = x+1) with angle phi.
/// Three variants by edge placement; the both-edge case only exists at
/// n = 2.  Templates are the appendix ones where given.
inline GateTemplate b_gate_adjacent(int x, int y, double phi, const ChainParams& p) {
    if (y != x + 1) throw std::invalid_argument("b_gate_adjacent: pair not adjacent");
    const AngleSet s1 = angle_set(k_rho_for(1.0, p.k), 1.0);
    const double th = s1.theta, Th = s1.Theta, ga = s1.gamma;
    const double f1 = -2.0 * ga - 3.0 * th + 2.0 * Th;
    const double f2 = phi / 2.0 - 2.0 * ga - 6.0 * th;
    const double f3 = phi / 4.0 - 0.5 * pi;
    const double f4 = -f1;
    const double f5 = phi / 2.0 + 2.0 * ga + 6.0 * th;
    const bool ex = p.is_edge(x), ey = p.is_edge(y);
    std::vector<TemplateUnit> us;
    if (!ex && !ey) {
        // interior-interior, 14 Q-pulses / 22 pulses
        us = {{y, Config::Int11, 1, true, f5},  {y, Config::Int11, 1, true, 0},
              {y, Config::IntSym, 1, true, f4}, {y, Config::IntSym, 1, true, 0},
              {x, Config::Int00, 1, true, f3},  {x, Config::IntSym, 1, true, f3},
              {x, Config::Int11, 1, true, f3},  {y, Config::Int00, 1, true, f2},
              {y, Config::Int00, 1, true, 0},   {y, Config::IntSym, 1, true, f1},
              {y, Config::IntSym, 1, true, 0},  {x, Config::Int00, 1, true, 0},
              {x, Config::IntSym, 1, true, 0},  {x, Config::Int11, 1, true, 0}};
    } else if (ex && ey) {
        // n = 2: 10 single pulses
        us = {{y, Config::Edge1, 1, true, f5}, {y, Config::Edge1, 1, true, 0},
              {y, Config::Edge0, 1, true, f2}, {y, Config::Edge0, 1, true, 0},
              {x, Config::Edge1, 1, true, f3}, {x, Config::Edge0, 1, true, f3},
              {y, Config::Edge1, 1, true, f1}, {y, Config::Edge1, 1, true, 0},
              {x, Config::Edge1, 1, true, 0},  {x, Config::Edge0, 1, true, 0}};
    } else if (ex) {
        // edge qubit in the low slot: appendix edge template, 12 Q / 16 pulses
        const double f6 = phi / 2.0 - 6.0 * ga - 12.0 * th + 4.0 * Th;
        const double f7 = f3 - f1, f8 = f3 + f1, f9 = -2.0 * f1;
        const double f10 = phi / 2.0 - 2.0 * ga + 4.0 * Th;
        us = {{y, Config::Int11, 1, true, f10}, {y, Config::Int11, 1, true, 0},
              {y, Config::IntSym, 1, true, f9}, {y, Config::IntSym, 1, true, 0},
              {x, Config::Edge0, 1, true, f8},  {x, Config::Edge1, 1, true, f7},
              {y, Config::Int00, 1, true, f6},  {y, Config::Int00, 1, true, 0},
              {y, Config::IntSym, 1, true, 0},  {y, Config::IntSym, 1, true, 0},
              {x, Config::Edge0, 1, true, 0},   {x, Config::Edge1, 1, true, 0}};
    } else {
        // edge qubit in the high slot: 19 pulses / 15 Q-pulses
        us = {{x, Config::Int11, 1, true, f3},  {x, Config::IntSym, 1, true, f1},
              {x, Config::Int00, 1, true, f2},  {y, Config::Edge1, 1, true, f5},
              {y, Config::Edge0, 1, true, 0},   {x, Config::IntSym, 1, true, 0},
              {x, Config::IntSym, 1, true, f4}, {x, Config::IntSym, 2, true, 0},
              {x, Config::Int11, 1, true, 0},   {x, Config::IntSym, 1, true, 0},
              {x, Config::Int00, 1, true, 0},   {y, Config::Edge1, 1, true, 0},
              {y, Config::Edge0, 1, true, 0},   {x, Config::IntSym, 1, true, 0},
              {x, Config::IntSym, 1, true, 0}};
    }
    GateSpec spec{GateKind::B, x, y, phi};
    return finish("B", spec, std::move(us), p);
}

/// NOT gate N_j: one pi flip per configuration class.
inline GateTemplate n_gate(int j, const ChainParams& p) {
    std::vector<TemplateUnit> us;
    if (p.is_edge(j)) {
        us = {{j, Config::Edge0, 1, true, 0}, {j, Config::Edge1, 1, true, 0}};
    } else {
        us = {{j, Config::Int00, 1, true, 0},
              {j, Config::IntSym, 1, true, 0},
              {j, Config::Int11, 1, true, 0}};
    }
    return finish("N", GateSpec{GateKind::N, j}, std::move(us), p);
}

namespace detail {

/// Append correction units (pairs and full 2-pi phase units) on a qubit.
/// n00: interior 00-class pairs, nsym: symmetric/edge-class pairs,
/// nrho2: single 2-pi rotations.
inline void push_corrections(std::vector<TemplateUnit>& us, int q, const ChainParams& p, int n00,
                             int nsym, int nrho2) {
    const bool e = p.is_edge(q);
    if (e && n00 > 0) throw std::logic_error("push_corrections: 00 pairs need an interior qubit");
    for (int i = 0; i < n00; ++i) {
        const Config c = (i % 2 == 0) ? Config::Int00 : Config::Int11;
        us.push_back({q, c, 1, true, 0});
        us.push_back({q, c, 1, true, 0});
    }
    for (int i = 0; i < nsym; ++i) {
        const Config c = e ? (i % 2 == 0 ? Config::Edge0 : Config::Edge1) : Config::IntSym;
        us.push_back({q, c, 1, true, 0});
        us.push_back({q, c, 1, true, 0});
    }
    for (int i = 0; i < nrho2; ++i)
        us.push_back({q, e ? Config::Edge0 : Config::IntSym, 2, true, 0});
}

/// Conditional-flip core of a CN with interior target t and sandwich
/// qubit m (the neighbour of t that is not the control): Q_t^{11}
/// flips only (control=1, m=1); conjugating by N_m extends the flip to
/// (control=1, m=0) without ever driving the degenerate symmetric class.
inline void push_cn_core(std::vector<TemplateUnit>& us, int t, int m, const ChainParams& p) {
    auto push_nm = [&] {
        if (p.is_edge(m)) {
            us.push_back({m, Config::Edge0, 1, true, 0});
            us.push_back({m, Config::Edge1, 1, true, 0});
        } else {
            us.push_back({m, Config::Int00, 1, true, 0});
            us.push_back({m, Config::IntSym, 1, true, 0});
            us.push_back({m, Config::Int11, 1, true, 0});
        }
    };
    us.push_back({t, Config::Int11, 1, true, 0});
    push_nm();
    us.push_back({t, Config::Int11, 1, true, 0});
    push_nm();
}

}  // namespace detail

/// CNOT with control c and adjacent target t.
inline GateTemplate cn_gate(int c, int t, const ChainParams& p) {
    if (std::abs(c - t) != 1) throw std::invalid_argument("cn_gate: control and target must be adjacent");
    std::vector<TemplateUnit> us;
    if (p.is_edge(t)) {
        // 7 pulses: flip on control=1 plus phase pairs.
        us = {{t, Config::Edge0, 1, true, 0}, {t, Config::Edge0, 1, true, 0},
              {t, Config::Edge1, 1, true, 0}, {t, Config::Edge0, 1, true, 0},
              {t, Config::Edge0, 1, true, 0}, {t, Config::Edge1, 1, true, 0},
              {t, Config::Edge1, 1, true, 0}};
    } else {
        const int m = 2 * t - c;
        detail::push_cn_core(us, t, m, p);
        if (p.is_edge(m)) {
            // 32 pulses total: 8 core + 24 corrections
            detail::push_corrections(us, t, p, 4, 4, 0);
        } else {
            // 18 pulses total: 14 core + one 00 pair
            detail::push_corrections(us, t, p, 1, 0, 0);
        }
    }
    return finish("CN", GateSpec{GateKind::CN, c, t}, std::move(us), p);
}

/// Swap of the adjacent pair (lo, hi).  Realized as the CN-CN-CN flip
/// skeleton with targets (lo, hi, lo) and jointly solved corrections;
/// the correction budget brings every variant to its fixed size
/// (54 / 36 / 21 pulses).
inline GateTemplate swap_gate(int lo, int hi, const ChainParams& p) {
    if (hi != lo + 1) throw std::invalid_argument("swap_gate: pair not adjacent");
    std::vector<TemplateUnit> us;
    auto core_pulses = [&](int t) {
        if (p.is_edge(t)) return 1;
        return p.is_edge(2 * t - (t == lo ? hi : lo)) ? 8 : 14;
    };
    auto push_core = [&](int t) {
        if (p.is_edge(t)) {
            const Config c1 = Config::Edge1;  // flip when partner is 1
            us.push_back({t, c1, 1, true, 0});
        } else {
            detail::push_cn_core(us, t, 2 * t - (t == lo ? hi : lo), p);
        }
    };
    push_core(lo);
    push_core(hi);
    push_core(lo);
    const int bare = 2 * core_pulses(lo) + core_pulses(hi);
    const bool elo = p.is_edge(lo), ehi = p.is_edge(hi);
    const int total = (elo && ehi) ? 21 : ((elo || ehi) ? 36 : 54);
    const int budget = total - bare;
    int a = 0, b = 0, r2 = 0;  // 00-pairs, sym/edge pairs, 2-pi units
    if (elo && ehi) {
        b = budget / 2;
        r2 = budget - 2 * b;
    } else if (!elo && !ehi) {
        // budgets 12/18/24 when at most one sandwich neighbour is an edge;
        // 30 only for the (1,2) pair at n = 4
        if (budget == 30) {
            a = 7;
            b = 1;
        } else {
            a = budget / 6;
            b = budget / 6;
            r2 = budget - 6 * a;
        }
    } else if (elo) {  // targets edge, int, edge
        a = budget / 6;
        b = (budget - 4 * a) / 2;
        r2 = budget - 4 * a - 2 * b;
    } else {  // targets int, edge, int
        a = 2;
        b = (budget - 8) / 2;
        r2 = budget - 8 - 2 * b;
    }
    if (elo && ehi) {
        detail::push_corrections(us, lo, p, 0, (b + 1) / 2, r2);
        detail::push_corrections(us, hi, p, 0, b / 2, 0);
    } else if (elo || ehi) {
        const int ti = elo ? hi : lo;
        const int te = elo ? lo : hi;
        detail::push_corrections(us, ti, p, a, (b + 1) / 2, r2);
        detail::push_corrections(us, te, p, 0, b / 2, 0);
    } else {
        detail::push_corrections(us, lo, p, a - a / 2, (b + 1) / 2, r2);
        detail::push_corrections(us, hi, p, a / 2, b / 2, 0);
    }
    return finish("S", GateSpec{GateKind::S, hi, lo}, std::move(us), p);
}

}  // namespace tmpl

/// Pulse-count bookkeeping of a template.
inline int template_pulse_count(const GateTemplate& t) {
    int c = 0;
    for (const auto& u : t.units)
        c += (u.config == Config::Int00 || u.config == Config::Int11) ? 2 : 1;
    return c;
}

}  // namespace iqc
