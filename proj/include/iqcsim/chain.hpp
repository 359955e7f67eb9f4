/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace iqc {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;

/// Reduce a phase accumulated in extended precision to (-pi, pi].
/// Schedule end times reach ~1e8 and energies ~1e4, so nu*t products
/// overflow double-precision phase accuracy; all reductions go through here.
inline double reduce_phase(long double x) {
    return static_cast<double>(remainderl(x, 2.0L * pi_l));
}

inline cd phase_factor(long double x) {
    const double r = reduce_phase(x);
    return {std::cos(r), std::sin(r)};
}

/// Machine parameters of the Ising chain in units hbar = J = 1.
///
/// n spins with nearest-neighbour coupling J and Larmor frequencies
/// omega_l = (l+1)*a.  k is the integer of the generalized 2-pi-k
/// condition used by every pulse the compiler emits.
struct ChainParams {
    int n = 2;          // qubit count
    double a = 100.0;   // Larmor gradient, in units of J
    int k = 16;         // 2-pi-k integer
    double J = 1.0;     // Ising coupling; fixed energy unit

    ChainParams() = default;
    ChainParams(int n_, double a_, int k_) : n(n_), a(a_), k(k_) {
        if (n < 2) throw std::invalid_argument("ChainParams: n must be >= 2");
        if (k < 1) throw std::invalid_argument("ChainParams: k must be >= 1");
        if (!(a > 0)) throw std::invalid_argument("ChainParams: a must be > 0");
    }

    int dim() const { return 1 << n; }
    bool is_edge(int l) const { return l == 0 || l == n - 1; }

    /// Selective-excitation sanity: Omega ~ J/k must be << J << a.
    /// A violated hierarchy is not an error (the simulator stays exact),
    /// only a warning that the 2-pi-k analysis no longer applies.
    bool selective_regime_warning() const { return a / J < 10.0 || k < 10; }
    std::string warning_text() const {
        if (!selective_regime_warning()) return {};
        return "outside selective excitation regime (need a/J >= 10 and k >= 10): a/J=" +
               std::to_string(a / J) + " k=" + std::to_string(k);
    }
};

/// omega_l = (l+1)*a
inline double larmor_frequency(int l, const ChainParams& p) {
    if (l < 0 || l >= p.n) throw std::out_of_range("larmor_frequency: qubit index");
    return (l + 1) * p.a;
}

/// sigma^z eigenvalue of qubit l in basis state b; the convention is
/// sigma^z|0> = +|0>, and qubit l occupies bit weight 2^l.
inline int spin_sign(unsigned b, int l) { return (b >> l) & 1u ? -1 : +1; }

/// Diagonal of H0 = -1/2 sum omega_l sz_l - J/2 sum sz_l sz_{l+1}.
inline RVec static_hamiltonian_diagonal(const ChainParams& p) {
    RVec e(p.dim());
    for (int b = 0; b < p.dim(); ++b) {
        double v = 0.0;
        for (int l = 0; l < p.n; ++l) v -= 0.5 * larmor_frequency(l, p) * spin_sign(b, l);
        for (int l = 0; l + 1 < p.n; ++l)
            v -= 0.5 * p.J * spin_sign(b, l) * spin_sign(b, l + 1);
        e[b] = v;
    }
    return e;
}

/// Neighbour configuration of a driven qubit.  Only the sum of the
/// neighbour sigma^z values enters the transition energy, so the two
/// mixed interior configurations (01)/(10) are one physical class.
enum class Config { Int00, IntSym, Int11, Edge0, Edge1 };

inline bool config_is_edge(Config c) { return c == Config::Edge0 || c == Config::Edge1; }

/// Sum of neighbour spin signs for a configuration.
inline int config_spin_sum(Config c) {
    switch (c) {
        case Config::Int00: return +2;
        case Config::IntSym: return 0;
        case Config::Int11: return -2;
        case Config::Edge0: return +1;
        case Config::Edge1: return -1;
    }
    return 0;
}

inline const char* config_name(Config c) {
    switch (c) {
        case Config::Int00: return "00";
        case Config::IntSym: return "10";
        case Config::Int11: return "11";
        case Config::Edge0: return "0";
        case Config::Edge1: return "1";
    }
    return "?";
}

/// Neighbour configuration of qubit i in basis state b.
inline Config config_of(unsigned b, int i, const ChainParams& p) {
    if (p.is_edge(i)) {
        const int nb = (i == 0) ? 1 : i - 1;
        return (b >> nb) & 1u ? Config::Edge1 : Config::Edge0;
    }
    const unsigned hi = (b >> (i + 1)) & 1u, lo = (b >> (i - 1)) & 1u;
    if (hi == 0 && lo == 0) return Config::Int00;
    if (hi == 1 && lo == 1) return Config::Int11;
    return Config::IntSym;
}

/// Energy cost of flipping qubit i from 0 to 1 given its neighbour
/// configuration: Delta E = omega_i + J * (s_a + s_c).
inline double transition_energy(int i, Config c, const ChainParams& p) {
    if (config_is_edge(c) != p.is_edge(i))
        throw std::invalid_argument("transition_energy: configuration does not match qubit position");
    return larmor_frequency(i, p) + p.J * config_spin_sum(c);
}

/// Pulse frequency nu_i^{ac} resonant with that flip.
inline double pulse_frequency(int i, Config c, const ChainParams& p) {
    return transition_energy(i, c, p);
}

/// Random state with i.i.d. complex Gaussian amplitudes, normalized.
inline Vec random_gaussian_state(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_gaussian_state: n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(std::size_t{1} << n);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cd(g(rng), g(rng));
    v /= v.norm();
    return v;
}

}  // namespace iqc
