/*
 * Copyright (c) 2026, the iqcsim developers.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "iqcsim/chain.hpp"
#include "iqcsim/pulse.hpp"

namespace iqc {

enum class Algorithm { QFT, IQFT };

inline const char* algorithm_name(Algorithm a) { return a == Algorithm::QFT ? "QFT" : "IQFT"; }

/// Controlled-phase angle of the B gate between qubits j < k.
inline double b_gate_phase(int j, int k) { return pi / std::pow(2.0, k - j); }

/// Time-ordered gate sequence of the QFT product
///   U = T A_0 B_01 ... A_{n-1}   (rightmost factor acts first).
inline std::vector<GateSpec> qft_gate_sequence(int n) {
    std::vector<GateSpec> gs;
    gs.push_back({GateKind::A, n - 1});
    for (int j = n - 2; j >= 0; --j) {
        for (int k = n - 1; k > j; --k) gs.push_back({GateKind::B, j, k, b_gate_phase(j, k)});
        gs.push_back({GateKind::A, j});
    }
    gs.push_back({GateKind::T});
    return gs;
}

/// Time-ordered gate sequence of the IQFT product with G_jk = Rdag_jk B_jk.
inline std::vector<GateSpec> iqft_gate_sequence(int n) {
    std::vector<GateSpec> gs;
    gs.push_back({GateKind::A, n - 1});
    for (int j = n - 2; j >= 0; --j) {
        for (int k = n - 1; k > j; --k) gs.push_back({GateKind::G, j, k, b_gate_phase(j, k)});
        for (int k = n - 1; k > j; --k) gs.push_back({GateKind::R, j, k});
        gs.push_back({GateKind::A, j});
    }
    gs.push_back({GateKind::T});
    return gs;
}

inline std::vector<GateSpec> gate_sequence(Algorithm a, int n) {
    return a == Algorithm::QFT ? qft_gate_sequence(n) : iqft_gate_sequence(n);
}

namespace detail {

/// Embed a one-qubit operator at qubit i.
inline Mat embed1(const Mat2& g, int i, int n) {
    const int d = 1 << n;
    Mat u = Mat::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        const int bi = (b >> i) & 1;
        for (int bo = 0; bo < 2; ++bo) u((b & ~(1 << i)) | (bo << i), b) = g(bo, bi);
    }
    return u;
}

}  // namespace detail

/// Exact unitary of an abstract gate on n qubits, under the convention
/// that qubit l carries bit weight 2^l.
inline Mat ideal_gate_matrix(const GateSpec& g, int n) {
    const int d = 1 << n;
    auto valid = [&](int q) { return q >= 0 && q < n; };
    switch (g.kind) {
        case GateKind::A: {
            if (!valid(g.i)) throw std::invalid_argument("ideal_gate_matrix: bad A index");
            Mat2 h;
            h << 1, 1, 1, -1;
            h /= std::sqrt(2.0);
            return detail::embed1(h, g.i, n);
        }
        case GateKind::Z: {
            if (!valid(g.i)) throw std::invalid_argument("ideal_gate_matrix: bad Z index");
            Mat2 z;
            z << 1, 0, 0, -1;
            return detail::embed1(z, g.i, n);
        }
        case GateKind::N: {
            if (!valid(g.i)) throw std::invalid_argument("ideal_gate_matrix: bad N index");
            Mat2 x;
            x << 0, 1, 1, 0;
            return detail::embed1(x, g.i, n);
        }
        case GateKind::B: {
            if (!valid(g.i) || !valid(g.j) || g.i == g.j)
                throw std::invalid_argument("ideal_gate_matrix: bad B indices");
            Mat u = Mat::Identity(d, d);
            for (int b = 0; b < d; ++b)
                if (((b >> g.i) & 1) && ((b >> g.j) & 1)) u(b, b) = std::polar(1.0, g.phi);
            return u;
        }
        case GateKind::CN: {
            if (!valid(g.i) || !valid(g.j) || g.i == g.j)
                throw std::invalid_argument("ideal_gate_matrix: bad CN indices");
            Mat u = Mat::Zero(d, d);
            for (int b = 0; b < d; ++b) {
                const int out = ((b >> g.i) & 1) ? b ^ (1 << g.j) : b;
                u(out, b) = 1.0;
            }
            return u;
        }
        case GateKind::R:
        case GateKind::Rdag: {
            if (!valid(g.i) || !valid(g.j) || g.i == g.j)
                throw std::invalid_argument("ideal_gate_matrix: bad R indices");
            // R_ij |a_i .. b_j ..> = (-1)^{b_j} |a_i .. (abar_i ^ b_j) ..>
            Mat u = Mat::Zero(d, d);
            for (int b = 0; b < d; ++b) {
                const int a = (b >> g.i) & 1, bj = (b >> g.j) & 1;
                const int outbit = (a ^ 1) ^ bj;
                const int out = (b & ~(1 << g.j)) | (outbit << g.j);
                u(out, b) = (bj ? -1.0 : 1.0);
            }
            return g.kind == GateKind::R ? u : Mat(u.adjoint());
        }
        case GateKind::S: {
            if (!valid(g.i) || !valid(g.j) || g.i == g.j)
                throw std::invalid_argument("ideal_gate_matrix: bad S indices");
            Mat u = Mat::Zero(d, d);
            for (int b = 0; b < d; ++b) {
                const int bi = (b >> g.i) & 1, bj = (b >> g.j) & 1;
                int out = b & ~((1 << g.i) | (1 << g.j));
                out |= (bj << g.i) | (bi << g.j);
                u(out, b) = 1.0;
            }
            return u;
        }
        case GateKind::G: {
            GateSpec rd{GateKind::Rdag, g.i, g.j};
            GateSpec bb{GateKind::B, g.i, g.j, g.phi};
            return ideal_gate_matrix(rd, n) * ideal_gate_matrix(bb, n);
        }
        case GateKind::T: {
            Mat u = Mat::Zero(d, d);
            for (int b = 0; b < d; ++b) {
                int out = 0;
                for (int l = 0; l < n; ++l)
                    if ((b >> l) & 1) out |= 1 << (n - 1 - l);
                u(out, b) = 1.0;
            }
            return u;
        }
    }
    throw std::invalid_argument("ideal_gate_matrix: unknown gate kind");
}

/// Full ideal unitary of an algorithm together with all gate-prefix
/// products U(t) = U_t ... U_1 (U(0) = 1), as used by the Heisenberg
/// picture of the correlation function.
struct AlgorithmUnitary {
    std::vector<GateSpec> gates;
    std::vector<Mat> prefixes;  // prefixes[t] = U(t), size gates+1
    const Mat& full() const { return prefixes.back(); }
};

inline AlgorithmUnitary ideal_algorithm_unitary(Algorithm a, int n) {
    if (n < 1) throw std::invalid_argument("ideal_algorithm_unitary: n >= 1");
    AlgorithmUnitary out;
    if (n == 1) {
        out.gates = {GateSpec{GateKind::A, 0}};
    } else {
        out.gates = gate_sequence(a, n);
    }
    const int d = 1 << n;
    out.prefixes.reserve(out.gates.size() + 1);
    out.prefixes.push_back(Mat::Identity(d, d));
    for (const auto& g : out.gates) out.prefixes.push_back(ideal_gate_matrix(g, n) * out.prefixes.back());
    return out;
}

/// Textbook discrete-Fourier matrix used as a cross-check oracle:
/// F[x][y] = exp(2 pi i x y / 2^n) / sqrt(2^n) with qubit-l bit weight
/// 2^l on input and reversed significance on output, which is exactly
/// what the gate product implements.
inline Mat dft_matrix(int n) {
    const int d = 1 << n;
    Mat f(d, d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) f(x, y) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * pi * x * y / d);
    return f;
}

}  // namespace iqc
