#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qwalk {

using complex = std::complex<double>;

// Coin bias angle. theta = pi/4 is the unbiased (Hadamard) coin; the
// closed-form asymptotics elsewhere in the library are valid only there.
struct CoinAngle {
    double theta;

    explicit CoinAngle(double t = std::numbers::pi / 4) : theta(t) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
            throw std::invalid_argument("coin angle must lie in [0, pi/2]");
    }

    bool is_hadamard() const {
        return std::abs(theta - std::numbers::pi / 4) < 1e-12;
    }
};

// Point on the Bloch sphere selecting the initial chirality spinor
// (cos(gamma/2), e^{i phi} sin(gamma/2)).
struct BlochAngles {
    double gamma;
    double phi;

    BlochAngles(double g, double p) : gamma(g), phi(p) {
        if (!(gamma >= 0.0 && gamma <= std::numbers::pi))
            throw std::invalid_argument("gamma must lie in [0, pi]");
        if (!(phi >= 0.0 && phi <= 2 * std::numbers::pi))
            throw std::invalid_argument("phi must lie in [0, 2*pi]");
    }
};

// Walker state on a finite lattice window: left-mover amplitudes a_k and
// right-mover amplitudes b_k for k in [origin_offset, origin_offset + size).
// Snapshots are immutable by convention; step() returns a fresh field whose
// window has grown by one site per side, so the infinite line is represented
// exactly (the support can never reach a boundary).
struct SpinorField {
    int origin_offset = 0;
    std::vector<complex> left_amps;
    std::vector<complex> right_amps;
    int time = 0;

    std::size_t size() const { return left_amps.size(); }

    int site_at(std::size_t index) const {
        return origin_offset + static_cast<int>(index);
    }

    // Amplitudes read as zero outside the stored window.
    complex left_at(int site) const {
        const int i = site - origin_offset;
        if (i < 0 || i >= static_cast<int>(left_amps.size())) return {};
        return left_amps[static_cast<std::size_t>(i)];
    }

    complex right_at(int site) const {
        const int i = site - origin_offset;
        if (i < 0 || i >= static_cast<int>(right_amps.size())) return {};
        return right_amps[static_cast<std::size_t>(i)];
    }
};

// Total norm, summed in ascending site order so results are bit-reproducible.
inline double total_norm(const SpinorField& state) {
    double n = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i)
        n += std::norm(state.left_amps[i]) + std::norm(state.right_amps[i]);
    return n;
}

// Walker localized on one site with chirality spinor given by the Bloch
// angles: a = cos(gamma/2), b = e^{i phi} sin(gamma/2).
inline SpinorField init_localized(const BlochAngles& bloch, int site = 0) {
    SpinorField state;
    state.origin_offset = site;
    state.left_amps = {complex(std::cos(bloch.gamma / 2), 0.0)};
    state.right_amps = {std::polar(std::sin(bloch.gamma / 2), bloch.phi)};
    state.time = 0;
    return state;
}

// One application of the unitary map
//   a_k(t+1) = a_{k+1}(t) cos(theta) + b_{k+1}(t) sin(theta)
//   b_k(t+1) = a_{k-1}(t) sin(theta) - b_{k-1}(t) cos(theta).
// The window grows by one site on each side, matching the light cone.
inline SpinorField step(const SpinorField& state, const CoinAngle& coin) {
    const double ct = std::cos(coin.theta);
    const double st = std::sin(coin.theta);
    const int n = static_cast<int>(state.size());

    SpinorField next;
    next.origin_offset = state.origin_offset - 1;
    next.time = state.time + 1;
    next.left_amps.assign(static_cast<std::size_t>(n) + 2, complex{});
    next.right_amps.assign(static_cast<std::size_t>(n) + 2, complex{});

    // New index i holds site (origin-1)+i, which reads old index i (site+1)
    // for the left mover and old index i-2 (site-1) for the right mover.
    for (int i = 0; i < n; ++i) {
        const complex a = state.left_amps[static_cast<std::size_t>(i)];
        const complex b = state.right_amps[static_cast<std::size_t>(i)];
        next.left_amps[static_cast<std::size_t>(i)] = ct * a + st * b;
        next.right_amps[static_cast<std::size_t>(i) + 2] = st * a - ct * b;
    }
    return next;
}

// n_steps successive applications of step().
inline SpinorField evolve(SpinorField state, const CoinAngle& coin,
                          int n_steps) {
    if (n_steps < 0)
        throw std::invalid_argument("n_steps must be nonnegative");
    for (int t = 0; t < n_steps; ++t) state = step(state, coin);
    return state;
}

// P(k) = |a_k|^2 + |b_k|^2, aligned with the state's window.
inline std::vector<double> position_distribution(const SpinorField& state) {
    std::vector<double> p(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        p[i] = std::norm(state.left_amps[i]) + std::norm(state.right_amps[i]);
    return p;
}

// Global chirality weights (P_L, P_R) = (sum |a_k|^2, sum |b_k|^2).
inline std::pair<double, double> chirality_probabilities(
    const SpinorField& state) {
    double pl = 0.0, pr = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        pl += std::norm(state.left_amps[i]);
        pr += std::norm(state.right_amps[i]);
    }
    return {pl, pr};
}

// Interference term Q(t) = sum_k a_k(t) b_k(t)^*. Its long-time limit is the
// invariant that parameterizes every asymptotic quantity in this library.
inline complex interference_term(const SpinorField& state) {
    complex q{};
    for (std::size_t i = 0; i < state.size(); ++i)
        q += state.left_amps[i] * std::conj(state.right_amps[i]);
    return q;
}

}  // namespace qwalk
