#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/walker.hpp"

namespace qwalk {

// (1/2)(1 - 1/sqrt(2)): the interference invariant of a pure-left start, and
// the scale of the whole reachable region.
inline constexpr double q0_unit = 0.14644660940672627;

// Radius of the reachable disk of long-time interference values,
// (1/sqrt(2))(1 - 1/sqrt(2)); attained at gamma = pi/2, phi = pi/2 or 3pi/2.
inline constexpr double q0_reach_radius = 0.20710678118654757;

// Long-time interference invariant Q0 = mu + i nu. The constraints keep the
// stationary chirality weights and both stationary densities valid
// probability distributions.
struct InterferenceTerm {
    double mu;
    double nu;

    InterferenceTerm(double m, double n) : mu(m), nu(n) {
        if (!(mu * mu <= 0.25 + 1e-12))
            throw std::invalid_argument("interference term needs mu^2 <= 1/4");
        if (!(2 * mu * mu + nu * nu <= 0.25 + 1e-12))
            throw std::invalid_argument(
                "interference term needs 2*mu^2 + nu^2 <= 1/4");
    }

    complex value() const { return {mu, nu}; }
    double magnitude() const { return std::hypot(mu, nu); }
    bool is_null(double eps = 1e-12) const { return magnitude() <= eps; }
};

// 2x2 Hermitian unit-trace density over the chirality space:
// [[pi_L, q], [conj(q), pi_R]].
struct ChiralityDensity {
    double pi_L;
    double pi_R;
    complex q;

    ChiralityDensity(double pl, double pr, complex off)
        : pi_L(pl), pi_R(pr), q(off) {
        if (!(pi_L >= -1e-12 && pi_R >= -1e-12))
            throw std::invalid_argument("density diagonal must be nonnegative");
        if (std::abs(pi_L + pi_R - 1.0) > 1e-12)
            throw std::invalid_argument("density trace must be 1");
        if (std::norm(q) > pi_L * pi_R + 1e-12)
            throw std::invalid_argument(
                "density must be positive semidefinite: |q|^2 <= pi_L*pi_R");
    }
};

// Tail-averaged estimate of the long-time limits, with the tail window's
// dispersion as a convergence diagnostic.
struct AsymptoticEstimate {
    InterferenceTerm q0;
    double pi_L;
    double pi_R;
    double tail_std;
    int horizon;
};

// Closed-form Q0 for the Hadamard coin:
//   mu = (1/2)(1 - 1/sqrt(2)) [cos(gamma) + sin(gamma) cos(phi)]
//   nu = -(1/2)(1 - 1/sqrt(2)) sqrt(2) sin(gamma) sin(phi).
// The sign of nu follows the e^{-i phi} phase of the time-zero interference
// term a_0 b_0^* and is preserved by the map: hand-iterating two steps from
// (gamma = pi/2, phi = pi/2) gives Q(2) = -i/4, and the tail-averaged limit
// is -i (1/sqrt(2))(1 - 1/sqrt(2)).
inline InterferenceTerm analytic_q0(const BlochAngles& bloch,
                                    const CoinAngle& coin = CoinAngle{}) {
    if (!coin.is_hadamard())
        throw std::domain_error(
            "analytic form unavailable: closed-form asymptotics require the "
            "Hadamard coin (theta = pi/4)");
    const double sg = std::sin(bloch.gamma);
    const double mu = q0_unit * (std::cos(bloch.gamma) + sg * std::cos(bloch.phi));
    const double nu = -q0_unit * std::numbers::sqrt2 * sg * std::sin(bloch.phi);
    return {mu, nu};
}

// Stationary chirality weights (Pi_L, Pi_R) = (1/2 + mu, 1/2 - mu). Pi_R is
// computed as the complement of Pi_L so the pair sums to 1 exactly.
inline std::pair<double, double> stationary_chirality(
    const InterferenceTerm& q0) {
    if (!(q0.mu >= -0.5 && q0.mu <= 0.5))
        throw std::invalid_argument("mu must lie in [-1/2, 1/2]");
    const double pi_l = 0.5 + q0.mu;
    return {pi_l, 1.0 - pi_l};
}

// Evolves the walker to `horizon` and averages P_L(t) and Q(t) over the final
// window of tail_fraction * horizon steps. Averaging is what kills the
// oscillatory component of the approach to the limits; a single terminal
// value would converge an order of magnitude slower.
inline AsymptoticEstimate estimate_asymptotics(const BlochAngles& bloch,
                                               const CoinAngle& coin = CoinAngle{},
                                               int horizon = 2000,
                                               double tail_fraction = 0.5) {
    if (horizon < 100)
        throw std::invalid_argument("horizon must be at least 100 steps");
    if (!(tail_fraction > 0.0 && tail_fraction <= 0.5))
        throw std::invalid_argument("tail_fraction must lie in (0, 1/2]");

    const int window =
        std::max(1, static_cast<int>(tail_fraction * horizon));
    std::vector<double> pls;
    std::vector<complex> qs;
    pls.reserve(static_cast<std::size_t>(window));
    qs.reserve(static_cast<std::size_t>(window));

    SpinorField state = init_localized(bloch);
    for (int t = 1; t <= horizon; ++t) {
        state = step(state, coin);
        if (t > horizon - window) {
            pls.push_back(chirality_probabilities(state).first);
            qs.push_back(interference_term(state));
        }
    }

    double pl_mean = 0.0;
    complex q_mean{};
    for (std::size_t i = 0; i < pls.size(); ++i) {
        pl_mean += pls[i];
        q_mean += qs[i];
    }
    pl_mean /= static_cast<double>(pls.size());
    q_mean /= static_cast<double>(qs.size());

    double var = 0.0;
    for (std::size_t i = 0; i < pls.size(); ++i) {
        const double dp = pls[i] - pl_mean;
        var += dp * dp + std::norm(qs[i] - q_mean);
    }
    var /= static_cast<double>(pls.size());

    return AsymptoticEstimate{InterferenceTerm{q_mean.real(), q_mean.imag()},
                              pl_mean, 1.0 - pl_mean, std::sqrt(var), horizon};
}

// First stationary reduced density over chirality:
// [[1/2 + mu, mu + i nu], [mu - i nu, 1/2 - mu]].
inline ChiralityDensity rho1c(const InterferenceTerm& q0) {
    const auto [pi_l, pi_r] = stationary_chirality(q0);
    return {pi_l, pi_r, q0.value()};
}

}  // namespace qwalk
