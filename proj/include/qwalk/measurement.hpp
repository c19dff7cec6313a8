#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/asymptotics.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

// Chirality eigenstates of the projective measurement: plus = (1,0) (the
// left-mover component), minus = (0,1) (the right-mover component).
enum class Chirality { plus, minus };

struct EnsembleEntry {
    int site;
    Chirality chirality;
    double weight;
};

// Classical mixture produced by a position+chirality measurement: one weight
// per (site, chirality) pair, zero-weight entries omitted, entries ordered by
// (site, plus-before-minus) so downstream reductions are deterministic.
struct MixedEnsemble {
    std::vector<EnsembleEntry> entries;

    explicit MixedEnsemble(std::vector<EnsembleEntry> e)
        : entries(std::move(e)) {
        double sum = 0.0;
        for (const auto& entry : entries) {
            if (entry.weight < 0.0)
                throw std::invalid_argument("ensemble weights must be >= 0");
            sum += entry.weight;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("ensemble weights must sum to 1");
    }

    double chirality_weight(Chirality c) const {
        double w = 0.0;
        for (const auto& entry : entries)
            if (entry.chirality == c) w += entry.weight;
        return w;
    }
};

// Projective measurement in the {|k>|+/->} basis: the pure state collapses to
// the mixture with weights |a_k|^2 (plus) and |b_k|^2 (minus). All coherence
// between sites and between chiralities is destroyed.
inline MixedEnsemble collapse(const SpinorField& state) {
    std::vector<EnsembleEntry> entries;
    entries.reserve(2 * state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const int site = state.site_at(i);
        const double wa = std::norm(state.left_amps[i]);
        const double wb = std::norm(state.right_amps[i]);
        if (wa > 0.0) entries.push_back({site, Chirality::plus, wa});
        if (wb > 0.0) entries.push_back({site, Chirality::minus, wb});
    }
    return MixedEnsemble{std::move(entries)};
}

// Long-time limits of a walker started in a definite chirality at any single
// site. Translation invariance of the map makes them site-independent.
struct BranchAsymptotics {
    double pi_L;
    double pi_R;
    InterferenceTerm q0;
};

// Branch constants evaluated through the general closed forms (a |+> start is
// the gamma = 0 pole of the Bloch sphere, a |-> start the gamma = pi pole):
//   plus:  Pi_L = 1 - 1/(2 sqrt(2)), Pi_R = 1/(2 sqrt(2)), Q0 = q0_unit
//   minus: the chirality mirror, Q0 = -q0_unit.
inline BranchAsymptotics branch_asymptotics(Chirality c,
                                            const CoinAngle& coin = CoinAngle{}) {
    const double gamma = (c == Chirality::plus) ? 0.0 : std::numbers::pi;
    const InterferenceTerm q0 = analytic_q0(BlochAngles{gamma, 0.0}, coin);
    const auto [pi_l, pi_r] = stationary_chirality(q0);
    return {pi_l, pi_r, q0};
}

// Asymptotic density of one measurement branch, as a chirality-space matrix.
inline ChiralityDensity branch_density(Chirality c,
                                       const CoinAngle& coin = CoinAngle{}) {
    const BranchAsymptotics b = branch_asymptotics(c, coin);
    return {b.pi_L, b.pi_R, b.q0.value()};
}

// Second stationary reduced density: the mixture of the two branch densities
// weighted by the pre-measurement chirality limits,
//   rho_2c = Pi_L * rho_plus + Pi_R * rho_minus.
// Algebraically the entries are diag(1/2 +/- mu(1-1/sqrt 2)) with a real
// off-diagonal mu(1-1/sqrt 2); nu drops out entirely because the branch
// interference constants are real and antisymmetric.
inline ChiralityDensity rho2c_analytic(const InterferenceTerm& q0,
                                       const CoinAngle& coin = CoinAngle{}) {
    const auto [w_plus, w_minus] = stationary_chirality(q0);
    const ChiralityDensity rho_plus = branch_density(Chirality::plus, coin);
    const ChiralityDensity rho_minus = branch_density(Chirality::minus, coin);
    const double pi_l = w_plus * rho_plus.pi_L + w_minus * rho_minus.pi_L;
    const complex q = w_plus * rho_plus.q + w_minus * rho_minus.q;
    return {pi_l, 1.0 - pi_l, q};
}

namespace detail {

// Tail-averaged (P_L, Q) of a definite-chirality start at `site`.
inline std::pair<double, complex> branch_tail_observables(
    Chirality c, int site, const CoinAngle& coin, int horizon,
    double tail_fraction) {
    const double gamma = (c == Chirality::plus) ? 0.0 : std::numbers::pi;
    const int window = std::max(1, static_cast<int>(tail_fraction * horizon));

    SpinorField state = init_localized(BlochAngles{gamma, 0.0}, site);
    double pl_sum = 0.0;
    complex q_sum{};
    for (int t = 1; t <= horizon; ++t) {
        state = step(state, coin);
        if (t > horizon - window) {
            pl_sum += chirality_probabilities(state).first;
            q_sum += interference_term(state);
        }
    }
    return {pl_sum / window, q_sum / static_cast<double>(window)};
}

}  // namespace detail

// Numerical oracle for rho2c_analytic: re-evolves the post-measurement
// mixture and tail-averages its chirality density. With literal=false the
// site-independence of the branch observables is exploited and only the two
// site-0 branches are evolved, weighted by the total chirality weights; with
// literal=true every (site, chirality) entry is evolved separately, which is
// the same arithmetic regrouped and serves as the trust anchor for the
// shortcut.
inline ChiralityDensity rho2c_bruteforce(const MixedEnsemble& ensemble,
                                         const CoinAngle& coin, int horizon,
                                         double tail_fraction = 0.5,
                                         bool literal = false) {
    if (horizon < 100)
        throw std::invalid_argument("horizon must be at least 100 steps");
    if (!(tail_fraction > 0.0 && tail_fraction <= 0.5))
        throw std::invalid_argument("tail_fraction must lie in (0, 1/2]");

    double pi_l = 0.0;
    complex q{};
    if (literal) {
        for (const auto& entry : ensemble.entries) {
            const auto [pl, qv] = detail::branch_tail_observables(
                entry.chirality, entry.site, coin, horizon, tail_fraction);
            pi_l += entry.weight * pl;
            q += entry.weight * qv;
        }
    } else {
        const double w_plus = ensemble.chirality_weight(Chirality::plus);
        const double w_minus = ensemble.chirality_weight(Chirality::minus);
        const auto [pl_plus, q_plus] = detail::branch_tail_observables(
            Chirality::plus, 0, coin, horizon, tail_fraction);
        const auto [pl_minus, q_minus] = detail::branch_tail_observables(
            Chirality::minus, 0, coin, horizon, tail_fraction);
        pi_l = w_plus * pl_plus + w_minus * pl_minus;
        q = w_plus * q_plus + w_minus * q_minus;
    }
    return {pi_l, 1.0 - pi_l, q};
}

}  // namespace qwalk
