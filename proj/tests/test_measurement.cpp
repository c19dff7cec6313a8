#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qwalk/measurement.hpp"

using namespace qwalk;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("collapse of the two-step state lists the four occupied outcomes "
          "in deterministic order",
          "[measurement]") {
    const SpinorField state =
        evolve(init_localized(BlochAngles{0.0, 0.0}), CoinAngle{}, 2);
    const MixedEnsemble ensemble = collapse(state);
    REQUIRE(ensemble.entries.size() == 4);

    const auto& e = ensemble.entries;
    REQUIRE(e[0].site == -2);
    REQUIRE(e[0].chirality == Chirality::plus);
    REQUIRE_THAT(e[0].weight, WithinAbs(0.25, 1e-15));
    REQUIRE(e[1].site == 0);
    REQUIRE(e[1].chirality == Chirality::plus);
    REQUIRE_THAT(e[1].weight, WithinAbs(0.25, 1e-15));
    REQUIRE(e[2].site == 0);
    REQUIRE(e[2].chirality == Chirality::minus);
    REQUIRE_THAT(e[2].weight, WithinAbs(0.25, 1e-15));
    REQUIRE(e[3].site == 2);
    REQUIRE(e[3].chirality == Chirality::minus);
    REQUIRE_THAT(e[3].weight, WithinAbs(0.25, 1e-15));
}

TEST_CASE("collapse preserves the chirality weights of the pure state",
          "[measurement]") {
    const SpinorField state =
        evolve(init_localized(BlochAngles{pi / 3, 0.9}), CoinAngle{}, 11);
    const MixedEnsemble ensemble = collapse(state);
    const auto [pl, pr] = chirality_probabilities(state);
    REQUIRE_THAT(ensemble.chirality_weight(Chirality::plus) - pl,
                 WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(ensemble.chirality_weight(Chirality::minus) - pr,
                 WithinAbs(0.0, 1e-15));
}

TEST_CASE("ensemble constructor enforces a normalized classical mixture",
          "[measurement]") {
    REQUIRE_THROWS_AS(
        MixedEnsemble({{0, Chirality::plus, 0.6},
                       {1, Chirality::minus, -0.1},
                       {2, Chirality::plus, 0.5}}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        MixedEnsemble({{0, Chirality::plus, 0.6}}), std::invalid_argument);
    REQUIRE_NOTHROW(MixedEnsemble({{0, Chirality::plus, 0.5},
                                   {4, Chirality::minus, 0.5}}));
}

TEST_CASE("branch constants for definite-chirality starts", "[measurement]") {
    const BranchAsymptotics plus = branch_asymptotics(Chirality::plus);
    REQUIRE_THAT(plus.pi_L, WithinAbs(0.6464466094067263, 1e-15));
    REQUIRE_THAT(plus.pi_R, WithinAbs(0.3535533905932737, 1e-15));
    REQUIRE_THAT(plus.q0.mu, WithinAbs(q0_unit, 1e-15));
    REQUIRE_THAT(plus.q0.nu, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(plus.pi_L, WithinAbs(1.0 - 1.0 / (2 * std::sqrt(2.0)),
                                      1e-15));

    const BranchAsymptotics minus = branch_asymptotics(Chirality::minus);
    REQUIRE_THAT(minus.pi_L, WithinAbs(0.3535533905932737, 1e-15));
    REQUIRE_THAT(minus.pi_R, WithinAbs(0.6464466094067263, 1e-15));
    REQUIRE_THAT(minus.q0.mu, WithinAbs(-q0_unit, 1e-15));
    REQUIRE_THAT(minus.q0.nu, WithinAbs(0.0, 1e-15));
}

TEST_CASE("branch densities are chirality mirrors of each other",
          "[measurement]") {
    // The spin-down pole picks up a one-ulp sin(pi) residue, so the mirror
    // holds to rounding, not bitwise.
    const ChiralityDensity plus = branch_density(Chirality::plus);
    const ChiralityDensity minus = branch_density(Chirality::minus);
    REQUIRE_THAT(plus.pi_L - minus.pi_R, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(plus.pi_R - minus.pi_L, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(plus.q.real() + minus.q.real(), WithinAbs(0.0, 1e-15));
    REQUIRE(plus.q.imag() == 0.0);
    REQUIRE(minus.q.imag() == 0.0);
}

TEST_CASE("post-measurement density has the mu-only closed form",
          "[measurement]") {
    SECTION("frozen entries at the spin-up limit") {
        const ChiralityDensity rho =
            rho2c_analytic(InterferenceTerm{q0_unit, 0.0});
        REQUIRE_THAT(rho.pi_L, WithinAbs(0.5428932188134525, 1e-15));
        REQUIRE_THAT(rho.pi_R, WithinAbs(0.4571067811865475, 1e-15));
        REQUIRE_THAT(rho.q.real(), WithinAbs(0.0428932188134525, 1e-15));
        REQUIRE_THAT(rho.q.imag(), WithinAbs(0.0, 1e-15));
    }
    SECTION("entries follow 1/2 +/- mu (1 - 1/sqrt 2)") {
        const double mu = 0.1;
        const double shift = mu * (1.0 - 1.0 / std::sqrt(2.0));
        const ChiralityDensity rho =
            rho2c_analytic(InterferenceTerm{mu, 0.0});
        REQUIRE_THAT(rho.pi_L, WithinAbs(0.5 + shift, 1e-15));
        REQUIRE_THAT(rho.q.real(), WithinAbs(shift, 1e-15));
        REQUIRE_THAT(rho.q.imag(), WithinAbs(0.0, 1e-15));
    }
    SECTION("nu drops out to the last bit") {
        const ChiralityDensity a = rho2c_analytic(InterferenceTerm{0.1, 0.0});
        const ChiralityDensity b = rho2c_analytic(InterferenceTerm{0.1, 0.15});
        REQUIRE(a.pi_L == b.pi_L);
        REQUIRE(a.pi_R == b.pi_R);
        REQUIRE(a.q == b.q);
    }
}

TEST_CASE("brute-force evaluator validates its window parameters",
          "[measurement]") {
    const MixedEnsemble single{{{0, Chirality::plus, 1.0}}};
    REQUIRE_THROWS_AS(rho2c_bruteforce(single, CoinAngle{}, 99),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(rho2c_bruteforce(single, CoinAngle{}, 200, 0.0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(rho2c_bruteforce(single, CoinAngle{}, 200, 0.6),
                      std::invalid_argument);
}

TEST_CASE("weight-grouped shortcut equals the entry-by-entry evaluation",
          "[measurement]") {
    // Site offsets cannot matter for chirality observables, so grouping the
    // ensemble by chirality must reproduce the literal sum exactly up to
    // rounding.
    const SpinorField state =
        evolve(init_localized(BlochAngles{pi / 3, 0.9}), CoinAngle{}, 6);
    const MixedEnsemble ensemble = collapse(state);
    const ChiralityDensity fast = rho2c_bruteforce(ensemble, CoinAngle{}, 120);
    const ChiralityDensity slow =
        rho2c_bruteforce(ensemble, CoinAngle{}, 120, 0.5, true);
    REQUIRE_THAT(fast.pi_L - slow.pi_L, WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(std::abs(fast.q - slow.q), WithinAbs(0.0, 1e-12));
}

TEST_CASE("long-horizon branch evolution converges to the branch constants",
          "[measurement]") {
    SECTION("plus branch") {
        const MixedEnsemble single{{{0, Chirality::plus, 1.0}}};
        const ChiralityDensity num =
            rho2c_bruteforce(single, CoinAngle{}, 1500, 0.5, true);
        const ChiralityDensity exact = branch_density(Chirality::plus);
        REQUIRE_THAT(num.pi_L, WithinAbs(exact.pi_L, 5e-5));
        REQUIRE_THAT(std::abs(num.q - exact.q), WithinAbs(0.0, 5e-5));
    }
    SECTION("minus branch") {
        const MixedEnsemble single{{{0, Chirality::minus, 1.0}}};
        const ChiralityDensity num =
            rho2c_bruteforce(single, CoinAngle{}, 1500, 0.5, true);
        const ChiralityDensity exact = branch_density(Chirality::minus);
        REQUIRE_THAT(num.pi_L, WithinAbs(exact.pi_L, 5e-5));
        REQUIRE_THAT(std::abs(num.q - exact.q), WithinAbs(0.0, 5e-5));
    }
}
