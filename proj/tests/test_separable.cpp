#include <cmath>
#include <random>

#include "doctest.h"
#include "tha/fock.hpp"
#include "tha/separable.hpp"

using namespace tha;

TEST_CASE("beta_max") {
    CHECK(beta_max(0.0) == doctest::Approx(0.0));
    CHECK(beta_max(1.0) == doctest::Approx(0.5));
    CHECK(beta_max(0.1) == doctest::Approx(0.217945).epsilon(1e-5));
    CHECK_THROWS_AS(beta_max(2.5), std::invalid_argument);
}

TEST_CASE("rho_sub") {
    auto vac = rho_sub(0.0, 0.0, 0.0, 0.0);
    CHECK(vac.matrix(0, 0) == doctest::Approx(1.0));
    CHECK(vac.matrix(1, 1) == doctest::Approx(0.0));
    CHECK(vac.matrix(2, 2) == doctest::Approx(0.0));

    // worst case: |1><1| component zeroed, beta maximal, still PSD
    const double mu = 0.3;
    auto worst = rho_sub(mu, 1.0, mu, beta_max(mu));
    CHECK(worst.matrix(1, 1) == doctest::Approx(0.0));
    CHECK(worst.matrix(0, 2) == doctest::Approx(beta_max(mu)));
    CHECK(worst.matrix.trace() == doctest::Approx(1.0));

    // PSD check rejects beta exceeding the maximum
    CHECK_THROWS_AS(rho_sub(mu, 1.0, mu, beta_max(mu) + 1e-3), std::domain_error);
}

TEST_CASE("separable_delta_bound") {
    CHECK(separable_delta_bound(0.0) == doctest::Approx(0.0));
    CHECK(separable_delta_bound(0.1) == doctest::Approx(0.081054).epsilon(2e-5));
    CHECK(separable_delta_bound(1.0) ==
          doctest::Approx((1.0 - std::exp(-1.0) * 0.5) / 2.0).epsilon(1e-12));
    CHECK(separable_delta_bound(1.0) == doctest::Approx(0.408030).epsilon(1e-5));
    CHECK_THROWS_AS(separable_delta_bound(-0.1), std::invalid_argument);

    // strictly increasing on [0, 1]
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double d = separable_delta_bound(i / 100.0);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("lucamarini_delta") {
    CHECK(lucamarini_delta(0.0) == doctest::Approx(0.0));
    CHECK(lucamarini_delta(0.1) == doctest::Approx(0.049842).epsilon(2e-5));
    CHECK(lucamarini_delta(10.0) <= 0.5);
    CHECK_THROWS_AS(lucamarini_delta(-1.0), std::invalid_argument);
}

TEST_CASE("bound ordering") {
    auto thermal_delta = [](double mu, double mu_t) {
        return (1.0 - std::exp(-mu / (1.0 + 2.0 * mu_t))) / 2.0;
    };
    for (int i = 1; i <= 100; ++i) {
        const double mu = i / 100.0;
        const double ds = separable_delta_bound(mu);
        const double dl = lucamarini_delta(mu);
        CHECK(ds > dl);
        CHECK(dl > thermal_delta(mu, 1.0));
        CHECK(thermal_delta(mu, 1.0) > thermal_delta(mu, 5.0));
    }
}

TEST_CASE("constructive path") {
    // building the worst-case subspace pair and taking the honest Uhlmann
    // fidelity gives [1 - e^{-mu}(1 - mu)]/2, a slightly larger bound than
    // the published closed form; both are exposed
    for (double mu : {0.02, 0.1, 0.35, 0.8}) {
        const double got = constructive_delta(mu);
        const double expect = (1.0 - std::exp(-mu) * (1.0 - mu)) / 2.0;
        CHECK(got == doctest::Approx(expect).epsilon(1e-9));
        CHECK(got >= separable_delta_bound(mu));
    }
}

TEST_CASE("survival_bound_check basics") {
    auto vac = survival_bound_check(fock_vacuum(20, 1), 0.3);
    CHECK(vac.lhs == doctest::Approx(1.0));
    CHECK(vac.rhs == doctest::Approx(1.0));
    CHECK(vac.holds);

    // five-photon Fock state under weak attenuation: binomial loss keeps
    // nearly all population at <= 2 photons removed
    CMat m = CMat::Zero(21, 21);
    m(5, 5) = 1.0;
    auto five = survival_bound_check(FockDensityMatrix(20, 1, m), 0.01);
    double lhs_expect = 0.0;
    for (int k = 0; k <= 2; ++k) {
        double binom = 1.0;
        for (int j = 0; j < k; ++j) binom = binom * (5 - j) / (j + 1);
        lhs_expect += binom * std::pow(0.01, k) * std::pow(0.99, 5 - k);
    }
    CHECK(five.lhs == doctest::Approx(lhs_expect).epsilon(1e-10));
    CHECK(five.rhs == doctest::Approx(std::exp(-0.05)).epsilon(1e-12));
    CHECK(five.holds);

    CHECK_THROWS_AS(survival_bound_check(fock_vacuum(8, 2), 0.1), std::invalid_argument);
}

TEST_CASE("survival bound Monte Carlo") {
    const std::uint64_t master = 424242;
    for (int item = 0; item < 1000; ++item) {
        std::mt19937_64 rng(mc_subseed(master, static_cast<std::uint64_t>(item)));
        auto unif = [&](double a, double b) {
            return a + (b - a) * std::generate_canonical<double, 53>(rng);
        };
        CMat m = CMat::Zero(21, 21);
        double tr = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double w = unif(0.0, 1.0);
            m(k, k) = w;
            tr += w;
        }
        m /= tr;
        const double eta = std::pow(10.0, unif(-4.0, -1.0));
        const auto check = survival_bound_check(FockDensityMatrix(20, 1, m), eta);
        CHECK(check.holds);
    }
}

TEST_CASE("bimodal_inequality") {
    CHECK(bimodal_inequality(0.3, 0.0) == doctest::Approx(0.0));
    CHECK(bimodal_inequality(0.3, 1.0) == doctest::Approx(0.0));
    CHECK(bimodal_inequality(0.5, 0.5) == doctest::Approx(0.042893).epsilon(1e-5));
    CHECK(bimodal_inequality(0.0, 0.25) == doctest::Approx(0.75));
    CHECK_THROWS_AS(bimodal_inequality(1.2, 0.5), std::invalid_argument);

    double worst = 1.0;
    for (int i = 0; i <= 200; ++i) {
        for (int j = 0; j <= 200; ++j) {
            worst = std::min(worst, bimodal_inequality(i / 200.0, j / 200.0));
        }
    }
    CHECK(worst >= -1e-12);
}

TEST_CASE("mc_subseed is deterministic and spread out") {
    CHECK(mc_subseed(1, 0) == mc_subseed(1, 0));
    CHECK(mc_subseed(1, 0) != mc_subseed(1, 1));
    CHECK(mc_subseed(1, 0) != mc_subseed(2, 0));
}
