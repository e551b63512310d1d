#include <doctest.h>

#include "spinstar/closed_form.hpp"
#include "spinstar/errors.hpp"
#include "spinstar/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace spinstar;

namespace {

ScenarioConfig binomial(int n, double p) {
    ScenarioConfig c;
    c.scenario = Scenario::Binomial;
    c.n_env = n;
    c.p = p;
    return c;
}

ScenarioConfig coherent(int n, double p) {
    ScenarioConfig c = binomial(n, p);
    c.scenario = Scenario::Coherent;
    return c;
}

const double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

} // namespace

TEST_CASE("evolve_coeffs_binomial") {
    for (double tau : {0.0, 0.3, 7.0}) {
        const CoeffTriple k = evolve_coeffs_binomial(HalfInt::from_int(0), tau);
        CHECK(k.a == 1.0);
        CHECK(k.b == 0.0);
        CHECK(k.c == 0.0);
    }
    for (int j : {1, 5, 50}) {
        const CoeffTriple k = evolve_coeffs_binomial(HalfInt::from_int(j), 0.0);
        CHECK(k.a == 1.0);
        CHECK(k.b == 0.0);
    }
    // 2 q_1 tau = pi/2
    const CoeffTriple full = evolve_coeffs_binomial(HalfInt::from_int(1), kPi / (4 * kSqrt2));
    CHECK(std::abs(full.a) < 1e-15);
    CHECK(full.b == doctest::Approx(1 / kSqrt2).epsilon(1e-15));
    CHECK(full.c == full.b);

    CHECK_THROWS_AS(evolve_coeffs_binomial(HalfInt::from_twice(1), 0.1), DomainError);
    CHECK_THROWS_AS(evolve_coeffs_binomial(HalfInt::from_int(1), -0.1), DomainError);
}

TEST_CASE("evolve_coeffs_coherent") {
    for (int n : {1, 4, 100}) {
        for (double tau : {0.0, 0.013, 1.7}) {
            const CoeffTriple top = evolve_coeffs_coherent(n, half_of(n), tau);
            CHECK(top.b == 0.0);
            CHECK(top.a == doctest::Approx(std::cos(std::sqrt(2.0 * n) * tau)).epsilon(1e-13));
            CHECK(top.c == doctest::Approx(std::sin(std::sqrt(2.0 * n) * tau)).epsilon(1e-13));
        }
        const CoeffTriple start = evolve_coeffs_coherent(n, -half_of(n), 0.0);
        CHECK(start.a == 1.0);
        CHECK(start.b == 0.0);
        CHECK(start.c == 0.0);
    }
    // q_0 == r_0
    for (double tau : {0.1, 0.77}) {
        const CoeffTriple mid = evolve_coeffs_coherent(100, HalfInt{}, tau);
        CHECK(mid.b == mid.c);
    }
    CHECK_THROWS_AS(evolve_coeffs_coherent(4, HalfInt::from_int(3), 0.1), DomainError);
}

TEST_CASE("coefficient unitarity over random draws") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> n_dist(1, 100);
    std::uniform_real_distribution<double> tau_dist(0.0, 20.0);
    for (int draw = 0; draw < 2000; ++draw) {
        const int n = n_dist(rng);
        const double tau = tau_dist(rng);
        const int tm = 2 * std::uniform_int_distribution<int>(0, n)(rng) - n;
        const CoeffTriple kc = evolve_coeffs_coherent(n, HalfInt::from_twice(tm), tau);
        CHECK(std::abs(kc.a * kc.a + kc.b * kc.b + kc.c * kc.c - 1.0) < 1e-12);
        const CoeffTriple kb = evolve_coeffs_binomial(HalfInt::from_int(n / 2), tau);
        CHECK(std::abs(kb.a * kb.a + kb.b * kb.b + kb.c * kb.c - 1.0) < 1e-12);
        CHECK(kb.b == kb.c);
    }
}

TEST_CASE("closed-form states") {
    SUBCASE("tau = 0 reproduces the initial conditions") {
        const SectorStateVector b = state_binomial(binomial(6, 0.3), 0.0);
        const auto w = binomial_weights(6, 0.3).weights;
        for (const auto& [j, amp] : w) {
            CHECK(b.amplitude(PairState::T0, j, HalfInt{}) == cplx(amp, 0.0));
            if (j.twice() > 0) {
                CHECK(b.amplitude(PairState::Tplus, j, HalfInt::from_int(-1)) == cplx(0.0, 0.0));
            }
        }
        const SectorStateVector c = state_coherent(coherent(5, 0.6), 0.0);
        for (const auto& [m, amp] : coherent_weights(5, 0.6).weights) {
            CHECK(c.amplitude(PairState::T0, half_of(5), m) == cplx(amp, 0.0));
        }
    }
    SUBCASE("full transfer for N=2 empties the J=1 T0 amplitude") {
        const SectorStateVector s = state_binomial(binomial(2, 0.5), kPi / (4 * kSqrt2));
        CHECK(std::abs(s.amplitude(PairState::T0, HalfInt::from_int(1), HalfInt{})) < 1e-15);
    }
    SUBCASE("out-of-range environment labels are omitted") {
        const SectorStateVector c = state_coherent(coherent(4, 0.5), 0.4);
        for (const auto& e : c.entries) {
            CHECK(is_projection_of(e.m, e.j));
        }
        CHECK(c.entries.size() == 5 + 4 + 4);
        const SectorStateVector b = state_binomial(binomial(4, 0.5), 0.4);
        CHECK(b.entries.size() == 1 + 3 + 3);
    }
    SUBCASE("norm is one for random inputs") {
        std::mt19937_64 rng(11);
        for (int draw = 0; draw < 200; ++draw) {
            const int n = 2 * std::uniform_int_distribution<int>(1, 50)(rng);
            const double p = std::uniform_real_distribution<double>(0, 1)(rng);
            const double tau = std::uniform_real_distribution<double>(0, 10)(rng);
            CHECK(std::abs(state_binomial(binomial(n, p), tau).norm_squared() - 1.0) < 1e-12);
            CHECK(std::abs(state_coherent(coherent(n - 1, p), tau).norm_squared() - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(state_binomial(coherent(4, 0.5), 0.1), UsageError);
    CHECK_THROWS_AS(state_coherent(binomial(4, 0.5), 0.1), UsageError);
}

TEST_CASE("reduced_density_binomial") {
    const TwoQubitDensityMatrix start = reduced_density_binomial(binomial(10, 0.4), 0.0);
    CHECK(start.max_abs_diff(TwoQubitDensityMatrix::from_matrix(x_state_matrix(0.5, 0.0))) < 1e-15);

    const XStateParams plateau = x_state_params_binomial(binomial(100, 0.5), 0.8);
    CHECK(std::abs(plateau.a - 0.25) <= 0.02);
    CHECK(std::abs(plateau.b - 0.25) <= 0.02);

    for (double tau : {0.0, 0.1, 0.37, 1.0, 4.2}) {
        const XStateParams x = x_state_params_binomial(binomial(2, 0.5), tau);
        CHECK(x.a - x.b == doctest::Approx(0.25 + 0.25 * std::cos(4 * kSqrt2 * tau)).epsilon(1e-14));
        CHECK(std::abs(2 * x.a + 2 * x.b - 1.0) < 1e-14);
    }
}

TEST_CASE("reduced_density_coherent") {
    const TwoQubitDensityMatrix start = reduced_density_coherent(coherent(6, 0.7), 0.0);
    CHECK(start.max_abs_diff(TwoQubitDensityMatrix::from_matrix(x_state_matrix(0.5, 0.0))) < 1e-15);

    SUBCASE("p = 1 leaves a single branch whose two parts have orthogonal environments") {
        for (int n : {2, 5, 100}) {
            const double tau = 0.31;
            const CoeffTriple k = evolve_coeffs_coherent(n, half_of(n), tau);
            Eigen::Matrix4cd expected = x_state_matrix(0.5 * k.a * k.a, 0.0);
            expected(kUpUp, kUpUp) = k.c * k.c;
            const TwoQubitDensityMatrix rho = reduced_density_coherent(coherent(n, 1.0), tau);
            CHECK((rho.matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    SUBCASE("agrees with a generic partial trace of the closed-form state") {
        for (double tau : {0.05, 0.6, 2.3}) {
            const ScenarioConfig c = coherent(7, 0.35);
            const TwoQubitDensityMatrix direct = reduced_density_coherent(c, tau);
            const TwoQubitDensityMatrix traced = partial_trace_to_pair(state_coherent(c, tau));
            CHECK(direct.max_abs_diff(traced) < 1e-14);
        }
    }
    SUBCASE("trace one and PSD for random inputs") {
        std::mt19937_64 rng(3);
        for (int draw = 0; draw < 300; ++draw) {
            const int n = std::uniform_int_distribution<int>(1, 10)(rng);
            const double p = std::uniform_real_distribution<double>(0, 1)(rng);
            const double tau = std::uniform_real_distribution<double>(0, 6)(rng);
            const TwoQubitDensityMatrix rho = reduced_density_coherent(coherent(n, p), tau);
            CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
            CHECK(rho.hermitian_defect() < 1e-12);
            CHECK(rho.min_eigenvalue() >= -1e-10);
        }
    }
}

TEST_CASE("concurrence_binomial") {
    CHECK(concurrence_binomial(binomial(100, 0.5), 0.0).value == 1.0);

    const ConcurrenceValue dead = concurrence_binomial(binomial(2, 0.5), kPi / (4 * kSqrt2));
    CHECK(std::abs(dead.preclamp) < 1e-15);
    CHECK(dead.value < 1e-15);

    // pi/202 is where the approximation's fast factor vanishes; the exact curve
    // has already crossed zero (at tau = 0.01540298279729, mpmath) so it is dead there.
    const ConcurrenceValue edge = concurrence_binomial(binomial(100, 0.5), kPi / 202);
    CHECK(edge.value == 0.0);
    CHECK(edge.preclamp < 0.0);
    CHECK(concurrence_binomial(binomial(100, 0.5), 0.01540298279729 - 1e-6).preclamp > 0.0);
    CHECK(concurrence_binomial(binomial(100, 0.5), 0.01540298279729 + 1e-6).preclamp < 0.0);

    SUBCASE("closed form sum of cos(4 q_J tau)") {
        std::mt19937_64 rng(5);
        for (int draw = 0; draw < 200; ++draw) {
            const int n = 2 * std::uniform_int_distribution<int>(1, 50)(rng);
            const double p = std::uniform_real_distribution<double>(0, 1)(rng);
            const double tau = std::uniform_real_distribution<double>(0, 5)(rng);
            double expected = 0.0;
            for (const auto& [j, w] : binomial_weights(n, p).weights) {
                expected += w * w * std::cos(4 * ladder_coeff_qJ(j) * tau);
            }
            CHECK(std::abs(concurrence_binomial(binomial(n, p), tau).preclamp - expected) < 1e-12);
        }
    }
    SUBCASE("p = 0 freezes the dynamics") {
        for (double tau = 0.0; tau < 10.0; tau += 0.37) {
            CHECK(concurrence_binomial(binomial(100, 0.0), tau).value == 1.0);
        }
    }
}

TEST_CASE("sz variance and the two forms of the concurrence") {
    CHECK(sz_variance_binomial(binomial(20, 0.5), 0.0) == 0.0);
    CHECK(std::abs(sz_variance_binomial(binomial(100, 0.5), 0.8) - 0.5) <= 0.04);

    std::mt19937_64 rng(17);
    for (int draw = 0; draw < 500; ++draw) {
        const int n = 2 * std::uniform_int_distribution<int>(1, 50)(rng);
        const double p = std::uniform_real_distribution<double>(0, 1)(rng);
        const double tau = std::uniform_real_distribution<double>(0, 5)(rng);
        const ScenarioConfig c = binomial(n, p);
        const XStateParams x = x_state_params_binomial(c, tau);
        const double pre = concurrence_binomial(c, tau).preclamp;
        const double var = sz_variance_binomial(c, tau);
        CHECK(std::abs(var - 2 * x.b) < 1e-12);
        CHECK(std::abs(pre - 2 * (x.a - x.b)) < 1e-12);
        CHECK(std::abs(pre - (1 - 2 * var)) < 1e-12);
    }
}

TEST_CASE("concurrence_approx_binomial") {
    CHECK(concurrence_approx_binomial(100, 0.0).value == 1.0);
    // cos(102 tau) first vanishes at tau = pi/204.
    CHECK(std::abs(concurrence_approx_binomial(100, kPi / 204).preclamp) < 1e-14);
    CHECK(concurrence_approx_binomial(100, kPi / 204 - 1e-4).preclamp > 0.0);
    CHECK(concurrence_approx_binomial(100, kPi / 204 + 1e-4).value == 0.0);

    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double tau = i / 2000.0;
        worst = std::max(worst, std::abs(concurrence_binomial(binomial(100, 0.5), tau).value -
                                         concurrence_approx_binomial(100, tau).value));
    }
    MESSAGE("max |exact - approx| on [0,1], N=100: " << worst);
    CHECK(worst <= 0.05);

    // N/2 = 50 is even, so the product is pi-periodic.
    for (double tau : {0.0, 0.2, 0.9, 1.3, 2.71}) {
        CHECK(concurrence_approx_binomial(100, tau + kPi).value ==
              doctest::Approx(concurrence_approx_binomial(100, tau).value).epsilon(1e-9));
    }
    CHECK_THROWS_AS(concurrence_approx_binomial(7, 0.1), UsageError);
}

TEST_CASE("concurrence_coherent_printed") {
    CHECK(std::abs(concurrence_coherent_printed(coherent(100, 0.9), 0.0).value - 1.0) < 1e-12);
    for (int n : {1, 6, 100}) {
        for (double tau : {0.0, 0.05, 0.4, 2.2}) {
            const double expected = std::pow(std::cos(std::sqrt(2.0 * n) * tau), 2);
            CHECK(concurrence_coherent_printed(coherent(n, 1.0), tau).value ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("plateau_deviation") {
    CHECK(plateau_deviation(TwoQubitDensityMatrix::from_matrix(x_state_matrix(0.25, 0.25))) == 0.0);
    CHECK(plateau_deviation(reduced_density_binomial(binomial(100, 0.5), 0.0)) == doctest::Approx(0.25));
    CHECK(plateau_deviation(reduced_density_binomial(binomial(100, 0.5), 0.8)) <= 0.02);
}

TEST_CASE("ScenarioConfig validation") {
    ScenarioConfig c = binomial(4, 0.5);
    c.tau_grid = {0.0, 0.1, 0.1};
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.tau_grid = {-0.1, 0.1};
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.tau_grid = uniform_tau_grid(5.0, 2000);
    CHECK_NOTHROW(c.validate());
    CHECK(c.tau_grid.front() == 0.0);
    CHECK(c.tau_grid.back() == 5.0);
    c.n_env = 5;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = coherent(5, 0.5);
    c.alpha = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}
