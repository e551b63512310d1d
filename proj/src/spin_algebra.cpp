#include "spinstar/spin_algebra.hpp"

#include "spinstar/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace spinstar {

std::string HalfInt::to_string() const {
    if (is_integer()) {
        return std::to_string(as_int());
    }
    return std::to_string(twice_) + "/2";
}

const char* to_string(Scenario s) {
    return s == Scenario::Binomial ? "binomial" : "coherent";
}

std::int64_t ladder_square_times4(HalfInt j, HalfInt m, int step) {
    const std::int64_t tj = j.twice();
    const std::int64_t tm = m.twice();
    return tj * (tj + 2) - tm * (tm + 2 * step);
}

double ladder_coeff_qJ(HalfInt j) {
    if (j.twice() < 0) {
        throw DomainError("ladder_coeff_qJ: J must be nonnegative, got " + j.to_string());
    }
    const std::int64_t tj = j.twice();
    return 0.5 * std::sqrt(static_cast<double>(tj * (tj + 2)));
}

LadderPair ladder_coeffs_qM_rM(int n_env, HalfInt m) {
    if (n_env < 0) {
        throw DomainError("ladder_coeffs_qM_rM: negative environment size");
    }
    const HalfInt j = half_of(n_env);
    if (!is_projection_of(m, j)) {
        throw DomainError("ladder_coeffs_qM_rM: M=" + m.to_string() + " is not a projection of J=" +
                          j.to_string());
    }
    return {0.5 * std::sqrt(static_cast<double>(ladder_square_times4(j, m, -1))),
            0.5 * std::sqrt(static_cast<double>(ladder_square_times4(j, m, +1)))};
}

namespace {

constexpr int kExactBinomialLimit = 60;

// C(n,k) for n <= 60 fits in 64 bits; the gcd reduction keeps every
// intermediate product below C(n,k) * k.
std::uint64_t exact_binomial(int n, int k) {
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        std::uint64_t den = static_cast<std::uint64_t>(i);
        const std::uint64_t g = std::gcd(result, den);
        result /= g;
        den /= g;
        num /= den; // exact: den | num because gcd(result, den) == 1 here
        result *= num;
    }
    return result;
}

void check_probability(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(who) + ": p must lie in [0, 1], got " + std::to_string(p));
    }
}

} // namespace

double binomial_pmf(int n, int k, double p) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    // p^0 == 1 even for p == 0; handle the endpoints before taking logs.
    if (p == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    if (p == 1.0) {
        return k == n ? 1.0 : 0.0;
    }
    if (n <= kExactBinomialLimit) {
        const double c = static_cast<double>(exact_binomial(n, k));
        return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
    }
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_c + k * std::log(p) + (n - k) * std::log1p(-p));
}

double WeightDistribution::squared_norm() const {
    double s = 0.0;
    for (const auto& w : weights) {
        s += w.amplitude * w.amplitude;
    }
    return s;
}

WeightDistribution binomial_weights(int n_env, double p) {
    if (n_env < 2 || n_env % 2 != 0) {
        throw UsageError("binomial scenario needs an even environment size N >= 2 (|J,0> states "
                         "require integer J), got N=" +
                         std::to_string(n_env));
    }
    check_probability(p, "binomial_weights");
    const int top = n_env / 2;
    WeightDistribution dist{Scenario::Binomial, n_env, p, {}};
    dist.weights.reserve(top + 1);
    for (int j = 0; j <= top; ++j) {
        dist.weights.push_back({HalfInt::from_int(j), std::sqrt(binomial_pmf(top, j, p))});
    }
    return dist;
}

WeightDistribution coherent_weights(int n_env, double p) {
    if (n_env < 1) {
        throw DomainError("coherent_weights: N must be at least 1, got " + std::to_string(n_env));
    }
    check_probability(p, "coherent_weights");
    WeightDistribution dist{Scenario::Coherent, n_env, p, {}};
    dist.weights.reserve(n_env + 1);
    // M + N/2 = k runs over 0..N; twice(M) = 2k - N.
    for (int k = 0; k <= n_env; ++k) {
        dist.weights.push_back({HalfInt::from_twice(2 * k - n_env), std::sqrt(binomial_pmf(n_env, k, p))});
    }
    return dist;
}

} // namespace spinstar
