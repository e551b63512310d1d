#include "spinstar/closed_form.hpp"

#include "spinstar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinstar {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_scenario(const ScenarioConfig& config, Scenario expected, const char* who) {
    if (config.scenario != expected) {
        throw UsageError(std::string(who) + " requires the " + to_string(expected) + " scenario, config has " +
                         to_string(config.scenario));
    }
}

void require_tau(double tau, const char* who) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError(std::string(who) + ": tau must be finite and nonnegative");
    }
}

ConcurrenceValue clamp(double preclamp) { return {std::max(0.0, preclamp), preclamp}; }

} // namespace

void ScenarioConfig::validate() const {
    if (scenario == Scenario::Binomial) {
        if (n_env < 2 || n_env % 2 != 0) {
            throw UsageError("binomial scenario needs an even N >= 2, got N=" + std::to_string(n_env));
        }
    } else if (n_env < 1) {
        throw UsageError("coherent scenario needs N >= 1, got N=" + std::to_string(n_env));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("p must lie in [0, 1], got " + std::to_string(p));
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("alpha must be positive and finite");
    }
    if (!std::isfinite(omega)) {
        throw DomainError("omega must be finite");
    }
    if (!tau_grid.empty() && !(tau_grid.front() >= 0.0)) {
        throw UsageError("tau grid must start at a nonnegative value");
    }
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > tau_grid[i - 1])) {
            throw UsageError("tau grid must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

std::vector<double> uniform_tau_grid(double tau_max, int n_points) {
    if (n_points < 2) {
        throw UsageError("a tau grid needs at least 2 points");
    }
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) {
        throw UsageError("tau_max must be positive and finite");
    }
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    const double step = tau_max / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        grid[i] = i * step;
    }
    grid.back() = tau_max;
    return grid;
}

double SectorStateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& e : entries) {
        s += std::norm(e.amplitude);
    }
    return s;
}

cplx SectorStateVector::amplitude(PairState central, HalfInt j, HalfInt m) const {
    for (const auto& e : entries) {
        if (e.central == central && e.j == j && e.m == m) {
            return e.amplitude;
        }
    }
    return {0.0, 0.0};
}

CoeffTriple evolve_coeffs_binomial(HalfInt j, double tau) {
    if (!j.is_integer() || j.twice() < 0) {
        throw DomainError("evolve_coeffs_binomial: J must be a nonnegative integer, got " + j.to_string());
    }
    require_tau(tau, "evolve_coeffs_binomial");
    const double phase = 2.0 * ladder_coeff_qJ(j) * tau;
    const double s = kInvSqrt2 * std::sin(phase);
    return {std::cos(phase), s, s};
}

CoeffTriple evolve_coeffs_coherent(int n_env, HalfInt m, double tau) {
    require_tau(tau, "evolve_coeffs_coherent");
    const LadderPair lp = ladder_coeffs_qM_rM(n_env, m);
    const double s = std::hypot(lp.q, lp.r);
    if (s == 0.0) {
        return {};
    }
    const double phase = std::sqrt(2.0) * s * tau;
    const double sn = std::sin(phase);
    return {std::cos(phase), lp.r / s * sn, lp.q / s * sn};
}

SectorStateVector state_binomial(const ScenarioConfig& config, double tau) {
    require_scenario(config, Scenario::Binomial, "state_binomial");
    const WeightDistribution dist = binomial_weights(config.n_env, config.p);
    SectorStateVector out{Scenario::Binomial, config.n_env, {}};
    const cplx minus_i(0.0, -1.0);
    const HalfInt one = HalfInt::from_int(1);
    for (const auto& [j, w] : dist.weights) {
        const CoeffTriple k = evolve_coeffs_binomial(j, tau);
        out.entries.push_back({PairState::T0, j, HalfInt{}, cplx(w * k.a, 0.0)});
        // The J = 0 sector has no M = +-1 states; its b and c vanish identically.
        if (j.twice() > 0) {
            out.entries.push_back({PairState::Tplus, j, -one, minus_i * (w * k.b)});
            out.entries.push_back({PairState::Tminus, j, one, minus_i * (w * k.c)});
        }
    }
    return out;
}

SectorStateVector state_coherent(const ScenarioConfig& config, double tau) {
    require_scenario(config, Scenario::Coherent, "state_coherent");
    const WeightDistribution dist = coherent_weights(config.n_env, config.p);
    const HalfInt j = half_of(config.n_env);
    SectorStateVector out{Scenario::Coherent, config.n_env, {}};
    const cplx minus_i(0.0, -1.0);
    for (const auto& [m, w] : dist.weights) {
        const CoeffTriple k = evolve_coeffs_coherent(config.n_env, m, tau);
        out.entries.push_back({PairState::T0, j, m, cplx(w * k.a, 0.0)});
        if (is_projection_of(m + 1, j)) {
            out.entries.push_back({PairState::Tminus, j, m + 1, minus_i * (w * k.b)});
        }
        if (is_projection_of(m - 1, j)) {
            out.entries.push_back({PairState::Tplus, j, m - 1, minus_i * (w * k.c)});
        }
    }
    return out;
}

XStateParams x_state_params_binomial(const ScenarioConfig& config, double tau) {
    require_scenario(config, Scenario::Binomial, "x_state_params_binomial");
    const WeightDistribution dist = binomial_weights(config.n_env, config.p);
    XStateParams x{0.0, 0.0};
    for (const auto& [j, w] : dist.weights) {
        const CoeffTriple k = evolve_coeffs_binomial(j, tau);
        const double w2 = w * w;
        x.a += 0.5 * w2 * k.a * k.a;
        x.b += w2 * k.b * k.b;
    }
    return x;
}

TwoQubitDensityMatrix reduced_density_binomial(const ScenarioConfig& config, double tau) {
    const XStateParams x = x_state_params_binomial(config, tau);
    return TwoQubitDensityMatrix::from_matrix(x_state_matrix(x.a, x.b));
}

TwoQubitDensityMatrix reduced_density_coherent(const ScenarioConfig& config, double tau) {
    require_scenario(config, Scenario::Coherent, "reduced_density_coherent");
    const WeightDistribution dist = coherent_weights(config.n_env, config.p);
    const int n = config.n_env;
    const std::size_t count = dist.weights.size(); // index k <-> M = k - N/2

    std::vector<CoeffTriple> coeffs(count);
    for (std::size_t k = 0; k < count; ++k) {
        coeffs[k] = evolve_coeffs_coherent(n, dist.weights[k].label, tau);
    }

    // For each environment label M_env, collect the central-pair vector from the
    // three branches that land there: T0 from branch M_env, T- from branch
    // M_env - 1 and T+ from branch M_env + 1.
    const cplx minus_i(0.0, -1.0);
    Eigen::Matrix4cd coupled = Eigen::Matrix4cd::Zero();
    for (std::size_t k = 0; k < count; ++k) {
        Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
        v(static_cast<int>(PairState::T0)) = dist.weights[k].amplitude * coeffs[k].a;
        if (k >= 1) {
            v(static_cast<int>(PairState::Tminus)) = minus_i * (dist.weights[k - 1].amplitude * coeffs[k - 1].b);
        }
        if (k + 1 < count) {
            v(static_cast<int>(PairState::Tplus)) = minus_i * (dist.weights[k + 1].amplitude * coeffs[k + 1].c);
        }
        coupled += v * v.adjoint();
    }
    const Eigen::Matrix4cd& u = coupled_to_product();
    return TwoQubitDensityMatrix::from_matrix(u * coupled * u.adjoint());
}

ConcurrenceValue concurrence_binomial(const ScenarioConfig& config, double tau) {
    require_scenario(config, Scenario::Binomial, "concurrence_binomial");
    const WeightDistribution dist = binomial_weights(config.n_env, config.p);
    double sum = 0.0;
    for (const auto& [j, w] : dist.weights) {
        const CoeffTriple k = evolve_coeffs_binomial(j, tau);
        sum += w * w * (0.5 * k.a * k.a - k.b * k.b);
    }
    return clamp(2.0 * sum);
}

double sz_variance(const TwoQubitDensityMatrix& rho) {
    const double up = rho(kUpUp, kUpUp).real();
    const double down = rho(kDownDown, kDownDown).real();
    const double mean = up - down;
    return (up + down) - mean * mean;
}

double sz_variance_binomial(const ScenarioConfig& config, double tau) {
    return sz_variance(reduced_density_binomial(config, tau));
}

ConcurrenceValue concurrence_approx_binomial(int n_env, double tau) {
    if (n_env < 2 || n_env % 2 != 0) {
        throw UsageError("concurrence_approx_binomial needs an even N >= 2");
    }
    const double envelope = std::pow(std::cos(2.0 * tau), n_env / 2);
    return clamp(envelope * std::cos((n_env + 2) * tau));
}

ConcurrenceValue concurrence_coherent_printed(const ScenarioConfig& config, double tau) {
    require_scenario(config, Scenario::Coherent, "concurrence_coherent_printed");
    const WeightDistribution dist = coherent_weights(config.n_env, config.p);
    double sum = 0.0;
    for (const auto& [m, w] : dist.weights) {
        const CoeffTriple k = evolve_coeffs_coherent(config.n_env, m, tau);
        sum += w * w * (0.5 * k.a * k.a - std::sqrt(k.b * k.b * k.c * k.c));
    }
    return clamp(2.0 * sum);
}

double plateau_deviation(const TwoQubitDensityMatrix& rho) {
    const Eigen::Matrix4cd target = x_state_matrix(0.25, 0.25);
    return (rho.matrix() - target).cwiseAbs().maxCoeff();
}

} // namespace spinstar
