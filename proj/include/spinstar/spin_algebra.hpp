#pragma once

#include "spinstar/half_int.hpp"

#include <cstdint>
#include <vector>

namespace spinstar {

enum class Scenario { Binomial, Coherent };

const char* to_string(Scenario s);

/// Square root of J(J+1); the coupling strength of the |1,0;J,0> sector.
double ladder_coeff_qJ(HalfInt j);

struct LadderPair {
    double q = 0.0; ///< lowering-side, sqrt(j(j+1) - M(M-1)) with j = N/2
    double r = 0.0; ///< raising-side, sqrt(j(j+1) - M(M+1))
};

/// Ladder coefficients inside the fully symmetric multiplet J = N/2.
LadderPair ladder_coeffs_qM_rM(int n_env, HalfInt m);

/// Exact value of twice-squared ladder element: 4*(j(j+1) - m(m+step)) as an integer.
/// Lets callers check ladder identities without floating point.
std::int64_t ladder_square_times4(HalfInt j, HalfInt m, int step);

struct WeightEntry {
    HalfInt label;       ///< J (binomial) or M (coherent)
    double amplitude;    ///< nonnegative, real
};

struct WeightDistribution {
    Scenario scenario = Scenario::Binomial;
    int n_env = 0;
    double p = 0.0;
    std::vector<WeightEntry> weights;

    double squared_norm() const;
};

/// Amplitudes sqrt(C(N/2,J) p^J (1-p)^(N/2-J)) on the |J,0> states, J = 0..N/2.
WeightDistribution binomial_weights(int n_env, double p);

/// Amplitudes sqrt(C(N,M+N/2) p^(M+N/2) (1-p)^(N/2-M)) on |N/2,M>, M = -N/2..N/2.
WeightDistribution coherent_weights(int n_env, double p);

/// Binomial probability mass C(n,k) p^k (1-p)^(n-k). Exact integer binomial for
/// n <= 60, log-space evaluation above.
double binomial_pmf(int n, int k, double p);

} // namespace spinstar
