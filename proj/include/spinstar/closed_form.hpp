#pragma once

#include "spinstar/density_matrix.hpp"
#include "spinstar/half_int.hpp"
#include "spinstar/pair_state.hpp"
#include "spinstar/spin_algebra.hpp"

#include <optional>
#include <vector>

namespace spinstar {

/// Evolution amplitudes of one invariant three-state block at a dimensionless time.
/// a: stays in |1,0>; b and c: transferred amplitudes (each carries a -i phase in the state).
struct CoeffTriple {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
};

/// Full parameterization of a run. Times are dimensionless, tau = alpha * t.
struct ScenarioConfig {
    Scenario scenario = Scenario::Binomial;
    int n_env = 0;
    double p = 0.5;
    double omega = 0.0; ///< free frequency; only the exact oracle uses it
    double alpha = 1.0;
    std::vector<double> tau_grid;

    /// Throws UsageError / DomainError on invalid parameters or a non-increasing grid.
    void validate() const;

    /// Physical time corresponding to a dimensionless time.
    double time_of(double tau) const { return tau / alpha; }
};

/// n_points equally spaced values covering [0, tau_max] inclusive.
std::vector<double> uniform_tau_grid(double tau_max, int n_points);

struct SectorEntry {
    PairState central;
    HalfInt j;
    HalfInt m;
    cplx amplitude;
};

/// Global pure state expanded on |central> (x) |J,M> with collective environment labels.
struct SectorStateVector {
    Scenario scenario = Scenario::Binomial;
    int n_env = 0;
    std::vector<SectorEntry> entries;

    double norm_squared() const;
    /// Amplitude of a labelled entry, zero if absent.
    cplx amplitude(PairState central, HalfInt j, HalfInt m) const;
};

/// Concurrence with the signed argument of its max(0, .) kept alongside.
struct ConcurrenceValue {
    double value = 0.0;
    double preclamp = 0.0;
};

CoeffTriple evolve_coeffs_binomial(HalfInt j, double tau);
CoeffTriple evolve_coeffs_coherent(int n_env, HalfInt m, double tau);

SectorStateVector state_binomial(const ScenarioConfig& config, double tau);
SectorStateVector state_coherent(const ScenarioConfig& config, double tau);

/// Populations a(tau) (central block) and b(tau) (|uu>, |dd>) of the binomial X state.
struct XStateParams {
    double a = 0.5;
    double b = 0.0;
};
XStateParams x_state_params_binomial(const ScenarioConfig& config, double tau);

TwoQubitDensityMatrix reduced_density_binomial(const ScenarioConfig& config, double tau);
TwoQubitDensityMatrix reduced_density_coherent(const ScenarioConfig& config, double tau);

ConcurrenceValue concurrence_binomial(const ScenarioConfig& config, double tau);

/// <S_z^2> - <S_z>^2 of the central pair, from the reduced density matrix.
double sz_variance(const TwoQubitDensityMatrix& rho);
double sz_variance_binomial(const ScenarioConfig& config, double tau);

/// cos^(N/2)(2 tau) cos((N+2) tau), clamped at zero. Meant for p = 1/2 and tau << N.
ConcurrenceValue concurrence_approx_binomial(int n_env, double tau);

/// The printed coherent-state concurrence, with |B_M C_M| inside the M sum. Not the
/// Wootters concurrence of reduced_density_coherent in general.
ConcurrenceValue concurrence_coherent_printed(const ScenarioConfig& config, double tau);

/// Max-norm distance to the fully mixed-population plateau matrix
/// (populations 1/4, central coherence 1/4).
double plateau_deviation(const TwoQubitDensityMatrix& rho);

} // namespace spinstar
