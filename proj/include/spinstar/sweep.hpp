#pragma once

#include "spinstar/closed_form.hpp"
#include "spinstar/series.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace spinstar {

struct SweepModes {
    bool closed = true;
    bool approx = false;
    bool oracle = false;
};

/// Parses a comma-separated list such as "closed,approx,oracle".
SweepModes parse_modes(const std::string& text);

/// Rejects invalid scenario/mode combinations (UsageError) and oversized oracle
/// requests (ResourceGuardError). Does no numerical work.
void check_sweep_request(const ScenarioConfig& config, const SweepModes& modes);

/// One series per requested mode, in the order closed, approx, oracle. The closed
/// series is the binomial exact concurrence or the printed coherent formula.
std::vector<ConcurrenceSeries> run_sweep(const ScenarioConfig& config, const SweepModes& modes);

ConcurrenceSeries closed_series(const ScenarioConfig& config);
ConcurrenceSeries approx_series(const ScenarioConfig& config);

using PreclampFn = std::function<double(double)>;

/// Signed closed-form concurrence argument as a function of tau, for root finding.
PreclampFn closed_preclamp_fn(const ScenarioConfig& config);

struct EsdEvent {
    double death_tau = 0.0;
    std::optional<double> birth_tau; ///< empty: still dead at the end of the grid
    double peak_after_birth = 0.0;
    bool refined = true;             ///< false for threshold-located oracle events
};

inline constexpr std::size_t kDefaultMinDeadSamples = 3;
inline constexpr double kBisectionTol = 1e-9;
/// A sample is dead when its preclamp (or, lacking one, its value) is at most this.
/// Plateau values sit at rounding level, so an exact-zero test would split them.
inline constexpr double kDeadThreshold = 1e-12;

/// Finds maximal runs of at least min_dead_samples dead grid points. With preclamp
/// data and an evaluator the death and birth times are refined by bisection on
/// preclamp_at; otherwise (oracle series) they are the bounding dead grid points.
std::vector<EsdEvent> detect_esd_events(const ConcurrenceSeries& series,
                                        std::size_t min_dead_samples = kDefaultMinDeadSamples,
                                        const PreclampFn& preclamp_at = {});

struct OracleComparison {
    double tolerance = 1e-10;
    /// Largest |closed - oracle| where closed is the exact Wootters concurrence of
    /// the closed-form state (equal to the printed formula in the binomial case).
    double max_closed_vs_oracle = 0.0;
    /// Coherent only: largest |printed formula - oracle|. Reported, not asserted.
    std::optional<double> max_printed_vs_oracle;

    bool passed() const { return max_closed_vs_oracle <= tolerance; }
};

OracleComparison compare_with_oracle(const ScenarioConfig& config, const ConcurrenceSeries& oracle);

} // namespace spinstar
