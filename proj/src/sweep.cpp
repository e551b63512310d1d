#include "spinstar/sweep.hpp"

#include "spinstar/errors.hpp"
#include "spinstar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinstar {

const char* to_string(SeriesSource s) {
    switch (s) {
    case SeriesSource::ClosedForm: return "closed";
    case SeriesSource::Approximation: return "approx";
    case SeriesSource::Oracle: return "oracle";
    }
    return "?";
}

void ConcurrenceSeries::validate() const {
    if (values.size() != tau.size() || (has_preclamp() && preclamp.size() != tau.size())) {
        throw ValidationError("series: tau, value and preclamp lengths differ");
    }
    for (std::size_t i = 1; i < tau.size(); ++i) {
        if (!(tau[i] > tau[i - 1])) {
            throw ValidationError("series: tau grid not strictly increasing");
        }
    }
    if (has_preclamp()) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
            if (std::abs(values[i] - std::max(0.0, preclamp[i])) > 1e-15) {
                throw ValidationError("series: value differs from max(0, preclamp)");
            }
        }
    }
}

SweepModes parse_modes(const std::string& text) {
    SweepModes modes{false, false, false};
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (token == "closed") {
            modes.closed = true;
        } else if (token == "approx") {
            modes.approx = true;
        } else if (token == "oracle") {
            modes.oracle = true;
        } else if (!token.empty()) {
            throw UsageError("unknown mode '" + token + "' (expected closed, approx or oracle)");
        }
    }
    if (!modes.closed && !modes.approx && !modes.oracle) {
        throw UsageError("no modes requested");
    }
    return modes;
}

void check_sweep_request(const ScenarioConfig& config, const SweepModes& modes) {
    if (modes.approx && config.scenario != Scenario::Binomial) {
        throw UsageError("approx mode is only defined for the binomial scenario");
    }
    if (modes.oracle && config.n_env > SectorOracle::kMaxEnv) {
        throw ResourceGuardError("oracle mode is limited to N <= " + std::to_string(SectorOracle::kMaxEnv) +
                                 " (requested N=" + std::to_string(config.n_env) + ")");
    }
    config.validate();
    if (config.tau_grid.empty()) {
        throw UsageError("empty tau grid");
    }
}

PreclampFn closed_preclamp_fn(const ScenarioConfig& config) {
    if (config.scenario == Scenario::Binomial) {
        return [config](double tau) { return concurrence_binomial(config, tau).preclamp; };
    }
    return [config](double tau) { return concurrence_coherent_printed(config, tau).preclamp; };
}

ConcurrenceSeries closed_series(const ScenarioConfig& config) {
    ConcurrenceSeries s;
    s.source = SeriesSource::ClosedForm;
    s.tau = config.tau_grid;
    s.values.reserve(s.tau.size());
    s.preclamp.reserve(s.tau.size());
    for (double tau : s.tau) {
        const ConcurrenceValue c = config.scenario == Scenario::Binomial ? concurrence_binomial(config, tau)
                                                                         : concurrence_coherent_printed(config, tau);
        s.values.push_back(c.value);
        s.preclamp.push_back(c.preclamp);
    }
    return s;
}

ConcurrenceSeries approx_series(const ScenarioConfig& config) {
    if (config.scenario != Scenario::Binomial) {
        throw UsageError("approx mode is only defined for the binomial scenario");
    }
    ConcurrenceSeries s;
    s.source = SeriesSource::Approximation;
    s.tau = config.tau_grid;
    for (double tau : s.tau) {
        const ConcurrenceValue c = concurrence_approx_binomial(config.n_env, tau);
        s.values.push_back(c.value);
        s.preclamp.push_back(c.preclamp);
    }
    return s;
}

std::vector<ConcurrenceSeries> run_sweep(const ScenarioConfig& config, const SweepModes& modes) {
    check_sweep_request(config, modes);
    std::vector<ConcurrenceSeries> out;
    if (modes.closed) {
        out.push_back(closed_series(config));
    }
    if (modes.approx) {
        out.push_back(approx_series(config));
    }
    if (modes.oracle) {
        out.push_back(SectorOracle(config).series());
    }
    return out;
}

namespace {

// Invariant: f(alive) > kDeadThreshold >= f(dead). Returns the bracket midpoint once the
// bracket is narrower than kBisectionTol.
double bisect(const PreclampFn& f, double alive, double dead) {
    while (std::abs(dead - alive) > kBisectionTol) {
        const double mid = 0.5 * (alive + dead);
        if (f(mid) > kDeadThreshold) {
            alive = mid;
        } else {
            dead = mid;
        }
    }
    return 0.5 * (alive + dead);
}

} // namespace

std::vector<EsdEvent> detect_esd_events(const ConcurrenceSeries& series, std::size_t min_dead_samples,
                                        const PreclampFn& preclamp_at) {
    series.validate();
    const std::size_t n = series.size();
    const bool refine = series.has_preclamp() && static_cast<bool>(preclamp_at);
    const auto dead = [&](std::size_t i) {
        return (series.has_preclamp() ? series.preclamp[i] : series.values[i]) <= kDeadThreshold;
    };
    min_dead_samples = std::max<std::size_t>(min_dead_samples, 1);

    struct Run {
        std::size_t first;
        std::size_t last;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < n;) {
        if (!dead(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && dead(j + 1)) {
            ++j;
        }
        if (j - i + 1 >= min_dead_samples) {
            runs.push_back({i, j});
        }
        i = j + 1;
    }

    std::vector<EsdEvent> events;
    events.reserve(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto [first, last] = runs[r];
        EsdEvent ev;
        ev.refined = refine;
        ev.death_tau = series.tau[first];
        if (refine && first > 0) {
            ev.death_tau = bisect(preclamp_at, series.tau[first - 1], series.tau[first]);
        }
        if (last + 1 < n) {
            ev.birth_tau = refine ? bisect(preclamp_at, series.tau[last + 1], series.tau[last]) : series.tau[last];
            const std::size_t stop = r + 1 < runs.size() ? runs[r + 1].first : n;
            ev.peak_after_birth = *std::max_element(series.values.begin() + static_cast<std::ptrdiff_t>(last + 1),
                                                    series.values.begin() + static_cast<std::ptrdiff_t>(stop));
        }
        events.push_back(ev);
    }
    return events;
}

OracleComparison compare_with_oracle(const ScenarioConfig& config, const ConcurrenceSeries& oracle) {
    if (oracle.tau != config.tau_grid) {
        throw UsageError("oracle series was computed on a different grid");
    }
    OracleComparison cmp;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        const double tau = oracle.tau[i];
        double exact = 0.0;
        if (config.scenario == Scenario::Binomial) {
            exact = concurrence_binomial(config, tau).value;
        } else {
            exact = wootters_concurrence(pair_factor(state_coherent(config, tau)));
            const double printed = concurrence_coherent_printed(config, tau).value;
            cmp.max_printed_vs_oracle =
                std::max(cmp.max_printed_vs_oracle.value_or(0.0), std::abs(printed - oracle.values[i]));
        }
        cmp.max_closed_vs_oracle = std::max(cmp.max_closed_vs_oracle, std::abs(exact - oracle.values[i]));
    }
    return cmp;
}

} // namespace spinstar
