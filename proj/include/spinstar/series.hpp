#pragma once

#include <string>
#include <vector>

namespace spinstar {

enum class SeriesSource { ClosedForm, Approximation, Oracle };

const char* to_string(SeriesSource s);

/// Concurrence sampled on a tau grid. preclamp is empty for oracle series,
/// which only know the clamped Wootters value.
struct ConcurrenceSeries {
    SeriesSource source = SeriesSource::ClosedForm;
    std::vector<double> tau;
    std::vector<double> values;
    std::vector<double> preclamp;

    bool has_preclamp() const { return !preclamp.empty(); }
    std::size_t size() const { return tau.size(); }

    /// Checks equal lengths, a strictly increasing grid and values == max(0, preclamp).
    void validate() const;
};

} // namespace spinstar
