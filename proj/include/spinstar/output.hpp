#pragma once

#include "spinstar/series.hpp"
#include "spinstar/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace spinstar {

/// CSV layout: `tau,C_closed[,C_approx][,C_oracle],preclamp_closed`, one row per
/// grid point, 12 significant digits, LF line endings. Events follow as comment
/// lines `# esd,<death>,<birth>,<peak>` under a `# esd,death_tau,...` header.
/// Requires a closed-form series; every series must share its grid.
void write_csv(std::ostream& out, std::span<const ConcurrenceSeries> series, std::span<const EsdEvent> events);
void emit_csv(std::span<const ConcurrenceSeries> series, std::span<const EsdEvent> events,
              const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments; ///< comment lines without the leading "# "
};

CsvTable parse_csv(std::istream& in);

/// Standalone SVG plot of C against alpha*t, y range [0, 1.05]. Closed-form
/// series are drawn solid, the approximation dashed and oracle series dotted.
void write_svg(std::ostream& out, std::span<const ConcurrenceSeries> series, const std::string& title);
void emit_svg(std::span<const ConcurrenceSeries> series, const std::filesystem::path& path,
              const std::string& title);

/// printf("%.12g") rendering used for every CSV number.
std::string format_number(double v);

} // namespace spinstar
