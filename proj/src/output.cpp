#include "spinstar/output.hpp"

#include "spinstar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spinstar {

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

const ConcurrenceSeries* find_source(std::span<const ConcurrenceSeries> series, SeriesSource src) {
    for (const auto& s : series) {
        if (s.source == src) {
            return &s;
        }
    }
    return nullptr;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return f;
}

void finish_write(std::ofstream& f, const std::filesystem::path& path) {
    f.flush();
    if (!f) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

void write_csv(std::ostream& out, std::span<const ConcurrenceSeries> series, std::span<const EsdEvent> events) {
    const ConcurrenceSeries* closed = find_source(series, SeriesSource::ClosedForm);
    if (closed == nullptr) {
        throw UsageError("CSV output needs the closed-form series");
    }
    const ConcurrenceSeries* approx = find_source(series, SeriesSource::Approximation);
    const ConcurrenceSeries* oracle = find_source(series, SeriesSource::Oracle);
    for (const auto& s : series) {
        s.validate();
        if (s.tau != closed->tau) {
            throw UsageError("all series must share one tau grid");
        }
    }

    out << "tau,C_closed";
    if (approx) out << ",C_approx";
    if (oracle) out << ",C_oracle";
    out << ",preclamp_closed\n";
    for (std::size_t i = 0; i < closed->size(); ++i) {
        out << format_number(closed->tau[i]) << ',' << format_number(closed->values[i]);
        if (approx) out << ',' << format_number(approx->values[i]);
        if (oracle) out << ',' << format_number(oracle->values[i]);
        out << ',' << format_number(closed->preclamp[i]) << '\n';
    }
    if (!events.empty()) {
        out << "# esd,death_tau,birth_tau,peak_after_birth\n";
        for (const auto& e : events) {
            out << "# esd," << format_number(e.death_tau) << ','
                << format_number(e.birth_tau.value_or(INFINITY)) << ',' << format_number(e.peak_after_birth);
            if (!e.refined) {
                out << ",unrefined";
            }
            out << '\n';
        }
    }
}

void emit_csv(std::span<const ConcurrenceSeries> series, std::span<const EsdEvent> events,
              const std::filesystem::path& path) {
    std::ostringstream buf;
    write_csv(buf, series, events);
    std::ofstream f = open_for_write(path);
    f << buf.str();
    finish_write(f, path);
}

CsvTable parse_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            table.comments.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (!header_seen) {
            table.columns = std::move(fields);
            header_seen = true;
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw ValidationError("CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(table.columns.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            row.push_back(std::stod(f));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_svg(std::ostream& out, std::span<const ConcurrenceSeries> series, const std::string& title) {
    if (series.empty() || series.front().size() == 0) {
        throw UsageError("SVG output needs at least one nonempty series");
    }
    constexpr double width = 800, height = 480;
    constexpr double left = 70, right = 20, top = 40, bottom = 60;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
    constexpr double y_max = 1.05;

    double x_min = series.front().tau.front();
    double x_max = series.front().tau.back();
    for (const auto& s : series) {
        x_min = std::min(x_min, s.tau.front());
        x_max = std::max(x_max, s.tau.back());
    }
    if (x_max <= x_min) {
        x_max = x_min + 1.0;
    }
    const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) { return top + (1.0 - std::clamp(y, 0.0, y_max) / y_max) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << xml_escape(title) << "</text>\n";

    // Axes and ticks.
    out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\"/>\n";
    constexpr int x_ticks = 5;
    for (int i = 0; i <= x_ticks; ++i) {
        const double x = px(x_min + (x_max - x_min) * i / x_ticks);
        out << "<line x1=\"" << fixed(x) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fixed(x) << "\" y2=\""
            << top + plot_h + 5 << "\"/>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = py(0.25 * i);
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(y) << "\" x2=\"" << left << "\" y2=\"" << fixed(y)
            << "\"/>\n";
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (int i = 0; i <= x_ticks; ++i) {
        const double v = x_min + (x_max - x_min) * i / x_ticks;
        out << "<text x=\"" << fixed(px(v)) << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">"
            << format_number(std::round(v * 1000) / 1000) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(py(0.25 * i) + 4) << "\" text-anchor=\"end\">"
            << fixed(0.25 * i) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\">\xce\xb1t</text>\n"
        << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">C(t)</text>\n</g>\n";

    for (const auto& s : series) {
        const char* style = "";
        switch (s.source) {
        case SeriesSource::ClosedForm: style = "stroke=\"#1f4e9c\" stroke-width=\"1.2\""; break;
        case SeriesSource::Approximation:
            style = "stroke=\"#c0392b\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"";
            break;
        case SeriesSource::Oracle: style = "stroke=\"#27ae60\" stroke-width=\"1\" stroke-dasharray=\"2,2\""; break;
        }
        out << "<polyline class=\"" << to_string(s.source) << "\" fill=\"none\" " << style << " points=\"";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i != 0) out << ' ';
            out << fixed(px(s.tau[i])) << ',' << fixed(py(s.values[i]));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void emit_svg(std::span<const ConcurrenceSeries> series, const std::filesystem::path& path,
              const std::string& title) {
    std::ostringstream buf;
    write_svg(buf, series, title);
    std::ofstream f = open_for_write(path);
    f << buf.str();
    finish_write(f, path);
}

} // namespace spinstar
