#include "spinstar/cli.hpp"

#include "spinstar/errors.hpp"
#include "spinstar/output.hpp"
#include "spinstar/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>

namespace spinstar {

namespace {

struct CliOptions {
    std::string scenario = "binomial";
    int n = 100;
    double p = 0.5;
    double omega = 0.0;
    double alpha = 1.0;
    double tau_max = 5.0;
    int steps = 2000;
    std::string modes = "closed";
    std::string csv;
    std::string svg;
    std::string title;
    bool report_esd = false;
    bool compare_oracle = false;
    std::size_t min_dead_samples = kDefaultMinDeadSamples;
};

void print_events(std::ostream& out, const std::vector<EsdEvent>& events) {
    out << "esd events: " << events.size() << '\n';
    for (const auto& e : events) {
        out << "  death " << format_number(e.death_tau) << "  birth "
            << (e.birth_tau ? format_number(*e.birth_tau) : std::string("none")) << "  peak_after_birth "
            << format_number(e.peak_after_birth) << (e.refined ? "" : "  (unrefined)") << '\n';
    }
}

int run(const CliOptions& opt, std::ostream& out, std::ostream& err) {
    ScenarioConfig config;
    if (opt.scenario == "binomial") {
        config.scenario = Scenario::Binomial;
    } else if (opt.scenario == "coherent") {
        config.scenario = Scenario::Coherent;
    } else {
        throw UsageError("--scenario must be 'binomial' or 'coherent'");
    }
    config.n_env = opt.n;
    config.p = opt.p;
    config.omega = opt.omega;
    config.alpha = opt.alpha;
    config.tau_grid = uniform_tau_grid(opt.tau_max, opt.steps);

    SweepModes modes = parse_modes(opt.modes);
    modes.closed = true; // the CSV and event report are keyed on the closed-form series
    if (opt.compare_oracle) {
        modes.oracle = true;
    }
    check_sweep_request(config, modes);
    if (modes.approx && config.p != 0.5) {
        err << "warning: the approximation is only claimed for p = 1/2 (got p=" << format_number(config.p)
            << ")\n";
    }
    if (config.omega != 0.0 && !modes.oracle) {
        err << "warning: --omega only affects the oracle; closed forms are in the interaction picture\n";
    }

    const std::vector<ConcurrenceSeries> series = run_sweep(config, modes);
    const ConcurrenceSeries& closed = series.front();

    out << "scenario " << to_string(config.scenario) << "  N=" << config.n_env << "  p=" << format_number(config.p)
        << "  points=" << config.tau_grid.size() << '\n';
    for (const auto& s : series) {
        out << "  " << to_string(s.source) << ": C(0)=" << format_number(s.values.front())
            << "  max=" << format_number(*std::max_element(s.values.begin(), s.values.end())) << '\n';
    }

    std::vector<EsdEvent> events;
    if (opt.report_esd) {
        events = detect_esd_events(closed, opt.min_dead_samples, closed_preclamp_fn(config));
        print_events(out, events);
    }

    bool comparison_failed = false;
    if (opt.compare_oracle) {
        const OracleComparison cmp = compare_with_oracle(config, series.back());
        out << "oracle comparison: max |closed - oracle| = " << format_number(cmp.max_closed_vs_oracle)
            << " (tolerance " << format_number(cmp.tolerance) << ")\n";
        if (cmp.max_printed_vs_oracle) {
            out << "oracle comparison: max |printed coherent formula - oracle| = "
                << format_number(*cmp.max_printed_vs_oracle) << " (reported only)\n";
        }
        comparison_failed = !cmp.passed();
    }

    if (!opt.csv.empty()) {
        emit_csv(series, events, opt.csv);
        out << "wrote " << opt.csv << '\n';
    }
    if (!opt.svg.empty()) {
        std::string title = opt.title;
        if (title.empty()) {
            title = "C(t), " + std::string(to_string(config.scenario)) + ", N=" + std::to_string(config.n_env) +
                    ", p=" + format_number(config.p);
        }
        emit_svg(series, opt.svg, title);
        out << "wrote " << opt.svg << '\n';
    }

    if (comparison_failed) {
        err << "error: oracle comparison exceeded tolerance\n";
        return kExitOracleMismatch;
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions opt;
    CLI::App app{"Entanglement dynamics of two central spins in a spin-star environment"};
    app.name("spinstar");
    app.set_config("--config", "", "optional file of key=value lines; flags override it");
    app.add_option("--scenario", opt.scenario, "environment initial state: binomial or coherent")
        ->capture_default_str();
    app.add_option("--n", opt.n, "number of environment spins")->capture_default_str();
    app.add_option("--p", opt.p, "binomial parameter in [0, 1]")->capture_default_str();
    app.add_option("--omega", opt.omega, "free frequency (oracle only)")->capture_default_str();
    app.add_option("--alpha", opt.alpha, "coupling constant")->capture_default_str();
    app.add_option("--tau-max", opt.tau_max, "end of the alpha*t grid")->capture_default_str();
    app.add_option("--steps", opt.steps, "number of grid points")->capture_default_str();
    app.add_option("--modes", opt.modes, "comma list of closed, approx, oracle")->capture_default_str();
    app.add_option("--csv", opt.csv, "write the series to this CSV file");
    app.add_option("--svg", opt.svg, "write a plot to this SVG file");
    app.add_option("--title", opt.title, "SVG plot title");
    app.add_flag("--report-esd", opt.report_esd, "detect and print sudden death / birth events");
    app.add_option("--min-dead-samples", opt.min_dead_samples, "shortest zero run counted as a death")
        ->capture_default_str();
    app.add_flag("--compare-oracle", opt.compare_oracle, "compare against the exact oracle, exit 5 on mismatch");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return run(opt, out, err);
    } catch (const ResourceGuardError& e) {
        err << "error: " << e.what() << '\n';
        return kExitResourceGuard;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace spinstar
