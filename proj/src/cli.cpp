#include "schmidt/cli.hpp"

#include "schmidt/ensemble.hpp"
#include "schmidt/linalg.hpp"
#include "schmidt/sampler.hpp"
#include "schmidt/svg.hpp"
#include "schmidt/theory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

namespace schmidt::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::sample: return "sample";
        case Command::theory: return "theory";
        case Command::eta: return "eta";
        case Command::compare: return "compare";
        case Command::laguerre: return "laguerre";
        case Command::fixtures: return "fixtures";
    }
    return "?";
}

bool wants_svg(const RunConfig& c) { return c.format != Format::csv; }

std::string metadata(const RunConfig& c, bool sampled) {
    std::ostringstream out;
    out << "# schmidt " << version << '\n';
    out << "# command=" << command_name(c.command) << '\n';
    out << "# dims=" << c.dims.n_a() << ',' << c.dims.n_b() << " w=" << num(c.dims.ratio());
    if (sampled) out << " seed=" << c.seed << " samples=" << c.samples;
    out << " grid=" << c.grid << '\n';
    if (c.qubits) out << "# qubits n=" << c.qubits->n << " r=" << c.qubits->r << '\n';
    return out.str();
}

// Panels plus an optional semi-log copy of the first one.
std::string render_panels(const RunConfig& c, svg::Panel panel) {
    std::vector<svg::Panel> panels{panel};
    if (c.log_y) {
        panel.log_y = true;
        panel.title += " (semi-log)";
        panels.push_back(std::move(panel));
    }
    return svg::render(panels);
}

// x_j = j / (G - 1), endpoints included.
std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) throw UsageError("--grid must be at least 2");
    std::vector<double> xs(points);
    for (std::size_t j = 0; j < points; ++j) {
        xs[j] = static_cast<double>(j) / static_cast<double>(points - 1);
    }
    xs.back() = 1.0;
    return xs;
}

void require_samples(const RunConfig& c, std::uint64_t minimum) {
    if (c.samples < minimum) {
        throw UsageError("--samples must be at least " + std::to_string(minimum));
    }
}

EnsembleStats run_ensemble(const RunConfig& c, const BipartiteDims& dims) {
    ProgressSink sink;
    if (c.progress) {
        sink = [](std::uint64_t done, std::uint64_t total) {
            std::cerr << "\rsampled " << done << '/' << total << std::flush;
            if (done == total) std::cerr << '\n';
        };
    }
    return sample_ensemble(SamplerConfig(dims, c.samples, c.seed), c.workers, sink);
}

svg::Series theory_series(double w, std::size_t points = 256) {
    svg::Series s{"f(x)", {}, false};
    for (double x : uniform_grid(points)) s.points.emplace_back(x, theory::f_of_x(x, w));
    return s;
}

std::string path_with_extension(const std::string& path, const char* ext) {
    std::filesystem::path p(path);
    p.replace_extension(ext);
    return p.string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace

BipartiteDims dims_from_qubits(int n, int r) {
    if (n < 0 || r < 0) throw UsageError("qubit counts must be nonnegative");
    if (n % 2 != 0) throw UsageError("--qubits n must be even");
    if (2 * r > n) throw UsageError("--r must satisfy n/2 - r >= 0");
    const int a = n / 2 - r;
    const int b = n / 2 + r;
    if (b >= 31) throw UsageError("qubit cut too large");
    return BipartiteDims(std::size_t{1} << a, std::size_t{1} << b);
}

CommandOutput cmd_sample(const RunConfig& c) {
    require_samples(c, 2);
    const EnsembleStats stats = run_ensemble(c, c.dims);
    const auto means = stats.means();
    const auto widths = stats.widths();
    const auto stderrs = stats.standard_errors();
    const std::size_t n = c.dims.n_a();

    CommandOutput result;
    std::ostringstream csv;
    csv << metadata(c, true);
    if (n >= 3) {
        csv << "# median width/half-spacing=" << num(median(width_to_half_spacing(stats))) << '\n';
    }
    csv << "index,x,mean,stderr,width\n";
    for (std::size_t i = 0; i < n; ++i) {
        csv << i << ',' << num(x_of_index(i, n)) << ',' << num(means[i]) << ',' << num(stderrs[i]) << ','
            << num(widths[i]) << '\n';
    }
    result.csv = csv.str();

    if (wants_svg(c)) {
        svg::Panel panel{"N <lambda_i> vs x", "x", "N lambda", false, {}};
        svg::Series mc{"Monte Carlo", {}, true};
        for (std::size_t i = 0; i < n; ++i) mc.points.emplace_back(x_of_index(i, n), means[i] * static_cast<double>(n));
        panel.series.push_back(std::move(mc));
        panel.series.push_back(theory_series(c.dims.ratio()));
        result.svg = render_panels(c, std::move(panel));
    }
    return result;
}

CommandOutput cmd_theory(const RunConfig& c) {
    const double w = c.dims.ratio();
    const double n = static_cast<double>(c.dims.n_a());
    std::vector<CurvePoint> points;
    for (double x : uniform_grid(c.grid)) points.push_back({x, theory::f_of_x(x, w)});
    const TheoryCurve curve(std::move(points));

    CommandOutput result;
    std::ostringstream csv;
    csv << metadata(c, false);
    csv << "x,f,lambda\n";
    for (const auto& p : curve.points()) csv << num(p.x) << ',' << num(p.value) << ',' << num(p.value / n) << '\n';
    result.csv = csv.str();

    if (wants_svg(c)) {
        svg::Panel panel{"f(x) = N lambda(x)", "x", "f", false, {}};
        svg::Series s{"f(x)", {}, false};
        for (const auto& p : curve.points()) s.points.emplace_back(p.x, p.value);
        panel.series.push_back(std::move(s));
        result.svg = render_panels(c, std::move(panel));
    }
    return result;
}

CommandOutput cmd_eta(const RunConfig& c) {
    const double w = c.dims.ratio();
    const double root_w = std::sqrt(w);
    CommandOutput result;
    std::ostringstream csv;
    csv << metadata(c, false);
    if (c.retained) {
        const double value = theory::eta_for_retained_count(*c.retained, c.dims);
        csv << "# retained=" << num(*c.retained) << " eta=" << num(value) << '\n';
        result.report += "eta for " + num(*c.retained) + " retained eigenvalues: " + num(value) + '\n';
    }
    csv << (c.rescaled ? "x,eta,y\n" : "x,eta\n");
    svg::Series by_x{"eta(x)", {}, false};
    svg::Series by_y{"eta(y)", {}, false};
    for (double x : uniform_grid(c.grid)) {
        const double e = theory::eta(x, w);
        csv << num(x) << ',' << num(e);
        if (c.rescaled) csv << ',' << num(x * root_w);
        csv << '\n';
        by_x.points.emplace_back(x, e);
        by_y.points.emplace_back(x * root_w, e);
    }
    result.csv = csv.str();

    if (wants_svg(c)) {
        std::vector<svg::Panel> panels{{"truncation error eta(x)", "x", "eta", false, {by_x}}};
        if (c.log_y) panels.push_back({"eta(x) (semi-log)", "x", "eta", true, {by_x}});
        if (c.rescaled) panels.push_back({"eta vs y = xN/sqrt(NK)", "y", "eta", false, {by_y}});
        result.svg = svg::render(panels);
    }
    return result;
}

CommandOutput cmd_compare(const RunConfig& c) {
    require_samples(c, 2);
    const EnsembleStats stats = run_ensemble(c, c.dims);
    const ComparisonReport report = compare(stats);
    const std::size_t n = c.dims.n_a();

    CommandOutput result;
    std::ostringstream csv;
    csv << metadata(c, true);
    csv << "# max_rel_err=" << num(report.all_indices.max) << '\n';
    csv << "# median_rel_err=" << num(report.all_indices.median) << '\n';
    csv << "# max_rel_err_without_last=" << num(report.without_last.max) << '\n';
    csv << "# median_rel_err_without_last=" << num(report.without_last.median) << '\n';
    if (c.dims.n_a() == c.dims.n_b()) {
        csv << "# lambda_min conjecture (1/N^3)=" << num(theory::lambda_min_conjecture(n))
            << " theory=" << num(report.rows.back().theory_mean) << " mc=" << num(report.rows.back().mc_mean)
            << '\n';
    }
    csv << "index,x,mc_mean,stderr,theory,rel_err\n";
    for (const auto& row : report.rows) {
        csv << row.index << ',' << num(row.x) << ',' << num(row.mc_mean) << ',' << num(row.mc_stderr) << ','
            << num(row.theory_mean) << ',' << num(row.relative_error) << '\n';
    }
    result.csv = csv.str();
    result.report = "max rel err (without last index): " + num(report.without_last.max) +
                    ", median: " + num(report.without_last.median) + '\n';

    if (wants_svg(c)) {
        svg::Panel panel{"relative error of <lambda_i>", "x", "relative error", false, {}};
        svg::Series s{"N=" + std::to_string(n), {}, true};
        for (const auto& row : report.rows) s.points.emplace_back(row.x, row.relative_error);
        panel.series.push_back(std::move(s));
        result.svg = render_panels(c, std::move(panel));
    }
    return result;
}

CommandOutput cmd_laguerre(const RunConfig& c) {
    const std::size_t n = c.dims.n_a();
    const double k = static_cast<double>(c.dims.n_b());
    const double w = c.dims.ratio();
    auto zeros = linalg::laguerre_zeros(n, k - static_cast<double>(n) + 1.0);
    std::sort(zeros.begin(), zeros.end(), std::greater<>());

    CommandOutput result;
    std::ostringstream rows;
    double max_dev = 0.0;
    svg::Series scaled{"Laguerre zeros / K", {}, true};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_of_index(i, n);
        const double z = zeros[i] / k;
        const double f = theory::f_of_x(x, w);
        const double dev = std::abs(z - f) / f;
        max_dev = std::max(max_dev, dev);
        rows << i << ',' << num(x) << ',' << num(z) << ',' << num(f) << ',' << num(dev) << '\n';
        scaled.points.emplace_back(x, z);
    }
    std::ostringstream csv;
    csv << metadata(c, false);
    csv << "# alpha=" << num(k - static_cast<double>(n) + 1.0) << " max_rel_dev=" << num(max_dev) << '\n';
    csv << "index,x,scaled_zero,f,rel_dev\n" << rows.str();
    result.csv = csv.str();
    result.report = "max relative deviation: " + num(max_dev) + '\n';

    if (wants_svg(c)) {
        svg::Panel panel{"Laguerre zeros vs f(x)", "x", "f", false, {std::move(scaled), theory_series(w)}};
        result.svg = render_panels(c, std::move(panel));
    }
    return result;
}

CommandOutput cmd_fixtures(const RunConfig& c) {
    require_samples(c, 2);
    CommandOutput result;
    std::ostringstream csv;
    std::ostringstream rows;
    int failures = 0;

    for (std::size_t order = 2; order <= 5; ++order) {
        const BipartiteDims dims(order, order);
        const EnsembleStats stats = run_ensemble(c, dims);
        const auto stderrs = stats.standard_errors();
        for (const auto& fx : exact_fixtures()) {
            if (fx.n_a != order || fx.n_b != order) continue;
            const double mc = stats.means()[fx.index];
            const double band = 3.0 * stderrs[fx.index];
            const bool pass = std::abs(mc - fx.value) <= band;
            if (!pass) {
                ++failures;
                result.report += "FAIL n_a=" + std::to_string(fx.n_a) + " n_b=" + std::to_string(fx.n_b) +
                                 " index=" + std::to_string(fx.index) + " exact=" + num(fx.value) +
                                 " mc=" + num(mc) + " band=" + num(band) + '\n';
            }
            rows << fx.n_a << ',' << fx.n_b << ',' << fx.index << ',' << num(fx.value) << ',' << num(mc) << ','
                 << num(stderrs[fx.index]) << ',' << num(band) << ',' << (pass ? "pass" : "fail") << ','
                 << (fx.conjecture ? "conjecture" : "exact") << '\n';
        }
    }
    csv << "# schmidt " << version << '\n';
    csv << "# command=fixtures seed=" << c.seed << " samples=" << c.samples << " band=3*stderr\n";
    csv << "# failures=" << failures << '\n';
    csv << "n_a,n_b,index,exact,mc_mean,stderr,band,status,source\n" << rows.str();
    result.csv = csv.str();
    result.report += "fixture checks: " + std::string(failures == 0 ? "all passed" : "FAILED") + " (" +
                     std::to_string(failures) + " failures)\n";
    result.exit_code = failures == 0 ? exit_ok : exit_check_failed;
    return result;
}

CommandOutput dispatch(const RunConfig& c) {
    switch (c.command) {
        case Command::sample: return cmd_sample(c);
        case Command::theory: return cmd_theory(c);
        case Command::eta: return cmd_eta(c);
        case Command::compare: return cmd_compare(c);
        case Command::laguerre: return cmd_laguerre(c);
        case Command::fixtures: return cmd_fixtures(c);
    }
    throw UsageError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    CommandOutput result;
    try {
        result = dispatch(config);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_check_failed;
    }

    try {
        const bool csv = config.format != Format::svg || result.svg.empty();
        if (config.out) {
            if (csv) write_file(*config.out, result.csv);
            if (!result.svg.empty()) {
                const std::string svg_path =
                    config.format == Format::svg ? *config.out : path_with_extension(*config.out, ".svg");
                write_file(svg_path, result.svg);
            }
        } else {
            if (csv) out << result.csv;
            if (config.format == Format::svg) out << result.svg;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_check_failed;
    }
    err << result.report;
    return result.exit_code;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Schmidt spectra of random bipartite pure states: sampling and large-N theory"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::size_t> dims_arg;
    int qubits = -1;
    int r = 0;
    std::string format = "csv";
    std::string out;
    double retained = 0.0;

    struct Entry {
        Command command;
        const char* name;
        const char* help;
    };
    const Entry entries[] = {
        {Command::sample, "sample", "Monte Carlo mean spectrum"},
        {Command::theory, "theory", "large-N scaled spectrum f(x)"},
        {Command::eta, "eta", "truncation error eta(x)"},
        {Command::compare, "compare", "Monte Carlo vs theory relative errors"},
        {Command::laguerre, "laguerre", "scaled Laguerre zeros vs f(x)"},
        {Command::fixtures, "fixtures", "check exact small-N means"},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        auto* dims_opt = sub->add_option("--dims", dims_arg, "subsystem dimensions N K")->expected(2);
        auto* q_opt = sub->add_option("--qubits", qubits, "total qubit count n (cut n/2-r | n/2+r)");
        sub->add_option("--r", r, "cut offset r for --qubits")->needs(q_opt);
        dims_opt->excludes(q_opt);
        sub->add_option("--samples", config.samples, "number of random states")->capture_default_str();
        sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
        sub->add_option("--grid", config.grid, "number of x grid points")->capture_default_str();
        sub->add_option("--out", out, "output path (CSV; SVG alongside with .svg)");
        sub->add_option("--format", format, "csv, svg or both")->check(CLI::IsMember({"csv", "svg", "both"}));
        sub->add_flag("--log-y", config.log_y, "add a semi-log panel to SVG output");
        sub->add_option("--retained", retained, "retained eigenvalue count for eta");
        sub->add_flag("--rescaled", config.rescaled, "eta: add y = x sqrt(N/K) column");
        sub->add_option("--workers", config.workers, "sampling threads (0 = all cores)");
        sub->add_flag("--progress", config.progress, "report sampling progress on stderr");
        subs.emplace_back(sub, e.command);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    for (const auto& [sub, command] : subs) {
        if (sub->parsed()) {
            config.command = command;
            if (sub->count("--retained") > 0) config.retained = retained;
        }
    }
    try {
        if (qubits >= 0) {
            config.dims = dims_from_qubits(qubits, r);
            config.qubits = QubitCut{qubits, r};
        } else if (dims_arg.size() == 2) {
            config.dims = make_dims(dims_arg[0], dims_arg[1]);
        } else if (config.command != Command::fixtures) {
            throw UsageError("one of --dims N K or --qubits n [--r r] is required");
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    if (!out.empty()) config.out = out;
    config.format = format == "svg" ? Format::svg : format == "both" ? Format::both : Format::csv;
    return run(config, std::cout, std::cerr);
}

}  // namespace schmidt::cli
