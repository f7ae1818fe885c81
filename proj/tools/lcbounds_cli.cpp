// Command-line driver: evaluates the bound suites on catalog distributions
// and emits deterministic CSV or structured-text documents.
//
// Exit codes: 0 all checks passed, 1 at least one bound failed,
//             2 unusable arguments, 3 a numerical routine missed tolerance.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcb/acceptance.hpp"
#include "lcb/capacity.hpp"
#include "lcb/entropy_bounds.hpp"
#include "lcb/rate_distortion.hpp"
#include "lcb/reverse_epi.hpp"

namespace {

enum class Format { csv, structured_text };

struct Document {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string title;
};

std::string cell(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string cell(std::optional<double> v) { return v ? cell(*v) : std::string(); }

void write_document(const Document& doc, Format format, std::ostream& out) {
    if (format == Format::csv) {
        for (std::size_t c = 0; c < doc.columns.size(); ++c)
            out << doc.columns[c] << (c + 1 < doc.columns.size() ? "," : "");
        out << "\n";
        for (const auto& row : doc.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << row[c] << (c + 1 < row.size() ? "," : "");
            out << "\n";
        }
        return;
    }
    out << "# " << doc.title << "\n";
    for (const auto& row : doc.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c].empty()) continue;
            out << doc.columns[c] << "=" << row[c] << (c + 1 < row.size() ? " " : "");
        }
        out << "\n";
    }
}

std::vector<double> parse_range(const std::string& text) {
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    const int got = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra);
    if (got != 3)
        throw CLI::ValidationError("range", "expected start:stop:step, got '" + text + "'");
    if (!(step > 0.0) || stop < start)
        throw CLI::ValidationError("range", "need start <= stop and step > 0 in '" + text + "'");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double v = start + k * step;
        if (v > stop + 1e-9 * step) break;
        out.push_back(std::min(v, stop));
    }
    return out;
}

void append_bits_columns(Document& doc, const std::vector<std::size_t>& nats_columns) {
    for (std::size_t c : nats_columns) {
        std::string name = doc.columns[c];
        const auto pos = name.rfind("_nats");
        name = pos == std::string::npos ? name + "_bits" : name.substr(0, pos) + "_bits";
        doc.columns.push_back(name);
        for (auto& row : doc.rows) {
            if (row[c].empty()) {
                row.emplace_back();
            } else {
                row.push_back(cell(std::stod(row[c]) / lcb::kLn2));
            }
        }
    }
}

struct CommonOptions {
    std::string out_path;
    std::string units = "bits";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--out", opts.out_path, "Output path (default: standard output)");
    cmd->add_option("--units", opts.units, "nats or bits (bits appends *_bits columns)")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--format", opts.format, "csv or structured-text")
        ->check(CLI::IsMember({"csv", "structured-text"}));
}

int finish(const Document& doc, const CommonOptions& opts, bool all_passed,
           const std::vector<std::string>& failures) {
    const Format format = opts.format == "csv" ? Format::csv : Format::structured_text;
    if (opts.out_path.empty()) {
        write_document(doc, format, std::cout);
    } else {
        std::ofstream file(opts.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << opts.out_path << "\n";
            return 2;
        }
        write_document(doc, format, file);
    }
    if (!all_passed) {
        for (const auto& f : failures) std::cerr << "failed: " << f << "\n";
        return 1;
    }
    return 0;
}

// --- bounds ------------------------------------------------------------

int run_bounds(const std::string& dist, const std::string& p_range, int grid_n,
               const CommonOptions& opts) {
    const auto spec = lcb::DistributionSpec::parse(dist);
    const auto p_grid = parse_range(p_range);
    const bool zero_mean = std::abs(spec.mean()) <= 1e-12;

    Document doc;
    doc.title = "bounds dist=" + spec.to_string();
    doc.columns = {"p",           "lower_nats",      "entropy_nats", "upper_nats",
                   "divergence_nats", "divergence_cap_nats", "passed"};
    bool all_passed = true;
    std::vector<std::string> failures;
    const double h = spec.entropy();

    for (double p : p_grid) {
        const double lower = spec.symmetric() ? lcb::entropy_lower_symmetric(spec, p)
                                              : lcb::entropy_lower_general(spec, p);
        std::optional<double> upper;
        if (p > 0.0) upper = lcb::entropy_upper(spec, p);
        std::optional<double> divergence, cap;
        if (zero_mean && (spec.symmetric() || p >= 1.0)) {
            const auto rep = lcb::relative_entropy_bound(spec, p, grid_n);
            divergence = rep.measured;
            cap = rep.upper;
        }
        bool ok = lower <= h + 1e-6;
        if (upper) ok = ok && h <= *upper + 1e-6;
        if (divergence) ok = ok && *divergence >= -1e-6 && *divergence <= *cap + 1e-6;
        if (!ok) {
            all_passed = false;
            failures.push_back("bounds at p=" + cell(p));
        }
        doc.rows.push_back({cell(p), cell(lower), cell(h), cell(upper), cell(divergence),
                            cell(cap), ok ? "1" : "0"});
    }
    if (opts.units == "bits") append_bits_columns(doc, {1, 2, 3, 4, 5});
    return finish(doc, opts, all_passed, failures);
}

// --- rd-curve ----------------------------------------------------------

int run_rd_curve(const std::string& dist, double r, const std::string& d_range, int ba_n,
                 const CommonOptions& opts) {
    const auto spec = lcb::DistributionSpec::parse(dist);
    const auto d_grid = parse_range(d_range);
    const lcb::RDCurve curve = lcb::rd_curve(spec, r, d_grid, ba_n);

    Document doc;
    doc.title = "rd_curve dist=" + spec.to_string() + " r=" + cell(r);
    doc.columns = {"d",           "r",          "slb_nats",    "ba_nats",
                   "ub_gauss_nats", "ub_gg_nats", "ub_sym_nats", "regime"};
    bool all_passed = true;
    std::vector<std::string> failures;
    for (const auto& pt : curve.points) {
        doc.rows.push_back({cell(pt.d), cell(pt.r), cell(pt.slb_nats), cell(pt.ba_nats),
                            cell(pt.ub_gauss_nats), cell(pt.ub_gg_nats), cell(pt.ub_sym_nats),
                            lcb::to_string(pt.regime)});
        if (!pt.ba_nats) continue;
        bool ok = *pt.ba_nats >= std::max(0.0, pt.slb_nats) - 0.01;
        for (const auto& ub : {pt.ub_gauss_nats, pt.ub_gg_nats, pt.ub_sym_nats})
            if (ub) ok = ok && *pt.ba_nats <= *ub + 0.02;
        if (!ok) {
            all_passed = false;
            failures.push_back("rd sandwich at d=" + cell(pt.d));
        }
    }
    if (opts.units == "bits") append_bits_columns(doc, {2, 3, 4, 5, 6});
    return finish(doc, opts, all_passed, failures);
}

// --- capacity ----------------------------------------------------------

int run_capacity(const std::string& noise, const std::string& power_range, int grid_n,
                 const CommonOptions& opts) {
    const auto spec = lcb::DistributionSpec::parse(noise);
    const auto powers = parse_range(power_range);

    Document doc;
    doc.title = "capacity noise=" + spec.to_string();
    doc.columns = {"power", "noise_spec", "lower_nats", "ba_nats", "gaussmi_nats", "upper_nats"};
    bool all_passed = true;
    std::vector<std::string> failures;
    for (double power : powers) {
        const auto pt = lcb::capacity_point(spec, power, grid_n);
        doc.rows.push_back({cell(pt.power), spec.to_string(), cell(pt.lower_gaussian_nats),
                            cell(pt.ba_nats), cell(pt.gaussian_input_mi_nats),
                            cell(pt.upper_nats)});
        const bool ok = *pt.ba_nats >= pt.lower_gaussian_nats - 0.01 &&
                        *pt.ba_nats <= pt.upper_nats + 0.02 &&
                        *pt.ba_nats - *pt.gaussian_input_mi_nats <= 0.5 * lcb::kLn2 + 0.01 &&
                        *pt.ba_nats - *pt.gaussian_input_mi_nats >= -0.01;
        if (!ok) {
            all_passed = false;
            failures.push_back("capacity at P=" + cell(power));
        }
    }
    if (opts.units == "bits") append_bits_columns(doc, {2, 3, 4, 5});
    return finish(doc, opts, all_passed, failures);
}

// --- reverse-epi ---------------------------------------------------------

int run_reverse_epi(const std::string& dist_x, const std::string& dist_y, int grid_n,
                    const CommonOptions& opts) {
    const auto x = lcb::DistributionSpec::parse(dist_x);
    const auto y = lcb::DistributionSpec::parse(dist_y);
    lcb::EPIReport rep;
    if (x.gamma_concave() || y.gamma_concave())
        rep = lcb::verify_reverse_epi_gamma(x, y, grid_n);
    else
        rep = lcb::verify_reverse_epi_scalar(x, y, grid_n);

    Document doc;
    doc.title = "reverse_epi x=" + x.to_string() + " y=" + y.to_string();
    doc.columns = {"n_x", "n_y", "n_sum", "ratio", "forward_slack", "reverse_constant",
                   "reverse_slack", "passed"};
    const double ratio = rep.n_sum / (rep.n_x + rep.n_y);
    const bool ok = rep.reverse_slack >= -1e-3 * (rep.n_x + rep.n_y) &&
                    rep.forward_slack >= -1e-4 * (rep.n_x + rep.n_y);
    doc.rows.push_back({cell(rep.n_x), cell(rep.n_y), cell(rep.n_sum), cell(ratio),
                        cell(rep.forward_slack), cell(rep.reverse_constant),
                        cell(rep.reverse_slack), ok ? "1" : "0"});
    return finish(doc, opts, ok, {"reverse EPI pair"});
}

// --- figures ---------------------------------------------------------------

int run_figures(const CommonOptions& opts) {
    Document doc;
    doc.title = "universal_gap_curves r=1:10:0.05";
    doc.columns = {"curve", "r", "gap_nats"};
    for (const char* kind : {"general", "symmetric"}) {
        const bool symmetric = kind[0] == 's';
        for (int k = 0; k <= 180; ++k) {
            const double r = 1.0 + 0.05 * k;
            doc.rows.push_back({kind, cell(r), cell(lcb::universal_gap_curve(r, symmetric))});
        }
    }
    if (opts.units == "bits") append_bits_columns(doc, {2});
    return finish(doc, opts, true, {});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy, rate-distortion and capacity bound suites for log-concave sources"};
    app.require_subcommand(1);

    std::string dist, dist_y, range;
    double r = 2.0;
    int grid_n = 4096;
    CommonOptions opts;

    auto* bounds = app.add_subcommand("bounds", "Entropy sandwich and divergence caps over a p grid");
    bounds->add_option("--dist", dist, "Source, e.g. laplace:1 or uniform:2@0.5")->required();
    bounds->add_option("--p-grid", range, "Moment orders start:stop:step")->required();
    bounds->add_option("--grid-n", grid_n, "Grid resolution for divergence (default 4096)");
    add_common(bounds, opts);

    auto* rd = app.add_subcommand("rd-curve", "Shannon lower bound, Blahut-Arimoto rate and "
                                              "test-channel upper bounds over a distortion grid");
    rd->add_option("--dist", dist, "Source distribution")->required();
    rd->add_option("--r", r, "Distortion exponent (>= 1)")->required();
    rd->add_option("--d-grid", range, "Distortion grid start:stop:step")->required();
    int ba_n = 1024;
    rd->add_option("--grid-n", ba_n,
                   "Source grid size, which is also the Blahut-Arimoto alphabet (default 1024)");
    add_common(rd, opts);

    auto* cap = app.add_subcommand("capacity", "Additive-noise capacity bounds over a power grid");
    cap->add_option("--noise", dist, "Noise distribution")->required();
    cap->add_option("--power-grid", range, "Input power grid start:stop:step")->required();
    int cap_n = 512;
    cap->add_option("--grid-n", cap_n, "Noise grid resolution (default 512)");
    add_common(cap, opts);

    auto* epi = app.add_subcommand("reverse-epi", "Forward and reverse entropy power inequality "
                                                  "for an independent pair");
    epi->add_option("--dist-x", dist, "First summand")->required();
    epi->add_option("--dist-y", dist_y, "Second summand")->required();
    int epi_n = 8192;
    epi->add_option("--grid-n", epi_n, "Convolution grid size (default 8192)");
    add_common(epi, opts);

    auto* figures = app.add_subcommand("figures", "Universal gap curves over r in [1, 10]");
    add_common(figures, opts);

    auto* verify = app.add_subcommand("verify-all", "Run the full verification matrix");
    add_common(verify, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (bounds->parsed()) return run_bounds(dist, range, grid_n, opts);
        if (rd->parsed()) return run_rd_curve(dist, r, range, ba_n, opts);
        if (cap->parsed()) return run_capacity(dist, range, cap_n, opts);
        if (epi->parsed()) return run_reverse_epi(dist, dist_y, epi_n, opts);
        if (figures->parsed()) return run_figures(opts);
        if (verify->parsed()) {
            std::ostringstream buf;
            const auto results = lcb::acceptance::run_all(buf);
            if (opts.out_path.empty()) {
                std::cout << buf.str();
            } else {
                std::ofstream file(opts.out_path, std::ios::binary);
                file << buf.str();
            }
            return lcb::acceptance::all_passed(results) ? 0 : 1;
        }
    } catch (const lcb::AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << " (best estimate " << e.best_estimate()
                  << ", error bound " << e.error_bound() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
