#include "paretogeo/cli.hpp"

#include "paretogeo/bayes.hpp"
#include "paretogeo/geometry.hpp"
#include "paretogeo/io.hpp"
#include "paretogeo/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace paretogeo::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

ParetoParams parse_pair(const std::string& text, const char* flag) {
    const auto parts = io::split(text, ',');
    try {
        if (parts.size() != 2) throw std::invalid_argument("");
        return ParetoParams(std::stod(parts[0]), std::stod(parts[1]));
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects two positive numbers 'alpha,beta', got '" +
                         text + "'");
    }
}

ParetoParams make_params(double alpha, double beta) {
    try {
        return ParetoParams(alpha, beta);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Writes to the named file, or to `fallback` when the path is empty.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    body(file);
    if (!file) throw std::runtime_error("failed writing output file: " + path);
}

struct SampleOptions {
    double alpha = 1.0;
    double beta = 1.0;
    std::size_t n = 100;
    std::string out_path;
};

void cmd_sample(const SampleOptions& opt, const RunConfig& cfg, std::ostream& out) {
    const ParetoParams p = make_params(opt.alpha, opt.beta);
    const SampleSet xs = model::sample(p, cfg.seed, opt.n);
    with_output(opt.out_path, out, [&](std::ostream& os) { io::write_samples(os, xs); });

    const SufficientStats stats = model::sufficient_stats(xs);
    json report = {{"seed", cfg.seed},
                   {"params", io::params_to_json(p)},
                   {"stats", io::stats_to_json(stats)}};
    report["mle"] = stats.is_degenerate() ? json(nullptr) : io::params_to_json(model::mle(stats));
    report["output"] = opt.out_path;
    out << report.dump(2) << '\n';
}

struct FitOptions {
    std::optional<double> known_alpha;
    std::optional<double> known_beta;
    std::string reference;
};

void cmd_fit(const FitOptions& opt, const RunConfig& cfg, std::ostream& out) {
    const SampleSet xs = io::read_sample_file(*cfg.input_path);
    const SufficientStats stats = model::sufficient_stats(xs);
    std::optional<ParetoParams> reference;
    if (!opt.reference.empty()) reference = parse_pair(opt.reference, "--reference");

    std::vector<bayes::PosteriorSummary> rows;
    auto append = [&](bayes::Conditioning c, double v) {
        const auto block = bayes::estimator_rows(stats, c, v, cfg.tolerance);
        rows.insert(rows.end(), block.begin(), block.end());
    };
    if (opt.known_alpha || opt.known_beta) {
        if (opt.known_alpha) append(bayes::Conditioning::known_alpha, *opt.known_alpha);
        if (opt.known_beta) append(bayes::Conditioning::known_beta, *opt.known_beta);
    } else if (reference) {
        rows = bayes::table2_summary(stats, *reference, cfg.tolerance);
    } else {
        append(bayes::Conditioning::none, 0.0);
    }
    if (reference) bayes::attach_distances(rows, *reference);

    if (cfg.output_format == OutputFormat::csv) {
        io::write_summary_csv(out, rows, cfg.precision);
        return;
    }
    json report = {{"stats", io::stats_to_json(stats)}};
    report["reference"] = reference ? io::params_to_json(*reference) : json(nullptr);
    report["rows"] = json::array();
    for (const auto& row : rows) report["rows"].push_back(io::summary_to_json(row));
    out << report.dump(2) << '\n';
}

struct BallOptions {
    double alpha = 1.0;
    double beta = 1.0;
    double radius = 1.0;
    std::size_t rays = 32;
    std::size_t steps = 51;
    std::string out_path;
};

void cmd_ball(const BallOptions& opt, std::ostream& out) {
    const ParetoParams center = make_params(opt.alpha, opt.beta);
    if (!(opt.radius > 0.0)) throw UsageError("--radius must be > 0");
    if (opt.steps < 2) throw UsageError("--steps must be >= 2");
    const auto rays = geometry::geodesic_ball(center, opt.radius, opt.rays, opt.steps);
    with_output(opt.out_path, out, [&](std::ostream& os) { io::write_ball_csv(os, rays); });
}

struct CurveOptions {
    std::string kind;
    std::string grid;
    std::string grid_beta;
    std::string reference;
    std::string out_path;
};

void cmd_curves(const CurveOptions& opt, const RunConfig& cfg, std::ostream& out) {
    const SufficientStats stats = model::sufficient_stats(io::read_sample_file(*cfg.input_path));
    const ParetoParams hat = model::mle(stats);
    const double q1 = stats.q1;
    const double spread = 6.0 / std::sqrt(static_cast<double>(stats.n));
    const io::GridSpec alpha_default{0.9 * q1, 1.01 * q1, 400, false};
    const io::GridSpec beta_default{hat.beta() * std::max(0.05, 1.0 - spread),
                                    hat.beta() * (1.0 + spread), 400, false};
    const io::GridSpec predictive_default{0.05 * q1, 5.0 * q1, 500, false};

    auto grid_or = [](const std::string& text, const io::GridSpec& fallback) {
        try {
            return text.empty() ? fallback : io::parse_grid(text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    };
    std::optional<ParetoParams> reference;
    if (!opt.reference.empty()) reference = parse_pair(opt.reference, "--reference");

    with_output(opt.out_path, out, [&](std::ostream& os) {
        if (opt.kind == "joint") {
            const auto alphas = grid_or(opt.grid, {alpha_default.start, alpha_default.stop, 60, false}).points();
            const auto betas = grid_or(opt.grid_beta, {beta_default.start, beta_default.stop, 60, false}).points();
            os << "alpha,beta,density\n";
            for (double a : alphas) {
                for (double b : betas) {
                    if (!(a > 0.0) || !(b > 0.0)) continue;
                    os << io::format_exact(a) << ',' << io::format_exact(b) << ','
                       << io::format_exact(bayes::joint_posterior_pdf(ParetoParams(a, b), stats)) << '\n';
                }
            }
        } else if (opt.kind == "marginal_alpha") {
            os << "alpha,density\n";
            for (double a : grid_or(opt.grid, alpha_default).points()) {
                os << io::format_exact(a) << ',' << io::format_exact(bayes::marginal_alpha_pdf(a, stats)) << '\n';
            }
        } else if (opt.kind == "marginal_beta") {
            const bayes::GammaPosterior post = bayes::marginal_beta_posterior(stats);
            os << "beta,density\n";
            for (double b : grid_or(opt.grid, beta_default).points()) {
                os << io::format_exact(b) << ',' << io::format_exact(post.pdf(b)) << '\n';
            }
        } else if (opt.kind == "predictive") {
            os << (reference ? "x,density,underlying\n" : "x,density\n");
            for (double x : grid_or(opt.grid, predictive_default).points()) {
                os << io::format_exact(x) << ',' << io::format_exact(bayes::predictive_pdf(x, stats));
                if (reference) os << ',' << io::format_exact(model::pdf(x, *reference));
                os << '\n';
            }
        } else {
            throw UsageError("unknown curve kind '" + opt.kind +
                             "' (expected joint, marginal_alpha, marginal_beta, predictive)");
        }
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fisher-Rao geometry and Jeffreys-prior inference for the Pareto family",
                 "paretogeo"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string input;
    std::string format = "json";
    app.add_option("--seed", cfg.seed, "Seed for the sampler")->capture_default_str();
    app.add_option("--format", format, "Summary output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--tolerance", cfg.tolerance, "Absolute quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--precision", cfg.precision, "Decimals in human-readable output")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();

    SampleOptions sample_opt;
    auto* sample = app.add_subcommand("sample", "Draw a seeded Pareto sample by inverse transform");
    sample->add_option("--alpha", sample_opt.alpha)->check(CLI::PositiveNumber)->capture_default_str();
    sample->add_option("--beta", sample_opt.beta)->check(CLI::PositiveNumber)->capture_default_str();
    sample->add_option("--n", sample_opt.n)->check(CLI::PositiveNumber)->capture_default_str();
    sample->add_option("--out", sample_opt.out_path, "Sample file, one value per line")->required();

    FitOptions fit_opt;
    auto* fit = app.add_subcommand("fit", "Point estimators from a sample file");
    fit->add_option("--input", input, "Sample file")->required();
    fit->add_option("--known-alpha", fit_opt.known_alpha)->check(CLI::PositiveNumber);
    fit->add_option("--known-beta", fit_opt.known_beta)->check(CLI::PositiveNumber);
    fit->add_option("--reference", fit_opt.reference, "Reference parameters 'alpha,beta'");

    std::vector<double> endpoints;
    auto* dist = app.add_subcommand("distance", "Fisher-Rao distance between two Pareto laws");
    dist->add_option("params", endpoints, "alpha0 beta0 alpha1 beta1")
        ->expected(4)
        ->required()
        ->check(CLI::PositiveNumber);

    BallOptions ball_opt;
    auto* ball = app.add_subcommand("ball", "Radial geodesics outlining a geodesic ball (CSV)");
    ball->add_option("--alpha", ball_opt.alpha)->check(CLI::PositiveNumber)->capture_default_str();
    ball->add_option("--beta", ball_opt.beta)->check(CLI::PositiveNumber)->capture_default_str();
    ball->add_option("--radius", ball_opt.radius)->check(CLI::PositiveNumber)->capture_default_str();
    ball->add_option("--rays", ball_opt.rays)->check(CLI::PositiveNumber)->capture_default_str();
    ball->add_option("--steps", ball_opt.steps)->check(CLI::Range(2, 1000000))->capture_default_str();
    ball->add_option("--out", ball_opt.out_path, "CSV file (stdout when omitted)");

    CurveOptions curve_opt;
    auto* curves = app.add_subcommand("curves", "Posterior density curves on a grid (CSV)");
    curves->add_option("--input", input, "Sample file")->required();
    curves->add_option("--kind", curve_opt.kind, "joint | marginal_alpha | marginal_beta | predictive")
        ->required()
        ->check(CLI::IsMember({"joint", "marginal_alpha", "marginal_beta", "predictive"}));
    curves->add_option("--grid", curve_opt.grid, "start:stop:count or log:start:stop:count");
    curves->add_option("--grid-beta", curve_opt.grid_beta, "beta grid for --kind joint");
    curves->add_option("--reference", curve_opt.reference,
                       "add the underlying density 'alpha,beta' to predictive output");
    curves->add_option("--out", curve_opt.out_path, "CSV file (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (!input.empty()) cfg.input_path = input;
    cfg.output_format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

    try {
        if (*sample) {
            cmd_sample(sample_opt, cfg, out);
        } else if (*fit) {
            cmd_fit(fit_opt, cfg, out);
        } else if (*dist) {
            const double d = geometry::distance(make_params(endpoints[0], endpoints[1]),
                                                make_params(endpoints[2], endpoints[3]));
            out << io::format_fixed(d, cfg.precision) << '\n';
        } else if (*ball) {
            cmd_ball(ball_opt, out);
        } else if (*curves) {
            cmd_curves(curve_opt, cfg, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace paretogeo::cli
