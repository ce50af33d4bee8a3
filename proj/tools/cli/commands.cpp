#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "confdist/calibration.hpp"
#include "confdist/errors.hpp"
#include "confdist/inference.hpp"
#include "formats.hpp"

namespace confdist::cli {
namespace {

using inference::CollisionRadius;
using inference::Distance;
using inference::Observation;

const CLI::Validator kFinite(
    [](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v) || !std::isfinite(v)) return "value must be a finite number";
        return {};
    },
    "FINITE");

const CLI::Validator kPositive(
    [](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v) || !std::isfinite(v) || v <= 0.0) return "value must be > 0";
        return {};
    },
    "POSITIVE");

const CLI::Validator kNonNegative(
    [](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v) || !std::isfinite(v) || v < 0.0) return "value must be >= 0";
        return {};
    },
    "NONNEGATIVE");

const CLI::Validator kOpenUnit(
    [](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v) || !(v > 0.0 && v < 1.0)) return "value must lie in (0, 1)";
        return {};
    },
    "(0,1)");

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ObservationArgs {
    std::optional<double> norm;
    std::optional<double> y1;
    std::optional<double> y2;
    double sigma = 0.0;

    void attach(CLI::App& cmd) {
        auto* n = cmd.add_option("--norm", norm, "Observed distance ||y||")->check(kNonNegative);
        auto* a = cmd.add_option("--y1", y1, "Observed first component")->check(kFinite);
        auto* b = cmd.add_option("--y2", y2, "Observed second component")->check(kFinite);
        a->needs(b);
        b->needs(a);
        n->excludes(a)->excludes(b);
        cmd.add_option("--sigma", sigma, "Known noise standard deviation per axis")->required()->check(kPositive);
    }

    [[nodiscard]] Observation build() const {
        if (norm) return Observation::from_norm(*norm, sigma);
        if (y1 && y2) return Observation::from_pair(*y1, *y2, sigma);
        throw UsageError("one of --norm or --y1/--y2 is required");
    }
};

struct Output {
    std::string format;
    std::string path;

    void attach(CLI::App& cmd, std::vector<std::string> formats) {
        format = formats.front();
        cmd.add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(formats)));
        cmd.add_option("--output", path, "Write to this file instead of stdout");
    }

    void emit(const std::string& text, std::ostream& out) const {
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        file << text;
        if (!file) throw std::runtime_error("cannot write " + path);
    }
};

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Appends config-file values for every flag not already on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::vector<std::string> merged;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            merged.push_back(args[i]);
        }
    }
    if (config_path.empty()) return merged;
    const auto extra = read_config_args(config_path);
    for (std::size_t i = 0; i + 1 < extra.size(); i += 2) {
        if (!has_flag(merged, extra[i])) {
            merged.push_back(extra[i]);
            merged.push_back(extra[i + 1]);
        }
    }
    return merged;
}

}  // namespace

std::vector<std::string> read_config_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot read '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    const auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t\r\"");
        const auto last = s.find_last_not_of(" \t\r\"");
        return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
    };
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("--config: expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        out.push_back("--" + key);
        out.push_back(trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::istringstream in(spec);
    double lo = 0.0, hi = 0.0;
    long long n = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !in.eof()) {
        throw UsageError("--grid: expected lo:hi:n, got '" + spec + "'");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || n < 1 || (n > 1 && !(hi > lo)) ||
        (n == 1 && hi != lo)) {
        throw UsageError("--grid: need 0 <= lo < hi and n >= 2 (or lo == hi with n == 1), got '" + spec + "'");
    }
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    return grid;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayesian posterior vs. confidence distribution for the distance between two noisy objects",
                 "confdist"};
    app.require_subcommand(1);

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Collision confidence, medians and intervals for one observation");
    ObservationArgs analyze_obs;
    analyze_obs.attach(*analyze_cmd);
    double analyze_radius = 0.0;
    double analyze_level = 0.90;
    analyze_cmd->add_option("--radius", analyze_radius, "Combined collision radius R")->required()->check(kPositive);
    analyze_cmd->add_option("--level", analyze_level, "Interval level")->check(kOpenUnit)->capture_default_str();
    Output analyze_out;
    analyze_out.attach(*analyze_cmd, {"text", "csv", "json"});

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Tabulate B, C and both curves over a distance grid");
    ObservationArgs curve_obs;
    curve_obs.attach(*curve_cmd);
    std::string grid_spec = "0:12:481";
    curve_cmd->add_option("--grid", grid_spec, "Distance grid lo:hi:n")->capture_default_str();
    Output curve_out;
    curve_out.attach(*curve_cmd, {"csv", "json"});

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo and exact non-collision summaries over a sigma grid");
    double sweep_delta = 1.99;
    double sweep_radius = 2.0;
    calibration::SweepConfig sweep_config;
    sweep_config.seed = 1;
    sweep_cmd->add_option("--delta-true", sweep_delta, "True distance")->check(kNonNegative)->capture_default_str();
    sweep_cmd->add_option("--radius", sweep_radius, "Combined collision radius R")->check(kPositive)->capture_default_str();
    sweep_cmd->add_option("--sigma-grid", sweep_config.sigma_grid, "Comma-separated noise levels")
        ->delimiter(',')
        ->check(kPositive);
    sweep_cmd->add_option("--n-reps", sweep_config.n_reps, "Replicates per sigma")
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()))
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_config.seed, "PRNG seed")->capture_default_str();
    sweep_cmd->add_option("--threshold", sweep_config.threshold, "High-probability threshold")
        ->check(kOpenUnit)
        ->capture_default_str();
    sweep_cmd->add_option("--threads", sweep_config.threads, "Worker threads (0 = all cores); results do not depend on it");
    Output sweep_out;
    sweep_out.attach(*sweep_cmd, {"csv", "json"});

    // pit
    auto* pit_cmd = app.add_subcommand("pit", "Uniformity diagnostic of 1 - C(R|Y) under a true distance");
    double pit_delta = 2.0;
    double pit_sigma = 2.5;
    double pit_radius = 2.0;
    std::uint64_t pit_n = 100000;
    std::uint64_t pit_seed = 1;
    unsigned pit_threads = 0;
    pit_cmd->add_option("--delta-true", pit_delta, "True distance")->check(kNonNegative)->capture_default_str();
    pit_cmd->add_option("--sigma", pit_sigma, "Noise standard deviation")->check(kPositive)->capture_default_str();
    pit_cmd->add_option("--radius", pit_radius, "Combined collision radius R")->check(kPositive)->capture_default_str();
    pit_cmd->add_option("--n", pit_n, "Number of draws (>= 100)")
        ->check(CLI::Range(std::uint64_t{100}, std::numeric_limits<std::uint64_t>::max()))
        ->capture_default_str();
    pit_cmd->add_option("--seed", pit_seed, "PRNG seed")->capture_default_str();
    pit_cmd->add_option("--threads", pit_threads, "Worker threads (0 = all cores)");
    Output pit_out;
    pit_out.attach(*pit_cmd, {"text", "csv", "json"});

    for (auto* cmd : {analyze_cmd, curve_cmd, sweep_cmd, pit_cmd}) {
        cmd->add_option("--config", "Flat key = value file; command-line flags take precedence");
    }

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (analyze_cmd->parsed()) {
            const auto report = analyze(analyze_obs.build(), CollisionRadius(analyze_radius), analyze_level);
            const auto& fmt = analyze_out.format;
            analyze_out.emit(fmt == "json"  ? dump(analyze_to_json(report))
                             : fmt == "csv" ? analyze_to_csv(report)
                                            : analyze_to_text(report),
                             out);
        } else if (curve_cmd->parsed()) {
            const auto table = inference::tabulate_curves(curve_obs.build(), parse_grid_spec(grid_spec));
            curve_out.emit(curve_out.format == "json" ? dump(curve_to_json(table)) : curve_to_csv(table), out);
        } else if (sweep_cmd->parsed()) {
            const calibration::SweepBase base{Distance(sweep_delta), CollisionRadius(sweep_radius)};
            const auto rows = calibration::run_sweep(base, sweep_config);
            sweep_out.emit(sweep_out.format == "json" ? dump(sweep_to_json(rows)) : sweep_to_csv(rows), out);
        } else if (pit_cmd->parsed()) {
            const calibration::Scenario scenario(Distance(pit_delta), pit_sigma, CollisionRadius(pit_radius));
            const auto pit = calibration::pit_sample(scenario, pit_n, pit_seed, pit_threads);
            const auto& fmt = pit_out.format;
            pit_out.emit(fmt == "json"  ? dump(pit_to_json(pit))
                         : fmt == "csv" ? pit_to_csv(pit)
                                        : pit_to_text(pit),
                         out);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BracketError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace confdist::cli
