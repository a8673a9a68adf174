// Command-line front end. Exit codes: 0 success, 1 config error,
// 2 numerical failure, 3 insufficient spectral data.

#include "chart_oracle.hpp"
#include "conicflow/config.hpp"
#include "conicflow/errors.hpp"
#include "conicflow/flow.hpp"
#include "conicflow/keyvalue.hpp"
#include "conicflow/report.hpp"
#include "conicflow/stability.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

using namespace conicflow;

constexpr int exit_config = 1;
constexpr int exit_numerical = 2;
constexpr int exit_spectral = 3;

int finish_flow(const FlowTrajectory& traj, bool json) {
    const CrossSection cs = config_cross_section(traj.config);
    RunReport report = build_run_report(traj, cs);
    if (!traj.config.output_dir.empty()) {
        if (std::filesystem::exists(std::filesystem::path(traj.config.output_dir) / "series.csv"))
            report.files.push_back(emit_plot_script(traj.config.output_dir));
        const auto paths = (std::filesystem::path(traj.config.output_dir)).string();
        report.files.push_back((std::filesystem::path(paths) / "report.json").string());
        report.files.push_back((std::filesystem::path(paths) / "report.txt").string());
        emit_report(report, traj.config.output_dir);
    }
    std::cout << (json ? report_to_json(report) : report_to_text(report));
    if (!traj.outcome.completed) {
        std::cerr << "numerical failure: " << traj.outcome.message << "\n";
        return exit_numerical;
    }
    return 0;
}

int stability_table(const std::string& csv_path) {
    std::vector<TableRow> rows = builtin_table();
    int mismatches = 0;
    for (auto& row : rows) {
        const auto v = classify_table_row(row);
        const bool verdict = v.strong.value_or(false);
        if (verdict != row.sts_verdict) ++mismatches;
        row.sts_verdict = verdict;
    }
    const std::string csv = table_to_csv(rows);
    if (csv_path.empty() || csv_path == "-") {
        std::cout << csv;
    } else {
        write_text_file(csv_path, csv);
        int yes = 0;
        for (const auto& row : rows) {
            if (!row.sts_verdict) continue;
            ++yes;
            std::cout << "yes: " << row.family << " " << display_space(row) << "\n";
        }
        std::cout << rows.size() << " rows, " << yes << " strongly tangentially stable, " << mismatches
                  << " disagreements with the listed column\n";
    }
    return 0;
}

int stability_check(const std::string& path, const std::string& variant_text, bool json) {
    const CrossSection cs = load_cross_section(path);
    const auto report = validate(cs);
    if (!report.ok()) {
        for (const auto& e : report.errors) std::cerr << path << ": " << e << "\n";
        return exit_config;
    }
    for (const auto& w : report.warnings) std::cerr << path << ": warning: " << w << "\n";
    const MuVariant variant = parse_mu_variant(variant_text);
    StabilitySummary s;
    const auto t = check_tangential(cs);
    const auto strong = check_strong(cs, variant);
    s.tangential = t.tangential;
    s.strict = t.strict;
    s.strong = strong.strong;
    s.conditions = t.conditions;
    s.conditions.insert(s.conditions.end(), strong.conditions.begin(), strong.conditions.end());
    s.notes = t.notes;
    s.notes.insert(s.notes.end(), strong.notes.begin(), strong.notes.end());
    std::cout << (json ? stability_to_json(cs, s) : stability_to_text(cs, s));
    return 0;
}

int weights(int n, const std::string& u0, const std::string& u1, double gamma, const std::string& variant_text,
            bool above_one, bool json) {
    Rational r0, r1;
    try {
        r0 = parse_rational(u0);
        r1 = parse_rational(u1);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--u0/--u1: ") + e.what());
    }
    if (n < 2) throw ConfigError("--n must be at least 2");
    if (!(gamma > 0.0)) throw ConfigError("--gamma must be positive");
    if (!(r0 > 0 && r1 > 0)) throw ConfigError("--u0 and --u1 must be positive");
    WeightSummary w;
    w.indicial = indicial_data(n, r0, r1, parse_mu_variant(variant_text));
    w.window = admissible_weights(n, w.indicial.mu0, w.indicial.mu1, gamma, WeightOptions{above_one});
    if (w.window.sample_point)
        w.sample_verified = check_weight_sample(*w.window.sample_point, w.window.mu0, w.window.mu1, gamma).all();
    std::cout << (json ? weights_to_json(w) : weights_to_text(w));
    if (!json) std::cout << "strong assumption u0 > n and u1 > n: " << (strong_assumption_check(r0, r1, n) ? "yes" : "no") << "\n";
    return 0;
}

int oracle_selftest() {
    bool ok = true;
    for (const auto& c : oracle::run_selftest()) {
        std::printf("%s %s: value %.17g expected %.17g tolerance %.3g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.expected, c.tolerance);
        ok = ok && c.passed;
    }
    return ok ? 0 : exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ricci de Turck flow on cones over Einstein cross-sections"};
    app.require_subcommand(1);

    auto* flow = app.add_subcommand("flow", "Integrate the flow")->require_subcommand(1);
    std::string config_path;
    bool flow_json = false;
    auto* flow_run = flow->add_subcommand("run", "Run from a config file");
    flow_run->add_option("config", config_path, "key = value config file")->required();
    flow_run->add_flag("--json", flow_json, "Print the structured report");
    std::string checkpoint_path;
    double resume_t_end = 0.0;
    auto* flow_resume = flow->add_subcommand("resume", "Continue from a checkpoint .meta file");
    flow_resume->add_option("checkpoint", checkpoint_path, "checkpoint metadata file")->required();
    auto* t_end_opt = flow_resume->add_option("--t-end", resume_t_end, "New end time");
    flow_resume->add_flag("--json", flow_json, "Print the structured report");

    auto* stability = app.add_subcommand("stability", "Tangential stability")->require_subcommand(1);
    std::string cs_path;
    std::string variant = "squared";
    bool stab_json = false;
    auto* check = stability->add_subcommand("check", "Classify a cross-section file");
    check->add_option("file", cs_path, "cross-section file")->required();
    check->add_option("--variant", variant, "printed or squared");
    check->add_flag("--json", stab_json, "Print the structured record");
    std::string csv_path;
    auto* table = stability->add_subcommand("table", "Classify the symmetric-space tables");
    table->add_option("--csv", csv_path, "Write CSV here instead of stdout");

    int n = 0;
    std::string u0, u1;
    double gamma = 0.0;
    bool above_one = false;
    bool weights_json = false;
    auto* w = app.add_subcommand("weights", "Admissible Hoelder weights");
    w->add_option("--n", n, "cross-section dimension")->required();
    w->add_option("--u0", u0, "u0 as p/q")->required();
    w->add_option("--u1", u1, "u1 as p/q")->required();
    w->add_option("--gamma", gamma, "decay rate gamma")->required();
    w->add_option("--variant", variant, "printed or squared");
    w->add_flag("--above-one", above_one, "Prefer a sample with gamma0, gamma1 > 1");
    w->add_flag("--json", weights_json, "Print the structured record");

    auto* orc = app.add_subcommand("oracle", "Finite-difference tensor oracle")->require_subcommand(1);
    auto* selftest = orc->add_subcommand("selftest", "Run closed-form checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (flow_run->parsed()) return finish_flow(run_flow(parse_config(config_path).config), flow_json);
        if (flow_resume->parsed()) {
            std::optional<double> t;
            if (t_end_opt->count() > 0) t = resume_t_end;
            return finish_flow(resume_flow(checkpoint_path, t), flow_json);
        }
        if (check->parsed()) return stability_check(cs_path, variant, stab_json);
        if (table->parsed()) return stability_table(csv_path);
        if (w->parsed()) return weights(n, u0, u1, gamma, variant, above_one, weights_json);
        if (selftest->parsed()) return oracle_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const InsufficientSpectralData& e) {
        std::cerr << e.what() << "\n";
        return exit_spectral;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
