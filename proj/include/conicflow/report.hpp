#pragma once

#include "conicflow/cross_section.hpp"
#include "conicflow/flow.hpp"
#include "conicflow/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conicflow {

struct StabilitySummary {
    std::optional<bool> tangential;
    std::optional<bool> strict;
    std::optional<bool> strong;
    std::vector<ConditionResult> conditions;
    std::vector<std::string> notes;
};

/// Tangential, strict and strong verdicts together. Missing spectral data is
/// recorded as a note and leaves the affected verdict empty.
StabilitySummary summarize_stability(const CrossSection& cs, MuVariant variant);

struct WeightSummary {
    IndicialData indicial;
    WeightWindow window;
    bool sample_verified = false;
};

/// u1 is the smallest nonzero scalar eigenvalue of `cs`.
std::optional<WeightSummary> summarize_weights(const CrossSection& cs, const std::optional<Rational>& u0,
                                               double gamma, MuVariant variant);

struct DiagnosticsSummary {
    bool positivity_preserved = false;
    double tol_pos = 0.0;
    double R_min_initial = 0.0;
    double R_min_final = 0.0;
    bool ricci_bounded = false;
    double ricci_initial = 0.0;
    double ricci_sup = 0.0;
    double w_proxy_sup = 0.0;
    double gamma_hat_final = 0.0;
};

struct RunReport {
    std::string config_text;
    std::string config_hash;
    std::string cross_section_name;
    int n = 0;
    std::optional<StabilitySummary> stability;
    std::optional<WeightSummary> weights;
    FlowOutcome outcome;
    DiagnosticsSummary diagnostics;
    std::vector<std::string> files;
};

RunReport build_run_report(const FlowTrajectory& traj, const CrossSection& cs);

/// Deterministic JSON (sorted keys, 17 significant digits; non-finite reals as strings).
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
std::string report_to_text(const RunReport& report);

/// Writes report.json and report.txt into `dir` and returns their paths.
std::vector<std::string> emit_report(const RunReport& report, const std::string& dir);

std::string stability_to_json(const CrossSection& cs, const StabilitySummary& s);
std::string stability_to_text(const CrossSection& cs, const StabilitySummary& s);

std::string weights_to_json(const WeightSummary& w);
std::string weights_to_text(const WeightSummary& w);

/// Python/matplotlib script text plotting R_min, gamma_hat and sup_w_ric
/// against t from the given series header.
std::string plot_script(const std::string& series_header_line);

/// Reads `dir`/series.csv and writes `dir`/plot_series.py; returns its path.
/// Throws ConfigError if the series file is missing.
std::string emit_plot_script(const std::string& dir);

}  // namespace conicflow
