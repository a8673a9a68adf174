#include "conicflow/report.hpp"

#include "conicflow/config.hpp"
#include "conicflow/diagnostics.hpp"
#include "conicflow/errors.hpp"
#include "conicflow/keyvalue.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

namespace conicflow {

using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double real_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("not a real: " + s);
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> opt_bool_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<bool>();
}

std::string verdict_word(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "undetermined"; }

json interval_json(const OpenInterval& i) { return json{{"lo", real(i.lo)}, {"hi", real(i.hi)}}; }

OpenInterval interval_from(const json& j) { return {real_from(j.at("lo")), real_from(j.at("hi"))}; }

json stability_json(const StabilitySummary& s) {
    json conds = json::array();
    for (const auto& c : s.conditions) conds.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    return json{{"tangential", opt_bool(s.tangential)},
                {"strict", opt_bool(s.strict)},
                {"strong", opt_bool(s.strong)},
                {"conditions", conds},
                {"notes", s.notes}};
}

StabilitySummary stability_from(const json& j) {
    StabilitySummary s;
    s.tangential = opt_bool_from(j.at("tangential"));
    s.strict = opt_bool_from(j.at("strict"));
    s.strong = opt_bool_from(j.at("strong"));
    for (const auto& c : j.at("conditions"))
        s.conditions.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("witness").get<std::string>()});
    s.notes = j.at("notes").get<std::vector<std::string>>();
    return s;
}

json weights_json(const WeightSummary& w) {
    json sample = nullptr;
    if (w.window.sample_point)
        sample = {{"gamma0", real(w.window.sample_point->gamma0)},
                  {"gamma1", real(w.window.sample_point->gamma1)},
                  {"alpha", real(w.window.sample_point->alpha)}};
    return json{{"n", w.indicial.n},
                {"u0", to_string(w.indicial.u0)},
                {"u1", to_string(w.indicial.u1)},
                {"variant", to_string(w.indicial.variant)},
                {"mu0", real(w.indicial.mu0)},
                {"mu1", real(w.indicial.mu1)},
                {"gamma", real(w.window.gamma)},
                {"gamma0_interval", interval_json(w.window.gamma0_interval)},
                {"gamma1_interval", interval_json(w.window.gamma1_interval)},
                {"alpha_interval", interval_json(w.window.alpha_interval)},
                {"feasible", w.window.feasible},
                {"sample", sample},
                {"sample_verified", w.sample_verified}};
}

WeightSummary weights_from(const json& j) {
    WeightSummary w;
    w.indicial.n = j.at("n").get<int>();
    w.indicial.u0 = parse_rational(j.at("u0").get<std::string>());
    w.indicial.u1 = parse_rational(j.at("u1").get<std::string>());
    w.indicial.variant = parse_mu_variant(j.at("variant").get<std::string>());
    w.indicial.mu0 = real_from(j.at("mu0"));
    w.indicial.mu1 = real_from(j.at("mu1"));
    w.window.mu0 = w.indicial.mu0;
    w.window.mu1 = w.indicial.mu1;
    w.window.gamma = real_from(j.at("gamma"));
    w.window.gamma0_interval = interval_from(j.at("gamma0_interval"));
    w.window.gamma1_interval = interval_from(j.at("gamma1_interval"));
    w.window.alpha_interval = interval_from(j.at("alpha_interval"));
    w.window.feasible = j.at("feasible").get<bool>();
    if (!j.at("sample").is_null()) {
        const auto& s = j.at("sample");
        w.window.sample_point = WeightSample{real_from(s.at("gamma0")), real_from(s.at("gamma1")), real_from(s.at("alpha"))};
    }
    w.sample_verified = j.at("sample_verified").get<bool>();
    return w;
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 15u]; }

std::string hex64(std::uint64_t v) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = hex_digit(static_cast<unsigned>(v));
    return s;
}

void append_stability_text(std::ostringstream& out, const StabilitySummary& s) {
    out << "tangentially stable: " << verdict_word(s.tangential) << "\n"
        << "strictly tangentially stable: " << verdict_word(s.strict) << "\n"
        << "strongly tangentially stable: " << verdict_word(s.strong) << "\n";
    for (const auto& c : s.conditions)
        out << "  [" << (c.passed ? "pass" : "fail") << "] " << c.name << ": " << c.witness << "\n";
    for (const auto& n : s.notes) out << "  note: " << n << "\n";
}

void append_weights_text(std::ostringstream& out, const WeightSummary& w) {
    out << "weights: n = " << w.indicial.n << ", u0 = " << to_string(w.indicial.u0) << ", u1 = " << to_string(w.indicial.u1)
        << ", variant = " << to_string(w.indicial.variant) << "\n"
        << "  mu0 = " << g17(w.indicial.mu0) << ", mu1 = " << g17(w.indicial.mu1) << ", gamma = " << g17(w.window.gamma)
        << "\n"
        << "  gamma0 in (" << g17(w.window.gamma0_interval.lo) << ", " << g17(w.window.gamma0_interval.hi) << ")\n"
        << "  gamma1 in (" << g17(w.window.gamma1_interval.lo) << ", " << g17(w.window.gamma1_interval.hi) << ")\n"
        << "  feasible: " << (w.window.feasible ? "yes" : "no") << "\n";
    if (w.window.sample_point)
        out << "  sample: gamma0 = " << g17(w.window.sample_point->gamma0) << ", gamma1 = " << g17(w.window.sample_point->gamma1)
            << ", alpha = " << g17(w.window.sample_point->alpha) << " (exact check: " << (w.sample_verified ? "pass" : "fail")
            << ")\n";
}

}  // namespace

StabilitySummary summarize_stability(const CrossSection& cs, MuVariant variant) {
    StabilitySummary s;
    try {
        const auto t = check_tangential(cs);
        s.tangential = t.tangential;
        s.strict = t.strict;
        s.conditions.insert(s.conditions.end(), t.conditions.begin(), t.conditions.end());
        s.notes.insert(s.notes.end(), t.notes.begin(), t.notes.end());
    } catch (const InsufficientSpectralData& e) {
        s.notes.push_back(std::string("tangential check skipped: ") + e.what());
    }
    try {
        const auto t = check_strong(cs, variant);
        s.strong = t.strong;
        s.conditions.insert(s.conditions.end(), t.conditions.begin(), t.conditions.end());
        s.notes.insert(s.notes.end(), t.notes.begin(), t.notes.end());
    } catch (const InsufficientSpectralData& e) {
        s.notes.push_back(std::string("strong check skipped: ") + e.what());
    }
    return s;
}

std::optional<WeightSummary> summarize_weights(const CrossSection& cs, const std::optional<Rational>& u0, double gamma,
                                               MuVariant variant) {
    if (!u0) return std::nullopt;
    std::optional<Rational> u1;
    for (const auto& l : cs.scalar_spectrum)
        if (l > 0) {
            u1 = l;
            break;
        }
    if (!u1) throw ConfigError("cross-section has no nonzero scalar eigenvalue for u1");
    WeightSummary w;
    w.indicial = indicial_data(cs.n, *u0, *u1, variant);
    w.window = admissible_weights(cs.n, w.indicial.mu0, w.indicial.mu1, gamma);
    if (w.window.sample_point)
        w.sample_verified = check_weight_sample(*w.window.sample_point, w.window.mu0, w.window.mu1, gamma).all();
    return w;
}

RunReport build_run_report(const FlowTrajectory& traj, const CrossSection& cs) {
    RunReport r;
    r.config_text = traj.config.source_text.empty() ? config_to_text(traj.config) : traj.config.source_text;
    r.config_hash = hex64(config_hash(traj.config));
    r.cross_section_name = cs.name;
    r.n = traj.n;
    r.stability = summarize_stability(cs, traj.config.variant);
    r.weights = summarize_weights(cs, traj.config.u0, traj.config.weights_gamma, traj.config.variant);
    r.outcome = traj.outcome;
    const auto pos = r_min_tracker(traj);
    r.diagnostics.positivity_preserved = pos.preserved;
    r.diagnostics.tol_pos = pos.tol_pos;
    if (!pos.series.R_min.empty()) {
        r.diagnostics.R_min_initial = pos.series.R_min.front();
        r.diagnostics.R_min_final = pos.series.R_min.back();
        r.diagnostics.gamma_hat_final = pos.series.gamma_hat.back();
        for (double w : pos.series.w_proxy) r.diagnostics.w_proxy_sup = std::max(r.diagnostics.w_proxy_sup, w);
    }
    const auto ric = ricci_weight_monitor(traj, traj.config.gamma_prime);
    r.diagnostics.ricci_bounded = ric.bounded;
    r.diagnostics.ricci_initial = ric.initial;
    r.diagnostics.ricci_sup = ric.sup;
    r.files = traj.files;
    return r;
}

std::string report_to_json(const RunReport& r) {
    const auto& d = r.diagnostics;
    json j{{"config_text", r.config_text},
           {"config_hash", r.config_hash},
           {"cross_section", r.cross_section_name},
           {"n", r.n},
           {"stability", r.stability ? stability_json(*r.stability) : json(nullptr)},
           {"weights", r.weights ? weights_json(*r.weights) : json(nullptr)},
           {"outcome",
            {{"completed", r.outcome.completed}, {"t_reached", real(r.outcome.t_reached)}, {"message", r.outcome.message}}},
           {"diagnostics",
            {{"positivity_preserved", d.positivity_preserved},
             {"tol_pos", real(d.tol_pos)},
             {"R_min_initial", real(d.R_min_initial)},
             {"R_min_final", real(d.R_min_final)},
             {"ricci_bounded", d.ricci_bounded},
             {"ricci_initial", real(d.ricci_initial)},
             {"ricci_sup", real(d.ricci_sup)},
             {"w_proxy_sup", real(d.w_proxy_sup)},
             {"gamma_hat_final", real(d.gamma_hat_final)}}},
           {"files", r.files}};
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
    RunReport r;
    r.config_text = j.at("config_text").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.cross_section_name = j.at("cross_section").get<std::string>();
    r.n = j.at("n").get<int>();
    if (!j.at("stability").is_null()) r.stability = stability_from(j.at("stability"));
    if (!j.at("weights").is_null()) r.weights = weights_from(j.at("weights"));
    const auto& o = j.at("outcome");
    r.outcome = {o.at("completed").get<bool>(), real_from(o.at("t_reached")), o.at("message").get<std::string>()};
    const auto& d = j.at("diagnostics");
    r.diagnostics.positivity_preserved = d.at("positivity_preserved").get<bool>();
    r.diagnostics.tol_pos = real_from(d.at("tol_pos"));
    r.diagnostics.R_min_initial = real_from(d.at("R_min_initial"));
    r.diagnostics.R_min_final = real_from(d.at("R_min_final"));
    r.diagnostics.ricci_bounded = d.at("ricci_bounded").get<bool>();
    r.diagnostics.ricci_initial = real_from(d.at("ricci_initial"));
    r.diagnostics.ricci_sup = real_from(d.at("ricci_sup"));
    r.diagnostics.w_proxy_sup = real_from(d.at("w_proxy_sup"));
    r.diagnostics.gamma_hat_final = real_from(d.at("gamma_hat_final"));
    r.files = j.at("files").get<std::vector<std::string>>();
    return r;
}

std::string report_to_text(const RunReport& r) {
    std::ostringstream out;
    const auto& d = r.diagnostics;
    out << "flow run report\n"
        << "config hash: " << r.config_hash << "\n"
        << "cross-section: " << r.cross_section_name << " (n = " << r.n << ")\n"
        << "outcome: " << (r.outcome.completed ? "completed" : "failed") << " at t = " << g17(r.outcome.t_reached) << " ("
        << r.outcome.message << ")\n"
        << "R_min verdict: " << (d.positivity_preserved ? "positivity preserved" : "positivity not preserved")
        << " (R_min(0) = " << g17(d.R_min_initial) << ", R_min(end) = " << g17(d.R_min_final)
        << ", tol_pos = " << g17(d.tol_pos) << ")\n"
        << "weighted Ricci verdict: " << (d.ricci_bounded ? "bounded" : "not bounded") << " (initial "
        << g17(d.ricci_initial) << ", sup " << g17(d.ricci_sup) << ")\n"
        << "de Turck proxy sup: " << g17(d.w_proxy_sup) << "\n"
        << "decay exponent at end: " << g17(d.gamma_hat_final) << "\n";
    if (r.stability) append_stability_text(out, *r.stability);
    if (r.weights) append_weights_text(out, *r.weights);
    out << "files:\n";
    for (const auto& f : r.files) out << "  " << f << "\n";
    return out.str();
}

std::vector<std::string> emit_report(const RunReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::string js = (std::filesystem::path(dir) / "report.json").string();
    const std::string tx = (std::filesystem::path(dir) / "report.txt").string();
    write_text_file(js, report_to_json(report));
    write_text_file(tx, report_to_text(report));
    return {js, tx};
}

std::string stability_to_json(const CrossSection& cs, const StabilitySummary& s) {
    json j = stability_json(s);
    j["cross_section"] = cs.name;
    j["n"] = cs.n;
    return j.dump(2) + "\n";
}

std::string stability_to_text(const CrossSection& cs, const StabilitySummary& s) {
    std::ostringstream out;
    out << "cross-section: " << cs.name << " (n = " << cs.n << ")\n";
    append_stability_text(out, s);
    return out.str();
}

std::string weights_to_json(const WeightSummary& w) { return weights_json(w).dump(2) + "\n"; }

std::string weights_to_text(const WeightSummary& w) {
    std::ostringstream out;
    append_weights_text(out, w);
    return out.str();
}

std::string plot_script(const std::string& header) {
    std::string cols;
    std::istringstream in(header);
    std::string c;
    bool first = true;
    while (std::getline(in, c, ',')) {
        cols += (first ? "\"" : ", \"") + c + "\"";
        first = false;
    }
    std::string s;
    s += "import csv\n";
    s += "import os\n";
    s += "import sys\n\n";
    s += "import matplotlib\n";
    s += "matplotlib.use(\"Agg\")\n";
    s += "import matplotlib.pyplot as plt\n\n";
    s += "COLUMNS = [" + cols + "]\n";
    s += "HERE = os.path.dirname(os.path.abspath(__file__))\n\n\n";
    s += "def load(path):\n";
    s += "    with open(path, newline=\"\") as f:\n";
    s += "        rows = list(csv.DictReader(f))\n";
    s += "    return {c: [float(r[c]) for r in rows] for c in COLUMNS}\n\n\n";
    s += "def main():\n";
    s += "    data = load(os.path.join(HERE, \"series.csv\"))\n";
    s += "    panels = [c for c in (\"R_min\", \"gamma_hat\", \"sup_w_ric\") if c in COLUMNS]\n";
    s += "    fig, axes = plt.subplots(len(panels), 1, sharex=True, figsize=(6, 2.5 * len(panels)))\n";
    s += "    if len(panels) == 1:\n";
    s += "        axes = [axes]\n";
    s += "    for ax, c in zip(axes, panels):\n";
    s += "        ax.plot(data[\"t\"], data[c])\n";
    s += "        ax.set_ylabel(c)\n";
    s += "    axes[-1].set_xlabel(\"t\")\n";
    s += "    fig.tight_layout()\n";
    s += "    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, \"series.png\")\n";
    s += "    fig.savefig(out)\n\n\n";
    s += "if __name__ == \"__main__\":\n";
    s += "    main()\n";
    return s;
}

std::string emit_plot_script(const std::string& dir) {
    const std::string series = (std::filesystem::path(dir) / "series.csv").string();
    if (!std::filesystem::exists(series)) throw ConfigError("no series.csv in '" + dir + "'");
    std::istringstream in(read_text_file(series));
    std::string header;
    std::getline(in, header);
    if (header.empty()) throw ConfigError("empty series.csv in '" + dir + "'");
    const std::string path = (std::filesystem::path(dir) / "plot_series.py").string();
    write_text_file(path, plot_script(header));
    return path;
}

}  // namespace conicflow
