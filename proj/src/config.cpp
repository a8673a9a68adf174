#include "conicflow/config.hpp"

#include "conicflow/errors.hpp"
#include "conicflow/keyvalue.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

namespace conicflow {

namespace {

double parse_double(const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, out);
    if (r.ec != std::errc{} || r.ptr != end || !std::isfinite(out)) throw std::invalid_argument("expected a real number");
    return out;
}

int parse_int(const std::string& v) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, out);
    if (r.ec != std::errc{} || r.ptr != end) throw std::invalid_argument("expected an integer");
    return out;
}

ProfileKind parse_profile(const std::string& v) {
    if (v == "exact_cone") return ProfileKind::exact_cone;
    if (v == "shrinking_sphere") return ProfileKind::shrinking_sphere;
    if (v == "perturbed_cone") return ProfileKind::perturbed_cone;
    if (v == "warped_cone") return ProfileKind::warped_cone;
    if (v == "from_file") return ProfileKind::from_file;
    throw std::invalid_argument("unknown profile '" + v + "'");
}

BackgroundKind parse_background(const std::string& v) {
    if (v == "initial_metric") return BackgroundKind::initial_metric;
    if (v == "exact_cone") return BackgroundKind::exact_cone;
    throw std::invalid_argument("unknown background '" + v + "'");
}

BoundaryMode parse_boundary(const std::string& v) {
    if (v == "dirichlet") return BoundaryMode::dirichlet;
    if (v == "homothetic") return BoundaryMode::homothetic;
    if (v == "neumann") return BoundaryMode::neumann;
    throw std::invalid_argument("unknown boundary mode '" + v + "'");
}

using Setter = std::function<void(FlowConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"cross_section", [](FlowConfig& c, const std::string& v) { c.cross_section = v; }},
        {"n", [](FlowConfig& c, const std::string& v) { c.n = parse_int(v); }},
        {"grid.x_min", [](FlowConfig& c, const std::string& v) { c.x_min = parse_double(v); }},
        {"grid.x_max", [](FlowConfig& c, const std::string& v) { c.x_max = parse_double(v); }},
        {"grid.N", [](FlowConfig& c, const std::string& v) { c.N = parse_int(v); }},
        {"grid.p", [](FlowConfig& c, const std::string& v) { c.grading = parse_double(v); }},
        {"initial.profile", [](FlowConfig& c, const std::string& v) { c.profile = parse_profile(v); }},
        {"initial.amplitude", [](FlowConfig& c, const std::string& v) { c.amplitude = parse_double(v); }},
        {"initial.exponent", [](FlowConfig& c, const std::string& v) { c.exponent = parse_double(v); }},
        {"initial.file", [](FlowConfig& c, const std::string& v) { c.profile_file = v; }},
        {"background", [](FlowConfig& c, const std::string& v) { c.background = parse_background(v); }},
        {"boundary", [](FlowConfig& c, const std::string& v) { c.boundary = parse_boundary(v); }},
        {"t_end", [](FlowConfig& c, const std::string& v) { c.t_end = parse_double(v); }},
        {"cfl", [](FlowConfig& c, const std::string& v) { c.cfl = parse_double(v); }},
        {"dt", [](FlowConfig& c, const std::string& v) { c.dt = parse_double(v); }},
        {"checkpoint_interval", [](FlowConfig& c, const std::string& v) { c.checkpoint_interval = parse_double(v); }},
        {"stencil_order", [](FlowConfig& c, const std::string& v) { c.stencil_order = parse_int(v); }},
        {"series_every", [](FlowConfig& c, const std::string& v) { c.series_every = parse_int(v); }},
        {"store_every", [](FlowConfig& c, const std::string& v) { c.store_every = parse_int(v); }},
        {"output_dir", [](FlowConfig& c, const std::string& v) { c.output_dir = v; }},
        {"gamma_prime", [](FlowConfig& c, const std::string& v) { c.gamma_prime = parse_double(v); }},
        {"gamma_bar", [](FlowConfig& c, const std::string& v) { c.gamma_bar = parse_double(v); }},
        {"weights.u0", [](FlowConfig& c, const std::string& v) { c.u0 = parse_rational(v); }},
        {"weights.gamma", [](FlowConfig& c, const std::string& v) { c.weights_gamma = parse_double(v); }},
        {"variant", [](FlowConfig& c, const std::string& v) { c.variant = parse_mu_variant(v); }},
    };
    return table;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ParsedConfig parse_config_text(std::string_view text, std::string_view source_name) {
    ParsedConfig out;
    const auto& table = setters();
    for (const auto& e : parse_key_values(text, source_name)) {
        const std::string where = std::string(source_name) + ":" + std::to_string(e.line) + ": ";
        const auto it = table.find(e.key);
        if (it == table.end()) throw ConfigError(where + "unknown key '" + e.key + "'");
        if (e.value.empty()) throw ConfigError(where + "empty value for '" + e.key + "'");
        try {
            it->second(out.config, e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(where + e.key + ": " + err.what());
        } catch (const std::invalid_argument& err) {
            throw ConfigError(where + e.key + ": " + err.what());
        }
    }
    out.config.source_text = std::string(text);
    validate(out.config);
    if (out.config.cross_section != "sphere") {
        out.cross_section = load_cross_section(out.config.cross_section);
        if (out.cross_section->n != out.config.n)
            throw ConfigError(std::string(source_name) + ": cross-section has n = " + std::to_string(out.cross_section->n) +
                              " but n = " + std::to_string(out.config.n));
    }
    return out;
}

ParsedConfig parse_config(const std::string& path) { return parse_config_text(read_text_file(path), path); }

std::string config_to_text(const FlowConfig& c) {
    std::string s;
    auto put = [&s](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    put("cross_section", c.cross_section);
    put("n", std::to_string(c.n));
    put("grid.x_min", g17(c.x_min));
    put("grid.x_max", g17(c.x_max));
    put("grid.N", std::to_string(c.N));
    put("grid.p", g17(c.grading));
    put("initial.profile", to_string(c.profile));
    put("initial.amplitude", g17(c.amplitude));
    put("initial.exponent", g17(c.exponent));
    if (!c.profile_file.empty()) put("initial.file", c.profile_file);
    put("background", to_string(c.background));
    put("boundary", to_string(c.boundary));
    put("t_end", g17(c.t_end));
    put("cfl", g17(c.cfl));
    if (c.dt) put("dt", g17(*c.dt));
    put("checkpoint_interval", g17(c.checkpoint_interval));
    put("stencil_order", std::to_string(c.stencil_order));
    put("series_every", std::to_string(c.series_every));
    put("store_every", std::to_string(c.store_every));
    if (!c.output_dir.empty()) put("output_dir", c.output_dir);
    put("gamma_prime", g17(c.gamma_prime));
    put("gamma_bar", g17(c.gamma_bar));
    if (c.u0) put("weights.u0", to_string(*c.u0));
    put("weights.gamma", g17(c.weights_gamma));
    put("variant", to_string(c.variant));
    return s;
}

}  // namespace conicflow
