#include "conicflow/cross_section.hpp"

#include "conicflow/errors.hpp"
#include "conicflow/keyvalue.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace conicflow {

CrossSection make_round_sphere(int n, int kmax) {
    if (n < 2) throw std::invalid_argument("round sphere needs n >= 2, got " + std::to_string(n));
    if (kmax < 2) throw std::invalid_argument("round sphere needs kmax >= 2");
    CrossSection cs;
    cs.name = "round S^" + std::to_string(n);
    cs.n = n;
    cs.einstein_constant = Rational(n - 1);
    for (int k = 0; k <= kmax; ++k) cs.scalar_spectrum.emplace_back(k * (k + n - 1));
    // S^2 carries no nonzero TT tensors.
    if (n > 2)
        for (int k = 2; k <= kmax; ++k) cs.tt_einstein_spectrum.emplace_back(k * (k + n - 1));
    for (int k = 1; k <= kmax; ++k) cs.coclosed_oneform_spectrum.emplace_back(k * (k + n - 1) - 1);
    // Smallest unlisted eigenvalue across the three families.
    cs.spectra_complete_below = Rational((kmax + 1) * (kmax + n) - 1);
    return cs;
}

namespace {

void check_ascending(const std::vector<Rational>& values, const std::string& label, ValidationReport& report) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1]) {
            report.errors.push_back(label + " not ascending at index " + std::to_string(i) + " (" +
                                    to_string(values[i - 1]) + " then " + to_string(values[i]) + ")");
            return;
        }
    }
}

void check_nonnegative(const std::vector<Rational>& values, const std::string& label, ValidationReport& report) {
    for (const auto& v : values)
        if (v < 0) report.errors.push_back(label + " has negative entry " + to_string(v));
}

}  // namespace

ValidationReport validate(const CrossSection& cs) {
    ValidationReport report;
    if (cs.n < 2) report.errors.push_back("n must be at least 2, got " + std::to_string(cs.n));
    if (cs.einstein_constant != Rational(cs.n - 1))
        report.errors.push_back("einstein_constant must be n-1 = " + std::to_string(cs.n - 1) + ", got " +
                                to_string(cs.einstein_constant));
    if (cs.scalar_spectrum.empty()) {
        report.errors.push_back("scalar_spectrum is empty");
    } else if (cs.scalar_spectrum.front() != 0) {
        report.errors.push_back("scalar_spectrum must start with 0");
    }
    check_ascending(cs.scalar_spectrum, "scalar_spectrum", report);
    check_ascending(cs.tt_einstein_spectrum, "tt_einstein_spectrum", report);
    check_ascending(cs.coclosed_oneform_spectrum, "oneform_spectrum", report);
    check_nonnegative(cs.scalar_spectrum, "scalar_spectrum", report);
    check_nonnegative(cs.coclosed_oneform_spectrum, "oneform_spectrum", report);
    if (cs.spectra_complete_below <= 0) report.errors.push_back("complete_below must be positive");

    for (const auto& v : cs.scalar_spectrum) {
        if (v > 0 && v < cs.n)
            report.warnings.push_back("scalar eigenvalue " + to_string(v) + " lies below n = " + std::to_string(cs.n) +
                                      " (violates the Einstein eigenvalue bound)");
    }
    return report;
}

CrossSection parse_cross_section(std::string_view text, std::string_view source_name) {
    const auto entries = parse_key_values(text, source_name);
    CrossSection cs;
    bool have_n = false;
    bool have_scalar = false;
    bool have_complete = false;
    for (const auto& e : entries) {
        const std::string where = std::string(source_name) + ":" + std::to_string(e.line) + ": ";
        try {
            if (e.key == "name") {
                cs.name = e.value;
            } else if (e.key == "n") {
                std::size_t used = 0;
                cs.n = std::stoi(e.value, &used);
                if (used != e.value.size()) throw std::invalid_argument("trailing characters");
                have_n = true;
            } else if (e.key == "scalar_spectrum") {
                cs.scalar_spectrum = parse_rational_list(e.value);
                have_scalar = true;
            } else if (e.key == "tt_einstein_spectrum") {
                cs.tt_einstein_spectrum = parse_rational_list(e.value);
            } else if (e.key == "oneform_spectrum") {
                cs.coclosed_oneform_spectrum = parse_rational_list(e.value);
            } else if (e.key == "complete_below") {
                cs.spectra_complete_below = parse_rational(e.value);
                have_complete = true;
            } else {
                throw ConfigError(where + "unknown key '" + e.key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ConfigError(where + "bad value for '" + e.key + "': " + ex.what());
        }
    }
    if (!have_n) throw ConfigError(std::string(source_name) + ": missing key 'n'");
    if (!have_scalar) throw ConfigError(std::string(source_name) + ": missing key 'scalar_spectrum'");
    if (!have_complete) throw ConfigError(std::string(source_name) + ": missing key 'complete_below'");
    cs.einstein_constant = Rational(cs.n - 1);
    const auto report = validate(cs);
    if (!report.ok()) throw ConfigError(std::string(source_name) + ": " + report.errors.front());
    return cs;
}

std::string serialize_cross_section(const CrossSection& cs) {
    auto list = [](const std::vector<Rational>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
        return out;
    };
    std::ostringstream out;
    out << "name = " << cs.name << "\n";
    out << "n = " << cs.n << "\n";
    out << "scalar_spectrum = " << list(cs.scalar_spectrum) << "\n";
    out << "tt_einstein_spectrum = " << list(cs.tt_einstein_spectrum) << "\n";
    out << "oneform_spectrum = " << list(cs.coclosed_oneform_spectrum) << "\n";
    out << "complete_below = " << to_string(cs.spectra_complete_below) << "\n";
    return out.str();
}

CrossSection load_cross_section(const std::string& path) { return parse_cross_section(read_text_file(path), path); }

namespace {

using R = Rational;

struct Values {
    int dim;
    Rational Lambda;
    Rational Theta;
};

/// Row description. Fixed rows have no parameters; family rows map (p, q) to
/// printed values, with `admissible` restricting the parameter range.
struct RowSpec {
    std::string family;
    std::string space;
    SpaceKind kind;
    bool sts;
    int parameters;  // 0, 1 (p) or 2 (p, q)
    std::function<bool(int, int)> admissible;
    std::function<Values(int, int)> values;
};

R frac(int num, int den) { return R(num) / R(den); }

RowSpec fixed(std::string family, std::string space, SpaceKind kind, int dim, R lambda, R theta, bool sts = false) {
    return RowSpec{std::move(family), std::move(space), kind, sts, 0, [](int, int) { return true; },
                   [dim, lambda, theta](int, int) { return Values{dim, lambda, theta}; }};
}

RowSpec family_p(std::string family, std::string space, SpaceKind kind, std::function<bool(int)> admissible,
                 std::function<Values(int)> values) {
    return RowSpec{std::move(family),
                   std::move(space),
                   kind,
                   false,
                   1,
                   [admissible](int p, int) { return admissible(p); },
                   [values](int p, int) { return values(p); }};
}

RowSpec family_pq(std::string family, std::string space, SpaceKind kind, std::function<bool(int, int)> admissible,
                  std::function<Values(int, int)> values) {
    return RowSpec{std::move(family), std::move(space), kind, false, 2, std::move(admissible), std::move(values)};
}

const std::vector<RowSpec>& row_specs() {
    constexpr auto G = SpaceKind::simple_lie_group;
    constexpr auto S = SpaceKind::non_group_symmetric;
    static const std::vector<RowSpec> specs = {
        family_p("A_p", "SU(p+1)", G, [](int p) { return p >= 2; },
                 [](int p) {
                     const R v = R(2 * p * (p + 2)) / R((p + 1) * (p + 1));
                     return Values{p * p - 1, v, v};
                 }),
        fixed("B_n", "Spin(5)", G, 10, frac(5, 3), frac(4, 3)),
        fixed("B_n", "Spin(7)", G, 21, frac(21, 10), frac(12, 5)),
        family_p("B_n", "Spin(2p+1)", G, [](int p) { return p >= 4; },
                 [](int p) {
                     const R v = frac(4 * p, 2 * p - 1);
                     return Values{2 * p * (p + 1), v, v};
                 }),
        family_p("C_p", "Sp(p)", G, [](int p) { return p >= 3; },
                 [](int p) { return Values{p * (2 * p + 1), frac(2 * p + 1, p + 1), frac(4 * p - 1, 2 * (p + 1))}; }),
        family_p("D_p", "Spin(2p)", G, [](int p) { return p >= 3; },
                 [](int p) {
                     const R v = frac(2 * p - 1, p - 1);
                     return Values{p * (2 * p + 1), v, v};
                 }),
        fixed("E_6", "E6", G, 156, frac(26, 9), frac(17, 6)),
        fixed("E_7", "E7", G, 266, frac(19, 6), R(3)),
        fixed("E_8", "E8", G, 496, R(4), frac(47, 15), true),
        fixed("F_4", "F4", G, 52, frac(8, 3), frac(8, 3)),
        fixed("G_2", "G2", G, 14, R(2), R(2)),

        family_p("A I", "SU(p)/SO(p)", S, [](int p) { return p >= 3 && p <= 5; },
                 [](int p) { return Values{(p - 1) * (p + 2) / 2, R(2 * (p - 1) * (p + 2)) / R(p * p), R(2)}; }),
        family_p("A I", "SU(p)/SO(p)", S, [](int p) { return p >= 6; },
                 [](int p) { return Values{(p - 1) * (p + 2) / 2, R(2 * (p - 1) * (p + 2)) / R(p * p), R(2)}; }),
        fixed("A II", "SU(4)/Sp(2)=S^5", S, 5, frac(5, 4), R(3)),
        family_p("A II", "SU(2p)/Sp(p)", S, [](int p) { return p >= 3; },
                 [](int p) { return Values{2 * p * p - p - 1, R((2 * p + 1) * (p - 1)) / R(p * p), R(2)}; }),
        family_p("A III", "U(p+1)/(U(p)xU(1))=CP^p", S, [](int p) { return p >= 2; },
                 [](int p) { return Values{2 * p, R(2), R(2)}; }),
        family_pq("A III", "U(p+q)/(U(q)xU(p))", S, [](int p, int q) { return q >= p && p >= 2; },
                  [](int p, int q) { return Values{2 * p * q, R(2), R(2)}; }),
        fixed("B I", "SO(5)/(SO(3)xSO(2))", S, 6, R(2), frac(4, 3)),
        family_p("B I", "SO(2p+3)/(SO(2p+1)xSO(2))", S, [](int p) { return p >= 2; },
                 [](int p) { return Values{4 * p + 2, R(2), frac(8, 2 * p + 1)}; }),
        fixed("B I", "SO(7)/(SO(4)xSO(3))", S, 12, frac(12, 5), frac(8, 5)),
        family_p("B I", "SO(2p+3)/(SO(3)xSO(2p))", S, [](int p) { return p >= 3; },
                 [](int p) { return Values{6 * p, frac(4 * p + 6, 2 * p + 1), frac(8, 2 * p + 1)}; }),
        family_pq("B I", "SO(2q+2p+1)/(SO(2q+1)xSO(2p))", S, [](int p, int q) { return p >= 2 && q >= 2; },
                  [](int p, int q) {
                      return Values{2 * p * (2 * q + 1), frac(4 * q + 4 * p + 2, 2 * q + 2 * p - 1),
                                    frac(8, 2 * p + 2 * q - 1)};
                  }),
        family_p("B II", "SO(2p+1)/SO(2p)=S^2p", S, [](int p) { return p >= 1; },
                 [](int p) { return Values{2 * p, frac(2 * p, 2 * p - 1), frac(4 * p + 2, 2 * p - 1)}; }),
        family_p("C I", "Sp(p)/U(p)", S, [](int p) { return p >= 3; },
                 [](int p) { return Values{p * (p + 1), R(2), frac(2 * p, p + 1)}; }),
        fixed("C II", "Sp(2)/(Sp(1)xSp(1))=S^4", S, 4, frac(4, 3), frac(10, 3)),
        family_p("C II", "Sp(p+1)/(Sp(p)xSp(1))=HP^p", S, [](int p) { return p >= 2; },
                 [](int p) {
                     const R v = frac(2 * (p + 1), p + 2);
                     return Values{4 * p, v, v};
                 }),
        family_pq("C II", "Sp(p+q)/(Sp(q)xSp(p))", S, [](int p, int q) { return q >= p && p >= 2; },
                  [](int p, int q) {
                      const R v = frac(2 * (p + q), p + q + 1);
                      return Values{4 * p * q, v, v};
                  }),
        fixed("D I", "SO(8)/(SO(5)xSO(3))", S, 15, frac(5, 2), frac(5, 2)),
        family_p("D I", "SO(2p+2)/(SO(2p)xSO(2))", S, [](int p) { return p >= 3; },
                 [](int p) { return Values{4 * p, R(2), R(2)}; }),
        family_p("D I", "SO(2p)/(SO(p)xSO(p))", S, [](int p) { return p >= 4; },
                 [](int p) {
                     const R v = frac(2 * p, p - 1);
                     return Values{p * p, v, v};
                 }),
        family_p("D I", "SO(2p+2)/(SO(p+2)xSO(p))", S, [](int p) { return p >= 4; },
                 [](int p) {
                     const R v = frac(2 * p + 2, p);
                     return Values{p * (p + 2), v, v};
                 }),
        family_pq("D I", "SO(2p)/(SO(2p-q)xSO(q))", S, [](int p, int q) { return q >= 3 && p - 2 >= q; },
                  [](int p, int q) {
                      const R v = frac(2 * p, p - 1);
                      return Values{(2 * p - q) * q, v, v};
                  }),
        family_p("D II", "SO(2p+2)/SO(2p+1)=S^(2p+1)", S, [](int p) { return p >= 3; },
                 [](int p) { return Values{2 * p + 1, frac(2 * p + 1, 2 * p), frac(2 * (p + 1), p)}; }),
        family_p("D III", "SO(2p)/U(p)", S, [](int p) { return p >= 5; },
                 [](int p) { return Values{p * (p - 1), R(2), R(2)}; }),
        fixed("E I", "E6/[Sp(4)/{+-I}]", S, 42, frac(28, 9), R(3)),
        fixed("E II", "E6/SU(2).SU(6)", S, 40, R(3), R(3)),
        fixed("E III", "E6/SO(10).SO(2)", S, 32, R(2), R(2)),
        fixed("E IV", "E6/F4", S, 26, frac(13, 9), frac(13, 9)),
        fixed("E V", "E7/[SU(8)/{+-I}]", S, 70, frac(10, 3), frac(28, 9), true),
        fixed("E VI", "E7/SO(12).SU(2)", S, 64, frac(28, 9), frac(28, 9)),
        fixed("E VII", "E7/E6.SO(2)", S, 54, R(2), R(2)),
        fixed("E VIII", "E8/SO(16)", S, 128, frac(62, 15), frac(16, 5), true),
        fixed("E IX", "E8/E7.SU(2)", S, 112, frac(16, 5), frac(16, 5), true),
        fixed("F I", "F4/Sp(3).SU(2)", S, 28, frac(26, 9), frac(26, 9)),
        fixed("F II", "F4/Spin(9)", S, 16, frac(4, 3), frac(4, 3)),
        fixed("G", "G2/SO(4)", S, 8, frac(7, 3), frac(7, 3)),
    };
    return specs;
}

TableRow make_row(const RowSpec& spec, int p, int q) {
    const Values v = spec.values(p, q);
    TableRow row;
    row.family = spec.family;
    row.space = spec.space;
    row.dim_listed = v.dim;
    row.Lambda = v.Lambda;
    row.Theta = v.Theta;
    row.sts_verdict = spec.sts;
    row.kind = spec.kind;
    if (spec.parameters == 1) row.parameter = "p=" + std::to_string(p);
    if (spec.parameters == 2) row.parameter = "p=" + std::to_string(p) + " q=" + std::to_string(q);
    return row;
}

/// Parameters in ascending order (q outer for two-parameter rows) that satisfy
/// the admissibility predicate, up to `max_param`.
std::vector<std::pair<int, int>> parameter_choices(const RowSpec& spec, int max_param) {
    std::vector<std::pair<int, int>> out;
    if (spec.parameters == 0) {
        out.emplace_back(0, 0);
    } else if (spec.parameters == 1) {
        for (int p = 1; p <= max_param; ++p)
            if (spec.admissible(p, 0)) out.emplace_back(p, 0);
    } else {
        for (int s = 2; s <= 2 * max_param; ++s)
            for (int p = 1; p <= max_param; ++p) {
                const int q = s - p;
                if (q >= 1 && q <= max_param && spec.admissible(p, q)) out.emplace_back(p, q);
            }
    }
    return out;
}

}  // namespace

const std::vector<TableRow>& builtin_table() {
    static const std::vector<TableRow> rows = [] {
        std::vector<TableRow> out;
        for (const auto& spec : row_specs()) {
            const auto choices = parameter_choices(spec, 64);
            if (choices.empty()) throw std::logic_error("table row without admissible parameter: " + spec.space);
            out.push_back(make_row(spec, choices.front().first, choices.front().second));
        }
        return out;
    }();
    return rows;
}

std::vector<TableRow> expanded_table(int max_param) {
    std::vector<TableRow> out;
    for (const auto& spec : row_specs())
        for (const auto& [p, q] : parameter_choices(spec, max_param)) out.push_back(make_row(spec, p, q));
    return out;
}

std::optional<TableRow> find_row(std::string_view family, std::string_view space_part) {
    for (const auto& row : builtin_table())
        if (row.family == family && row.space.find(space_part) != std::string::npos) return row;
    return std::nullopt;
}

std::string display_space(const TableRow& row) {
    if (row.parameter.empty()) return row.space;
    return row.space + " (" + row.parameter + ")";
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << "family,space,dim,Lambda,Theta,sts\n";
    for (const auto& row : rows)
        out << row.family << ',' << display_space(row) << ',' << row.dim_listed << ',' << to_string(row.Lambda) << ','
            << to_string(row.Theta) << ',' << (row.sts_verdict ? "yes" : "no") << '\n';
    return out.str();
}

}  // namespace conicflow
