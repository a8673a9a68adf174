#pragma once

#include "conicflow/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conicflow {

/// Spectral data of an Einstein link (F, g_F) with Einstein constant n-1.
/// Spectra are ascending finite prefixes of distinct eigenvalues; every
/// eigenvalue strictly below `spectra_complete_below` is listed.
struct CrossSection {
    std::string name;
    int n = 0;
    Rational einstein_constant;
    /// Laplace-Beltrami on functions, first entry 0.
    std::vector<Rational> scalar_spectrum;
    /// Einstein operator on TT tensors.
    std::vector<Rational> tt_einstein_spectrum;
    /// Connection Laplacian on coclosed 1-forms.
    std::vector<Rational> coclosed_oneform_spectrum;
    Rational spectra_complete_below;

    bool operator==(const CrossSection&) const = default;
};

/// Unit round S^n with eigenvalue bands k = 0..kmax (scalar), 2..kmax (TT)
/// and 1..kmax (coclosed 1-forms).
CrossSection make_round_sphere(int n, int kmax = 4);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

/// Hard errors for structural problems, warnings for nonzero scalar
/// eigenvalues below n (impossible on an Einstein link with constant n-1).
ValidationReport validate(const CrossSection& cs);

/// Key-value text with keys name, n, scalar_spectrum, tt_einstein_spectrum,
/// oneform_spectrum, complete_below. Lists are comma separated "p/q" values.
CrossSection parse_cross_section(std::string_view text, std::string_view source_name = "<cross-section>");
std::string serialize_cross_section(const CrossSection& cs);
CrossSection load_cross_section(const std::string& path);

enum class SpaceKind { simple_lie_group, non_group_symmetric };

/// A row of the symmetric-space tables. `dim_listed` is the value as printed,
/// which for some group rows differs from the Lie-theoretic dimension.
struct TableRow {
    std::string family;
    std::string space;
    int dim_listed = 0;
    Rational Lambda;
    Rational Theta;
    bool sts_verdict = false;
    SpaceKind kind = SpaceKind::simple_lie_group;
    /// Parameter choice for family rows such as "p=2"; empty for fixed rows.
    std::string parameter;
};

/// All rows of both tables. Parametric rows are instantiated at the smallest
/// admissible parameter.
const std::vector<TableRow>& builtin_table();

/// Table order, with each family row instantiated for every admissible
/// parameter up to `max_param`.
std::vector<TableRow> expanded_table(int max_param);

/// First builtin row of `family` whose space contains `space_part`.
std::optional<TableRow> find_row(std::string_view family, std::string_view space_part = {});

/// Space text with the parameter choice appended, e.g. "SU(p+1) (p=2)".
std::string display_space(const TableRow& row);

/// CSV with header family,space,dim,Lambda,Theta,sts.
std::string table_to_csv(const std::vector<TableRow>& rows);

}  // namespace conicflow
