#pragma once

#include <optional>
#include <string>

#include "formdim/scenarios.hpp"

namespace formdim {

/// Analysis of one term group: the reference factor and the normalized
/// coefficients.
struct GroupAnalysis {
    std::string name;
    std::string reference;
    FactorExponents reference_factor;
    double reference_value = 0.0;
    NormalizedMap normalized;
};

/// Full analysis: dimensional matrix, dimensionless groups and the per-group
/// normalized terms.
struct AnalysisResult {
    DimensionalMatrix matrix;
    std::vector<PiGroup> pi_groups;
    std::vector<GroupAnalysis> groups;
};

struct ReportOptions {
    bool pi_only = false;
    std::optional<std::string> only_group;
};

/// Run dimensional analysis and the transform/factorize/normalize pipeline
/// on every term group (or the selected one). Factorization and
/// normalization errors propagate to the caller.
AnalysisResult analyze_scenario(const Scenario& s, const ReportOptions& options = {});

/// Plain-text report: quantity table, nonzero rows of the dimension matrix,
/// dimensionless groups, and per-group reference factor plus normalized
/// terms. Values print with 4 significant digits.
std::string report_text(const Scenario& s, const AnalysisResult& r, const ReportOptions& options = {});

/// JSON report with full binary64 values; the byte-stable golden-test medium.
std::string report_json(const Scenario& s, const AnalysisResult& r, const ReportOptions& options = {});

/// Coherent base-unit rendering of a dimension, e.g. "kg m^-1 s^-2".
std::string base_unit_str(const Dimension& d);

/// Value with 4 significant digits, as printed by the text report.
std::string format_sig4(double v);

} // namespace formdim
