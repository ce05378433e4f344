#include "formdim/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "formdim/errors.hpp"

namespace formdim {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kBaseUnitSymbols[kNumBaseDims] = {"mol", "A", "m", "cd", "kg", "K", "s"};

std::vector<std::string> names_of(const std::vector<Quantity>& qs) {
    std::vector<std::string> names;
    names.reserve(qs.size());
    for (const Quantity& q : qs)
        names.push_back(q.name);
    return names;
}

} // namespace

std::string base_unit_str(const Dimension& d) {
    std::string out;
    for (int i = 0; i < kNumBaseDims; ++i) {
        if (d[i].is_zero())
            continue;
        if (!out.empty())
            out += ' ';
        out += kBaseUnitSymbols[i];
        if (d[i] != Rational(1)) {
            out += '^';
            out += d[i].is_integer() ? d[i].str() : "(" + d[i].str() + ")";
        }
    }
    return out.empty() ? "1" : out;
}

std::string format_sig4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

AnalysisResult analyze_scenario(const Scenario& s, const ReportOptions& options) {
    AnalysisResult r;
    r.matrix = dimensional_matrix(s.quantities);
    r.pi_groups = buckingham_pi(s.quantities);
    if (options.pi_only)
        return r;

    std::vector<std::pair<FactorizedMap, std::string>> factorized_groups;
    std::vector<const TermGroup*> selected;
    for (const TermGroup& g : s.groups) {
        if (options.only_group && g.name != *options.only_group)
            continue;
        selected.push_back(&g);
        factorized_groups.emplace_back(factorize_terms(g.terms, s.quantities, s.mapping),
                                       g.reference);
    }
    if (options.only_group && selected.empty())
        throw Error("scenario has no term group named '" + *options.only_group + "'");

    const std::vector<NormalizedMap> normalized = normalize_multi(factorized_groups, s.quantities);

    for (std::size_t i = 0; i < selected.size(); ++i) {
        GroupAnalysis ga;
        ga.name = selected[i]->name;
        ga.reference = selected[i]->reference;
        for (const auto& [name, term] : factorized_groups[i].first) {
            if (name == ga.reference) {
                ga.reference_factor = term.factor;
                ga.reference_value = term.factor_value;
            }
        }
        ga.normalized = normalized[i];
        r.groups.push_back(std::move(ga));
    }
    return r;
}

std::string report_text(const Scenario& s, const AnalysisResult& r, const ReportOptions& options) {
    const std::vector<std::string> names = names_of(s.quantities);
    std::string out;
    out += "Scenario: " + s.name + " (d = " + std::to_string(s.dimension) + ")\n\n";

    out += "Quantities\n";
    for (const Quantity& q : s.quantities) {
        out += "  " + q.name + " = " + format_sig4(q.value) + " " + q.unit_text + " = " +
               format_sig4(q.base_value) + " " + base_unit_str(q.dimension()) + "\n";
    }

    out += "\nDimension matrix (nonzero rows)\n ";
    for (const std::string& n : names)
        out += " " + n;
    out += "\n";
    for (int i = 0; i < kNumBaseDims; ++i) {
        bool nonzero = false;
        for (int j = 0; j < r.matrix.cols(); ++j)
            nonzero = nonzero || !r.matrix.at(i, j).is_zero();
        if (!nonzero)
            continue;
        out += "  " + base_dim_symbol(i);
        for (int j = 0; j < r.matrix.cols(); ++j)
            out += " " + r.matrix.at(i, j).str();
        out += "\n";
    }

    out += "\nDimensionless groups\n";
    for (std::size_t i = 0; i < r.pi_groups.size(); ++i) {
        out += "  pi_" + std::to_string(i + 1) + " = " +
               render_monomial(r.pi_groups[i].exponents, names) + " = " +
               format_sig4(r.pi_groups[i].value) + "\n";
    }

    if (options.pi_only)
        return out;

    for (const GroupAnalysis& g : r.groups) {
        out += "\nGroup '" + g.name + "' normalized by '" + g.reference + "'\n";
        out += "  reference factor: " + render_monomial(g.reference_factor.exponents, names) +
               " = " + format_sig4(g.reference_value) + " " +
               base_unit_str(monomial_dimension(g.reference_factor.exponents, s.quantities)) +
               "\n";
        for (const auto& [name, term] : g.normalized) {
            out += "  " + name + ": " +
                   render_monomial(term.coefficient_exponents.exponents, names) + " = " +
                   format_sig4(term.coefficient_value) + "\n";
        }
    }
    return out;
}

namespace {

ordered_json exponents_json(const std::vector<Rational>& exps) {
    ordered_json a = ordered_json::array();
    for (const Rational& e : exps)
        a.push_back(e.str());
    return a;
}

} // namespace

std::string report_json(const Scenario& s, const AnalysisResult& r, const ReportOptions& options) {
    const std::vector<std::string> names = names_of(s.quantities);
    ordered_json j;
    j["scenario"] = s.name;
    j["dimension"] = s.dimension;

    j["quantities"] = ordered_json::array();
    for (const Quantity& q : s.quantities) {
        ordered_json qj;
        qj["name"] = q.name;
        qj["value"] = q.value;
        qj["unit"] = q.unit_text;
        qj["base_value"] = q.base_value;
        qj["base_unit"] = base_unit_str(q.dimension());
        j["quantities"].push_back(std::move(qj));
    }

    ordered_json mj;
    mj["columns"] = names;
    mj["rows"] = ordered_json::array();
    for (int i = 0; i < kNumBaseDims; ++i) {
        bool nonzero = false;
        for (int col = 0; col < r.matrix.cols(); ++col)
            nonzero = nonzero || !r.matrix.at(i, col).is_zero();
        if (!nonzero)
            continue;
        ordered_json row;
        row["dimension"] = base_dim_symbol(i);
        ordered_json entries = ordered_json::array();
        for (int col = 0; col < r.matrix.cols(); ++col)
            entries.push_back(r.matrix.at(i, col).str());
        row["exponents"] = std::move(entries);
        mj["rows"].push_back(std::move(row));
    }
    j["dimension_matrix"] = std::move(mj);

    j["pi_groups"] = ordered_json::array();
    for (const PiGroup& g : r.pi_groups) {
        ordered_json gj;
        gj["expression"] = render_monomial(g.exponents, names);
        gj["exponents"] = exponents_json(g.exponents);
        gj["value"] = g.value;
        j["pi_groups"].push_back(std::move(gj));
    }

    if (!options.pi_only) {
        j["groups"] = ordered_json::array();
        for (const GroupAnalysis& g : r.groups) {
            ordered_json gj;
            gj["name"] = g.name;
            gj["reference_term"] = g.reference;
            ordered_json ref;
            ref["expression"] = render_monomial(g.reference_factor.exponents, names);
            ref["exponents"] = exponents_json(g.reference_factor.exponents);
            ref["value"] = g.reference_value;
            ref["base_unit"] =
                base_unit_str(monomial_dimension(g.reference_factor.exponents, s.quantities));
            gj["reference_factor"] = std::move(ref);
            gj["terms"] = ordered_json::array();
            for (const auto& [name, term] : g.normalized) {
                ordered_json tj;
                tj["name"] = name;
                tj["coefficient"] = render_monomial(term.coefficient_exponents.exponents, names);
                tj["exponents"] = exponents_json(term.coefficient_exponents.exponents);
                tj["value"] = term.coefficient_value;
                gj["terms"].push_back(std::move(tj));
            }
            j["groups"].push_back(std::move(gj));
        }
    }
    return j.dump(2) + "\n";
}

} // namespace formdim
