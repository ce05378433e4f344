#include "formdim/scenario_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "formdim/errors.hpp"
#include "formdim/expr_parser.hpp"

namespace formdim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

struct Line {
    int number;
    std::string text;
};

struct Section {
    std::string header;
    int header_line;
    std::vector<Line> lines;
};

std::vector<Section> split_sections(const std::string& content) {
    std::vector<Section> sections;
    std::istringstream in(content);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("malformed section header '" + line + "'", number, 1);
            sections.push_back(Section{line.substr(1, line.size() - 2), number, {}});
            continue;
        }
        if (sections.empty())
            throw ParseError("content before the first section header", number, 1);
        sections.back().lines.push_back(Line{number, line});
    }
    return sections;
}

std::pair<std::string, std::string> split_assignment(const Line& line) {
    const std::size_t eq = line.text.find('=');
    if (eq == std::string::npos)
        throw ParseError("expected 'name = value'", line.number, 1);
    const std::string key = trim(line.text.substr(0, eq));
    const std::string value = trim(line.text.substr(eq + 1));
    if (key.empty() || value.empty())
        throw ParseError("expected 'name = value'", line.number, 1);
    return {key, value};
}

double parse_value_token(const std::string& token, int line) {
    const std::size_t slash = token.find('/');
    if (slash != std::string::npos) {
        const std::string num = token.substr(0, slash);
        const std::string den = token.substr(slash + 1);
        char* end = nullptr;
        const double n = std::strtod(num.c_str(), &end);
        if (end != num.c_str() + num.size())
            throw ParseError("malformed value '" + token + "'", line, 1);
        const double d = std::strtod(den.c_str(), &end);
        if (end != den.c_str() + den.size() || d == 0.0)
            throw ParseError("malformed value '" + token + "'", line, 1);
        return n / d;
    }
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        throw ParseError("malformed value '" + token + "'", line, 1);
    return v;
}

} // namespace

Scenario parse_scenario_text(const std::string& content, const std::string& default_name) {
    const std::vector<Section> sections = split_sections(content);

    Scenario s;
    s.name = default_name;

    // dimension first: field shapes depend on it
    int dimension = 0;
    for (const Section& sec : sections) {
        if (sec.header != "dimension")
            continue;
        for (const Line& line : sec.lines) {
            auto [key, value] = split_assignment(line);
            if (key != "d")
                throw ParseError("expected 'd = 1|2|3'", line.number, 1);
            dimension = static_cast<int>(parse_value_token(value, line.number));
            if (dimension < 1 || dimension > 3)
                throw ParseError("topological dimension must be 1, 2 or 3", line.number, 1);
        }
    }
    if (dimension == 0)
        throw ParseError("missing [dimension] section", 1, 1);
    s.dimension = dimension;

    for (const Section& sec : sections) {
        if (sec.header != "scenario")
            continue;
        for (const Line& line : sec.lines) {
            auto [key, value] = split_assignment(line);
            if (key == "name")
                s.name = value;
            else
                throw ParseError("unknown scenario attribute '" + key + "'", line.number, 1);
        }
    }

    for (const Section& sec : sections) {
        if (sec.header != "quantities")
            continue;
        for (const Line& line : sec.lines) {
            auto [key, value] = split_assignment(line);
            const std::size_t space = value.find_first_of(" \t");
            if (space == std::string::npos)
                throw ParseError("expected '<value> <unit-expr>'", line.number, 1);
            const double v = parse_value_token(value.substr(0, space), line.number);
            const std::string unit_text = trim(value.substr(space + 1));
            try {
                s.quantities.push_back(make_quantity(key, v, unit_text));
            } catch (const UnitError& e) {
                throw ParseError(e.what(), line.number, 1);
            }
        }
    }

    for (const Section& sec : sections) {
        if (sec.header != "fields")
            continue;
        for (const Line& line : sec.lines) {
            const std::size_t colon = line.text.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected '<name>: scalar|vector|matrix'", line.number, 1);
            const std::string name = trim(line.text.substr(0, colon));
            const std::string kind = trim(line.text.substr(colon + 1));
            Shape shape;
            if (kind == "scalar")
                shape = Shape::scalar();
            else if (kind == "vector")
                shape = Shape::vector(dimension);
            else if (kind == "matrix")
                shape = Shape::matrix(dimension);
            else
                throw ParseError("unknown field shape '" + kind + "'", line.number, 1);
            s.fields.push_back(FieldDecl{name, shape});
        }
    }

    SymbolTable syms;
    syms.dimension = dimension;
    for (const Quantity& q : s.quantities)
        syms.quantities.emplace(q.name, q);
    for (const FieldDecl& f : s.fields)
        syms.fields.emplace(f.name, f.shape);

    // the mapping needs a designated length quantity when present
    std::string length_quantity;
    for (const Quantity& q : s.quantities)
        if (q.name == "l_ref")
            length_quantity = "l_ref";
    s.mapping = Mapping(s.quantities, length_quantity, dimension);

    for (const Section& sec : sections) {
        if (sec.header != "mapping")
            continue;
        for (const Line& line : sec.lines) {
            auto [key, value] = split_assignment(line);
            if (syms.fields.find(key) == syms.fields.end())
                throw ParseError("undeclared field '" + key + "' in mapping", line.number, 1);
            const std::size_t star = value.find('*');
            if (star == std::string::npos) {
                const std::string target = trim(value);
                if (syms.fields.find(target) == syms.fields.end())
                    throw ParseError("undeclared field '" + target + "' in mapping", line.number,
                                     1);
                s.mapping.map_identity(key, field(target, syms.fields.at(target)));
                continue;
            }
            const std::string qname = trim(value.substr(0, star));
            const std::string target = trim(value.substr(star + 1));
            if (syms.quantities.find(qname) == syms.quantities.end())
                throw ParseError("undeclared quantity '" + qname + "' in mapping", line.number, 1);
            if (syms.fields.find(target) != syms.fields.end()) {
                s.mapping.map_terminal(key, qname, field(target, syms.fields.at(target)));
            } else if (!target.empty() &&
                       (std::isdigit(static_cast<unsigned char>(target.front())) ||
                        target.front() == '-' || target.front() == '.')) {
                const double v = parse_value_token(target, line.number);
                s.mapping.map_terminal(key, qname, constant(v));
            } else {
                throw ParseError("undeclared field '" + target + "' in mapping", line.number, 1);
            }
        }
    }

    for (const Section& sec : sections) {
        if (sec.header.rfind("terms.", 0) != 0)
            continue;
        TermGroup group;
        group.name = sec.header.substr(6);
        for (const Line& line : sec.lines) {
            auto [key, value] = split_assignment(line);
            if (key == "reference") {
                group.reference = value;
                continue;
            }
            ExprPtr e = parse_expression(value, syms, line.number);
            if (count_measures(e) != 1)
                throw ParseError("term '" + key + "' must contain exactly one measure",
                                 line.number, 1);
            group.terms.emplace_back(key, std::move(e));
        }
        if (group.reference.empty())
            throw ParseError("section [terms." + group.name + "] has no reference term",
                             sec.header_line, 1);
        bool found = false;
        for (const auto& [name, term] : group.terms)
            found = found || name == group.reference;
        if (!found)
            throw ParseError("reference term '" + group.reference + "' is not in [terms." +
                                 group.name + "]",
                             sec.header_line, 1);
        s.groups.push_back(std::move(group));
    }

    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();

    std::string stem = path;
    const std::size_t slash = stem.find_last_of('/');
    if (slash != std::string::npos)
        stem = stem.substr(slash + 1);
    const std::size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos)
        stem = stem.substr(0, dot);

    return parse_scenario_text(buffer.str(), stem);
}

std::string serialize_scenario(const Scenario& s) {
    std::string out;
    out += "[scenario]\nname = " + s.name + "\n\n";

    out += "[quantities]\n";
    for (const Quantity& q : s.quantities)
        out += q.name + " = " + format_double(q.value) + " " + q.unit_text + "\n";
    out += "\n[dimension]\nd = " + std::to_string(s.dimension) + "\n";

    out += "\n[fields]\n";
    for (const FieldDecl& f : s.fields) {
        const char* kind = f.shape.rank == 0 ? "scalar" : (f.shape.rank == 1 ? "vector" : "matrix");
        out += f.name + ": " + kind + "\n";
    }

    out += "\n[mapping]\n";
    for (const Mapping::Entry& e : s.mapping.entries()) {
        out += e.terminal + " = ";
        if (e.monomial.is_zero()) {
            out += render(e.replacement);
        } else {
            // single-quantity monomials only, matching the grammar
            std::string qname;
            for (std::size_t i = 0; i < e.monomial.exponents.size(); ++i) {
                if (e.monomial.exponents[i].is_zero())
                    continue;
                if (!qname.empty() || e.monomial.exponents[i] != Rational(1))
                    throw Error("mapping entry for '" + e.terminal +
                                "' is not expressible in the scenario format");
                qname = s.mapping.quantities()[i].name;
            }
            out += qname + " * " + render(e.replacement);
        }
        out += "\n";
    }

    for (const TermGroup& g : s.groups) {
        out += "\n[terms." + g.name + "]\n";
        for (const auto& [name, term] : g.terms)
            out += name + " = " + render(term) + "\n";
        out += "reference = " + g.reference + "\n";
    }
    return out;
}

} // namespace formdim
