#include "formdim/units.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace formdim {

namespace {

struct Prefix {
    const char* symbol;
    double scale;
};

// The 24 standard SI prefixes. "u" is accepted alongside the micro sign.
const Prefix kPrefixes[] = {
    {"Q", 1e30},  {"R", 1e27},  {"Y", 1e24},  {"Z", 1e21},  {"E", 1e18},  {"P", 1e15},
    {"T", 1e12},  {"G", 1e9},   {"M", 1e6},   {"k", 1e3},   {"h", 1e2},   {"da", 1e1},
    {"d", 1e-1},  {"c", 1e-2},  {"m", 1e-3},  {"u", 1e-6},  {"\xc2\xb5", 1e-6},
    {"n", 1e-9},  {"p", 1e-12}, {"f", 1e-15}, {"a", 1e-18}, {"z", 1e-21}, {"y", 1e-24},
    {"r", 1e-27}, {"q", 1e-30},
};

Dimension dims(int n, int i, int l, int j, int m, int th, int t) {
    Dimension d;
    d[0] = Rational(n);
    d[1] = Rational(i);
    d[2] = Rational(l);
    d[3] = Rational(j);
    d[4] = Rational(m);
    d[5] = Rational(th);
    d[6] = Rational(t);
    return d;
}

} // namespace

UnitRegistry::UnitRegistry() {
    auto add = [this](const std::string& sym, const Dimension& d, double scale,
                      bool prefixable = true) {
        entries_.push_back(Entry{sym, Unit{d, scale}, prefixable});
    };

    // SI base units
    add("mol", dims(1, 0, 0, 0, 0, 0, 0), 1.0);
    add("A", dims(0, 1, 0, 0, 0, 0, 0), 1.0);
    add("m", dims(0, 0, 1, 0, 0, 0, 0), 1.0);
    add("cd", dims(0, 0, 0, 1, 0, 0, 0), 1.0);
    add("kg", dims(0, 0, 0, 0, 1, 0, 0), 1.0, /*prefixable=*/false);
    add("K", dims(0, 0, 0, 0, 0, 1, 0), 1.0);
    add("s", dims(0, 0, 0, 0, 0, 0, 1), 1.0);

    // derived units
    add("N", dims(0, 0, 1, 0, 1, 0, -2), 1.0);
    add("J", dims(0, 0, 2, 0, 1, 0, -2), 1.0);
    add("W", dims(0, 0, 2, 0, 1, 0, -3), 1.0);
    add("Pa", dims(0, 0, -1, 0, 1, 0, -2), 1.0);
    add("Hz", dims(0, 0, 0, 0, 0, 0, -1), 1.0);
    add("C", dims(0, 1, 0, 0, 0, 0, 1), 1.0);
    add("V", dims(0, -1, 2, 0, 1, 0, -3), 1.0);
    add("ohm", dims(0, -2, 2, 0, 1, 0, -3), 1.0);
    add("F", dims(0, 2, -2, 0, -1, 0, 4), 1.0);

    // the gram carries its scale relative to the base kilogram
    add("g", dims(0, 0, 0, 0, 1, 0, 0), 1e-3);

    add("min", dims(0, 0, 0, 0, 0, 0, 1), 60.0);
    add("h", dims(0, 0, 0, 0, 0, 0, 1), 3600.0);
    add("angstrom", dims(0, 0, 1, 0, 0, 0, 0), 1e-10);
}

const UnitRegistry& UnitRegistry::instance() {
    static const UnitRegistry registry;
    return registry;
}

const UnitRegistry::Entry* UnitRegistry::find(const std::string& symbol) const {
    for (const Entry& e : entries_)
        if (e.symbol == symbol)
            return &e;
    return nullptr;
}

Unit UnitRegistry::resolve(const std::string& symbol) const {
    // whole-token match wins over prefix decomposition ("min" is the minute,
    // never milli-"in")
    if (const Entry* e = find(symbol))
        return e->unit;

    for (const Prefix& p : kPrefixes) {
        const std::string ps(p.symbol);
        if (symbol.size() <= ps.size() || symbol.compare(0, ps.size(), ps) != 0)
            continue;
        if (const Entry* e = find(symbol.substr(ps.size()))) {
            if (!e->prefixable)
                continue;
            Unit u = e->unit;
            u.scale_to_base *= p.scale;
            return u;
        }
    }
    throw UnitError("unknown unit symbol '" + symbol + "'");
}

std::vector<std::string> UnitRegistry::symbols() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_)
        out.push_back(e.symbol);
    return out;
}

namespace {

// Recursive-descent parser for the unit grammar.
class UnitParser {
public:
    explicit UnitParser(const std::string& text) : text_(text) {}

    Unit parse() {
        Unit u = parse_unit_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw UnitError("malformed unit expression '" + text_ + "': trailing input at position " +
                            std::to_string(pos_));
        return u;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw UnitError("malformed unit expression '" + text_ + "': " + what + " at position " +
                        std::to_string(pos_));
    }

    Unit parse_unit_expr() {
        Unit u = parse_term();
        while (true) {
            if (consume('*')) {
                Unit rhs = parse_term();
                u.dimension = dim_mul(u.dimension, rhs.dimension);
                u.scale_to_base *= rhs.scale_to_base;
            } else if (consume('/')) {
                Unit rhs = parse_term();
                u.dimension = dim_mul(u.dimension, dim_pow(rhs.dimension, Rational(-1)));
                u.scale_to_base /= rhs.scale_to_base;
            } else {
                return u;
            }
        }
    }

    Unit parse_term() {
        skip_ws();
        Unit u;
        if (consume('(')) {
            u = parse_unit_expr();
            if (!consume(')'))
                fail("expected ')'");
        } else if (peek() == '1') {
            ++pos_;
            u = Unit{Dimension::dimensionless(), 1.0};
        } else {
            u = UnitRegistry::instance().resolve(parse_symbol());
        }
        if (consume('^')) {
            const Rational e = parse_exponent();
            u.dimension = dim_pow(u.dimension, e);
            u.scale_to_base = std::pow(u.scale_to_base, e.to_double());
        }
        return u;
    }

    std::string parse_symbol() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const unsigned char c = static_cast<unsigned char>(text_[pos_]);
            if (std::isalpha(c) || c >= 0x80)
                ++pos_;
            else
                break;
        }
        if (pos_ == start)
            fail("expected unit symbol");
        return text_.substr(start, pos_ - start);
    }

    std::int64_t parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
            ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits)
            fail("expected integer exponent");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    Rational parse_exponent() {
        if (consume('(')) {
            const std::int64_t num = parse_integer();
            if (!consume('/'))
                fail("expected '/' in rational exponent");
            const std::int64_t den = parse_integer();
            if (den <= 0)
                fail("exponent denominator must be a positive integer");
            if (!consume(')'))
                fail("expected ')' after rational exponent");
            return Rational(num, den);
        }
        if (peek() == '.')
            fail("non-rational exponent");
        const std::int64_t num = parse_integer();
        if (pos_ < text_.size() && text_[pos_] == '.')
            fail("non-rational exponent");
        return Rational(num);
    }
};

} // namespace

Unit parse_unit(const std::string& text) { return UnitParser(text).parse(); }

Quantity make_quantity(const std::string& name, double value, const std::string& unit_text) {
    if (!std::isfinite(value))
        throw Error("quantity '" + name + "' has a non-finite value");
    Quantity q;
    q.name = name;
    q.value = value;
    q.unit = parse_unit(unit_text);
    q.unit_text = unit_text;
    q.base_value = value * q.unit.scale_to_base;
    return q;
}

bool dims_equivalent(const Dimension& a, const Dimension& b) { return a == b; }

} // namespace formdim
