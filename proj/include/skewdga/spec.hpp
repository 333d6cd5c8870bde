#ifndef SKEWDGA_SPEC_HPP
#define SKEWDGA_SPEC_HPP

// Line-oriented ring description files:
//
//   field QQ | field GF <p>
//   var <name> deg <d>          (one per variable, in order)
//   q <i> <j> <scalar>          (1-based; entries not given are 1)
//   rel <polynomial>            (`*` products, `^` powers, rational scalars)
//   bounds hdeg <N> ideg <D>
//
// `#` starts a comment.

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quotient.hpp"

namespace skewdga {

class SpecError : public std::runtime_error {
public:
    SpecError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(position(line, column) + message), line_(line), column_(column)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string position(std::size_t line, std::size_t column)
    {
        if (line == 0)
            return "";
        return std::to_string(line) + ":" + std::to_string(column) + ": ";
    }
    std::size_t line_, column_;
};

/// Parsed polynomial expression; evaluated once the ring is known.
struct PolyExpr {
    enum class Kind { number, variable, add, subtract, multiply, power, negate };
    Kind kind = Kind::number;
    Rational number;
    std::size_t var = 0;
    std::int64_t exponent = 0;
    std::vector<std::shared_ptr<const PolyExpr>> args;
};

struct RingSpec {
    struct Variable {
        std::string name;
        std::int64_t deg = 1;
        friend bool operator==(const Variable&, const Variable&) = default;
    };
    struct Relation {
        std::string text;
        std::shared_ptr<const PolyExpr> expr;
        std::size_t line = 0;
        std::size_t column = 0;
        friend bool operator==(const Relation& a, const Relation& b) { return a.text == b.text; }
    };

    /// 0 for the rationals, otherwise the prime
    std::uint64_t prime = 0;
    std::vector<Variable> variables;
    /// q_ij for i < j (0-based), only entries different from 1
    std::map<std::pair<std::size_t, std::size_t>, Rational> q;
    std::vector<Relation> relations;
    std::optional<std::int64_t> hdeg_bound;
    std::optional<std::int64_t> ideg_bound;

    std::size_t nvars() const { return variables.size(); }
    std::string field_name() const { return prime == 0 ? "QQ" : "GF(" + std::to_string(prime) + ")"; }

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

namespace detail {

inline bool parse_integer(const std::string& s, mpz_class& out)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            return false;
    return out.set_str(s[0] == '+' ? s.substr(1) : s, 10) == 0;
}

inline std::optional<Rational> parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    mpz_class num, den(1);
    if (!parse_integer(s.substr(0, slash), num))
        return std::nullopt;
    if (slash != std::string::npos) {
        auto d = s.substr(slash + 1);
        if (d.empty() || d[0] == '-' || d[0] == '+' || !parse_integer(d, den) || den == 0)
            return std::nullopt;
    }
    return Rational(mpq_class(num, den));
}

inline std::optional<std::int64_t> parse_int64(const std::string& s)
{
    mpz_class v;
    if (!parse_integer(s, v) || !v.fits_slong_p())
        return std::nullopt;
    return v.get_si();
}

/// Recursive descent over one relation's text.
class PolyParser {
public:
    PolyParser(const std::string& text, const std::map<std::string, std::size_t>& names, std::size_t line,
               std::size_t column)
        : s_(text), names_(names), line_(line), column_(column)
    {
    }

    std::shared_ptr<const PolyExpr> parse()
    {
        auto e = expression();
        skip();
        if (pos_ < s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    using Ptr = std::shared_ptr<const PolyExpr>;

    [[noreturn]] void fail(const std::string& msg) const { throw SpecError(line_, column_ + pos_, msg); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static Ptr node(PolyExpr::Kind k, std::vector<Ptr> args)
    {
        auto e = std::make_shared<PolyExpr>();
        e->kind = k;
        e->args = std::move(args);
        return e;
    }

    Ptr expression()
    {
        Ptr e;
        if (accept('-'))
            e = node(PolyExpr::Kind::negate, {term()});
        else {
            accept('+');
            e = term();
        }
        for (;;) {
            if (accept('+'))
                e = node(PolyExpr::Kind::add, {e, term()});
            else if (accept('-'))
                e = node(PolyExpr::Kind::subtract, {e, term()});
            else
                return e;
        }
    }

    Ptr term()
    {
        auto e = factor();
        while (accept('*'))
            e = node(PolyExpr::Kind::multiply, {e, factor()});
        return e;
    }

    Ptr factor()
    {
        auto base = primary();
        if (!accept('^'))
            return base;
        skip();
        auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        auto v = parse_int64(s_.substr(start, pos_ - start));
        if (!v) {
            pos_ = start;
            fail("expected a nonnegative integer exponent");
        }
        auto e = std::make_shared<PolyExpr>();
        e->kind = PolyExpr::Kind::power;
        e->exponent = *v;
        e->args = {base};
        return e;
    }

    Ptr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of polynomial");
        if (accept('(')) {
            auto e = expression();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        const auto start = pos_;
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
            auto r = parse_rational(s_.substr(start, pos_ - start));
            if (!r) {
                pos_ = start;
                fail("malformed number");
            }
            auto e = std::make_shared<PolyExpr>();
            e->number = *r;
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_') {
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            auto name = s_.substr(start, pos_ - start);
            auto it = names_.find(name);
            if (it == names_.end()) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            auto e = std::make_shared<PolyExpr>();
            e->kind = PolyExpr::Kind::variable;
            e->var = it->second;
            return e;
        }
        fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }

    const std::string& s_;
    const std::map<std::string, std::size_t>& names_;
    std::size_t line_, column_;
    std::size_t pos_ = 0;
};

inline std::vector<std::pair<std::string, std::size_t>> tokenize(const std::string& line)
{
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i >= line.size())
            break;
        auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        out.emplace_back(line.substr(start, i - start), start + 1);
    }
    return out;
}

inline std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace detail

inline RingSpec parse_ring_spec(const std::string& text)
{
    RingSpec spec;
    std::map<std::string, std::size_t> names;
    bool field_seen = false, bounds_seen = false;
    struct PendingQ {
        std::size_t i, j;
        Rational value;
        std::size_t line, column;
    };
    std::vector<PendingQ> pending;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto line = raw.substr(0, raw.find('#'));
        auto toks = detail::tokenize(line);
        if (toks.empty())
            continue;
        const auto& [kw, kwcol] = toks[0];
        auto expect_count = [&](std::size_t n, const std::string& form) {
            if (toks.size() != n)
                throw SpecError(lineno, toks.size() > n ? toks[n].second : line.size() + 1,
                                "expected '" + form + "'");
        };
        if (kw == "field") {
            if (field_seen)
                throw SpecError(lineno, kwcol, "field declared twice");
            field_seen = true;
            if (toks.size() == 2 && toks[1].first == "QQ")
                spec.prime = 0;
            else if (toks.size() == 3 && toks[1].first == "GF") {
                auto p = detail::parse_int64(toks[2].first);
                if (!p || *p <= 2 || !is_prime(static_cast<std::uint64_t>(*p)) || *p >= (std::int64_t(1) << 32))
                    throw SpecError(lineno, toks[2].second, "GF requires an odd prime below 2^32");
                spec.prime = static_cast<std::uint64_t>(*p);
            } else
                throw SpecError(lineno, toks.size() > 1 ? toks[1].second : kwcol, "expected 'field QQ' or 'field GF <p>'");
        } else if (kw == "var") {
            expect_count(4, "var <name> deg <d>");
            const auto& name = toks[1].first;
            bool ok = std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_';
            for (char ch : name)
                ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
            if (!ok)
                throw SpecError(lineno, toks[1].second, "invalid variable name '" + name + "'");
            if (names.count(name))
                throw SpecError(lineno, toks[1].second, "variable '" + name + "' declared twice");
            if (toks[2].first != "deg")
                throw SpecError(lineno, toks[2].second, "expected 'deg'");
            auto d = detail::parse_int64(toks[3].first);
            if (!d || *d < 1)
                throw SpecError(lineno, toks[3].second, "variable degree must be a positive integer");
            if (!spec.relations.empty())
                throw SpecError(lineno, kwcol, "variables must be declared before relations");
            names.emplace(name, spec.variables.size());
            spec.variables.push_back({name, *d});
        } else if (kw == "q") {
            expect_count(4, "q <i> <j> <scalar>");
            auto i = detail::parse_int64(toks[1].first), j = detail::parse_int64(toks[2].first);
            if (!i || *i < 1)
                throw SpecError(lineno, toks[1].second, "q index must be a positive integer");
            if (!j || *j < 1)
                throw SpecError(lineno, toks[2].second, "q index must be a positive integer");
            auto v = detail::parse_rational(toks[3].first);
            if (!v)
                throw SpecError(lineno, toks[3].second, "malformed scalar '" + toks[3].first + "'");
            pending.push_back({static_cast<std::size_t>(*i - 1), static_cast<std::size_t>(*j - 1), *v, lineno,
                               toks[3].second});
        } else if (kw == "rel") {
            if (toks.size() < 2)
                throw SpecError(lineno, line.size() + 1, "expected 'rel <polynomial>'");
            auto start = toks[1].second - 1;
            auto body = detail::trim(line.substr(start));
            detail::PolyParser parser(body, names, lineno, start + 1);
            spec.relations.push_back({body, parser.parse(), lineno, start + 1});
        } else if (kw == "bounds") {
            if (bounds_seen)
                throw SpecError(lineno, kwcol, "bounds declared twice");
            bounds_seen = true;
            expect_count(5, "bounds hdeg <N> ideg <D>");
            if (toks[1].first != "hdeg")
                throw SpecError(lineno, toks[1].second, "expected 'hdeg'");
            if (toks[3].first != "ideg")
                throw SpecError(lineno, toks[3].second, "expected 'ideg'");
            auto N = detail::parse_int64(toks[2].first), D = detail::parse_int64(toks[4].first);
            if (!N || *N < 0)
                throw SpecError(lineno, toks[2].second, "hdeg bound must be a nonnegative integer");
            if (!D || *D < 0)
                throw SpecError(lineno, toks[4].second, "ideg bound must be a nonnegative integer");
            spec.hdeg_bound = *N;
            spec.ideg_bound = *D;
        } else
            throw SpecError(lineno, kwcol, "unknown directive '" + kw + "'");
    }
    if (spec.variables.empty())
        throw SpecError(0, 0, "no variables declared");

    for (const auto& pq : pending) {
        const auto n = spec.nvars();
        if (pq.i >= n || pq.j >= n)
            throw SpecError(pq.line, pq.column, "q index out of range (" + std::to_string(n) + " variables)");
        if (pq.value.is_zero())
            throw SpecError(pq.line, pq.column, "q-matrix entries must be nonzero");
        if (pq.i == pq.j) {
            if (!pq.value.is_one())
                throw SpecError(pq.line, pq.column, "diagonal must be 1");
            continue;
        }
        auto key = std::minmax(pq.i, pq.j);
        auto v = pq.i < pq.j ? pq.value : pq.value.inverse();
        auto it = spec.q.find(key);
        if (it != spec.q.end() && !(it->second == v))
            throw SpecError(pq.line, pq.column,
                            "q[" + std::to_string(pq.i + 1) + "][" + std::to_string(pq.j + 1) +
                                "] conflicts with an earlier entry (q_ji must equal 1/q_ij)");
        if (v.is_one())
            spec.q.erase(key);
        else
            spec.q[key] = v;
    }
    return spec;
}

/// Canonical text form; parse_ring_spec(print_ring_spec(s)) == s.
inline std::string print_ring_spec(const RingSpec& spec)
{
    std::ostringstream out;
    out << (spec.prime == 0 ? "field QQ" : "field GF " + std::to_string(spec.prime)) << "\n";
    for (const auto& v : spec.variables)
        out << "var " << v.name << " deg " << v.deg << "\n";
    for (const auto& [key, value] : spec.q)
        out << "q " << key.first + 1 << " " << key.second + 1 << " " << value.to_string() << "\n";
    for (const auto& r : spec.relations)
        out << "rel " << r.text << "\n";
    if (spec.hdeg_bound)
        out << "bounds hdeg " << *spec.hdeg_bound << " ideg " << *spec.ideg_bound << "\n";
    return out.str();
}

template <ScalarField Field>
typename Field::Scalar to_field(const Field& k, const Rational& r)
{
    return k.from_fraction(r.value().get_num(), r.value().get_den());
}

template <ScalarField Field>
RingPtr<Field> build_ring(const RingSpec& spec, const Field& k)
{
    const auto n = spec.nvars();
    std::vector<std::vector<typename Field::Scalar>> q(n, std::vector<typename Field::Scalar>(n, k.one()));
    for (const auto& [key, value] : spec.q) {
        auto s = to_field(k, value);
        if (s.is_zero())
            throw SpecError(0, 0, "q[" + std::to_string(key.first + 1) + "][" + std::to_string(key.second + 1) +
                                      "] vanishes in " + k.name());
        q[key.first][key.second] = s;
        q[key.second][key.first] = s.inverse();
    }
    std::vector<std::int64_t> weights;
    std::vector<std::string> names;
    for (const auto& v : spec.variables) {
        weights.push_back(v.deg);
        names.push_back(v.name);
    }
    return SkewRing<Field>::create(k, QMatrix<typename Field::Scalar>(std::move(q)), std::move(weights),
                                   std::move(names));
}

template <ScalarField Field>
RingElement<Field> evaluate(const PolyExpr& e, const RingPtr<Field>& ring)
{
    using E = RingElement<Field>;
    const auto& k = ring->field();
    switch (e.kind) {
    case PolyExpr::Kind::number:
        return E::constant(ring, to_field(k, e.number));
    case PolyExpr::Kind::variable:
        return E::variable(ring, e.var);
    case PolyExpr::Kind::add:
        return evaluate(*e.args[0], ring) + evaluate(*e.args[1], ring);
    case PolyExpr::Kind::subtract:
        return evaluate(*e.args[0], ring) - evaluate(*e.args[1], ring);
    case PolyExpr::Kind::multiply:
        return evaluate(*e.args[0], ring) * evaluate(*e.args[1], ring);
    case PolyExpr::Kind::negate:
        return -evaluate(*e.args[0], ring);
    case PolyExpr::Kind::power: {
        auto base = evaluate(*e.args[0], ring);
        auto r = E::constant(ring, k.one());
        for (std::int64_t i = 0; i < e.exponent; ++i)
            r = r * base;
        return r;
    }
    }
    throw AlgebraError("bad expression");
}

/// Why a relation fails to be normal: two of its terms whose commutation
/// scalars against some variable differ.
template <ScalarField Field>
std::string normality_failure(const RingElement<Field>& f)
{
    const auto& ring = *f.ring();
    const auto& terms = f.terms();
    auto first = terms.begin();
    for (auto it = std::next(first); it != terms.end(); ++it)
        for (std::size_t j = 0; j < ring.nvars(); ++j)
            if (!(ring.chi(first->first.color(), ring.unit_color(j)) == ring.chi(it->first.color(), ring.unit_color(j))))
                return "terms " + ring.monomial_to_string(first->first) + " and " +
                       ring.monomial_to_string(it->first) + " commute differently with " + ring.name(j);
    return "";
}

template <ScalarField Field>
struct RingInstance {
    RingPtr<Field> ambient;
    std::vector<RingElement<Field>> relations;
};

/// Evaluates the relations; with `require_normal`, rejects inhomogeneous or
/// non-normal relations (reporting the offending terms and variable).
template <ScalarField Field>
RingInstance<Field> build_instance(const RingSpec& spec, const Field& k, bool require_normal = true)
{
    RingInstance<Field> inst;
    try {
        inst.ambient = build_ring(spec, k);
    } catch (const AlgebraError& e) {
        throw SpecError(0, 0, e.what());
    } catch (const FieldError& e) {
        throw SpecError(0, 0, e.what());
    }
    for (const auto& r : spec.relations) {
        RingElement<Field> f(inst.ambient);
        try {
            f = evaluate(*r.expr, inst.ambient);
        } catch (const FieldError& e) {
            throw SpecError(r.line, r.column, e.what());
        }
        if (require_normal) {
            if (f.is_zero())
                throw SpecError(r.line, r.column, "relation is zero");
            if (!f.homogeneous_degree())
                throw SpecError(r.line, r.column, "relation not homogeneous");
            if (!is_normal(f).normal)
                throw SpecError(r.line, r.column, "relation not normal: " + normality_failure(f));
        }
        inst.relations.push_back(std::move(f));
    }
    return inst;
}

} // namespace skewdga

#endif // SKEWDGA_SPEC_HPP
