#ifndef SKEWDGA_DGA_HPP
#define SKEWDGA_DGA_HPP

// Color DG algebras R<Y>: semi-free extensions of a quotient ring R by
// exterior (odd) and divided-power (even) variables.
//
// An element is a sum of terms r * w with r a normal-form element of R
// (left coefficient) and w a normal word y_1^(i_1)...y_q^(i_q). All reordering
// goes through one transposition rule
//     b a = (-1)^{|a||b|} chi(b, a) a b
// which covers both word/word and word/ring swaps (ring elements sit in
// homological degree 0).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "quotient.hpp"

namespace skewdga {

struct DGVariable {
    std::int64_t hdeg = 1;
    std::int64_t ideg = 1;
    ColorDegree color;

    bool exterior() const { return hdeg % 2 != 0; }
};

/// Normal word: strictly increasing variable indices with exponents >= 1.
class Word {
public:
    struct Factor {
        std::uint32_t var;
        std::int64_t exp;
        friend auto operator<=>(const Factor&, const Factor&) = default;
    };

    Word() = default;
    explicit Word(std::vector<Factor> factors) : factors_(std::move(factors)) {}
    static Word single(std::uint32_t var, std::int64_t exp = 1) { return Word({{var, exp}}); }

    const std::vector<Factor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    std::size_t size() const { return factors_.size(); }
    std::uint32_t max_var() const { return factors_.empty() ? 0 : factors_.back().var; }

    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Factor> factors_;
};

inline std::string to_string(const Word& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (const auto& f : w.factors()) {
        if (!s.empty())
            s += "*";
        s += "y" + std::to_string(f.var + 1);
        if (f.exp > 1)
            s += "^(" + std::to_string(f.exp) + ")";
    }
    return s;
}

struct TriDegree {
    std::int64_t hdeg = 0;
    std::int64_t ideg = 0;
    ColorDegree color;
};

template <ScalarField Field>
class DGElement {
public:
    using Scalar = typename Field::Scalar;
    using Ring = RingElement<Field>;
    using Terms = std::map<Word, Ring>;

    DGElement() = default;
    explicit DGElement(Terms terms) : terms_(std::move(terms))
    {
        std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
    }
    static DGElement word(const Word& w, Ring coefficient)
    {
        DGElement e;
        e.add(w, std::move(coefficient));
        return e;
    }
    static DGElement scalar(const RingPtr<Field>& ring, const Scalar& c)
    {
        return word(Word(), Ring::constant(ring, c));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const Word& w, const Ring& r)
    {
        if (r.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(w, r);
        if (!inserted) {
            it->second += r;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Ring coefficient(const Word& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Ring() : it->second;
    }

    DGElement& operator+=(const DGElement& o)
    {
        for (const auto& [w, r] : o.terms_)
            add(w, r);
        return *this;
    }
    DGElement& operator-=(const DGElement& o)
    {
        for (const auto& [w, r] : o.terms_)
            add(w, -r);
        return *this;
    }
    DGElement& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, r] : terms_)
            r *= s;
        return *this;
    }
    friend DGElement operator+(DGElement a, const DGElement& b) { return a += b; }
    friend DGElement operator-(DGElement a, const DGElement& b) { return a -= b; }
    friend DGElement operator-(DGElement a)
    {
        for (auto& [w, r] : a.terms_)
            r = -r;
        return a;
    }
    friend DGElement operator*(DGElement a, const Scalar& s) { return a *= s; }
    friend DGElement operator*(const Scalar& s, DGElement a) { return a *= s; }
    friend bool operator==(const DGElement& a, const DGElement& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [w, r] : terms_) {
            if (!s.empty())
                s += " + ";
            s += "(" + r.to_string() + ")";
            if (!w.empty())
                s += "*" + skewdga::to_string(w);
        }
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const DGElement& a) { return os << a.to_string(); }

private:
    Terms terms_;
};

class TrihomogeneityError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

/// R<Y> with an ordered list of adjoined variables and their boundaries.
template <ScalarField Field>
class SemiFreeExtension {
public:
    using Scalar = typename Field::Scalar;
    using Ring = RingElement<Field>;
    using Element = DGElement<Field>;

    struct Adjoined {
        DGVariable variable;
        Element boundary;
    };

    SemiFreeExtension(QuotientPtr<Field> base, std::int64_t hdeg_bound, std::int64_t ideg_bound)
        : base_(std::move(base)), hdeg_bound_(hdeg_bound), ideg_bound_(ideg_bound),
          cache_(std::make_shared<Cache>())
    {
        if (ideg_bound_ > base_->truncation())
            throw TruncationError("extension truncation exceeds the base ring's Gröbner truncation");
    }

    const QuotientPtr<Field>& base() const { return base_; }
    const QuotientRing<Field>& quotient() const { return *base_; }
    const SkewRing<Field>& ring() const { return base_->ring(); }
    const Field& field() const { return base_->field(); }
    std::int64_t hdeg_bound() const { return hdeg_bound_; }
    std::int64_t ideg_bound() const { return ideg_bound_; }
    std::size_t num_variables() const { return vars_.size(); }
    const DGVariable& variable(std::size_t i) const { return vars_.at(i)->variable; }
    const Element& boundary(std::size_t i) const { return vars_.at(i)->boundary; }

    /// New extension sharing all existing variables, with y appended.
    SemiFreeExtension with_variable(DGVariable v, Element boundary) const
    {
        SemiFreeExtension out(*this);
        out.vars_.push_back(std::make_shared<const Adjoined>(Adjoined{std::move(v), std::move(boundary)}));
        out.cache_ = std::make_shared<Cache>();
        out.cache_->parent = cache_;
        out.cache_->nvars = out.vars_.size();
        return out;
    }

    SemiFreeExtension with_bounds(std::int64_t hdeg_bound, std::int64_t ideg_bound) const
    {
        if (ideg_bound > base_->truncation())
            throw TruncationError("extension truncation exceeds the base ring's Gröbner truncation");
        SemiFreeExtension out(*this);
        out.hdeg_bound_ = hdeg_bound;
        out.ideg_bound_ = ideg_bound;
        return out;
    }

    std::int64_t word_hdeg(const Word& w) const
    {
        std::int64_t h = 0;
        for (const auto& f : w.factors())
            h += f.exp * variable(f.var).hdeg;
        return h;
    }
    std::int64_t word_ideg(const Word& w) const
    {
        std::int64_t d = 0;
        for (const auto& f : w.factors())
            d += f.exp * variable(f.var).ideg;
        return d;
    }
    ColorDegree word_color(const Word& w) const
    {
        ColorDegree c = ring().zero_color();
        for (const auto& f : w.factors())
            c = color_add(c, color_scale(variable(f.var).color, f.exp));
        return c;
    }

    /// (-1)^{ha hb} chi(ca, cb): a b = transposition(a, b) b a.
    Scalar transposition(std::int64_t ha, const ColorDegree& ca, std::int64_t hb, const ColorDegree& cb) const
    {
        Scalar s = ring().chi(ca, cb);
        if ((ha * hb) % 2 != 0)
            s = -s;
        return s;
    }

    /// Product of normal words: scalar times a normal word, or nothing if zero.
    std::optional<std::pair<Scalar, Word>> multiply_words(const Word& u, const Word& v) const
    {
        check_word(u);
        check_word(v);
        auto factors = u.factors();
        Scalar s = field().one();
        for (const auto& yv : v.factors()) {
            const auto& var = variable(yv.var);
            auto pos = static_cast<std::size_t>(
                std::find_if(factors.begin(), factors.end(), [&](const auto& f) { return f.var > yv.var; }) -
                factors.begin());
            std::int64_t hb = 0;
            ColorDegree cb = ring().zero_color();
            for (std::size_t i = pos; i < factors.size(); ++i) {
                const auto& fv = variable(factors[i].var);
                hb += factors[i].exp * fv.hdeg;
                cb = color_add(cb, color_scale(fv.color, factors[i].exp));
            }
            if (pos < factors.size())
                s *= transposition(hb, cb, yv.exp * var.hdeg, color_scale(var.color, yv.exp));
            if (pos > 0 && factors[pos - 1].var == yv.var) {
                if (var.exterior())
                    return std::nullopt;
                auto& f = factors[pos - 1];
                s *= field().from_integer(binomial(f.exp + yv.exp, yv.exp));
                f.exp += yv.exp;
            } else {
                factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(pos), yv);
            }
            if (s.is_zero())
                return std::nullopt;
        }
        return std::make_pair(s, Word(std::move(factors)));
    }

    Element multiply(const Element& a, const Element& b) const
    {
        Element out;
        for (const auto& [w1, r1] : a.terms()) {
            const auto c1 = word_color(w1);
            const auto d1 = word_ideg(w1);
            for (const auto& [w2, r2] : b.terms()) {
                auto wp = multiply_words(w1, w2);
                if (!wp)
                    continue;
                if (d1 + word_ideg(w2) + r1.max_degree() + r2.max_degree() > ideg_bound_)
                    throw TruncationError("product exceeds internal degree truncation " +
                                          std::to_string(ideg_bound_));
                // w1 r2 = chi(w1, r2) r2 w1, term by term
                Ring twisted(r2.ring());
                for (const auto& [m, c] : r2.terms())
                    twisted.add_term(m, c * ring().chi(c1, m.color()));
                auto coef = base_->multiply(r1, twisted);
                coef *= wp->first;
                out.add(wp->second, coef);
            }
        }
        return out;
    }

    /// r * a for r in R (no reordering needed on the left).
    Element left_multiply(const Ring& r, const Element& a) const
    {
        Element out;
        for (const auto& [w, c] : a.terms())
            out.add(w, base_->multiply(r, c));
        return out;
    }

    Element word_element(const Word& w) const { return Element::word(w, base_->one()); }
    Element one() const { return Element::word(Word(), base_->one()); }
    Element from_ring(const Ring& r) const { return Element::word(Word(), base_->normal_form(r)); }

    /// Differential of a basis word, by the Leibniz rule over its factors.
    const Element& word_differential(const Word& w) const
    {
        check_word(w);
        Cache* level = cache_.get();
        while (level->parent && level->parent->nvars > w.max_var())
            level = level->parent.get();
        {
            std::lock_guard lock(level->mutex);
            auto it = level->differentials.find(w);
            if (it != level->differentials.end())
                return it->second;
        }
        Element result;
        std::int64_t prefix_h = 0;
        const auto& fs = w.factors();
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const auto& [var, exp] = fs[j];
            std::vector<Word::Factor> pre(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(j));
            std::vector<Word::Factor> post;
            if (exp > 1)
                post.push_back({var, exp - 1});
            post.insert(post.end(), fs.begin() + static_cast<std::ptrdiff_t>(j) + 1, fs.end());
            // d(y^(e)) = d(y) y^(e-1)
            auto term = multiply(multiply(word_element(Word(std::move(pre))), boundary(var)),
                                 word_element(Word(std::move(post))));
            if (prefix_h % 2 != 0)
                term = -term;
            result += term;
            prefix_h += exp * variable(var).hdeg;
        }
        std::lock_guard lock(level->mutex);
        return level->differentials.emplace(w, std::move(result)).first->second;
    }

    Element differential(const Element& a) const
    {
        Element out;
        for (const auto& [w, r] : a.terms())
            out += left_multiply(r, word_differential(w));
        return out;
    }

    bool is_cycle(const Element& a) const { return differential(a).is_zero(); }

    /// Tri-degree shared by every term, or nothing.
    std::optional<TriDegree> tridegree(const Element& a) const
    {
        std::optional<TriDegree> t;
        std::vector<Scalar> character;
        for (const auto& [w, r] : a.terms()) {
            const auto h = word_hdeg(w);
            const auto d = word_ideg(w);
            const auto cw = word_color(w);
            for (const auto& [m, c] : r.terms()) {
                auto col = color_add(cw, m.color());
                if (!t) {
                    t = TriDegree{h, d + m.degree(), col};
                    character = ring().character(col);
                    continue;
                }
                if (t->hdeg != h || t->ideg != d + m.degree() || ring().character(col) != character)
                    return std::nullopt;
            }
        }
        return t;
    }

    /// Words of homological degree n and word internal degree <= d, sorted.
    std::vector<Word> words(std::int64_t n, std::int64_t d) const
    {
        std::vector<Word> out;
        std::vector<Word::Factor> cur;
        auto rec = [&](auto&& self, std::size_t i, std::int64_t h, std::int64_t id) -> void {
            if (h == 0) {
                out.emplace_back(cur);
                return;
            }
            if (i == vars_.size())
                return;
            const auto& v = variable(i);
            const std::int64_t max_e = v.exterior() ? 1 : h / v.hdeg;
            for (std::int64_t e = max_e; e >= 1; --e) {
                if (e * v.hdeg > h || e * v.ideg > id)
                    continue;
                cur.push_back({static_cast<std::uint32_t>(i), e});
                self(self, i + 1, h - e * v.hdeg, id - e * v.ideg);
                cur.pop_back();
            }
            self(self, i + 1, h, id);
        };
        if (n >= 0 && d >= 0)
            rec(rec, 0, n, d);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string word_to_string(const Word& w) const { return skewdga::to_string(w); }
    std::string to_string(const Element& a) const { return a.to_string(); }

    void check_word(const Word& w) const
    {
        for (const auto& f : w.factors())
            if (f.var >= vars_.size())
                throw AlgebraError("element refers to a variable outside this extension");
    }

private:
    // One level per adjoined variable. A word is cached at the level where its
    // last variable was adjoined, so extensions that branch later share it and
    // sibling extensions never see each other's entries.
    struct Cache {
        std::shared_ptr<Cache> parent;
        std::size_t nvars = 0;
        std::mutex mutex;
        std::map<Word, Element> differentials;
    };

    QuotientPtr<Field> base_;
    std::vector<std::shared_ptr<const Adjoined>> vars_;
    std::int64_t hdeg_bound_;
    std::int64_t ideg_bound_;
    std::shared_ptr<Cache> cache_;
};

template <ScalarField Field>
DGElement<Field> dg_multiply(const SemiFreeExtension<Field>& A, const DGElement<Field>& a, const DGElement<Field>& b)
{
    return A.multiply(a, b);
}

template <ScalarField Field>
DGElement<Field> differential(const SemiFreeExtension<Field>& A, const DGElement<Field>& a)
{
    return A.differential(a);
}

/// Adjoins y with d(y) = z. z must be a trihomogeneous cycle; an odd z must
/// square to zero. The new variable takes |z|+1 and the color and internal
/// degree of z.
template <ScalarField Field>
SemiFreeExtension<Field> adjoin_variable(const SemiFreeExtension<Field>& A, const DGElement<Field>& z)
{
    if (z.is_zero())
        throw TrihomogeneityError("cannot adjoin a variable killing zero");
    for (const auto& [w, r] : z.terms())
        A.check_word(w);
    auto t = A.tridegree(z);
    if (!t)
        throw TrihomogeneityError("cycle is not trihomogeneous: " + A.to_string(z));
    if (t->ideg < 1)
        throw AlgebraError("adjoined variables need internal degree >= 1");
    if (t->ideg > A.ideg_bound())
        throw TruncationError("cycle lies beyond the internal degree truncation");
    if (!A.is_cycle(z))
        throw AlgebraError("element is not a cycle: " + A.to_string(z));
    // a square beyond the truncation is not represented, hence zero there
    if (t->hdeg % 2 != 0 && 2 * t->ideg <= A.ideg_bound() && !A.multiply(z, z).is_zero())
        throw AlgebraError("odd cycle with nonzero square cannot be killed");
    if (A.num_variables() > 0 && A.variable(A.num_variables() - 1).hdeg > t->hdeg + 1)
        throw AlgebraError("variables must be adjoined in nondecreasing homological degree");
    DGVariable v{t->hdeg + 1, t->ideg, t->color};
    return A.with_variable(std::move(v), z);
}

/// Skew Koszul complex K^R(f_1..f_c): odd y_j with d(y_j) = f_j.
template <ScalarField Field>
SemiFreeExtension<Field> koszul_complex(const QuotientPtr<Field>& R, const std::vector<RingElement<Field>>& fs,
                                        std::int64_t hdeg_bound, std::int64_t ideg_bound)
{
    SemiFreeExtension<Field> A(R, hdeg_bound, ideg_bound);
    for (const auto& f : fs) {
        auto nf = R->normal_form(f);
        if (nf.is_zero())
            throw AlgebraError("Koszul element vanishes in the quotient");
        if (!nf.homogeneous_degree() || !color_degree(nf))
            throw AlgebraError("relation not normal: " + f.to_string());
        A = adjoin_variable(A, A.from_ring(nf));
    }
    return A;
}

template <ScalarField Field>
SemiFreeExtension<Field> koszul_complex(const QuotientPtr<Field>& R, const std::vector<RingElement<Field>>& fs)
{
    return koszul_complex(R, fs, static_cast<std::int64_t>(fs.size()), R->truncation());
}

/// K^R: the Koszul complex on the images of the ring variables.
template <ScalarField Field>
SemiFreeExtension<Field> koszul_complex_of_ring(const QuotientPtr<Field>& R, std::int64_t hdeg_bound,
                                                std::int64_t ideg_bound)
{
    std::vector<RingElement<Field>> xs;
    for (std::size_t i = 0; i < R->nvars(); ++i)
        xs.push_back(RingElement<Field>::variable(R->ambient(), i));
    return koszul_complex(R, xs, hdeg_bound, ideg_bound);
}

namespace detail {

/// w^(k) for a normal word of even positive homological degree.
template <ScalarField Field>
DGElement<Field> word_divided_power(const SemiFreeExtension<Field>& A, const Word& w, std::int64_t k)
{
    const auto& K = A.field();
    if (k == 0)
        return A.one();
    if (k == 1)
        return A.word_element(w);
    const auto& first = w.factors().front();
    const auto& v = A.variable(first.var);
    if (w.size() == 1) {
        // (y^(e))^(k) = [e k] y^(ek)
        return DGElement<Field>::word(Word::single(first.var, first.exp * k),
                                      RingElement<Field>::constant(A.base()->ambient(),
                                                                   K.from_integer(divided_power_composite(first.exp, k))));
    }
    if (v.exterior())
        return DGElement<Field>(); // (x y)^(k) = 0 for x, y odd and k >= 2
    Word u = Word::single(first.var, first.exp);
    Word rest(std::vector<Word::Factor>(w.factors().begin() + 1, w.factors().end()));
    // (u v)^(k) = chi(v, u)^{C(k,2)} u^k v^(k)
    auto twist = A.ring().chi(A.word_color(rest), A.word_color(u)).pow(k * (k - 1) / 2);
    DGElement<Field> uk = A.one();
    for (std::int64_t i = 0; i < k; ++i)
        uk = A.multiply(uk, A.word_element(u));
    return A.multiply(uk, word_divided_power(A, rest, k)) * twist;
}

/// t^(k) for a single term c x^I w.
template <ScalarField Field>
DGElement<Field> term_divided_power(const SemiFreeExtension<Field>& A, const Word& w, const Monomial& m,
                                    const typename Field::Scalar& c, std::int64_t k)
{
    const auto ring = A.base()->ambient();
    if (k == 0)
        return A.one();
    auto x = RingElement<Field>::term(ring, m, c);
    if (k == 1)
        return DGElement<Field>::word(w, x);
    // (x w)^(k) = chi(w, x)^{C(k,2)} x^k w^(k) with x in degree 0
    auto twist = A.ring().chi(A.word_color(w), m.color()).pow(k * (k - 1) / 2);
    auto xk = A.base()->power(x, k);
    return A.left_multiply(xk, word_divided_power(A, w, k)) * twist;
}

} // namespace detail

/// a^(k) for a trihomogeneous a of even positive homological degree.
template <ScalarField Field>
DGElement<Field> divided_power(const SemiFreeExtension<Field>& A, const DGElement<Field>& a, std::int64_t k)
{
    if (k < 0)
        throw AlgebraError("divided power with negative exponent");
    if (k == 0)
        return A.one();
    if (a.is_zero())
        return DGElement<Field>();
    auto t = A.tridegree(a);
    if (!t)
        throw TrihomogeneityError("divided powers need a trihomogeneous element");
    if (t->hdeg <= 0 || t->hdeg % 2 != 0)
        throw AlgebraError("divided powers need even positive homological degree");
    if (k == 1)
        return a;

    struct Term {
        Word w;
        Monomial m;
        typename Field::Scalar c;
    };
    std::vector<Term> terms;
    for (const auto& [w, r] : a.terms())
        for (const auto& [m, c] : r.terms())
            terms.push_back({w, m, c});

    // powers[i][j] = t_i^(j)
    std::vector<std::vector<DGElement<Field>>> powers(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::int64_t j = 0; j <= k; ++j)
            powers[i].push_back(detail::term_divided_power(A, terms[i].w, terms[i].m, terms[i].c, j));

    // (sum t_i)^(k) = sum over compositions of prod t_i^(k_i)
    DGElement<Field> result;
    auto rec = [&](auto&& self, std::size_t i, std::int64_t remaining, const DGElement<Field>& acc) -> void {
        if (acc.is_zero())
            return;
        if (i + 1 == terms.size()) {
            result += A.multiply(acc, powers[i][remaining]);
            return;
        }
        for (std::int64_t j = 0; j <= remaining; ++j)
            self(self, i + 1, remaining - j, A.multiply(acc, powers[i][j]));
    };
    rec(rec, 0, k, A.one());
    return result;
}

} // namespace skewdga

#endif // SKEWDGA_DGA_HPP
