#ifndef SKEWDGA_QUOTIENT_HPP
#define SKEWDGA_QUOTIENT_HPP

// Quotients R = Q/I of a skew polynomial ring by homogeneous normal elements.
//
// A normal generator f satisfies Qf = fQ, so the two-sided ideal it generates
// is the left ideal Qf. Gröbner bases are therefore computed with a one-sided
// Buchberger procedure in which every monomial transposition contributes a
// twist scalar. All computations are complete up to an explicit internal
// degree bound D.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "skewpoly.hpp"

namespace skewdga {

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer power series c_0 + c_1 t + ... + c_D t^D.
struct TruncatedSeries {
    std::vector<std::int64_t> coeffs;

    TruncatedSeries() = default;
    explicit TruncatedSeries(std::size_t length) : coeffs(length, 0) {}
    explicit TruncatedSeries(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    std::int64_t operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
    std::int64_t& operator[](std::size_t i) { return coeffs[i]; }

    /// Multiplies by (1 + sign * t^d)^power, truncated; power may be negative.
    TruncatedSeries& multiply_binomial(std::int64_t d, std::int64_t sign, std::int64_t power)
    {
        if (power >= 0) {
            for (std::int64_t p = 0; p < power; ++p)
                for (std::size_t i = coeffs.size(); i-- > 0;)
                    if (i >= static_cast<std::size_t>(d))
                        coeffs[i] += sign * coeffs[i - static_cast<std::size_t>(d)];
        } else {
            // divide by (1 + sign t^d): c_i <- c_i - sign c_{i-d}, ascending.
            for (std::int64_t p = 0; p < -power; ++p)
                for (std::size_t i = static_cast<std::size_t>(d); i < coeffs.size(); ++i)
                    coeffs[i] -= sign * coeffs[i - static_cast<std::size_t>(d)];
        }
        return *this;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            s += (i ? "," : "") + std::to_string(coeffs[i]);
        return s + "]";
    }
};

/// All monomials of weighted internal degree exactly d, ascending.
template <ScalarField Field>
std::vector<Monomial> monomials_of_degree(const SkewRing<Field>& ring, std::int64_t d)
{
    std::vector<Monomial> out;
    if (d < 0)
        return out;
    std::vector<std::int32_t> e(ring.nvars(), 0);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t remaining) -> void {
        if (i == ring.nvars()) {
            if (remaining == 0)
                out.push_back(ring.monomial(e));
            return;
        }
        for (std::int32_t k = 0; k * ring.weight(i) <= remaining; ++k) {
            e[i] = k;
            self(self, i + 1, remaining - k * ring.weight(i));
        }
        e[i] = 0;
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end());
    return out;
}

enum class Side { left, right };

template <ScalarField Field>
class GroebnerBasis {
public:
    using Element = RingElement<Field>;

    GroebnerBasis() = default;
    GroebnerBasis(std::vector<Element> elements, std::int64_t truncation, Side side)
        : elements_(std::move(elements)), truncation_(truncation), side_(side)
    {
    }

    const std::vector<Element>& elements() const { return elements_; }
    std::int64_t truncation() const { return truncation_; }
    Side side() const { return side_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }

    std::vector<Monomial> leading_monomials() const
    {
        std::vector<Monomial> lm;
        for (const auto& g : elements_)
            lm.push_back(g.leading_monomial());
        return lm;
    }

    /// Index of a basis element whose leading monomial divides m.
    std::optional<std::size_t> divisor_of(const Monomial& m) const
    {
        for (std::size_t i = 0; i < elements_.size(); ++i)
            if (elements_[i].leading_monomial().divides(m))
                return i;
        return std::nullopt;
    }

    /// One-sided full reduction: rewrites every reducible term.
    Element reduce(Element f) const
    {
        if (f.is_zero())
            return f;
        const auto& ring = *f.ring();
        Element rest(f.ring());
        while (!f.is_zero()) {
            const Monomial m = f.leading_monomial();
            const auto c = f.leading_coefficient();
            auto idx = divisor_of(m);
            if (!idx) {
                rest.add_term(m, c);
                f.add_term(m, -c);
                continue;
            }
            const auto& g = elements_[*idx];
            const Monomial u = m / g.leading_monomial();
            f -= shifted(ring, g, u, c / lead_scalar(ring, g, u));
        }
        return rest;
    }

    /// (x^u g) or (g x^u) scaled by s, depending on the side.
    Element shifted(const SkewRing<Field>& ring, const Element& g, const Monomial& u,
                    const typename Field::Scalar& s) const
    {
        Element out(g.ring());
        for (const auto& [m, c] : g.terms()) {
            auto t = side_ == Side::left ? ring.twist(u, m) : ring.twist(m, u);
            out.add_term(u * m, c * t * s);
        }
        return out;
    }

    /// Leading coefficient of the shifted element x^u g (or g x^u).
    typename Field::Scalar lead_scalar(const SkewRing<Field>& ring, const Element& g, const Monomial& u) const
    {
        const auto& lm = g.leading_monomial();
        auto t = side_ == Side::left ? ring.twist(u, lm) : ring.twist(lm, u);
        return g.leading_coefficient() * t;
    }

private:
    std::vector<Element> elements_;
    std::int64_t truncation_ = 0;
    Side side_ = Side::left;
};

inline Monomial monomial_lcm(const Monomial& a, const Monomial& b, const std::vector<std::int64_t>& weights)
{
    std::vector<std::int32_t> e(a.size());
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        e[i] = std::max(a[i], b[i]);
        d += e[i] * weights[i];
    }
    return Monomial(std::move(e), d);
}

/// Degree-truncated Buchberger procedure for homogeneous normal generators.
/// S-pairs are processed lowest lcm degree first, ties by monomial order.
template <ScalarField Field>
GroebnerBasis<Field> buchberger(const std::vector<RingElement<Field>>& generators, std::int64_t D,
                                Side side = Side::left)
{
    using Element = RingElement<Field>;
    for (const auto& g : generators) {
        if (g.is_zero())
            throw AlgebraError("zero generator");
        if (!g.homogeneous_degree())
            throw AlgebraError("generator " + g.to_string() + " is not homogeneous");
        if (!is_normal(g).normal)
            throw AlgebraError("relation not normal: " + g.to_string());
    }
    if (generators.empty())
        return GroebnerBasis<Field>({}, D, side);
    const auto ring_ptr = generators.front().ring();
    const auto& ring = *ring_ptr;

    std::vector<Element> basis;
    // (lcm, i, j) keyed for the normal selection strategy
    std::multimap<Monomial, std::pair<std::size_t, std::size_t>> pairs;

    auto monic = [](Element f) { return f *= f.leading_coefficient().inverse(); };
    auto add = [&](Element f) {
        f = monic(std::move(f));
        std::size_t k = basis.size();
        basis.push_back(std::move(f));
        for (std::size_t i = 0; i < k; ++i) {
            auto l = monomial_lcm(basis[i].leading_monomial(), basis[k].leading_monomial(), ring.weights());
            if (l.degree() <= D)
                pairs.emplace(l, std::make_pair(i, k));
        }
    };

    std::vector<Element> sorted(generators);
    std::sort(sorted.begin(), sorted.end(),
              [](const Element& a, const Element& b) { return a.leading_monomial() < b.leading_monomial(); });
    for (const auto& g : sorted) {
        if (g.max_degree() > D)
            continue;
        auto r = GroebnerBasis<Field>(basis, D, side).reduce(g);
        if (!r.is_zero())
            add(std::move(r));
    }

    while (!pairs.empty()) {
        auto it = pairs.begin();
        auto [l, ij] = *it;
        pairs.erase(it);
        const auto& f = basis[ij.first];
        const auto& g = basis[ij.second];
        GroebnerBasis<Field> current(basis, D, side);
        auto uf = l / f.leading_monomial();
        auto ug = l / g.leading_monomial();
        auto s = current.shifted(ring, f, uf, current.lead_scalar(ring, f, uf).inverse()) -
                 current.shifted(ring, g, ug, current.lead_scalar(ring, g, ug).inverse());
        auto r = current.reduce(std::move(s));
        if (!r.is_zero())
            add(std::move(r));
    }

    // Inter-reduce: drop redundant leading monomials, then tail-reduce.
    std::vector<Element> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j)
                continue;
            const auto& li = basis[i].leading_monomial();
            const auto& lj = basis[j].leading_monomial();
            if (lj.divides(li) && (!(li == lj) || j < i))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(basis[i]);
    }
    std::vector<Element> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Element> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        auto lead = Element::term(ring_ptr, minimal[i].leading_monomial(), minimal[i].leading_coefficient());
        auto tail = GroebnerBasis<Field>(others, D, side).reduce(minimal[i] - lead);
        reduced.push_back(monic(lead + tail));
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Element& a, const Element& b) { return a.leading_monomial() < b.leading_monomial(); });
    return GroebnerBasis<Field>(std::move(reduced), D, side);
}

/// R = Q/(f_1..f_c), complete up to internal degree D.
template <ScalarField Field>
class QuotientRing {
public:
    using Scalar = typename Field::Scalar;
    using Element = RingElement<Field>;

    QuotientRing(RingPtr<Field> ambient, std::vector<Element> relations, std::int64_t D)
        : ambient_(std::move(ambient)), relations_(std::move(relations)), truncation_(D)
    {
        if (D < 0)
            throw AlgebraError("truncation degree must be nonnegative");
        for (const auto& f : relations_)
            if (f.ring() != ambient_)
                throw AlgebraError("relation lives in a different ring");
        gb_ = buchberger(relations_, D);
        basis_.resize(static_cast<std::size_t>(D) + 1);
        for (std::int64_t d = 0; d <= D; ++d)
            for (auto& m : monomials_of_degree(*ambient_, d))
                if (!gb_.divisor_of(m))
                    basis_[static_cast<std::size_t>(d)].push_back(m);
    }

    static std::shared_ptr<const QuotientRing> create(RingPtr<Field> ambient, std::vector<Element> relations,
                                                      std::int64_t D)
    {
        return std::make_shared<const QuotientRing>(std::move(ambient), std::move(relations), D);
    }

    const RingPtr<Field>& ambient() const { return ambient_; }
    const SkewRing<Field>& ring() const { return *ambient_; }
    const Field& field() const { return ambient_->field(); }
    std::size_t nvars() const { return ambient_->nvars(); }
    const std::vector<Element>& relations() const { return relations_; }
    const GroebnerBasis<Field>& groebner() const { return gb_; }
    std::int64_t truncation() const { return truncation_; }

    bool is_standard(const Monomial& m) const { return !gb_.divisor_of(m); }

    Element normal_form(const Element& f) const
    {
        if (f.ring() && f.ring() != ambient_)
            throw AlgebraError("ambient ring mismatch");
        Element out(ambient_);
        for (const auto& [m, c] : f.terms()) {
            const auto& nf = monomial_normal_form(m);
            for (const auto& [mm, cc] : nf.terms())
                out.add_term(mm, c * cc);
        }
        return out;
    }

    /// Normal form of the ordered monomial x^m (cached).
    const Element& monomial_normal_form(const Monomial& m) const
    {
        if (m.degree() > truncation_)
            throw TruncationError("degree " + std::to_string(m.degree()) + " exceeds truncation " +
                                  std::to_string(truncation_));
        {
            std::lock_guard lock(cache_mutex_);
            auto it = nf_cache_.find(m);
            if (it != nf_cache_.end())
                return it->second;
        }
        Element nf(ambient_);
        auto idx = gb_.divisor_of(m);
        if (!idx) {
            nf.add_term(m, field().one());
        } else {
            // x^u g = t x^m + lower, g monic  =>  x^m == -(1/t) sum_lower c x^u x^l
            const auto& g = gb_.elements()[*idx];
            const auto u = m / g.leading_monomial();
            const auto t = ambient_->twist(u, g.leading_monomial());
            const auto scale = -t.inverse();
            for (const auto& [l, c] : g.terms()) {
                if (l == g.leading_monomial())
                    continue;
                const auto& sub = monomial_normal_form(u * l);
                const auto factor = scale * c * ambient_->twist(u, l);
                for (const auto& [mm, cc] : sub.terms())
                    nf.add_term(mm, factor * cc);
            }
        }
        std::lock_guard lock(cache_mutex_);
        return nf_cache_.emplace(m, std::move(nf)).first->second;
    }

    Element multiply(const Element& a, const Element& b) const
    {
        Element out(ambient_);
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms()) {
                const auto& nf = monomial_normal_form(ma * mb);
                if (nf.is_zero())
                    continue;
                auto s = ca * cb * ambient_->twist(ma, mb);
                for (const auto& [m, c] : nf.terms())
                    out.add_term(m, s * c);
            }
        return out;
    }

    Element power(const Element& a, std::int64_t k) const
    {
        Element r = one();
        for (std::int64_t i = 0; i < k; ++i)
            r = multiply(r, a);
        return r;
    }

    Element one() const { return Element::constant(ambient_, field().one()); }
    Element zero() const { return Element(ambient_); }
    Element variable(std::size_t i) const { return normal_form(Element::variable(ambient_, i)); }

    /// Standard monomials of degree d, ascending.
    const std::vector<Monomial>& graded_basis(std::int64_t d) const
    {
        if (d < 0 || d > truncation_)
            throw TruncationError("degree " + std::to_string(d) + " outside [0, " + std::to_string(truncation_) +
                                  "]");
        return basis_[static_cast<std::size_t>(d)];
    }

    TruncatedSeries hilbert_series(std::int64_t D) const
    {
        if (D > truncation_)
            throw TruncationError("Hilbert series requested beyond truncation");
        TruncatedSeries h(static_cast<std::size_t>(D) + 1);
        for (std::int64_t d = 0; d <= D; ++d)
            h[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(basis_[static_cast<std::size_t>(d)].size());
        return h;
    }
    TruncatedSeries hilbert_series() const { return hilbert_series(truncation_); }

    /// Every relation lies in (x_1..x_n)^2.
    bool relations_in_square_of_maximal_ideal() const
    {
        for (const auto& f : relations_)
            for (const auto& [m, c] : f.terms())
                if (m.length() < 2)
                    return false;
        return true;
    }

private:
    RingPtr<Field> ambient_;
    std::vector<Element> relations_;
    std::int64_t truncation_;
    GroebnerBasis<Field> gb_;
    std::vector<std::vector<Monomial>> basis_;
    mutable std::mutex cache_mutex_;
    mutable std::map<Monomial, Element> nf_cache_;
};

template <ScalarField Field>
using QuotientPtr = std::shared_ptr<const QuotientRing<Field>>;

template <ScalarField Field>
RingElement<Field> normal_form(const RingElement<Field>& f, const QuotientRing<Field>& R)
{
    if (f.max_degree() > R.truncation())
        throw TruncationError("degree exceeds truncation");
    return R.normal_form(f);
}

template <ScalarField Field>
const std::vector<Monomial>& graded_basis(const QuotientRing<Field>& R, std::int64_t d)
{
    return R.graded_basis(d);
}

template <ScalarField Field>
TruncatedSeries hilbert_series(const QuotientRing<Field>& R, std::int64_t D)
{
    return R.hilbert_series(D);
}

/// Constant-term coefficient.
template <ScalarField Field>
typename Field::Scalar augment(const RingElement<Field>& f)
{
    return f.coefficient(f.ring()->one_monomial());
}

struct RegularityReport {
    bool regular = true;
    /// Degree bound up to which the Hilbert factorization was checked.
    std::int64_t verified_to = 0;
    /// First position (0-based) where the factorization fails.
    std::optional<std::size_t> failing_index;
    std::vector<TruncatedSeries> hilbert;

    explicit operator bool() const { return regular; }
};

/// Checks H(Q/(f_1..f_j)) = (1 - t^{d_j}) H(Q/(f_1..f_{j-1})) up to degree D.
template <ScalarField Field>
RegularityReport is_regular_sequence(const RingPtr<Field>& ring, const std::vector<RingElement<Field>>& fs,
                                     std::int64_t D)
{
    RegularityReport report;
    report.verified_to = D;
    std::vector<RingElement<Field>> prefix;
    QuotientRing<Field> previous(ring, prefix, D);
    report.hilbert.push_back(previous.hilbert_series());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        const auto& f = fs[j];
        if (f.is_zero())
            throw AlgebraError("zero element in sequence");
        auto d = f.homogeneous_degree();
        if (!d)
            throw AlgebraError("sequence element is not homogeneous");
        if (*d < 1)
            throw AlgebraError("sequence element has degree 0");
        if (!is_normal(f).normal)
            throw AlgebraError("sequence element not normal: " + f.to_string());
        prefix.push_back(f);
        QuotientRing<Field> next(ring, prefix, D);
        auto expected = report.hilbert.back();
        expected.multiply_binomial(*d, -1, 1);
        auto actual = next.hilbert_series();
        report.hilbert.push_back(actual);
        if (report.regular && !(expected == actual)) {
            report.regular = false;
            report.failing_index = j;
        }
    }
    return report;
}

} // namespace skewdga

#endif // SKEWDGA_QUOTIENT_HPP
