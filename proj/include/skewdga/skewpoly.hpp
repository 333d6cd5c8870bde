#ifndef SKEWDGA_SKEWPOLY_HPP
#define SKEWDGA_SKEWPOLY_HPP

// Skew polynomial rings k_q[x_1..x_n]: relations x_i x_j = q_ij x_j x_i.
//
// Elements are sparse sums of ordered monomials x_1^{i_1}...x_n^{i_n}. The
// product of ordered monomials is x^I x^J = twist(I,J) x^{I+J} with
// twist(I,J) = prod_{j<i} q_ij^{I_i J_j}. Colors (G-degrees) are exponent
// vectors in Z^n; the skew bicharacter is chi(a,b) = prod_{i,j} q_ij^{a_i b_j}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace skewdga {

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponent vector in Z^n naming an element of the grading group G.
using ColorDegree = std::vector<std::int64_t>;

inline ColorDegree color_add(const ColorDegree& a, const ColorDegree& b)
{
    if (a.size() != b.size())
        throw AlgebraError("color dimension mismatch");
    ColorDegree c(a);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += b[i];
    return c;
}

inline ColorDegree color_scale(const ColorDegree& a, std::int64_t k)
{
    ColorDegree c(a);
    for (auto& e : c)
        e *= k;
    return c;
}

inline ColorDegree color_negate(const ColorDegree& a) { return color_scale(a, -1); }

inline std::string color_to_string(const ColorDegree& c)
{
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(c[i]);
    }
    return s + "]";
}

/// Ordered monomial x_1^{i_1}...x_n^{i_n} with its weighted internal degree.
///
/// Monomial order: graded by internal degree, then lexicographic with
/// x_1 < x_2 < ... < x_n (the exponent of x_n is compared first).
class Monomial {
public:
    Monomial() = default;
    Monomial(std::vector<std::int32_t> exponents, std::int64_t degree)
        : exps_(std::move(exponents)), degree_(degree)
    {
    }

    const std::vector<std::int32_t>& exponents() const { return exps_; }
    std::int32_t operator[](std::size_t i) const { return exps_[i]; }
    std::size_t size() const { return exps_.size(); }
    std::int64_t degree() const { return degree_; }
    /// Number of variable factors (ignores weights).
    std::int64_t length() const
    {
        std::int64_t s = 0;
        for (auto e : exps_)
            s += e;
        return s;
    }
    bool is_one() const { return length() == 0; }

    ColorDegree color() const { return ColorDegree(exps_.begin(), exps_.end()); }

    bool divides(const Monomial& other) const
    {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i])
                return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial c(a);
        for (std::size_t i = 0; i < c.exps_.size(); ++i)
            c.exps_[i] += b.exps_[i];
        c.degree_ += b.degree_;
        return c;
    }

    /// a / b, assuming b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b)
    {
        Monomial c(a);
        for (std::size_t i = 0; i < c.exps_.size(); ++i)
            c.exps_[i] -= b.exps_[i];
        c.degree_ -= b.degree_;
        return c;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (a.degree_ != b.degree_)
            return a.degree_ <=> b.degree_;
        for (std::size_t i = a.exps_.size(); i-- > 0;)
            if (a.exps_[i] != b.exps_[i])
                return a.exps_[i] <=> b.exps_[i];
        return std::strong_ordering::equal;
    }

private:
    std::vector<std::int32_t> exps_;
    std::int64_t degree_ = 0;
};

/// Multiplicatively antisymmetric matrix of commutation scalars.
template <class Scalar>
class QMatrix {
public:
    QMatrix() = default;
    explicit QMatrix(std::vector<std::vector<Scalar>> entries) : q_(std::move(entries))
    {
        const auto n = q_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (q_[i].size() != n)
                throw AlgebraError("q-matrix must be square");
            if (!q_[i][i].is_one())
                throw AlgebraError("diagonal must be 1");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (q_[i][j].is_zero())
                    throw AlgebraError("q-matrix entries must be nonzero");
                if (!(q_[i][j] * q_[j][i]).is_one())
                    throw AlgebraError("q[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                                       "] * q[" + std::to_string(j + 1) + "][" + std::to_string(i + 1) +
                                       "] must be 1");
            }
    }

    std::size_t size() const { return q_.size(); }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return q_[i][j]; }
    const std::vector<std::vector<Scalar>>& entries() const { return q_; }

private:
    std::vector<std::vector<Scalar>> q_;
};

/// chi(a,b) = prod_{i,j} q_ij^{a_i b_j}.
template <class Scalar>
Scalar chi(const ColorDegree& a, const ColorDegree& b, const QMatrix<Scalar>& q, const Scalar& one)
{
    if (a.size() != q.size() || b.size() != q.size())
        throw AlgebraError("chi: dimension mismatch");
    Scalar r = one;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i == j || b[j] == 0)
                continue;
            r *= q(i, j).pow(a[i] * b[j]);
        }
    }
    return r;
}

/// Ambient skew polynomial ring: field, q-matrix, variable weights and names.
template <ScalarField Field>
class SkewRing {
public:
    using Scalar = typename Field::Scalar;

    SkewRing(Field k, QMatrix<Scalar> q, std::vector<std::int64_t> weights, std::vector<std::string> names = {})
        : k_(std::move(k)), q_(std::move(q)), weights_(std::move(weights)), names_(std::move(names))
    {
        if (weights_.size() != q_.size())
            throw AlgebraError("one weight per variable required");
        for (auto w : weights_)
            if (w < 1)
                throw AlgebraError("variable internal degrees must be positive");
        if (names_.empty())
            for (std::size_t i = 0; i < weights_.size(); ++i)
                names_.push_back("x" + std::to_string(i + 1));
        if (names_.size() != weights_.size())
            throw AlgebraError("one name per variable required");
    }

    static std::shared_ptr<const SkewRing> create(Field k, QMatrix<Scalar> q, std::vector<std::int64_t> weights,
                                                  std::vector<std::string> names = {})
    {
        return std::make_shared<const SkewRing>(std::move(k), std::move(q), std::move(weights), std::move(names));
    }

    /// Standard-graded ring with q_ij for i<j given row-major in `upper`.
    static std::shared_ptr<const SkewRing> standard(Field k, std::size_t n, const std::vector<Scalar>& upper)
    {
        std::vector<std::vector<Scalar>> e(n, std::vector<Scalar>(n, k.one()));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                e[i][j] = upper.at(idx++);
                e[j][i] = e[i][j].inverse();
            }
        return create(k, QMatrix<Scalar>(std::move(e)), std::vector<std::int64_t>(n, 1));
    }

    const Field& field() const { return k_; }
    std::size_t nvars() const { return weights_.size(); }
    const QMatrix<Scalar>& q() const { return q_; }
    std::int64_t weight(std::size_t i) const { return weights_[i]; }
    const std::vector<std::int64_t>& weights() const { return weights_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    Monomial monomial(std::vector<std::int32_t> exps) const
    {
        if (exps.size() != nvars())
            throw AlgebraError("monomial has wrong number of exponents");
        std::int64_t d = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0)
                throw AlgebraError("negative exponent");
            d += exps[i] * weights_[i];
        }
        return Monomial(std::move(exps), d);
    }
    Monomial one_monomial() const { return Monomial(std::vector<std::int32_t>(nvars(), 0), 0); }
    Monomial variable(std::size_t i) const
    {
        std::vector<std::int32_t> e(nvars(), 0);
        e.at(i) = 1;
        return monomial(std::move(e));
    }
    ColorDegree unit_color(std::size_t j) const
    {
        ColorDegree c(nvars(), 0);
        c.at(j) = 1;
        return c;
    }
    ColorDegree zero_color() const { return ColorDegree(nvars(), 0); }

    /// Reordering constant in x^a x^b = twist(a,b) x^{a+b}.
    Scalar twist(const Monomial& a, const Monomial& b) const
    {
        Scalar r = k_.one();
        for (std::size_t i = 1; i < nvars(); ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < i; ++j)
                if (b[j] != 0)
                    r *= q_(i, j).pow(std::int64_t(a[i]) * b[j]);
        }
        return r;
    }

    Scalar chi(const ColorDegree& a, const ColorDegree& b) const { return skewdga::chi(a, b, q_, k_.one()); }

    /// (chi(a,e_1),...,chi(a,e_n)): identifies the normalizing automorphism of color a.
    std::vector<Scalar> character(const ColorDegree& a) const
    {
        std::vector<Scalar> c;
        c.reserve(nvars());
        for (std::size_t j = 0; j < nvars(); ++j)
            c.push_back(chi(a, unit_color(j)));
        return c;
    }

    std::string monomial_to_string(const Monomial& m) const
    {
        if (m.is_one())
            return "1";
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += names_[i];
            if (m[i] > 1)
                s += "^" + std::to_string(m[i]);
        }
        return s;
    }

private:
    Field k_;
    QMatrix<Scalar> q_;
    std::vector<std::int64_t> weights_;
    std::vector<std::string> names_;
};

template <ScalarField Field>
using RingPtr = std::shared_ptr<const SkewRing<Field>>;

/// Sparse linear combination of ordered monomials; no zero coefficients stored.
template <ScalarField Field>
class RingElement {
public:
    using Scalar = typename Field::Scalar;
    using Terms = std::map<Monomial, Scalar>;

    RingElement() = default;
    explicit RingElement(RingPtr<Field> ring) : ring_(std::move(ring)) {}
    RingElement(RingPtr<Field> ring, Terms terms) : ring_(std::move(ring)), terms_(std::move(terms))
    {
        std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
    }

    static RingElement constant(RingPtr<Field> ring, const Scalar& c)
    {
        RingElement f(ring);
        f.add_term(ring->one_monomial(), c);
        return f;
    }
    static RingElement term(RingPtr<Field> ring, const Monomial& m, const Scalar& c)
    {
        RingElement f(std::move(ring));
        f.add_term(m, c);
        return f;
    }
    static RingElement variable(RingPtr<Field> ring, std::size_t i)
    {
        auto m = ring->variable(i);
        auto one = ring->field().one();
        return term(std::move(ring), m, one);
    }

    const RingPtr<Field>& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const Monomial& leading_monomial() const
    {
        if (is_zero())
            throw AlgebraError("leading monomial of zero");
        return terms_.rbegin()->first;
    }
    const Scalar& leading_coefficient() const
    {
        if (is_zero())
            throw AlgebraError("leading coefficient of zero");
        return terms_.rbegin()->second;
    }

    Scalar coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring_->field().zero() : it->second;
    }

    void add_term(const Monomial& m, const Scalar& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    /// Internal degree if every term shares it.
    std::optional<std::int64_t> homogeneous_degree() const
    {
        if (is_zero())
            return std::nullopt;
        auto d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                return std::nullopt;
        return d;
    }
    std::int64_t max_degree() const { return is_zero() ? 0 : terms_.rbegin()->first.degree(); }

    RingElement& operator+=(const RingElement& o)
    {
        check_ring(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    RingElement& operator-=(const RingElement& o)
    {
        check_ring(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    RingElement& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator-(RingElement a)
    {
        for (auto& [m, c] : a.terms_)
            c = -c;
        return a;
    }
    friend RingElement operator*(RingElement a, const Scalar& s) { return a *= s; }
    friend RingElement operator*(const Scalar& s, RingElement a) { return a *= s; }

    /// Product in the skew polynomial ring (no quotient).
    friend RingElement operator*(const RingElement& a, const RingElement& b)
    {
        a.check_ring(b);
        RingElement r(a.ring_ ? a.ring_ : b.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(ma * mb, ca * cb * r.ring_->twist(ma, mb));
        return r;
    }

    friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string cs = it->second.to_string();
            bool negative = !cs.empty() && cs[0] == '-';
            if (negative)
                cs = cs.substr(1);
            if (first)
                s += negative ? "-" : "";
            else
                s += negative ? " - " : " + ";
            first = false;
            if (it->first.is_one())
                s += cs;
            else if (cs == "1")
                s += ring_->monomial_to_string(it->first);
            else
                s += cs + "*" + ring_->monomial_to_string(it->first);
        }
        return s;
    }

private:
    void check_ring(const RingElement& o) const
    {
        if (ring_ && o.ring_ && ring_ != o.ring_)
            throw AlgebraError("ambient ring mismatch");
    }

    RingPtr<Field> ring_;
    Terms terms_;
};

template <ScalarField Field>
RingElement<Field> multiply(const RingElement<Field>& f, const RingElement<Field>& g)
{
    return f * g;
}

/// Common color of all support monomials, if f is G-homogeneous.
///
/// Two exponent vectors are identified when they induce the same character
/// chi(-, e_j) on every variable. The representative returned is the color
/// of the least support monomial.
template <ScalarField Field>
std::optional<ColorDegree> color_degree(const RingElement<Field>& f)
{
    if (f.is_zero())
        throw AlgebraError("color_degree of zero element");
    const auto& ring = *f.ring();
    const auto& first = f.terms().begin()->first;
    auto reference = ring.character(first.color());
    for (const auto& [m, c] : f.terms())
        if (ring.character(m.color()) != reference)
            return std::nullopt;
    return first.color();
}

template <ScalarField Field>
struct NormalityCertificate {
    bool normal = false;
    std::optional<ColorDegree> color;
    /// f x_j = beta_j x_j f, when normal.
    std::vector<typename Field::Scalar> beta;
};

template <ScalarField Field>
NormalityCertificate<Field> is_normal(const RingElement<Field>& f)
{
    if (f.is_zero())
        throw AlgebraError("is_normal of zero element");
    if (!f.homogeneous_degree())
        throw AlgebraError("is_normal requires an element homogeneous in internal degree");
    NormalityCertificate<Field> cert;
    cert.color = color_degree(f);
    cert.normal = cert.color.has_value();
    if (cert.normal)
        cert.beta = f.ring()->character(*cert.color);
    return cert;
}

/// Colors a, b are the same group element when their characters agree.
template <ScalarField Field>
bool same_color(const SkewRing<Field>& ring, const ColorDegree& a, const ColorDegree& b)
{
    return a == b || ring.character(a) == ring.character(b);
}

} // namespace skewdga

#endif // SKEWDGA_SKEWPOLY_HPP
