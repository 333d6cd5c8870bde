#ifndef SKEWDGA_FIELD_HPP
#define SKEWDGA_FIELD_HPP

// Exact scalar fields: arbitrary-precision rationals and prime fields F_p.
//
// A field is described by a small descriptor type (RationalField, PrimeField)
// that manufactures scalars; the scalars themselves carry enough state to do
// arithmetic on their own, so algorithms only need the descriptor to create
// constants.

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace skewdga {

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rational inverse() const
    {
        if (is_zero())
            throw FieldError("division by zero");
        return Rational(mpq_class(1) / v_);
    }

    /// Integer power; negative exponents invert.
    Rational pow(std::int64_t e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        mpq_class r(1), b(v_);
        while (e > 0) {
            if (e & 1)
                r *= b;
            b *= b;
            e >>= 1;
        }
        return Rational(r);
    }

    std::string to_string() const
    {
        if (v_.get_den() == 1)
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    const mpq_class& value() const { return v_; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero())
            throw FieldError("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.to_string(); }

private:
    mpq_class v_;
};

struct RationalField {
    using Scalar = Rational;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar from_int(std::int64_t v) const { return Scalar(static_cast<long>(v)); }
    Scalar from_integer(const mpz_class& v) const { return Scalar(mpq_class(v)); }
    Scalar from_fraction(const mpz_class& num, const mpz_class& den) const
    {
        if (den == 0)
            throw FieldError("zero denominator");
        return Scalar(mpq_class(num, den));
    }
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "QQ"; }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Element of F_p. Carries its modulus; p == 0 only for default-constructed
/// placeholders, which adopt the modulus of the other operand.
class ModP {
public:
    ModP() = default;
    ModP(std::uint64_t value, std::uint64_t p) : v_(p ? value % p : value), p_(p) {}

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    ModP pow(std::int64_t e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        std::uint64_t r = 1 % (p_ ? p_ : 2), b = v_;
        auto ue = static_cast<std::uint64_t>(e);
        while (ue > 0) {
            if (ue & 1)
                r = mul(r, b, p_);
            b = mul(b, b, p_);
            ue >>= 1;
        }
        return ModP(r, p_);
    }

    ModP inverse() const
    {
        if (v_ == 0)
            throw FieldError("division by zero");
        // p prime: a^(p-2)
        return pow(static_cast<std::int64_t>(p_ - 2));
    }

    std::string to_string() const { return std::to_string(v_); }

    ModP& operator+=(const ModP& o)
    {
        adopt(o);
        v_ += o.v_;
        if (v_ >= p_)
            v_ -= p_;
        return *this;
    }
    ModP& operator-=(const ModP& o)
    {
        adopt(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    ModP& operator*=(const ModP& o)
    {
        adopt(o);
        v_ = mul(v_, o.v_, p_);
        return *this;
    }
    ModP& operator/=(const ModP& o)
    {
        adopt(o);
        return *this *= o.inverse();
    }
    friend ModP operator+(ModP a, const ModP& b) { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
    friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
    friend ModP operator-(const ModP& a) { return ModP(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
    friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const ModP& a, const ModP& b) { return a.v_ <=> b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const ModP& a) { return os << a.v_; }

private:
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
    {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    void adopt(const ModP& o)
    {
        if (p_ == 0) {
            p_ = o.p_;
            if (p_)
                v_ %= p_;
        }
        if (p_ != o.p_ && o.p_ != 0)
            throw FieldError("mixed prime fields");
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

inline bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

struct PrimeField {
    using Scalar = ModP;

    explicit PrimeField(std::uint64_t prime) : p(prime)
    {
        // Divided powers use binomials; char 2 sign degeneracies are not handled.
        if (p <= 2 || !is_prime(p) || p >= (std::uint64_t(1) << 32))
            throw FieldError("GF(p) requires an odd prime p, got " + std::to_string(prime));
    }

    Scalar zero() const { return Scalar(0, p); }
    Scalar one() const { return Scalar(1, p); }
    Scalar from_int(std::int64_t v) const
    {
        auto m = static_cast<std::int64_t>(p);
        std::int64_t r = v % m;
        if (r < 0)
            r += m;
        return Scalar(static_cast<std::uint64_t>(r), p);
    }
    Scalar from_integer(const mpz_class& v) const
    {
        mpz_class r = v % mpz_class(std::to_string(p));
        if (r < 0)
            r += mpz_class(std::to_string(p));
        return Scalar(std::stoull(r.get_str()), p);
    }
    Scalar from_fraction(const mpz_class& num, const mpz_class& den) const
    {
        Scalar d = from_integer(den);
        if (d.is_zero())
            throw FieldError("denominator vanishes in GF(" + std::to_string(p) + ")");
        return from_integer(num) / d;
    }
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return "GF(" + std::to_string(p) + ")"; }
    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }

    std::uint64_t p;
};

template <class F>
concept ScalarField = requires(const F& f, std::int64_t i, const mpz_class& z) {
    typename F::Scalar;
    { f.zero() } -> std::same_as<typename F::Scalar>;
    { f.one() } -> std::same_as<typename F::Scalar>;
    { f.from_int(i) } -> std::same_as<typename F::Scalar>;
    { f.from_integer(z) } -> std::same_as<typename F::Scalar>;
    { f.name() } -> std::convertible_to<std::string>;
};

/// C(n, k) computed in Z.
inline mpz_class binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline mpz_class factorial(std::int64_t n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// (hk)! / (k! (h!)^k), the coefficient in (x^(h))^(k) = [h k] x^(hk).
inline mpz_class divided_power_composite(std::int64_t h, std::int64_t k)
{
    mpz_class hf = factorial(h), den = factorial(k);
    for (std::int64_t i = 0; i < k; ++i)
        den *= hf;
    mpz_class num = factorial(h * k);
    return num / den;
}

} // namespace skewdga

#endif // SKEWDGA_FIELD_HPP
