#ifndef SKEWDGA_TEST_SUPPORT_HPP
#define SKEWDGA_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "skewdga/skewpoly.hpp"

namespace testing_support {

using namespace skewdga;
using QQ = RationalField;
using Poly = RingElement<QQ>;

inline RingPtr<QQ> ring2(long q12num, long q12den = 1)
{
    QQ k;
    return SkewRing<QQ>::standard(k, 2, {k.from_fraction(q12num, q12den)});
}

inline Poly var(const RingPtr<QQ>& r, std::size_t i) { return Poly::variable(r, i); }
inline Poly cst(const RingPtr<QQ>& r, long c) { return Poly::constant(r, QQ().from_int(c)); }

/// Random ring with n variables and small rational q-entries.
inline RingPtr<QQ> random_ring(std::mt19937& g, std::size_t n)
{
    QQ k;
    const long vals[] = {1, -1, 2, -2, 3};
    std::vector<Rational> upper;
    std::uniform_int_distribution<int> pick(0, 4), inv(0, 1);
    for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) {
        auto v = k.from_int(vals[pick(g)]);
        upper.push_back(inv(g) ? v.inverse() : v);
    }
    return SkewRing<QQ>::standard(k, n, upper);
}

inline Monomial random_monomial(std::mt19937& g, const SkewRing<QQ>& r, int maxexp)
{
    std::uniform_int_distribution<int> e(0, maxexp);
    std::vector<std::int32_t> v(r.nvars());
    for (auto& x : v)
        x = e(g);
    return r.monomial(v);
}

inline Poly random_poly(std::mt19937& g, const RingPtr<QQ>& r, int terms, int maxexp)
{
    std::uniform_int_distribution<int> c(-3, 3);
    Poly f(r);
    for (int t = 0; t < terms; ++t)
        f.add_term(random_monomial(g, *r, maxexp), QQ().from_int(c(g)));
    return f;
}

/// Random element homogeneous of internal degree d (all weights 1).
inline Poly random_homogeneous(std::mt19937& g, const RingPtr<QQ>& r, int d, int terms)
{
    std::uniform_int_distribution<int> c(-3, 3);
    std::uniform_int_distribution<std::size_t> v(0, r->nvars() - 1);
    Poly f(r);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::int32_t> e(r->nvars(), 0);
        for (int i = 0; i < d; ++i)
            ++e[v(g)];
        f.add_term(r->monomial(e), QQ().from_int(c(g)));
    }
    return f;
}

} // namespace testing_support

#endif
