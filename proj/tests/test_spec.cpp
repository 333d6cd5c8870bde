#include <gtest/gtest.h>

#include <random>

#include "skewdga/spec.hpp"

using namespace skewdga;

namespace {

const char* quantum_plane = R"(# k_q[x,y]/(x^2, y^2)
field QQ
var x deg 1
var y deg 1
q 1 2 -1
rel x^2
rel y^2
bounds hdeg 6 ideg 8
)";

SpecError error_of(const std::string& text)
{
    try {
        parse_ring_spec(text);
    } catch (const SpecError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return SpecError(0, 0, "");
}

TEST(Spec, ParsesQuantumPlane)
{
    auto s = parse_ring_spec(quantum_plane);
    EXPECT_EQ(s.prime, 0u);
    EXPECT_EQ(s.nvars(), 2u);
    EXPECT_EQ(s.relations.size(), 2u);
    EXPECT_EQ(s.q.at({0, 1}), Rational(-1));
    EXPECT_EQ(*s.hdeg_bound, 6);
    EXPECT_EQ(*s.ideg_bound, 8);
    auto inst = build_instance(s, RationalField{});
    EXPECT_EQ(inst.relations[0].to_string(), "x^2");
    EXPECT_EQ(inst.ambient->q()(1, 0), Rational(-1));
}

TEST(Spec, SyntaxErrorsCarryPosition)
{
    auto e = error_of("field QQ\nvar x deg 1\nrel x^2 + * x\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 11u);
    e = error_of("field QQ\nvar x deg 1\nrel x*z\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 7u);
    EXPECT_NE(std::string(e.what()).find("unknown variable 'z'"), std::string::npos);
    e = error_of("field QQ\nvar x deg 0\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
    e = error_of("field QQ\n  bogus\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    e = error_of("field QQ\nvar x deg 1\nbounds hdeg 3\n");
    EXPECT_EQ(e.line(), 3u);
    e = error_of("field GF 9\nvar x deg 1\n");
    EXPECT_EQ(e.column(), 10u);
}

TEST(Spec, QMatrixAxioms)
{
    auto e = error_of("field QQ\nvar x deg 1\nq 1 1 2\n");
    EXPECT_NE(std::string(e.what()).find("diagonal must be 1"), std::string::npos);
    EXPECT_EQ(e.line(), 3u);
    e = error_of("field QQ\nvar x deg 1\nvar y deg 1\nq 1 2 0\n");
    EXPECT_NE(std::string(e.what()).find("nonzero"), std::string::npos);
    e = error_of("field QQ\nvar x deg 1\nvar y deg 1\nq 1 2 2\nq 2 1 2\n");
    EXPECT_EQ(e.line(), 5u);
    // a consistent lower entry is folded into the upper one
    auto s = parse_ring_spec("field QQ\nvar x deg 1\nvar y deg 1\nq 2 1 1/3\n");
    EXPECT_EQ(s.q.at({0, 1}), Rational(3));
    e = error_of("field QQ\nvar x deg 1\nq 1 3 2\n");
    EXPECT_NE(std::string(e.what()).find("out of range"), std::string::npos);
}

TEST(Spec, NonNormalRelationNamesOffendingPair)
{
    auto s = parse_ring_spec("field QQ\nvar x1 deg 1\nvar x2 deg 1\nq 1 2 5\nrel x1 + x2\n");
    try {
        build_instance(s, RationalField{});
        FAIL();
    } catch (const SpecError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("relation not normal"), std::string::npos);
        EXPECT_NE(msg.find("x1 and x2"), std::string::npos);
        EXPECT_EQ(e.line(), 5u);
    }
    // same relation is normal when the variables commute
    auto c = parse_ring_spec("field QQ\nvar x1 deg 1\nvar x2 deg 1\nrel x1 + x2\n");
    EXPECT_NO_THROW(build_instance(c, RationalField{}));
    auto h = parse_ring_spec("field QQ\nvar x deg 1\nvar y deg 2\nrel x^2 + y\nrel x + y\n");
    EXPECT_NO_THROW(build_instance(parse_ring_spec("field QQ\nvar x deg 1\nvar y deg 2\nrel x^2 + y\n"),
                                   RationalField{}));
    EXPECT_THROW(build_instance(h, RationalField{}), SpecError);
    EXPECT_NO_THROW(build_instance(s, RationalField{}, false));
}

TEST(Spec, EvaluatesInSkewRing)
{
    auto s = parse_ring_spec("field QQ\nvar x deg 1\nvar y deg 1\nq 1 2 2\nrel y*x - 1/2*x*y\nrel (x+y)^2\n");
    auto r = build_ring(s, RationalField{});
    auto rels = std::vector{evaluate(*s.relations[0].expr, r), evaluate(*s.relations[1].expr, r)};
    // y x = q_21 x y = 1/2 x y
    EXPECT_TRUE(rels[0].is_zero());
    // (x + y)^2 = x^2 + (1 + 1/2) x y + y^2
    EXPECT_EQ(rels[1].coefficient(r->monomial({1, 1})), Rational(mpq_class(3, 2)));
    EXPECT_EQ(rels[1].coefficient(r->monomial({2, 0})), Rational(1));
    EXPECT_EQ(rels[1].size(), 3u);
}

TEST(Spec, PrimeFieldScalars)
{
    auto s = parse_ring_spec("field GF 7\nvar a deg 1\nvar b deg 1\nq 1 2 1/2\nrel 3/5*a*b\n");
    PrimeField k(7);
    auto inst = build_instance(s, k);
    // 1/2 = 4 and 3/5 = 2 in GF(7)
    EXPECT_EQ(inst.ambient->q()(0, 1), k.from_int(4));
    EXPECT_EQ(inst.relations[0].leading_coefficient(), k.from_int(2));
    auto bad = parse_ring_spec("field GF 7\nvar a deg 1\nvar b deg 1\nq 1 2 7\n");
    EXPECT_THROW(build_instance(bad, k), SpecError);
}

std::string random_poly(std::mt19937& g, const std::vector<std::string>& names)
{
    std::uniform_int_distribution<int> nterms(1, 3), coef(-4, 4), den(1, 3), exp(0, 3), pick(0, 2);
    std::string s;
    for (int t = nterms(g); t > 0; --t) {
        int c = coef(g);
        if (c == 0)
            c = 1;
        s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        s += std::to_string(std::abs(c));
        if (int d = den(g); d > 1)
            s += "/" + std::to_string(d);
        for (const auto& n : names)
            if (int e = exp(g); e > 0)
                s += "*" + n + (e > 1 ? "^" + std::to_string(e) : "");
        if (pick(g) == 0)
            s = "(" + s + ")";
    }
    return s;
}

TEST(Spec, RoundTripIsIdentity)
{
    std::mt19937 g(5);
    const long vals[] = {-3, -1, 2, 5};
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> n(1, 4), deg(1, 3), pick(0, 3), coin(0, 1);
        std::string text = coin(g) ? "field QQ\n" : "field GF 11\n";
        std::vector<std::string> names;
        const int nv = n(g);
        for (int i = 0; i < nv; ++i) {
            names.push_back("v" + std::to_string(i));
            text += "var " + names.back() + " deg " + std::to_string(deg(g)) + "\n";
        }
        for (int i = 0; i < nv; ++i)
            for (int j = i + 1; j < nv; ++j)
                if (coin(g))
                    text += "q " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
                            std::to_string(vals[pick(g)]) + (coin(g) ? "/7" : "") + "\n";
        for (int r = pick(g); r > 0; --r)
            text += "rel " + random_poly(g, names) + "   # comment\n";
        if (coin(g))
            text += "bounds hdeg " + std::to_string(pick(g) + 2) + " ideg " + std::to_string(pick(g) + 4) + "\n";
        auto a = parse_ring_spec(text);
        auto printed = print_ring_spec(a);
        auto b = parse_ring_spec(printed);
        EXPECT_EQ(a, b) << text;
        EXPECT_EQ(print_ring_spec(b), printed);
        if (a.prime == 0) {
            auto ia = build_instance(a, RationalField{}, false), ib = build_instance(b, RationalField{}, false);
            for (std::size_t i = 0; i < ia.relations.size(); ++i)
                EXPECT_EQ(ia.relations[i].to_string(), ib.relations[i].to_string());
        }
    }
}

} // namespace
