// Command-line front end: reads a ring description file, runs one command,
// prints a JSON (or plain text) report.
//
// Exit status: 0 ok, 1 verification failure, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewdga/skewdga.hpp"

using json = nlohmann::json;
using namespace skewdga;

namespace {

struct Flags {
    std::string command;
    std::string file;
    std::optional<std::int64_t> hdeg;
    std::optional<std::int64_t> deg;
    std::string color;
    bool json_output = true;
    bool no_timing = false;
    std::optional<std::uint64_t> seed;
    bool variables = false;
};

struct Outcome {
    json result = json::object();
    std::vector<std::string> warnings;
    bool failed = false;
};

json color_json(const ColorDegree& c) { return json(c); }

std::optional<ColorDegree> parse_color(const std::string& s, std::size_t n)
{
    if (s.empty())
        return std::nullopt;
    std::string body = s;
    std::erase_if(body, [](char ch) { return ch == '[' || ch == ']' || std::isspace(static_cast<unsigned char>(ch)); });
    ColorDegree c;
    std::stringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto v = detail::parse_int64(item);
        if (!v)
            throw SpecError(0, 0, "malformed --color '" + s + "'");
        c.push_back(*v);
    }
    if (c.size() != n)
        throw SpecError(0, 0, "--color needs " + std::to_string(n) + " exponents");
    return c;
}

json series_json(const TruncatedSeries& s) { return json(s.coeffs); }

template <ScalarField Field>
class Runner {
public:
    using Scalar = typename Field::Scalar;

    Runner(const RingSpec& spec, Field k, const Flags& flags) : spec_(spec), k_(std::move(k)), flags_(flags)
    {
        N_ = flags.hdeg.value_or(spec.hdeg_bound.value_or(4));
        D_ = flags.deg.value_or(spec.ideg_bound.value_or(8));
        if (N_ < 0 || D_ < 0)
            throw SpecError(0, 0, "bounds must be nonnegative");
    }

    std::int64_t hdeg() const { return N_; }
    std::int64_t ideg() const { return D_; }

    Outcome run()
    {
        const auto& c = flags_.command;
        inst_ = build_instance(spec_, k_, c != "check-normal");
        filter_ = parse_color(flags_.color, spec_.nvars());
        if (c == "check-normal")
            return check_normal();
        R_ = QuotientRing<Field>::create(inst_.ambient, inst_.relations, D_);
        if (c == "groebner")
            return groebner();
        if (c == "hilbert")
            return hilbert();
        if (c == "koszul-homology")
            return koszul_homology();
        if (c == "closure")
            return closure();
        if (c == "deviations")
            return deviations_cmd();
        if (c == "poincare")
            return poincare();
        if (c == "betti")
            return betti();
        if (c == "ext-presentation")
            return presentation();
        if (c == "verify-ext")
            return verify_ext();
        if (c == "complexity")
            return complexity_cmd();
        if (c == "k2")
            return k2();
        throw SpecError(0, 0, "unknown command '" + c + "'");
    }

private:
    bool color_matches(const ColorDegree& c) const { return !filter_ || same_color(R_->ring(), c, *filter_); }

    Outcome check_normal()
    {
        Outcome out;
        json rels = json::array();
        for (std::size_t i = 0; i < inst_.relations.size(); ++i) {
            const auto& f = inst_.relations[i];
            json r{{"index", i + 1}, {"text", spec_.relations[i].text}, {"polynomial", f.to_string()}};
            if (f.is_zero()) {
                r["normal"] = false;
                r["failure"] = "relation is zero";
                out.failed = true;
            } else if (!f.homogeneous_degree()) {
                r["homogeneous"] = false;
                r["normal"] = false;
                r["failure"] = "relation not homogeneous";
                out.failed = true;
            } else {
                auto cert = is_normal(f);
                r["homogeneous"] = true;
                r["degree"] = *f.homogeneous_degree();
                r["normal"] = cert.normal;
                if (cert.normal) {
                    r["color"] = color_json(*cert.color);
                    json beta = json::array();
                    for (const auto& b : cert.beta)
                        beta.push_back(b.to_string());
                    r["commutation_scalars"] = beta;
                } else {
                    r["failure"] = "relation not normal: " + normality_failure(f);
                    out.failed = true;
                }
            }
            rels.push_back(r);
        }
        out.result["relations"] = rels;
        return out;
    }

    Outcome groebner()
    {
        Outcome out;
        json basis = json::array(), leads = json::array();
        for (const auto& g : R_->groebner().elements()) {
            basis.push_back(g.to_string());
            leads.push_back(R_->ring().monomial_to_string(g.leading_monomial()));
        }
        out.result = {{"basis", basis}, {"leading_monomials", leads}, {"truncation", D_}};
        return out;
    }

    Outcome hilbert()
    {
        Outcome out;
        out.result = {{"series", series_json(R_->hilbert_series(D_))}, {"truncation", D_}};
        return out;
    }

    Outcome koszul_homology()
    {
        Outcome out;
        SemiFreeExtension<Field> A = flags_.variables ? koszul_complex_of_ring(R_, N_, D_) : ambient_koszul();
        const auto top = flags_.variables ? std::min<std::int64_t>(N_, static_cast<std::int64_t>(spec_.nvars()))
                                          : static_cast<std::int64_t>(inst_.relations.size());
        json groups = json::array();
        bool acyclic = true;
        std::vector<std::int64_t> h0(static_cast<std::size_t>(D_) + 1, 0);
        for (std::int64_t n = 0; n <= top; ++n)
            for (std::int64_t d = 0; d <= D_; ++d)
                for (const auto& g : stratum_homology(A, n, d)) {
                    if (g.dim() == 0 || !color_matches(g.color))
                        continue;
                    groups.push_back({{"hdeg", n}, {"ideg", d}, {"color", color_json(g.color)}, {"dim", g.dim()}});
                    if (n > 0)
                        acyclic = false;
                    else
                        h0[static_cast<std::size_t>(d)] += static_cast<std::int64_t>(g.dim());
                }
        out.result["complex"] = flags_.variables ? "K^R(x)" : "K^Q(f)";
        out.result["homology"] = groups;
        out.result["acyclic"] = acyclic;
        if (!flags_.variables && !filter_)
            out.result["h0_matches_quotient"] = TruncatedSeries(h0) == R_->hilbert_series(D_);
        return out;
    }

    SemiFreeExtension<Field> ambient_koszul()
    {
        auto Q = QuotientRing<Field>::create(inst_.ambient, {}, D_);
        return koszul_complex(Q, inst_.relations, static_cast<std::int64_t>(inst_.relations.size()), D_);
    }

    ClosureResult<Field> make_closure()
    {
        ClosureOptions opt;
        opt.shuffle_seed = flags_.seed;
        return acyclic_closure(R_, N_, D_, opt);
    }

    json deviations_json(const DeviationTable& dev)
    {
        json entries = json::array();
        for (const auto& [key, count] : dev.entries())
            if (color_matches(key.color))
                entries.push_back({{"hdeg", key.hdeg}, {"ideg", key.ideg}, {"color", color_json(key.color)},
                                   {"count", count}});
        return {{"entries", entries}, {"totals", dev.totals(N_)}};
    }

    Outcome closure()
    {
        Outcome out;
        auto C = make_closure();
        const auto& A = C.extension;
        json vars = json::array();
        for (std::size_t i = 0; i < A.num_variables(); ++i) {
            const auto& v = A.variable(i);
            if (!color_matches(v.color))
                continue;
            vars.push_back({{"index", i + 1},
                            {"hdeg", v.hdeg},
                            {"ideg", v.ideg},
                            {"color", color_json(v.color)},
                            {"boundary", A.boundary(i).to_string()}});
        }
        out.result["variables"] = vars;
        out.result["deviations"] = deviations_json(C.deviations);
        out.result["minimal"] = C.minimality.minimal;
        out.result["words_checked"] = C.minimality.words_checked;
        out.warnings = C.warnings;
        out.failed = !C.minimality.minimal;
        return out;
    }

    Outcome deviations_cmd()
    {
        Outcome out;
        auto C = make_closure();
        out.result = deviations_json(C.deviations);
        out.warnings = C.warnings;
        return out;
    }

    Outcome poincare()
    {
        Outcome out;
        auto C = make_closure();
        auto bt = betti_table(C);
        auto P = poincare_from_deviations(C.deviations, N_);
        out.result["from_deviations"] = series_json(P);
        out.result["betti_row_sums"] = bt.row_sums();
        auto big = poincare_bigraded(C.deviations, N_, D_);
        std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> entries;
        for (const auto& [key, v] : bt.entries)
            if (v != 0)
                entries[key] = v;
        out.result["bigraded_agree"] = big == entries;
        out.failed = big != entries;
        auto ci = check_skew_ci(*R_, D_);
        if (ci.is_ci) {
            TruncatedSeries formula(static_cast<std::size_t>(N_) + 1);
            formula[0] = 1;
            formula.multiply_binomial(1, 1, static_cast<std::int64_t>(spec_.nvars()));
            formula.multiply_binomial(2, -1, -static_cast<std::int64_t>(inst_.relations.size()));
            out.result["complete_intersection_formula"] = series_json(formula);
            if (std::any_of(spec_.variables.begin(), spec_.variables.end(), [](const auto& v) { return v.deg != 1; }))
                out.warnings.push_back("formula counts cohomological degree only; weights ignored");
        }
        out.warnings.insert(out.warnings.end(), C.warnings.begin(), C.warnings.end());
        return out;
    }

    Outcome betti()
    {
        Outcome out;
        auto C = make_closure();
        const auto& A = C.extension;
        json entries = json::array();
        std::vector<std::int64_t> sums;
        for (std::int64_t i = 0; i <= N_; ++i) {
            std::map<std::int64_t, std::int64_t> row;
            for (const auto& w : A.words(i, D_))
                if (color_matches(A.word_color(w)))
                    ++row[A.word_ideg(w)];
            std::int64_t total = 0;
            for (const auto& [j, v] : row) {
                entries.push_back({{"hdeg", i}, {"ideg", j}, {"count", v}});
                total += v;
            }
            sums.push_back(total);
        }
        out.result = {{"entries", entries}, {"row_sums", sums}};
        out.warnings = C.warnings;
        return out;
    }

    json presentation_json(const ExtPresentation<Field>& p)
    {
        json gens = json::array(), rels = json::array();
        for (const auto& g : p.generators)
            gens.push_back({{"name", g.name}, {"hdeg", g.hdeg}, {"ideg", g.ideg}, {"color", color_json(g.color)}});
        for (const auto& r : p.relations)
            rels.push_back({{"kind", r.kind}, {"relation", relation_to_string(p, r)}, {"hdeg", r.hdeg},
                            {"ideg", r.ideg}});
        return {{"generators", gens},
                {"relations", rels},
                {"bracket", "[a,b] = ab - (-1)^{|a||b|} chi(a,b) ba"},
                {"structure", "graded color Hopf algebra (coproduct not computed)"}};
    }

    Outcome presentation()
    {
        Outcome out;
        out.result = presentation_json(ext_presentation(*R_, D_));
        return out;
    }

    Outcome verify_ext()
    {
        Outcome out;
        auto rep = verify_presentation(R_, N_, D_);
        json dims = json::array(), rels = json::array();
        for (const auto& d : rep.dimensions)
            dims.push_back({{"hdeg", d.hdeg}, {"betti", d.betti}, {"upi", d.upi}});
        for (const auto& r : rep.relations)
            rels.push_back({{"relation", r.relation},
                            {"kind", r.kind},
                            {"hdeg", r.hdeg},
                            {"checked", r.checked},
                            {"vanishes_lift_right", r.vanishes_lift_right},
                            {"vanishes_lift_left", r.vanishes_lift_left}});
        out.result["dimensions"] = dims;
        out.result["relations"] = rels;
        out.result["convention"] = rep.convention ? json(to_string(*rep.convention)) : json(nullptr);
        bool passed = rep.passed;
        if (rep.convention) {
            auto p = ext_presentation(*R_, D_);
            YonedaEngine<Field> engine(presentation_closure(R_, p, N_, D_));
            auto lie = color_lie_check(engine, p, *rep.convention);
            out.result["color_lie"] = {{"brackets_in_degree_two", lie.brackets_in_degree_two},
                                       {"matches_presentation", lie.matches_presentation},
                                       {"anticommutative", lie.anticommutative},
                                       {"jacobi", lie.jacobi},
                                       {"even_squares_vanish", lie.even_squares_vanish},
                                       {"odd_cube_vanishes", lie.odd_cube_vanishes},
                                       {"square_bracket", lie.square_bracket},
                                       {"triples_checked", lie.triples_checked}};
            auto noeth = noetherian_witness(engine, p, N_, *rep.convention);
            json nd = json::array();
            for (const auto& d : noeth.degrees)
                nd.push_back({{"hdeg", d.hdeg}, {"dimension", d.dimension}, {"spanned", d.spanned}});
            out.result["noetherian_witness"] = {{"passed", noeth.passed}, {"degrees", nd}};
            passed = passed && lie.passed() && noeth.passed;
        }
        out.result["passed"] = passed;
        out.warnings = rep.messages;
        out.failed = !passed;
        return out;
    }

    Outcome complexity_cmd()
    {
        Outcome out;
        auto C = make_closure();
        auto bt = betti_table(C);
        auto rep = complexity(*R_, bt);
        out.result = {{"value", rep.value}, {"exact", rep.exact}, {"note", rep.note}, {"betti_row_sums", bt.row_sums()}};
        if (!rep.exact && N_ < 6)
            out.warnings.push_back("estimate from fewer than 6 homological degrees");
        return out;
    }

    Outcome k2()
    {
        Outcome out;
        auto C = make_closure();
        YonedaEngine<Field> engine(C.extension);
        auto rep = k2_check(engine, N_);
        json degs = json::array();
        for (const auto& d : rep.degrees)
            degs.push_back({{"hdeg", d.hdeg}, {"dimension", d.dimension}, {"spanned", d.spanned}});
        out.result = {{"passed", rep.passed}, {"verified_to", rep.verified_to}, {"degrees", degs}};
        out.warnings = C.warnings;
        out.failed = !rep.passed;
        return out;
    }

    RingSpec spec_;
    Field k_;
    Flags flags_;
    std::int64_t N_ = 0, D_ = 0;
    RingInstance<Field> inst_;
    QuotientPtr<Field> R_;
    std::optional<ColorDegree> filter_;
};

void print_text(const json& j, const std::string& prefix, std::ostream& os)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            print_text(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i)
            print_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Color DG algebras over quotients of skew polynomial rings"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check-normal", "check that each relation is homogeneous and normal"},
        {"groebner", "two-sided Groebner basis of the relations"},
        {"hilbert", "Hilbert series of the quotient"},
        {"koszul-homology", "homology of the Koszul complex on the relations"},
        {"closure", "truncated acyclic closure of the residue field"},
        {"deviations", "deviation table of the acyclic closure"},
        {"poincare", "Poincare series from deviations and Betti numbers"},
        {"betti", "Betti table of the minimal resolution"},
        {"ext-presentation", "presentation of Ext for a skew complete intersection"},
        {"verify-ext", "check the Ext presentation with Yoneda products"},
        {"complexity", "complexity of the residue field"},
        {"k2", "check generation of Ext in degrees one and two"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("spec", flags.file, "ring description file")->required();
        sub->add_option("--hdeg", flags.hdeg, "homological bound N");
        sub->add_option("--deg", flags.deg, "internal degree bound D");
        sub->add_option("--color", flags.color, "only report entries of this color, e.g. [1,0]");
        sub->add_flag("--json,!--text", flags.json_output, "output format (JSON by default)");
        sub->add_option("--seed", flags.seed, "seed for randomized representative choices");
        sub->add_flag("--no-timing", flags.no_timing, "report elapsed_ms as 0 for byte-identical output");
        if (name == "koszul-homology")
            sub->add_flag("--variables", flags.variables, "use the Koszul complex on the variables over R");
        sub->callback([&flags, n = name] { flags.command = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    const bool text = !flags.json_output;

    const auto start = std::chrono::steady_clock::now();
    json report;
    Outcome outcome;
    try {
        std::ifstream in(flags.file);
        if (!in)
            throw SpecError(0, 0, "cannot read '" + flags.file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        auto spec = parse_ring_spec(buf.str());
        auto go = [&](auto runner) {
            report["bounds"] = {{"hdeg", runner.hdeg()}, {"ideg", runner.ideg()}};
            outcome = runner.run();
        };
        if (spec.prime == 0)
            go(Runner<RationalField>(spec, RationalField{}, flags));
        else
            go(Runner<PrimeField>(spec, PrimeField(spec.prime), flags));
        report["field"] = spec.field_name();
    } catch (const SpecError& e) {
        std::cerr << "error: " << flags.file << (e.line() ? ":" : ": ") << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FieldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    report["command"] = flags.command;
    report["result"] = outcome.result;
    report["warnings"] = outcome.warnings;
    report["elapsed_ms"] = flags.no_timing ? 0 : elapsed;
    if (text)
        print_text(report, "", std::cout);
    else
        std::cout << report.dump(2) << "\n";
    return outcome.failed ? 1 : 0;
}
