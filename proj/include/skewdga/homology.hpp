#ifndef SKEWDGA_HOMOLOGY_HPP
#define SKEWDGA_HOMOLOGY_HPP

// Homology of semi-free extensions, one (homological, internal, color)
// stratum at a time, and the acyclic closure driver built on it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dga.hpp"
#include "linalg.hpp"

namespace skewdga {

/// Smallest monomial of weighted degree d whose color has the same character
/// as c. Colors of adjoined variables are always colors of such monomials, so
/// this gives one printable representative per color class.
template <ScalarField Field>
ColorDegree canonical_color(const SkewRing<Field>& ring, const ColorDegree& c, std::int64_t d)
{
    auto target = ring.character(c);
    for (const auto& m : monomials_of_degree(ring, d))
        if (ring.character(m.color()) == target)
            return m.color();
    return c;
}

/// k-basis of one tri-degree of R<Y>: pairs (word, standard monomial), sorted
/// by word then monomial.
template <ScalarField Field>
struct Stratum {
    using Scalar = typename Field::Scalar;
    using Key = std::pair<Word, Monomial>;

    std::int64_t hdeg = 0;
    std::int64_t ideg = 0;
    std::vector<Scalar> character; // empty for an unfiltered stratum
    ColorDegree color;             // canonical representative, when filtered
    std::vector<Key> basis;
    std::map<Key, std::size_t> index;

    std::size_t size() const { return basis.size(); }

    void finish()
    {
        std::sort(basis.begin(), basis.end());
        index.clear();
        for (std::size_t i = 0; i < basis.size(); ++i)
            index.emplace(basis[i], i);
    }

    DGElement<Field> element(const SemiFreeExtension<Field>& A, const Vector<Scalar>& v) const
    {
        DGElement<Field> out;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!v[i].is_zero())
                out.add(basis[i].first, RingElement<Field>::term(A.base()->ambient(), basis[i].second, v[i]));
        return out;
    }

    Vector<Scalar> coordinates(const SemiFreeExtension<Field>& A, const DGElement<Field>& a) const
    {
        Vector<Scalar> v(basis.size(), A.field().zero());
        for (const auto& [w, r] : a.terms())
            for (const auto& [m, c] : r.terms()) {
                auto it = index.find({w, m});
                if (it == index.end())
                    throw AlgebraError("element has a term outside the stratum");
                v[it->second] = c;
            }
        return v;
    }
};

/// All basis pairs of homological degree n and internal degree d. With
/// split = true they are grouped by color class, sorted by representative.
template <ScalarField Field>
std::vector<Stratum<Field>> strata(const SemiFreeExtension<Field>& A, std::int64_t n, std::int64_t d, bool split = true)
{
    if (d > A.ideg_bound())
        throw TruncationError("internal degree " + std::to_string(d) + " exceeds truncation " +
                              std::to_string(A.ideg_bound()));
    std::map<std::vector<typename Field::Scalar>, Stratum<Field>> groups;
    Stratum<Field> all;
    all.hdeg = n;
    all.ideg = d;
    if (n >= 0 && d >= 0) {
        for (const auto& w : A.words(n, d)) {
            const auto wd = A.word_ideg(w);
            const auto wc = A.word_color(w);
            for (const auto& m : A.quotient().graded_basis(d - wd)) {
                if (!split) {
                    all.basis.push_back({w, m});
                    continue;
                }
                auto col = color_add(wc, m.color());
                auto ch = A.ring().character(col);
                auto [it, inserted] = groups.try_emplace(ch);
                if (inserted) {
                    it->second.hdeg = n;
                    it->second.ideg = d;
                    it->second.character = ch;
                    it->second.color = canonical_color(A.ring(), col, d);
                }
                it->second.basis.push_back({w, m});
            }
        }
    }
    std::vector<Stratum<Field>> out;
    if (!split) {
        all.finish();
        out.push_back(std::move(all));
        return out;
    }
    for (auto& [ch, s] : groups) {
        s.finish();
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return A.ring().monomial(std::vector<std::int32_t>(a.color.begin(), a.color.end())) <
               A.ring().monomial(std::vector<std::int32_t>(b.color.begin(), b.color.end()));
    });
    return out;
}

/// The stratum of (n, d) restricted to one color class (possibly empty).
template <ScalarField Field>
Stratum<Field> stratum(const SemiFreeExtension<Field>& A, std::int64_t n, std::int64_t d,
                       const std::vector<typename Field::Scalar>& character)
{
    for (auto& s : strata(A, n, d))
        if (s.character == character)
            return s;
    Stratum<Field> empty;
    empty.hdeg = n;
    empty.ideg = d;
    empty.character = character;
    return empty;
}

/// Matrix of the differential from `source` to `target` (columns are images
/// of source basis elements).
template <ScalarField Field>
Matrix<typename Field::Scalar> stratum_matrix(const SemiFreeExtension<Field>& A, const Stratum<Field>& source,
                                              const Stratum<Field>& target)
{
    Matrix<typename Field::Scalar> M(target.size(), source.size(), A.field().zero());
    const auto ring = A.base()->ambient();
    for (std::size_t j = 0; j < source.size(); ++j) {
        const auto& [w, m] = source.basis[j];
        auto image = A.left_multiply(RingElement<Field>::term(ring, m, A.field().one()), A.word_differential(w));
        for (const auto& [w2, r] : image.terms())
            for (const auto& [m2, c] : r.terms()) {
                auto it = target.index.find({w2, m2});
                if (it == target.index.end())
                    throw AlgebraError("differential leaves the target stratum");
                M(it->second, j) = c;
            }
    }
    return M;
}

/// Unfiltered matrix of d_n : (n, d) -> (n-1, d).
template <ScalarField Field>
Matrix<typename Field::Scalar> stratum_matrix(const SemiFreeExtension<Field>& A, std::int64_t n, std::int64_t d)
{
    auto src = strata(A, n, d, false).front();
    auto tgt = strata(A, n - 1, d, false).front();
    return stratum_matrix(A, src, tgt);
}

template <ScalarField Field>
struct HomologyGroup {
    std::int64_t hdeg = 0;
    std::int64_t ideg = 0;
    ColorDegree color;
    std::size_t cycles_dim = 0;
    std::size_t boundaries_dim = 0;
    std::vector<DGElement<Field>> classes;

    std::size_t dim() const { return classes.size(); }
};

template <ScalarField Field>
using HomologyBasis = std::vector<HomologyGroup<Field>>;

namespace detail {

template <ScalarField Field>
const Stratum<Field>* find_class(const std::vector<Stratum<Field>>& ss, const std::vector<typename Field::Scalar>& ch)
{
    for (const auto& s : ss)
        if (s.character == ch)
            return &s;
    return nullptr;
}

/// Random nonzero scalar from a small range.
template <ScalarField Field>
typename Field::Scalar random_unit(const Field& k, std::mt19937_64& g)
{
    std::uniform_int_distribution<int> pick(1, 5), sign(0, 1);
    auto s = k.from_int(pick(g));
    return sign(g) ? -s : s;
}

} // namespace detail

/// Homology of (n, d) split by color class; only nonzero groups are returned.
/// Representatives are reduced against the boundaries and row-reduced, so the
/// output is deterministic. With a generator, representatives are re-chosen
/// at random (still a basis modulo boundaries) and their order permuted.
template <ScalarField Field>
HomologyBasis<Field> stratum_homology(const SemiFreeExtension<Field>& A, std::int64_t n, std::int64_t d,
                                      std::mt19937_64* shuffle = nullptr)
{
    using Scalar = typename Field::Scalar;
    const auto& k = A.field();
    HomologyBasis<Field> out;
    auto src = strata(A, n, d);
    auto tgt = strata(A, n - 1, d);
    auto up = strata(A, n + 1, d);
    for (const auto& s : src) {
        const auto* t = detail::find_class(tgt, s.character);
        const auto* u = detail::find_class(up, s.character);
        std::vector<Vector<Scalar>> kernel;
        if (t)
            kernel = kernel_basis(k, stratum_matrix(A, s, *t));
        else
            for (std::size_t i = 0; i < s.size(); ++i) {
                Vector<Scalar> e(s.size(), k.zero());
                e[i] = k.one();
                kernel.push_back(std::move(e));
            }
        std::vector<Vector<Scalar>> boundaries;
        if (u) {
            auto B = stratum_matrix(A, *u, s);
            for (std::size_t j = 0; j < B.cols(); ++j)
                boundaries.push_back(B.column(j));
        }
        auto bech = echelon_basis(k, boundaries, s.size());
        if (kernel.size() < bech.rows.size())
            throw AlgebraError("inconsistent homology: boundaries exceed cycles");
        if (kernel.size() == bech.rows.size())
            continue;
        for (auto& v : kernel)
            reduce_against(v, bech);
        auto reps = echelon_basis(k, kernel, s.size()).rows;
        if (reps.size() + bech.rows.size() != kernel.size())
            throw AlgebraError("inconsistent homology: rank mismatch");
        if (shuffle) {
            // unitriangular recombination plus random boundaries, then permute
            for (std::size_t i = 0; i < reps.size(); ++i) {
                for (std::size_t j = i + 1; j < reps.size(); ++j) {
                    auto c = detail::random_unit(k, *shuffle);
                    for (std::size_t x = 0; x < s.size(); ++x)
                        reps[i][x] += c * reps[j][x];
                }
                for (const auto& b : bech.rows) {
                    auto c = detail::random_unit(k, *shuffle);
                    for (std::size_t x = 0; x < s.size(); ++x)
                        reps[i][x] += c * b[x];
                }
            }
            std::shuffle(reps.begin(), reps.end(), *shuffle);
        }
        HomologyGroup<Field> g;
        g.hdeg = n;
        g.ideg = d;
        g.color = s.color;
        g.cycles_dim = kernel.size();
        g.boundaries_dim = bech.rows.size();
        for (const auto& v : reps)
            g.classes.push_back(s.element(A, v));
        out.push_back(std::move(g));
    }
    return out;
}

/// Dimension of H_n in internal degree d, all colors together.
template <ScalarField Field>
std::size_t homology_dimension(const SemiFreeExtension<Field>& A, std::int64_t n, std::int64_t d)
{
    std::size_t total = 0;
    for (const auto& g : stratum_homology(A, n, d))
        total += g.dim();
    return total;
}

/// Basis of H_n in internal degrees 0..d_max. Requires H_i = 0 for
/// 1 <= i < n in those degrees, which is checked.
template <ScalarField Field>
HomologyBasis<Field> homology_basis(const SemiFreeExtension<Field>& A, std::int64_t n, std::int64_t d_max)
{
    for (std::int64_t i = 1; i < n; ++i)
        for (std::int64_t d = 0; d <= d_max; ++d)
            if (homology_dimension(A, i, d) != 0)
                throw AlgebraError("exactness precondition violated: H_" + std::to_string(i) +
                                   " is nonzero in internal degree " + std::to_string(d));
    HomologyBasis<Field> out;
    for (std::int64_t d = 0; d <= d_max; ++d)
        for (auto& g : stratum_homology(A, n, d))
            out.push_back(std::move(g));
    return out;
}

/// Counts of adjoined variables per (homological degree, internal degree,
/// color class); the class is stored by its canonical representative.
class DeviationTable {
public:
    struct Key {
        std::int64_t hdeg;
        std::int64_t ideg;
        ColorDegree color;
        friend auto operator<=>(const Key&, const Key&) = default;
    };

    void add(std::int64_t hdeg, std::int64_t ideg, const ColorDegree& color, std::int64_t count = 1)
    {
        counts_[{hdeg, ideg, color}] += count;
    }

    const std::map<Key, std::int64_t>& entries() const { return counts_; }

    std::int64_t count(std::int64_t hdeg, const ColorDegree& color, std::int64_t ideg) const
    {
        auto it = counts_.find({hdeg, ideg, color});
        return it == counts_.end() ? 0 : it->second;
    }

    std::int64_t total(std::int64_t hdeg) const
    {
        std::int64_t t = 0;
        for (const auto& [k, c] : counts_)
            if (k.hdeg == hdeg)
                t += c;
        return t;
    }

    /// eps_i for i = 0..N (index 0 is always 0).
    std::vector<std::int64_t> totals(std::int64_t N) const
    {
        std::vector<std::int64_t> t(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)) + 1, 0);
        for (const auto& [k, c] : counts_)
            if (k.hdeg >= 0 && k.hdeg <= N)
                t[static_cast<std::size_t>(k.hdeg)] += c;
        return t;
    }

    friend bool operator==(const DeviationTable&, const DeviationTable&) = default;

private:
    std::map<Key, std::int64_t> counts_;
};

template <ScalarField Field>
DeviationTable deviation_table(const SemiFreeExtension<Field>& A)
{
    DeviationTable t;
    for (std::size_t i = 0; i < A.num_variables(); ++i) {
        const auto& v = A.variable(i);
        t.add(v.hdeg, v.ideg, canonical_color(A.ring(), v.color, v.ideg));
    }
    return t;
}

struct MinimalityReport {
    bool minimal = true;
    std::size_t words_checked = 0;
    std::vector<std::string> violations;
};

/// Checks that the differential of every word up to the bounds has all its
/// coefficients in the augmentation ideal.
template <ScalarField Field>
MinimalityReport check_minimality(const SemiFreeExtension<Field>& A)
{
    MinimalityReport rep;
    for (std::int64_t n = 1; n <= A.hdeg_bound(); ++n)
        for (const auto& w : A.words(n, A.ideg_bound())) {
            ++rep.words_checked;
            for (const auto& [w2, r] : A.word_differential(w).terms())
                if (!augment(r).is_zero()) {
                    rep.minimal = false;
                    rep.violations.push_back("d(" + to_string(w) + ") has a unit coefficient on " + to_string(w2));
                }
        }
    return rep;
}

struct ClosureOptions {
    /// Re-choose homology representatives and their order at random.
    std::optional<std::uint64_t> shuffle_seed;
    /// Recompute H_n after each round and fail if it is nonzero.
    bool verify = true;
};

template <ScalarField Field>
struct ClosureResult {
    SemiFreeExtension<Field> extension;
    DeviationTable deviations;
    MinimalityReport minimality;
    std::vector<std::string> warnings;

    std::int64_t hdeg_bound() const { return extension.hdeg_bound(); }
    std::int64_t ideg_bound() const { return extension.ideg_bound(); }
};

/// Truncated acyclic closure of k over R: variables of homological degree
/// <= N, exact in homological degrees 1..N-1 and internal degrees <= D.
template <ScalarField Field>
ClosureResult<Field> acyclic_closure(const QuotientPtr<Field>& R, std::int64_t N, std::int64_t D,
                                     const ClosureOptions& options = {})
{
    if (N < 0 || D < 0)
        throw AlgebraError("bounds must be nonnegative");
    if (D > R->truncation())
        throw TruncationError("internal degree bound exceeds the ring's Gröbner truncation");
    if (!R->relations_in_square_of_maximal_ideal())
        throw AlgebraError("relations must lie in the square of the maximal ideal");

    std::optional<std::mt19937_64> gen;
    if (options.shuffle_seed)
        gen.emplace(*options.shuffle_seed);

    std::vector<std::string> warnings;
    auto A = N >= 1 ? koszul_complex_of_ring(R, N, D) : SemiFreeExtension<Field>(R, N, D);
    for (std::int64_t n = 1; n < N; ++n) {
        for (std::int64_t d = 1; d <= D; ++d) {
            auto groups = stratum_homology(A, n, d, gen ? &*gen : nullptr);
            if (gen)
                std::shuffle(groups.begin(), groups.end(), *gen);
            for (const auto& g : groups)
                for (const auto& z : g.classes)
                    A = adjoin_variable(A, z);
        }
        if (options.verify)
            for (std::int64_t d = 0; d <= D; ++d)
                if (auto h = homology_dimension(A, n, d); h != 0)
                    throw AlgebraError("inconsistent homology: H_" + std::to_string(n) + " has dimension " +
                                       std::to_string(h) + " in internal degree " + std::to_string(d) +
                                       " after its round");
    }

    if (D < N)
        warnings.push_back("internal degree bound " + std::to_string(D) + " is below homological bound " +
                           std::to_string(N) + "; variables may be missed");
    bool standard = true;
    for (auto w : A.ring().weights())
        standard = standard && w == 1;
    if (standard)
        for (std::size_t i = 0; i < A.num_variables(); ++i)
            if (A.variable(i).ideg < A.variable(i).hdeg)
                warnings.push_back("variable y" + std::to_string(i + 1) +
                                   " has internal degree below its homological degree");

    auto minimality = check_minimality(A);
    if (!minimality.minimal)
        throw AlgebraError("closure is not minimal: " + minimality.violations.front());
    auto dev = deviation_table(A);
    return ClosureResult<Field>{std::move(A), std::move(dev), std::move(minimality), std::move(warnings)};
}

template <ScalarField Field>
const DeviationTable& deviations(const ClosureResult<Field>& result)
{
    return result.deviations;
}

} // namespace skewdga

#endif // SKEWDGA_HOMOLOGY_HPP
