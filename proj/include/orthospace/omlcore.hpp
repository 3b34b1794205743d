#pragma once

// Finite orthomodular lattices stored as bitset up-set rows plus an
// orthocomplement permutation, the law checker, and the constructions used by
// the graph embedding: powerset/product, the interval-union subalgebra, the
// coatom extension by pasting and its iterated form.

#include <orthospace/bitset.hpp>
#include <orthospace/error.hpp>

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orthospace {

/// Global element cap for constructed lattices. Read once from
/// ORTHOSPACE_SIZE_CAP, default 2^15; set_size_cap overrides it.
std::size_t size_cap();
void set_size_cap(std::size_t cap);

class FiniteOml {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    FiniteOml() = default;

    /// Builds from up-set rows (row x = {y : x <= y}) and the complement table.
    /// Elements are renumbered into a linear extension (larger up-sets first,
    /// stable), so 0 is the bottom and size()-1 the top when those exist;
    /// `index_map`, when given, receives old index -> new index.
    /// Throws MalformedTables on shape errors.
    static FiniteOml from_upsets(std::vector<Bitset> upsets, const std::vector<std::size_t>& ortho,
                                 std::vector<std::string> labels = {}, std::vector<std::size_t>* index_map = nullptr);
    /// `pairs` lists (i, j) meaning i <= j; with `covers` the reflexive
    /// transitive closure is taken first.
    static FiniteOml from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                const std::vector<std::size_t>& ortho, std::vector<std::string> labels = {},
                                bool covers = false);

    std::size_t size() const { return up_.size(); }
    bool leq(std::size_t x, std::size_t y) const { return up_[x].test(y); }
    const Bitset& upset(std::size_t x) const { return up_[x]; }
    const Bitset& downset(std::size_t x) const { return down_[x]; }
    std::size_t ortho(std::size_t x) const { return ortho_[x]; }
    const std::vector<std::size_t>& ortho_table() const { return ortho_; }
    /// npos when the poset has no least (greatest) element.
    std::size_t bottom() const { return bottom_; }
    std::size_t top() const { return top_; }
    const std::string& label(std::size_t x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    /// Least upper bound / greatest lower bound; nullopt when it does not
    /// exist. Only meaningful once the order is a partial order.
    std::optional<std::size_t> join(std::size_t x, std::size_t y) const;
    std::optional<std::size_t> meet(std::size_t x, std::size_t y) const;
    /// Join of a set of elements; the empty join is the bottom.
    std::optional<std::size_t> join_of(const std::vector<std::size_t>& xs) const;

    /// x <= y'.
    bool orthogonal(std::size_t x, std::size_t y) const { return leq(x, ortho_[y]); }
    bool is_atom(std::size_t x) const;
    std::vector<std::size_t> atoms() const;

    friend bool operator==(const FiniteOml&, const FiniteOml&) = default;

private:
    std::vector<Bitset> up_;
    std::vector<Bitset> down_;
    std::vector<std::size_t> ortho_;
    std::vector<std::string> labels_;
    std::size_t bottom_ = npos;
    std::size_t top_ = npos;
};

struct CheckReport {
    bool passed = true;
    std::string law;                  // first violated law
    std::vector<std::size_t> witness; // offending elements
    std::string detail;
};

/// Laws checked in order: reflexive, antisymmetric, transitive, bounds,
/// lattice, ortho-involution, ortho-antitone, ortho-complement, orthomodular
/// (x <= y implies y = x v (y ^ x')).
CheckReport check_oml(const FiniteOml& l);

/// 2^k, elements are subsets of {0..k-1}. k = 0 throws unless allow_degenerate.
FiniteOml boolean_powerset(std::size_t k, bool allow_degenerate = false);

struct ProductResult {
    FiniteOml oml;
    std::vector<std::size_t> index;  // index[i * |M| + j] = element (i, j)

    std::size_t at(std::size_t i, std::size_t j, std::size_t m_size) const { return index[i * m_size + j]; }
};

ProductResult product_with_index(const FiniteOml& l, const FiniteOml& m);
FiniteOml product(const FiniteOml& l, const FiniteOml& m);

enum class Lemma2Mode { Faithful, Optimized };

struct Lemma2Result {
    FiniteOml oml;
    std::vector<std::size_t> domain;  // elements of L on which g is defined
    std::vector<std::size_t> image;   // image[k] = g(domain[k])
    bool exhaustive = false;          // whether property (2) was checked for every (x, A)
    std::size_t checks = 0;
};

/// M = L x P(L) with g(x) = (x, {x}) (faithful), or M = L x P(S) with g defined
/// on S (optimized). Verifies
///   (1) x perp y  <=>  g(x) perp g(y)      for x, y in domain \ {0}
///   (2) g(x) <= V g(A)  <=>  x in A         for x in domain, A subset of domain
/// exhaustively when |M| <= 4096 or 2^|domain| <= 4096, else on 1000 seeded
/// samples. Throws VerificationFailure or SizeLimitExceeded.
Lemma2Result lemma2_extend(const FiniteOml& l, Lemma2Mode mode, const std::vector<std::size_t>& subset = {},
                           std::uint64_t seed = 0);

/// Re-checks both properties of a lemma2 result; the report names the first
/// failure. Property (2) is exhaustive when |M| or 2^|domain| is at most
/// `exhaustive_limit`, sampled otherwise.
CheckReport verify_lemma2(const FiniteOml& l, const Lemma2Result& r, std::uint64_t seed = 0,
                          std::size_t exhaustive_limit = 4096);

/// [0, e'] u [e, 1], sorted. Throws EIsZero; VerificationFailure if not a subalgebra.
std::vector<std::size_t> interval_union_subalgebra(const FiniteOml& l, std::size_t e);

struct CoatomExtension {
    FiniteOml oml;
    std::vector<std::size_t> embed;  // L index -> M index
    std::size_t atom = 0;            // the new atom a = (e, 0)
};

/// Pastes L with ([0,e'] u [e,1]) x 2 over [0,e'] x {0} u [e,1] x {1}.
/// The order is the transitive closure of the union of both orders, the
/// complement is inherited from each part. Runs check_oml on the result and
/// the three extension properties; failures throw PasteVerificationFailure.
CoatomExtension kalmbach_coatom_extension(const FiniteOml& l, std::size_t e, bool full_check = true);

/// Re-checks: M is an OML; a not in L and a < e; up(a) n L = up_L(e) = up_M(e);
/// atoms of L other than e stay atoms.
CheckReport verify_coatom_extension(const FiniteOml& l, std::size_t e, const CoatomExtension& ext);

struct BigCoatomExtension {
    FiniteOml oml;
    std::vector<std::size_t> embed;
    std::vector<std::size_t> atoms;  // atoms[i] is the new atom below xs[i]
};

/// Iterated coatom extension at x_1..x_n (distinct, nonzero).
BigCoatomExtension bigcoatom_extend(const FiniteOml& l, const std::vector<std::size_t>& xs, bool full_check = true);

CheckReport verify_bigcoatom(const FiniteOml& l, const std::vector<std::size_t>& xs, const BigCoatomExtension& ext);

/// MO_n: bottom, top and n pairs of complementary atoms. MO_0 is 2.
FiniteOml mo_n(std::size_t n);
/// The non-orthomodular hexagon 0 < a < b < 1, 0 < b' < a' < 1.
FiniteOml benzene_o6();

nlohmann::json to_json(const FiniteOml& l);
FiniteOml oml_from_json(const nlohmann::json& j, bool covers = false);

}  // namespace orthospace
