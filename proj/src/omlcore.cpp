#include <orthospace/omlcore.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace orthospace {

namespace {

constexpr std::size_t default_size_cap = std::size_t{1} << 15;

std::atomic<std::size_t>& cap_storage()
{
    static std::atomic<std::size_t> cap = [] {
        if (const char* env = std::getenv("ORTHOSPACE_SIZE_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                return static_cast<std::size_t>(v);
        }
        return default_size_cap;
    }();
    return cap;
}

void require_within_cap(long double n, const std::string& what)
{
    if (n > static_cast<long double>(size_cap()))
        throw Error(ErrorKind::SizeLimitExceeded, what + " would have " + std::to_string(static_cast<double>(n)) +
                                                      " elements, cap is " + std::to_string(size_cap()));
}

std::vector<std::string> index_labels(std::size_t n)
{
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = std::to_string(i);
    return labels;
}

}  // namespace

std::size_t size_cap()
{
    return cap_storage().load();
}

void set_size_cap(std::size_t cap)
{
    cap_storage().store(cap);
}

FiniteOml FiniteOml::from_upsets(std::vector<Bitset> upsets, const std::vector<std::size_t>& ortho,
                                 std::vector<std::string> labels, std::vector<std::size_t>* index_map)
{
    const std::size_t n = upsets.size();
    if (n == 0)
        throw Error(ErrorKind::MalformedTables, "empty element set");
    for (const auto& row : upsets)
        if (row.size() != n)
            throw Error(ErrorKind::MalformedTables, "up-set row of wrong length");
    if (ortho.size() != n)
        throw Error(ErrorKind::MalformedTables, "complement table has wrong length");
    for (auto o : ortho)
        if (o >= n)
            throw Error(ErrorKind::MalformedTables, "complement table entry out of range");
    if (labels.empty())
        labels = index_labels(n);
    if (labels.size() != n)
        throw Error(ErrorKind::MalformedTables, "label count does not match element count");
    {
        std::unordered_set<std::string> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second)
                throw Error(ErrorKind::MalformedTables, "duplicate label '" + l + "'");
    }

    std::vector<std::size_t> counts(n);
    for (std::size_t i = 0; i < n; ++i)
        counts[i] = upsets[i].count();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k)
        pos[order[k]] = k;

    FiniteOml l;
    l.up_.assign(n, Bitset(n));
    l.down_.assign(n, Bitset(n));
    l.ortho_.resize(n);
    l.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pi = pos[i];
        upsets[i].for_each([&](std::size_t j) {
            l.up_[pi].set(pos[j]);
            l.down_[pos[j]].set(pi);
        });
        l.ortho_[pi] = pos[ortho[i]];
        l.labels_[pi] = std::move(labels[i]);
    }
    for (std::size_t x = 0; x < n && l.bottom_ == npos; ++x)
        if (l.up_[x].count() == n)
            l.bottom_ = x;
    for (std::size_t x = n; x-- > 0 && l.top_ == npos;)
        if (l.down_[x].count() == n)
            l.top_ = x;
    if (index_map)
        *index_map = std::move(pos);
    return l;
}

FiniteOml FiniteOml::from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                const std::vector<std::size_t>& ortho, std::vector<std::string> labels, bool covers)
{
    std::vector<Bitset> up(n, Bitset(n));
    for (auto [i, j] : pairs) {
        if (i >= n || j >= n)
            throw Error(ErrorKind::MalformedTables, "order pair index out of range");
        up[i].set(j);
    }
    if (covers) {
        for (std::size_t i = 0; i < n; ++i)
            up[i].set(i);
        // Warshall
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (up[i].test(k))
                    up[i] |= up[k];
    }
    return from_upsets(std::move(up), ortho, std::move(labels));
}

std::optional<std::size_t> FiniteOml::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

// Up-set rows only have bits at or after their own index and down-set rows
// only at or before it, so both scans start at the relevant word and compare
// in place without building the intersection.
std::optional<std::size_t> FiniteOml::join(std::size_t x, std::size_t y) const
{
    if (leq(x, y))
        return y;
    if (leq(y, x))
        return x;
    const Bitset& a = up_[x];
    const Bitset& b = up_[y];
    const std::size_t words = a.word_count();
    std::size_t w = std::max(x, y) >> 6;
    while (w < words && !(a.word(w) & b.word(w)))
        ++w;
    if (w == words)
        return std::nullopt;
    const std::size_t m = (w << 6) + static_cast<std::size_t>(std::countr_zero(a.word(w) & b.word(w)));
    const Bitset& c = up_[m];
    for (; w < words; ++w)
        if ((a.word(w) & b.word(w)) != c.word(w))
            return std::nullopt;
    return m;
}

std::optional<std::size_t> FiniteOml::meet(std::size_t x, std::size_t y) const
{
    if (leq(x, y))
        return x;
    if (leq(y, x))
        return y;
    const Bitset& a = down_[x];
    const Bitset& b = down_[y];
    std::size_t w = (std::min(x, y) >> 6) + 1;
    while (w > 0 && !(a.word(w - 1) & b.word(w - 1)))
        --w;
    if (w == 0)
        return std::nullopt;
    const std::uint64_t top = a.word(w - 1) & b.word(w - 1);
    const std::size_t m = ((w - 1) << 6) + 63 - static_cast<std::size_t>(std::countl_zero(top));
    const Bitset& c = down_[m];
    for (; w > 0; --w)
        if ((a.word(w - 1) & b.word(w - 1)) != c.word(w - 1))
            return std::nullopt;
    return m;
}

std::optional<std::size_t> FiniteOml::join_of(const std::vector<std::size_t>& xs) const
{
    Bitset u(size());
    u.set();
    for (auto x : xs)
        u &= up_[x];
    std::size_t m = u.find_first();
    if (m == Bitset::npos || up_[m] != u)
        return std::nullopt;
    return m;
}

bool FiniteOml::is_atom(std::size_t x) const
{
    return bottom_ != npos && x != bottom_ && down_[x].count() == 2 && down_[x].test(bottom_);
}

std::vector<std::size_t> FiniteOml::atoms() const
{
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < size(); ++x)
        if (is_atom(x))
            out.push_back(x);
    return out;
}

namespace {

CheckReport failure(std::string law, std::vector<std::size_t> witness, std::string detail)
{
    return {false, std::move(law), std::move(witness), std::move(detail)};
}

}  // namespace

CheckReport check_oml(const FiniteOml& l)
{
    const std::size_t n = l.size();
    for (std::size_t x = 0; x < n; ++x)
        if (!l.leq(x, x))
            return failure("reflexive", {x}, "x <= x fails");

    for (std::size_t x = 0; x < n; ++x) {
        std::optional<std::size_t> bad;
        l.upset(x).for_each([&](std::size_t y) {
            if (!bad && y != x && l.leq(y, x))
                bad = y;
        });
        if (bad)
            return failure("antisymmetric", {x, *bad}, "x <= y and y <= x with x != y");
    }

    for (std::size_t x = 0; x < n; ++x) {
        std::optional<std::size_t> bad;
        l.upset(x).for_each([&](std::size_t y) {
            if (!bad && !l.upset(y).is_subset_of(l.upset(x)))
                bad = y;
        });
        if (bad) {
            std::size_t z = (l.upset(*bad) - l.upset(x)).find_first();
            return failure("transitive", {x, *bad, z}, "x <= y <= z but not x <= z");
        }
    }

    if (l.bottom() == FiniteOml::npos)
        return failure("bounds", {}, "no least element");
    if (l.top() == FiniteOml::npos)
        return failure("bounds", {}, "no greatest element");

    // in a finite bounded poset all joins existing implies all meets exist
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (!l.leq(x, y) && !l.leq(y, x) && !l.join(x, y))
                return failure("lattice", {x, y}, "x v y does not exist");

    for (std::size_t x = 0; x < n; ++x)
        if (l.ortho(l.ortho(x)) != x)
            return failure("ortho-involution", {x}, "x'' != x");

    for (std::size_t x = 0; x < n; ++x) {
        std::optional<std::size_t> bad;
        l.upset(x).for_each([&](std::size_t y) {
            if (!bad && !l.leq(l.ortho(y), l.ortho(x)))
                bad = y;
        });
        if (bad)
            return failure("ortho-antitone", {x, *bad}, "x <= y but not y' <= x'");
    }

    for (std::size_t x = 0; x < n; ++x) {
        auto m = l.meet(x, l.ortho(x));
        auto j = l.join(x, l.ortho(x));
        if (!m || *m != l.bottom() || !j || *j != l.top())
            return failure("ortho-complement", {x}, "x ^ x' != 0 or x v x' != 1");
    }

    for (std::size_t x = 0; x < n; ++x) {
        std::optional<std::size_t> bad;
        l.upset(x).for_each([&](std::size_t y) {
            if (bad)
                return;
            auto m = l.meet(y, l.ortho(x));
            auto j = m ? l.join(x, *m) : std::nullopt;
            if (!j || *j != y)
                bad = y;
        });
        if (bad)
            return failure("orthomodular", {x, *bad}, "x <= y but x v (y ^ x') != y");
    }
    return {};
}

namespace {

FiniteOml powerset_impl(std::size_t k, bool allow_degenerate, std::vector<std::size_t>* index_map)
{
    if (k == 0 && !allow_degenerate)
        throw Error(ErrorKind::InvalidArgument, "2^0 has bottom = top; pass allow_degenerate to build it");
    if (k >= 62)
        throw Error(ErrorKind::SizeLimitExceeded, "powerset of " + std::to_string(k) + " atoms");
    require_within_cap(std::ldexp(1.0L, static_cast<int>(k)), "powerset");
    const std::size_t n = std::size_t{1} << k;
    const std::size_t full = n - 1;
    std::vector<Bitset> up(n, Bitset(n));
    std::vector<std::size_t> ortho(n);
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x;; y = (y + 1) | x) {
            up[x].set(y);
            if (y == full)
                break;
        }
        ortho[x] = full ^ x;
        std::string label = "{";
        for (std::size_t i = 0; i < k; ++i)
            if (x >> i & 1u)
                label += (label.size() > 1 ? "," : "") + std::to_string(i);
        labels[x] = label + "}";
    }
    return FiniteOml::from_upsets(std::move(up), ortho, std::move(labels), index_map);
}

}  // namespace

FiniteOml boolean_powerset(std::size_t k, bool allow_degenerate)
{
    return powerset_impl(k, allow_degenerate, nullptr);
}

ProductResult product_with_index(const FiniteOml& l, const FiniteOml& m)
{
    const std::size_t nl = l.size(), nm = m.size();
    require_within_cap(static_cast<long double>(nl) * nm, "product");
    const std::size_t n = nl * nm;
    std::vector<Bitset> up(n, Bitset(n));
    std::vector<std::size_t> ortho(n);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t j = 0; j < nm; ++j) {
            auto& row = up[i * nm + j];
            l.upset(i).for_each([&](std::size_t i2) { m.upset(j).for_each([&](std::size_t j2) { row.set(i2 * nm + j2); }); });
            ortho[i * nm + j] = l.ortho(i) * nm + m.ortho(j);
            labels[i * nm + j] = "(" + l.label(i) + "," + m.label(j) + ")";
        }
    ProductResult out;
    out.oml = FiniteOml::from_upsets(std::move(up), ortho, std::move(labels), &out.index);
    return out;
}

FiniteOml product(const FiniteOml& l, const FiniteOml& m)
{
    return product_with_index(l, m).oml;
}

CheckReport verify_lemma2(const FiniteOml& l, const Lemma2Result& r, std::uint64_t seed, std::size_t exhaustive_limit)
{
    const auto& m = r.oml;
    const std::size_t d = r.domain.size();
    if (r.image.size() != d)
        return failure("lemma2-shape", {}, "domain and image differ in length");
    {
        std::set<std::size_t> seen(r.image.begin(), r.image.end());
        if (seen.size() != d)
            return failure("lemma2-injective", {}, "g is not one-one");
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            std::size_t x = r.domain[a], y = r.domain[b];
            if (x == l.bottom() || y == l.bottom())
                continue;
            if (l.orthogonal(x, y) != m.orthogonal(r.image[a], r.image[b]))
                return failure("lemma2-orthogonality", {x, y}, "x perp y differs from g(x) perp g(y)");
        }

    auto check_subset = [&](std::uint64_t mask, std::size_t a) -> bool {
        std::vector<std::size_t> ga;
        for (std::size_t k = 0; k < d; ++k)
            if (mask >> k & 1u)
                ga.push_back(r.image[k]);
        auto j = m.join_of(ga);
        return j && m.leq(r.image[a], *j) == static_cast<bool>(mask >> a & 1u);
    };

    bool exhaustive = d < 63 && (m.size() <= exhaustive_limit || (std::uint64_t{1} << d) <= exhaustive_limit);
    if (exhaustive) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask)
            for (std::size_t a = 0; a < d; ++a)
                if (!check_subset(mask, a))
                    return failure("lemma2-join", {r.domain[a]}, "g(x) <= V g(A) differs from x in A");
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        std::bernoulli_distribution coin(0.5);
        for (int s = 0; s < 1000; ++s) {
            std::uint64_t mask = 0;
            for (std::size_t k = 0; k < d && k < 64; ++k)
                if (coin(rng))
                    mask |= std::uint64_t{1} << k;
            std::size_t a = pick(rng);
            if (!check_subset(mask, a))
                return failure("lemma2-join", {r.domain[a]}, "g(x) <= V g(A) differs from x in A");
        }
    }
    return {};
}

Lemma2Result lemma2_extend(const FiniteOml& l, Lemma2Mode mode, const std::vector<std::size_t>& subset,
                           std::uint64_t seed)
{
    Lemma2Result r;
    if (mode == Lemma2Mode::Faithful) {
        r.domain.resize(l.size());
        std::iota(r.domain.begin(), r.domain.end(), 0);
    } else {
        if (subset.empty())
            throw Error(ErrorKind::InvalidArgument, "optimized mode needs a nonempty subset");
        std::set<std::size_t> seen;
        for (auto x : subset)
            if (x >= l.size() || !seen.insert(x).second)
                throw Error(ErrorKind::InvalidArgument, "subset has repeated or out-of-range elements");
        r.domain = subset;
    }
    const std::size_t d = r.domain.size();
    if (d >= 62)
        throw Error(ErrorKind::SizeLimitExceeded, "powerset factor on " + std::to_string(d) + " atoms");
    require_within_cap(static_cast<long double>(l.size()) * std::ldexp(1.0L, static_cast<int>(d)), "L x P(S)");

    std::vector<std::size_t> mask_index;
    FiniteOml p = powerset_impl(d, true, &mask_index);
    auto prod = product_with_index(l, p);
    r.oml = std::move(prod.oml);
    r.image.resize(d);
    for (std::size_t k = 0; k < d; ++k)
        r.image[k] = prod.at(r.domain[k], mask_index[std::size_t{1} << k], p.size());
    r.exhaustive = r.oml.size() <= 4096 || (std::uint64_t{1} << d) <= 4096;
    r.checks = r.exhaustive ? (std::size_t{1} << d) * d : 1000;

    auto report = verify_lemma2(l, r, seed);
    if (!report.passed)
        throw Error(ErrorKind::VerificationFailure, "lemma2 " + report.law + ": " + report.detail);
    return r;
}

namespace {

std::vector<std::size_t> interval_union_impl(const FiniteOml& l, std::size_t e, bool verify_closure)
{
    if (e >= l.size())
        throw Error(ErrorKind::InvalidArgument, "element out of range");
    if (e == l.bottom())
        throw Error(ErrorKind::EIsZero, "e must be nonzero");
    const Bitset& low = l.downset(l.ortho(e));
    const Bitset& high = l.upset(e);
    if (low.intersects(high))
        throw Error(ErrorKind::VerificationFailure, "[0,e'] and [e,1] overlap");
    Bitset s = low | high;
    std::vector<std::size_t> out;
    s.for_each([&](std::size_t x) { out.push_back(x); });
    if (verify_closure) {
        for (auto x : out) {
            if (!s.test(l.ortho(x)))
                throw Error(ErrorKind::VerificationFailure, "not closed under complement at " + l.label(x));
            for (auto y : out) {
                if (y <= x)
                    continue;
                auto j = l.join(x, y);
                auto m = l.meet(x, y);
                if (!j || !m || !s.test(*j) || !s.test(*m))
                    throw Error(ErrorKind::VerificationFailure,
                                "not closed under meet/join at " + l.label(x) + ", " + l.label(y));
            }
        }
    }
    return out;
}

std::string fresh_label(std::string base, std::unordered_set<std::string>& taken)
{
    std::string label = base;
    for (int k = 2; taken.count(label); ++k)
        label = base + "#" + std::to_string(k);
    taken.insert(label);
    return label;
}

}  // namespace

std::vector<std::size_t> interval_union_subalgebra(const FiniteOml& l, std::size_t e)
{
    return interval_union_impl(l, e, true);
}

CheckReport verify_coatom_extension(const FiniteOml& l, std::size_t e, const CoatomExtension& ext)
{
    const FiniteOml& m = ext.oml;
    if (auto r = check_oml(m); !r.passed)
        return failure("extension-oml:" + r.law, r.witness, r.detail);
    if (ext.embed.size() != l.size())
        return failure("extension-embedding", {}, "embedding has wrong length");
    {
        std::set<std::size_t> seen(ext.embed.begin(), ext.embed.end());
        if (seen.size() != l.size())
            return failure("extension-embedding", {}, "embedding not one-one");
    }
    if (ext.embed[l.bottom()] != m.bottom() || ext.embed[l.top()] != m.top())
        return failure("extension-embedding", {}, "bounds not preserved");
    for (std::size_t x = 0; x < l.size(); ++x) {
        if (ext.embed[l.ortho(x)] != m.ortho(ext.embed[x]))
            return failure("extension-embedding", {x}, "complement not preserved");
        for (std::size_t y = 0; y < l.size(); ++y)
            if (l.leq(x, y) != m.leq(ext.embed[x], ext.embed[y]))
                return failure("extension-embedding", {x, y}, "order not preserved and reflected");
    }
    if (l.size() <= 64)
        for (std::size_t x = 0; x < l.size(); ++x)
            for (std::size_t y = x + 1; y < l.size(); ++y) {
                auto jl = l.join(x, y);
                auto jm = m.join(ext.embed[x], ext.embed[y]);
                if (!jl || !jm || ext.embed[*jl] != *jm)
                    return failure("extension-embedding", {x, y}, "join not preserved");
            }

    Bitset image(m.size());
    for (auto x : ext.embed)
        image.set(x);
    const std::size_t a = ext.atom, ei = ext.embed[e];
    // (1)
    if (image.test(a))
        return failure("extension-clause-1", {e}, "new atom lies in L");
    if (!m.is_atom(a) || !m.leq(a, ei) || a == ei)
        return failure("extension-clause-1", {e}, "a is not an atom strictly below e");
    // (2)
    Bitset up_e_image(m.size());
    l.upset(e).for_each([&](std::size_t y) { up_e_image.set(ext.embed[y]); });
    if ((m.upset(a) & image) != up_e_image)
        return failure("extension-clause-2", {e}, "up(a) n L differs from up_L(e)");
    if (m.upset(ei) != up_e_image)
        return failure("extension-clause-2", {e}, "up_M(e) differs from up_L(e)");
    // (3)
    for (auto x : l.atoms())
        if (x != e && !m.is_atom(ext.embed[x]))
            return failure("extension-clause-3", {x}, "atom of L is no longer an atom");
    return {};
}

CoatomExtension kalmbach_coatom_extension(const FiniteOml& l, std::size_t e, bool full_check)
{
    const std::vector<std::size_t> s = interval_union_impl(l, e, full_check);
    const std::size_t n = l.size();
    require_within_cap(static_cast<long double>(n) + s.size(), "coatom extension");
    const std::size_t total = n + s.size();

    const Bitset& low = l.downset(l.ortho(e));
    std::vector<std::size_t> slot(n, FiniteOml::npos);  // position of t in s
    for (std::size_t k = 0; k < s.size(); ++k)
        slot[s[k]] = k;
    // (t, b) for t in S: glued to t itself for (low, 0) and (high, 1), else new
    auto index = [&](std::size_t t, int b) -> std::size_t {
        bool glued = low.test(t) ? b == 0 : b == 1;
        return glued ? t : n + slot[t];
    };
    auto bit_of = [&](std::size_t t) { return low.test(t) ? 0 : 1; };  // b with (t, b) glued

    Bitset in_s(n);
    for (auto t : s)
        in_s.set(t);

    std::vector<Bitset> rel(total, Bitset(total));
    auto add_product_up = [&](Bitset& row, std::size_t t, int b) {
        (l.upset(t) & in_s).for_each([&](std::size_t t2) {
            for (int b2 = b; b2 <= 1; ++b2)
                row.set(index(t2, b2));
        });
    };
    for (std::size_t x = 0; x < n; ++x) {
        l.upset(x).for_each([&](std::size_t y) { rel[x].set(y); });
        if (in_s.test(x))
            add_product_up(rel[x], x, bit_of(x));
    }
    for (auto t : s)
        add_product_up(rel[index(t, 1 - bit_of(t))], t, 1 - bit_of(t));

    // Any chain alternating between the two parts changes part only at a
    // shared element, so closing over the shared elements closes everything.
    for (auto k : s)
        for (std::size_t i = 0; i < total; ++i)
            if (rel[i].test(k))
                rel[i] |= rel[k];

    std::vector<std::size_t> ortho(total);
    std::vector<std::string> labels(total);
    std::unordered_set<std::string> taken(l.labels().begin(), l.labels().end());
    for (std::size_t x = 0; x < n; ++x) {
        ortho[x] = l.ortho(x);
        labels[x] = l.label(x);
    }
    for (auto t : s) {
        int b = 1 - bit_of(t);
        std::size_t i = index(t, b);
        ortho[i] = index(l.ortho(t), 1 - b);
        labels[i] = fresh_label("<" + l.label(t) + "|" + std::to_string(b) + ">", taken);
    }

    CoatomExtension ext;
    std::vector<std::size_t> map;
    ext.oml = FiniteOml::from_upsets(std::move(rel), ortho, std::move(labels), &map);
    ext.embed.assign(map.begin(), map.begin() + static_cast<std::ptrdiff_t>(n));
    ext.atom = map[index(e, 0)];

    if (full_check) {
        if (auto r = verify_coatom_extension(l, e, ext); !r.passed)
            throw Error(ErrorKind::PasteVerificationFailure, r.law + ": " + r.detail);
    } else {
        const FiniteOml& m = ext.oml;
        if (!m.is_atom(ext.atom) || !m.leq(ext.atom, ext.embed[e]))
            throw Error(ErrorKind::PasteVerificationFailure, "new element is not an atom below e");
    }
    return ext;
}

CheckReport verify_bigcoatom(const FiniteOml& l, const std::vector<std::size_t>& xs, const BigCoatomExtension& ext)
{
    const FiniteOml& m = ext.oml;
    if (ext.atoms.size() != xs.size() || ext.embed.size() != l.size())
        return failure("bigcoatom-shape", {}, "result has wrong shape");
    Bitset image(m.size());
    for (auto x : ext.embed)
        image.set(x);
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::size_t a = ext.atoms[i];
        if (!seen.insert(a).second)
            return failure("bigcoatom-distinct", {xs[i]}, "atoms not distinct");
        if (image.test(a) || !m.is_atom(a))
            return failure("bigcoatom-atom", {xs[i]}, "a_i is not a new atom");
        Bitset expect(m.size());
        l.upset(xs[i]).for_each([&](std::size_t y) { expect.set(ext.embed[y]); });
        if ((m.upset(a) & image) != expect)
            return failure("bigcoatom-upset", {xs[i]}, "up(a_i) n L differs from up_L(x_i)");
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (m.orthogonal(ext.atoms[i], ext.atoms[j]) != l.orthogonal(xs[i], xs[j]))
                return failure("bigcoatom-orthogonality", {xs[i], xs[j]}, "a_i perp a_j differs from x_i perp x_j");
    return {};
}

BigCoatomExtension bigcoatom_extend(const FiniteOml& l, const std::vector<std::size_t>& xs, bool full_check)
{
    {
        std::set<std::size_t> seen;
        for (auto x : xs) {
            if (x >= l.size())
                throw Error(ErrorKind::InvalidArgument, "element out of range");
            if (x == l.bottom())
                throw Error(ErrorKind::EIsZero, "x_i must be nonzero");
            if (!seen.insert(x).second)
                throw Error(ErrorKind::InvalidArgument, "x_i must be distinct");
        }
    }
    BigCoatomExtension out;
    out.oml = l;
    out.embed.resize(l.size());
    std::iota(out.embed.begin(), out.embed.end(), 0);
    for (auto x : xs) {
        auto ext = kalmbach_coatom_extension(out.oml, out.embed[x], full_check);
        for (auto& v : out.embed)
            v = ext.embed[v];
        for (auto& a : out.atoms)
            a = ext.embed[a];
        out.atoms.push_back(ext.atom);
        out.oml = std::move(ext.oml);
    }
    if (auto r = verify_bigcoatom(l, xs, out); !r.passed)
        throw Error(ErrorKind::PasteVerificationFailure, r.law + ": " + r.detail);
    return out;
}

FiniteOml mo_n(std::size_t n)
{
    const std::size_t size = 2 * n + 2;
    std::vector<Bitset> up(size, Bitset(size));
    std::vector<std::size_t> ortho(size);
    std::vector<std::string> labels(size);
    labels[0] = "0";
    labels[size - 1] = "1";
    up[0].set();
    up[size - 1].set(size - 1);
    ortho[0] = size - 1;
    ortho[size - 1] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = 1 + 2 * i, q = p + 1;
        std::string name = i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i);
        labels[p] = name;
        labels[q] = name + "'";
        for (auto x : {p, q}) {
            up[x].set(x);
            up[x].set(size - 1);
        }
        ortho[p] = q;
        ortho[q] = p;
    }
    return FiniteOml::from_upsets(std::move(up), ortho, std::move(labels));
}

FiniteOml benzene_o6()
{
    // 0, a, b', b, a', 1 with a < b and b' < a'
    std::vector<std::pair<std::size_t, std::size_t>> covers = {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}};
    std::vector<std::size_t> ortho = {5, 4, 3, 2, 1, 0};
    return FiniteOml::from_pairs(6, covers, ortho, {"0", "a", "b'", "b", "a'", "1"}, true);
}

nlohmann::json to_json(const FiniteOml& l)
{
    nlohmann::json leq = nlohmann::json::array();
    for (std::size_t x = 0; x < l.size(); ++x)
        l.upset(x).for_each([&](std::size_t y) { leq.push_back({x, y}); });
    return {{"n", l.size()}, {"leq", std::move(leq)}, {"ortho", l.ortho_table()}, {"labels", l.labels()}};
}

FiniteOml oml_from_json(const nlohmann::json& j, bool covers)
{
    try {
        auto n = j.at("n").get<std::int64_t>();
        if (n <= 0)
            throw Error(ErrorKind::MalformedTables, "element count must be positive");
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& p : j.at("leq")) {
            if (!p.is_array() || p.size() != 2)
                throw Error(ErrorKind::MalformedTables, "order entries must be pairs");
            auto a = p[0].get<std::int64_t>(), b = p[1].get<std::int64_t>();
            if (a < 0 || b < 0)
                throw Error(ErrorKind::MalformedTables, "negative element index");
            pairs.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
        std::vector<std::size_t> ortho;
        for (const auto& o : j.at("ortho")) {
            auto v = o.get<std::int64_t>();
            if (v < 0)
                throw Error(ErrorKind::MalformedTables, "negative complement index");
            ortho.push_back(static_cast<std::size_t>(v));
        }
        std::vector<std::string> labels;
        if (j.contains("labels"))
            labels = j.at("labels").get<std::vector<std::string>>();
        return FiniteOml::from_pairs(static_cast<std::size_t>(n), pairs, ortho, std::move(labels), covers);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

}  // namespace orthospace
