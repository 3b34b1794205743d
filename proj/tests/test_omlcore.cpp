#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <orthospace/omlcore.hpp>

#include <algorithm>
#include <optional>
#include <random>

using namespace orthospace;

namespace {

// Order as a boolean matrix read straight from the JSON pairs.
struct Table {
    std::size_t n = 0;
    std::vector<std::vector<bool>> leq;
    std::vector<std::size_t> ortho;
    std::vector<std::string> labels;
};

Table table_from_json(const nlohmann::json& j)
{
    Table t;
    t.n = j.at("n").get<std::size_t>();
    t.leq.assign(t.n, std::vector<bool>(t.n, false));
    for (const auto& p : j.at("leq"))
        t.leq[p[0].get<std::size_t>()][p[1].get<std::size_t>()] = true;
    t.ortho = j.at("ortho").get<std::vector<std::size_t>>();
    if (j.contains("labels"))
        t.labels = j.at("labels").get<std::vector<std::string>>();
    return t;
}

Table table_of(const FiniteOml& l)
{
    return table_from_json(to_json(l));
}

std::optional<std::size_t> naive_join(const Table& t, std::size_t x, std::size_t y)
{
    for (std::size_t z = 0; z < t.n; ++z) {
        if (!t.leq[x][z] || !t.leq[y][z])
            continue;
        bool least = true;
        for (std::size_t u = 0; u < t.n && least; ++u)
            if (t.leq[x][u] && t.leq[y][u] && !t.leq[z][u])
                least = false;
        if (least)
            return z;
    }
    return std::nullopt;
}

std::optional<std::size_t> naive_meet(const Table& t, std::size_t x, std::size_t y)
{
    for (std::size_t z = 0; z < t.n; ++z) {
        if (!t.leq[z][x] || !t.leq[z][y])
            continue;
        bool greatest = true;
        for (std::size_t u = 0; u < t.n && greatest; ++u)
            if (t.leq[u][x] && t.leq[u][y] && !t.leq[u][z])
                greatest = false;
        if (greatest)
            return z;
    }
    return std::nullopt;
}

// Triple loops over the raw tables; returns the first failing law, in the
// same order and with the same names as the library checker.
std::string naive_check(const Table& t)
{
    const std::size_t n = t.n;
    for (std::size_t x = 0; x < n; ++x)
        if (!t.leq[x][x])
            return "reflexive";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y && t.leq[x][y] && t.leq[y][x])
                return "antisymmetric";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (t.leq[x][y] && t.leq[y][z] && !t.leq[x][z])
                    return "transitive";
    std::optional<std::size_t> bot, top;
    for (std::size_t x = 0; x < n; ++x) {
        bool below_all = true, above_all = true;
        for (std::size_t y = 0; y < n; ++y) {
            below_all = below_all && t.leq[x][y];
            above_all = above_all && t.leq[y][x];
        }
        if (below_all)
            bot = x;
        if (above_all)
            top = x;
    }
    if (!bot || !top)
        return "bounds";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (!naive_join(t, x, y) || !naive_meet(t, x, y))
                return "lattice";
    for (std::size_t x = 0; x < n; ++x)
        if (t.ortho[t.ortho[x]] != x)
            return "ortho-involution";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (t.leq[x][y] && !t.leq[t.ortho[y]][t.ortho[x]])
                return "ortho-antitone";
    for (std::size_t x = 0; x < n; ++x)
        if (*naive_meet(t, x, t.ortho[x]) != *bot || *naive_join(t, x, t.ortho[x]) != *top)
            return "ortho-complement";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (t.leq[x][y] && *naive_join(t, x, *naive_meet(t, y, t.ortho[x])) != y)
                return "orthomodular";
    return "";
}

std::string library_check(const nlohmann::json& j)
{
    try {
        auto r = check_oml(oml_from_json(j));
        return r.passed ? "" : r.law;
    } catch (const Error& e) {
        return std::string("error:") + std::string(to_string(e.kind()));
    }
}

const std::vector<std::string> lattice_fixtures = {"o6.json",  "mo0.json",   "mo1.json",   "mo2.json",
                                                   "mo3.json", "bool1.json", "bool2.json", "bool3.json",
                                                   "bool4.json"};

std::size_t at(const FiniteOml& l, const std::string& label)
{
    auto i = l.index_of(label);
    REQUIRE(i.has_value());
    return *i;
}

std::vector<std::size_t> interval_union_oracle(const FiniteOml& l, std::size_t e)
{
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < l.size(); ++x)
        if (l.leq(x, l.ortho(e)) || l.leq(e, x))
            out.push_back(x);
    return out;
}

// The three extension properties, recomputed from the order alone.
void check_extension_clauses(const FiniteOml& l, std::size_t e, const CoatomExtension& ext)
{
    const FiniteOml& m = ext.oml;
    const std::size_t a = ext.atom;
    // (1) a is new and strictly below e
    CHECK(std::find(ext.embed.begin(), ext.embed.end(), a) == ext.embed.end());
    CHECK(m.leq(a, ext.embed[e]));
    CHECK(a != ext.embed[e]);
    // a is an atom of M
    std::size_t below = 0;
    for (std::size_t y = 0; y < m.size(); ++y)
        below += m.leq(y, a);
    CHECK(below == 2);
    // (2) up(a) n L = up_L(e) = up_M(e)
    std::vector<bool> in_l(m.size(), false);
    for (auto x : ext.embed)
        in_l[x] = true;
    for (std::size_t x = 0; x < l.size(); ++x)
        CHECK(m.leq(a, ext.embed[x]) == l.leq(e, x));
    for (std::size_t y = 0; y < m.size(); ++y)
        if (m.leq(ext.embed[e], y))
            CHECK(in_l[y]);
    // (3) atoms of L other than e stay atoms
    for (std::size_t x : l.atoms())
        if (x != e)
            CHECK(m.is_atom(ext.embed[x]));
    // the embedding preserves order and complement
    for (std::size_t x = 0; x < l.size(); ++x) {
        CHECK(ext.embed[l.ortho(x)] == m.ortho(ext.embed[x]));
        for (std::size_t y = 0; y < l.size(); ++y)
            CHECK(m.leq(ext.embed[x], ext.embed[y]) == l.leq(x, y));
    }
}

}  // namespace

TEST_CASE("check_oml examples")
{
    for (std::size_t k = 1; k <= 4; ++k)
        CHECK(check_oml(boolean_powerset(k)).passed);
    for (std::size_t n = 0; n <= 3; ++n)
        CHECK(check_oml(mo_n(n)).passed);
    auto o6 = benzene_o6();
    auto r = check_oml(o6);
    CHECK_FALSE(r.passed);
    CHECK(r.law == "orthomodular");
    REQUIRE(r.witness.size() == 2);
    CHECK(o6.label(r.witness[0]) == "a");
    CHECK(o6.label(r.witness[1]) == "b");
    // the witness is a genuine violation: a v (b ^ a') = a != b
    const std::size_t a = r.witness[0], b = r.witness[1];
    CHECK(o6.leq(a, b));
    CHECK(*o6.join(a, *o6.meet(b, o6.ortho(a))) == a);
}

TEST_CASE("the checker agrees with the naive one on every fixture lattice")
{
    for (const auto& name : lattice_fixtures) {
        auto j = support::load_fixture(name);
        CHECK_MESSAGE(library_check(j) == naive_check(table_from_json(j)), name);
    }
    CHECK(naive_check(table_from_json(support::load_fixture("o6.json"))) == "orthomodular");
}

TEST_CASE("the checker agrees with the naive one on mutated tables")
{
    std::mt19937_64 rng(61);
    std::size_t rejected = 0, mutants = 0;
    for (const auto& name : lattice_fixtures) {
        auto base = support::load_fixture(name);
        const std::size_t n = base["n"].get<std::size_t>();
        for (int t = 0; t < 40; ++t) {
            auto j = base;
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            switch (t % 4) {
            case 0: {  // swap two complements
                std::size_t x = pick(rng), y = pick(rng);
                std::swap(j["ortho"][x], j["ortho"][y]);
                break;
            }
            case 1: {  // drop one order pair
                auto& leq = j["leq"];
                leq.erase(leq.begin() + static_cast<long>(rng() % leq.size()));
                break;
            }
            case 2:  // add one order pair
                j["leq"].push_back({pick(rng), pick(rng)});
                break;
            default: {  // point one complement elsewhere
                j["ortho"][pick(rng)] = pick(rng);
                break;
            }
            }
            std::string expected = naive_check(table_from_json(j));
            CHECK_MESSAGE(library_check(j) == expected, name << " mutant " << t);
            rejected += !expected.empty();
            ++mutants;
        }
    }
    CHECK(rejected > mutants / 2);
}

TEST_CASE("powersets and products")
{
    auto b3 = boolean_powerset(3);
    CHECK(b3.size() == 8);
    CHECK(b3.atoms().size() == 3);
    CHECK_THROWS_AS(boolean_powerset(0), Error);
    CHECK(boolean_powerset(0, true).size() == 1);
    auto p = product(boolean_powerset(2), boolean_powerset(1));
    CHECK(p.size() == 8);
    CHECK(p.atoms().size() == 3);
    CHECK(check_oml(p).passed);
    // same order as 2^3 up to relabelling: compare the sorted up-set sizes
    std::vector<std::size_t> s1, s2;
    for (std::size_t x = 0; x < 8; ++x) {
        s1.push_back(p.upset(x).count());
        s2.push_back(b3.upset(x).count());
    }
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    CHECK(s1 == s2);
    CHECK(check_oml(product(mo_n(2), boolean_powerset(1))).passed);
    CHECK_FALSE(check_oml(product(benzene_o6(), boolean_powerset(1))).passed);
}

TEST_CASE("lemma2 examples")
{
    auto two = boolean_powerset(1);
    auto r = lemma2_extend(two, Lemma2Mode::Faithful);
    CHECK(r.oml.size() == 8);
    CHECK(r.exhaustive);
    CHECK(check_oml(r.oml).passed);
    // g(0) <= V g({}) = 0 fails
    const std::size_t g0 = r.image[std::find(r.domain.begin(), r.domain.end(), two.bottom()) - r.domain.begin()];
    CHECK_FALSE(r.oml.leq(g0, r.oml.bottom()));
    CHECK(*r.oml.join_of({}) == r.oml.bottom());

    auto b2 = boolean_powerset(2);
    auto opt = lemma2_extend(b2, Lemma2Mode::Optimized, {at(b2, "{0}")});
    CHECK(opt.oml.size() == 8);
    CHECK(opt.domain == std::vector<std::size_t>{at(b2, "{0}")});
    CHECK(verify_lemma2(b2, opt).passed);
}

TEST_CASE("lemma2 properties against a naive recheck")
{
    for (const auto& l : {boolean_powerset(2), mo_n(1), mo_n(2)}) {
        auto r = lemma2_extend(l, Lemma2Mode::Faithful);
        CHECK(r.oml.size() == l.size() << l.size());
        const Table t = table_of(r.oml);
        const std::size_t d = r.domain.size();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                if (r.domain[i] != l.bottom() && r.domain[k] != l.bottom())
                    CHECK(l.orthogonal(r.domain[i], r.domain[k]) == r.oml.orthogonal(r.image[i], r.image[k]));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
            std::size_t join = r.oml.bottom();
            for (std::size_t k = 0; k < d; ++k)
                if (mask >> k & 1)
                    join = *naive_join(t, join, r.image[k]);
            for (std::size_t i = 0; i < d; ++i)
                CHECK(r.oml.leq(r.image[i], join) == bool(mask >> i & 1));
        }
    }
}

TEST_CASE("lemma2 verification, sampled and exhaustive, catches a broken map")
{
    auto l = boolean_powerset(3);
    auto r = lemma2_extend(l, Lemma2Mode::Faithful);
    CHECK(r.oml.size() == 8 * 256);
    CHECK(r.exhaustive);
    // a tiny limit forces the sampled path
    CHECK(verify_lemma2(l, r, 9, 16).passed);
    auto broken = r;
    // an atom sent to g(0): no longer one-one
    const std::size_t atom = l.atoms().front();
    const std::size_t k = std::find(r.domain.begin(), r.domain.end(), atom) - r.domain.begin();
    broken.image[k] = broken.image[std::find(r.domain.begin(), r.domain.end(), l.bottom()) - r.domain.begin()];
    CHECK_FALSE(verify_lemma2(l, broken).passed);
    CHECK_FALSE(verify_lemma2(l, broken, 9, 16).passed);
    // swapping two images breaks property (1) or (2)
    broken = r;
    std::swap(broken.image[1], broken.image[2]);
    CHECK_FALSE(verify_lemma2(l, broken).passed);
}

TEST_CASE("size cap")
{
    const std::size_t old = size_cap();
    set_size_cap(100);
    try {
        lemma2_extend(boolean_powerset(3), Lemma2Mode::Faithful);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SizeLimitExceeded);
    }
    CHECK_THROWS_AS(boolean_powerset(7), Error);
    set_size_cap(old);
    CHECK(boolean_powerset(7).size() == 128);
}

TEST_CASE("interval-union subalgebra examples")
{
    auto b2 = boolean_powerset(2);
    CHECK(interval_union_subalgebra(b2, at(b2, "{0}")).size() == 4);
    auto b3 = boolean_powerset(3);
    CHECK(interval_union_subalgebra(b3, at(b3, "{1}")).size() == 8);
    auto mo2 = mo_n(2);
    auto s = interval_union_subalgebra(mo2, at(mo2, "a"));
    std::vector<std::size_t> expected = {at(mo2, "0"), at(mo2, "a"), at(mo2, "a'"), at(mo2, "1")};
    std::sort(expected.begin(), expected.end());
    CHECK(s == expected);
    try {
        interval_union_subalgebra(b2, b2.bottom());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EIsZero);
    }
}

TEST_CASE("coatom extension examples")
{
    auto two = boolean_powerset(1);
    auto ext = kalmbach_coatom_extension(two, two.top());
    CHECK(ext.oml.size() == 4);
    CHECK(ext.oml.atoms().size() == 2);
    CHECK(ext.oml.is_atom(ext.atom));
    CHECK(check_oml(ext.oml).passed);

    auto b2 = boolean_powerset(2);
    const std::size_t e = at(b2, "{0}");
    auto ext2 = kalmbach_coatom_extension(b2, e);
    CHECK(ext2.oml.size() == 8);
    CHECK(check_oml(ext2.oml).passed);
    CHECK(ext2.oml.leq(ext2.atom, ext2.embed[e]));
    std::vector<std::size_t> up_a;
    for (std::size_t x = 0; x < b2.size(); ++x)
        if (ext2.oml.leq(ext2.atom, ext2.embed[x]))
            up_a.push_back(x);
    std::vector<std::size_t> expected = {e, b2.top()};
    std::sort(expected.begin(), expected.end());
    CHECK(up_a == expected);
    CHECK(verify_coatom_extension(b2, e, ext2).passed);
    CHECK_THROWS_AS(kalmbach_coatom_extension(b2, b2.bottom()), Error);
}

TEST_CASE("coatom extension on every small fixture and every nonzero e")
{
    std::size_t cases = 0;
    for (const auto& name : lattice_fixtures) {
        if (name == "o6.json")
            continue;
        auto l = oml_from_json(support::load_fixture(name));
        REQUIRE(l.size() <= 16);
        for (std::size_t e = 0; e < l.size(); ++e) {
            if (e == l.bottom())
                continue;
            auto ext = kalmbach_coatom_extension(l, e);
            const auto s = interval_union_oracle(l, e);
            CHECK(interval_union_subalgebra(l, e) == s);
            CHECK(ext.oml.size() == l.size() + s.size());
            CHECK(check_oml(ext.oml).passed);
            if (ext.oml.size() <= 40)
                CHECK(naive_check(table_of(ext.oml)).empty());
            check_extension_clauses(l, e, ext);
            ++cases;
        }
    }
    CHECK(cases == 1 + 3 + 5 + 7 + 1 + 3 + 7 + 15);
}

TEST_CASE("iterated coatom extension")
{
    auto b2 = boolean_powerset(2);
    const std::size_t a = at(b2, "{0}"), a_ = at(b2, "{1}");
    auto r = bigcoatom_extend(b2, {a, a_});
    REQUIRE(r.atoms.size() == 2);
    CHECK(r.oml.is_atom(r.atoms[0]));
    CHECK(r.oml.is_atom(r.atoms[1]));
    CHECK(r.oml.orthogonal(r.atoms[0], r.atoms[1]));
    CHECK(check_oml(r.oml).passed);
    CHECK(verify_bigcoatom(b2, {a, a_}, r).passed);

    auto single = bigcoatom_extend(b2, {b2.top()});
    auto direct = kalmbach_coatom_extension(b2, b2.top());
    CHECK(single.oml.size() == direct.oml.size());

    auto mo2 = mo_n(2);
    auto m = bigcoatom_extend(mo2, {at(mo2, "a"), at(mo2, "b")});
    CHECK_FALSE(m.oml.orthogonal(m.atoms[0], m.atoms[1]));
    CHECK(check_oml(m.oml).passed);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t x = 0; x < mo2.size(); ++x)
            CHECK(m.oml.leq(m.atoms[i], m.embed[x]) == mo2.leq(i == 0 ? at(mo2, "a") : at(mo2, "b"), x));
}

TEST_CASE("iterated extension keeps the orthogonality of its targets")
{
    std::mt19937_64 rng(62);
    for (const auto& l : {boolean_powerset(3), mo_n(2), mo_n(3)}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<std::size_t> xs;
            for (std::size_t x = 0; x < l.size(); ++x)
                if (x != l.bottom() && rng() % 3 == 0)
                    xs.push_back(x);
            if (xs.empty())
                continue;
            std::shuffle(xs.begin(), xs.end(), rng);
            auto r = bigcoatom_extend(l, xs);
            CHECK(verify_bigcoatom(l, xs, r).passed);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                CHECK(r.oml.is_atom(r.atoms[i]));
                for (std::size_t j = 0; j < xs.size(); ++j)
                    if (i != j)
                        CHECK(r.oml.orthogonal(r.atoms[i], r.atoms[j]) == l.orthogonal(xs[i], xs[j]));
            }
        }
    }
}

TEST_CASE("JSON round trips and cover input")
{
    for (const auto& name : lattice_fixtures) {
        auto j = support::load_fixture(name);
        auto l = oml_from_json(j);
        CHECK(oml_from_json(nlohmann::json::parse(to_json(l).dump())) == l);
        CHECK(to_json(l) == to_json(oml_from_json(to_json(l))));
    }
    auto covers = oml_from_json(support::load_fixture("o6-covers.json"), true);
    CHECK(covers == oml_from_json(support::load_fixture("o6.json")));
    CHECK(to_json(benzene_o6()) == support::load_fixture("o6.json"));
    nlohmann::json bad = {{"n", 2}, {"leq", {{0, 1}}}, {"ortho", {1}}};
    try {
        oml_from_json(bad);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MalformedTables);
    }
}
