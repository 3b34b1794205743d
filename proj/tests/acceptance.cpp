// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <orthospace/cli.hpp>
#include <orthospace/graph2oml.hpp>
#include <orthospace/mubconfig.hpp>
#include <orthospace/omlcore.hpp>
#include <orthospace/taoembed.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

using namespace orthospace;
using nlohmann::json;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

struct Sample {
    Scalar x, y, z;
};

// The seeded triples shared by criteria 2 and 3.
std::vector<Sample> samples(Field f, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Sample> out;
    for (int i = 0; i < 200; ++i) {
        Scalar x = random_nonzero_scalar(rng, f), y = random_nonzero_scalar(rng, f), z = random_nonzero_scalar(rng, f);
        out.push_back({x, y, z});
    }
    return out;
}

Outcome mub()
{
    Outcome o;
    auto t = mub_table();
    int cross = 0;
    for (int r = 0; r < 4; ++r)
        for (int s = r; s < 4; ++s)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (r == s) {
                        if (i < j)
                            o.require(orthogonal(t[r][i], t[s][j]), "basis not orthogonal");
                    } else {
                        o.require(squared_cosine(t[r][i], t[s][j]) == Rational(1, 3), "squared cosine != 1/3");
                        ++cross;
                    }
                }
    o.require(cross == 54, "wrong number of cross pairs");
    o.note = o.ok ? "54 cross pairs at 1/3, 4 orthogonal bases" : o.note;
    return o;
}

Outcome center()
{
    Outcome o;
    int agree = 0;
    for (Field f : {Field::Q, Field::Qw})
        for (const auto& s : samples(f, f == Field::Q ? 2001 : 2002)) {
            auto c = center_test(s.x, s.y, s.z);
            o.require(c.is_center == c.is_unbiased, "center and unbiased disagree");
            o.require(c.products == c.closed_forms, "products differ from closed forms");
            agree += c.is_center == c.is_unbiased;
        }
    const Scalar one = Scalar::one(Field::Qw), w = Scalar::omega();
    auto a = center_test(Scalar(1), Scalar(1), Scalar(1));
    auto b = center_test(one, w, w * w);
    auto c = center_test(Scalar(1), Scalar(1), Scalar(2));
    o.require(a.is_center && a.is_unbiased, "(1,1,1) not a center");
    o.require(b.is_center && b.is_unbiased, "(1,w,w^2) not a center");
    o.require(!c.is_center && !c.is_unbiased, "(1,1,2) reported as center");
    if (o.ok)
        o.note = std::to_string(agree) + "/400 random triples agree; examples as expected";
    return o;
}

Outcome figure1()
{
    Outcome o;
    auto loop = min_loop_order(figure1_diagram());
    o.require(loop && *loop >= 5, "figure 1 has a loop of order < 5");
    int built = 0;
    for (Field f : {Field::Q, Field::Qw})
        for (const auto& s : samples(f, f == Field::Q ? 2001 : 2002)) {
            Figure1Config cfg;
            try {
                cfg = build_figure1(s.x, s.y, s.z);
            } catch (const Error& e) {
                o.require(false, "(" + to_string(s.x) + ", " + to_string(s.y) + ", " + to_string(s.z) + "): " + e.what());
                continue;
            }
            std::unordered_set<Ray, RayHash> distinct;
            for (const auto& [name, r] : cfg.rays)
                distinct.insert(r);
            o.require(distinct.size() == 22, "rays not distinct");
            o.require(cfg.diagram.blocks().size() == 12, "wrong block count");
            for (const auto& b : cfg.diagram.blocks())
                for (std::size_t i = 0; i < b.size(); ++i)
                    for (std::size_t j = i + 1; j < b.size(); ++j)
                        o.require(orthogonal(cfg.ray(cfg.diagram.vertices()[b[i]]), cfg.ray(cfg.diagram.vertices()[b[j]])),
                                  "block not orthogonal");
            for (const auto& [name, pair] : figure1_generators())
                o.require(cfg.ray(name) == Ray(cross(cfg.vec(pair.first), cfg.vec(pair.second))),
                          name + " is not the cross product of its pair");
            ++built;
        }
    if (o.ok)
        o.note = std::to_string(built) + "/400 configurations verified, min loop order " + std::to_string(*loop);
    return o;
}

Outcome witness()
{
    Outcome o;
    auto wd = build_witness();
    o.require(wd.diagram.size() == 47, "vertex count");
    o.require(wd.diagram.blocks().size() == 31, "block count");
    o.require(wd.realization.has_value(), "no realization");
    if (!o.ok)
        return o;
    const auto& real = *wd.realization;
    std::unordered_set<Ray, RayHash> distinct;
    for (const auto& [name, r] : real) {
        distinct.insert(r);
        o.require(r.field() == Field::Qw, "ray outside Q(w)");
    }
    o.require(distinct.size() == 47, "rays not distinct");
    for (const auto& b : wd.diagram.blocks())
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                o.require(orthogonal(real.at(wd.diagram.vertices()[b[i]]), real.at(wd.diagram.vertices()[b[j]])),
                          "block not orthogonal");
    o.require(inner(real.at("u(1)").rep(), real.at("u(2)").rep()).is_zero(), "centers not orthogonal");
    if (o.ok)
        o.note = "47 distinct rays, 31 orthogonal blocks, centers orthogonal";
    return o;
}

Outcome obstruction()
{
    Outcome o;
    auto rep = r3_obstruction_certificates(10000, 4, deadline_after(std::chrono::minutes(10)), 5);
    o.require(rep.sign_pairs == 64 && rep.sign_min_abs == 1, "sign certificate");
    o.require(rep.samples == 10000 && rep.violations == 0, "doubly unbiased orthogonal pair found");
    o.require(rep.search != SearchStatus::Timeout, "bounded-height search timed out");
    o.require(rep.search == SearchStatus::None, "witness embeds into a bounded-height real host");
    std::ostringstream note;
    note << "min |s.t| = " << rep.sign_min_abs << ", " << rep.violations << " violations in " << rep.samples
         << " pairs (" << rep.unbiased_samples << " unbiased), height-4 host " << rep.host_rays << " rays / "
         << rep.host_blocks << " blocks: " << (rep.search == SearchStatus::None ? "no embedding" : "not settled")
         << " after " << rep.search_nodes << " nodes";
    if (o.ok)
        o.note = note.str();
    return o;
}

Outcome tao()
{
    Outcome o;
    std::size_t graphs = 0;
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask) {
            GraphSpec g = GraphSpec::from_edge_mask(n, mask);
            auto rep = verify_gram(tao_vectors(g), g);
            o.require(rep.pattern_ok && rep.nonneg_ok && rep.rank == n, "graph on " + std::to_string(n) + " vertices");
            ++graphs;
        }
    if (o.ok)
        o.note = std::to_string(graphs) + " graphs: pattern, nonnegativity and rank n";
    return o;
}

Outcome checker()
{
    Outcome o;
    for (std::size_t k = 1; k <= 4; ++k)
        o.require(check_oml(boolean_powerset(k)).passed, "2^" + std::to_string(k) + " rejected");
    for (std::size_t n = 1; n <= 3; ++n)
        o.require(check_oml(mo_n(n)).passed, "MO" + std::to_string(n) + " rejected");
    auto o6 = benzene_o6();
    auto r = check_oml(o6);
    o.require(!r.passed && r.law == "orthomodular" && r.witness.size() == 2, "O6 not rejected for orthomodularity");
    if (!o.ok)
        return o;
    const std::size_t a = r.witness[0], b = r.witness[1];
    o.require(o6.label(a) == "a" && o6.label(b) == "b", "witness is not (a, b)");
    o.require(*o6.join(a, *o6.meet(b, o6.ortho(a))) != b, "witness is not a violation");
    if (o.ok)
        o.note = "2^1..2^4 and MO1..MO3 accepted, O6 rejected at (a, b)";
    return o;
}

std::vector<FiniteOml> fixture_lattices()
{
    std::vector<FiniteOml> out;
    for (const std::string name : {"bool1", "bool2", "bool3", "bool4", "mo0", "mo1", "mo2", "mo3"}) {
        std::ifstream in(std::string(FIXTURE_DIR) + "/" + name + ".json");
        out.push_back(oml_from_json(json::parse(in)));
    }
    return out;
}

Outcome constructions()
{
    Outcome o;
    std::size_t extensions = 0, faithful = 0, optimized = 0;
    for (const auto& l : fixture_lattices()) {
        if (l.size() > 16)
            continue;
        for (std::size_t e = 0; e < l.size(); ++e) {
            if (e == l.bottom())
                continue;
            auto ext = kalmbach_coatom_extension(l, e);
            auto rep = verify_coatom_extension(l, e, ext);
            o.require(rep.passed, "coatom extension: " + rep.law);
            o.require(ext.oml.size() == l.size() + interval_union_subalgebra(l, e).size(), "size law");
            ++extensions;
        }
        // faithful wherever L x P(L) fits under the cap, otherwise the
        // optimized form over atoms and coatoms
        if ((l.size() << l.size()) <= size_cap()) {
            auto r = lemma2_extend(l, Lemma2Mode::Faithful);
            o.require(r.exhaustive && verify_lemma2(l, r).passed, "lemma2 faithful");
            ++faithful;
        } else {
            std::vector<std::size_t> s = l.atoms();
            for (auto x : l.atoms())
                s.push_back(l.ortho(x));
            auto r = lemma2_extend(l, Lemma2Mode::Optimized, s);
            o.require(r.exhaustive && verify_lemma2(l, r).passed, "lemma2 optimized");
            ++optimized;
        }
    }
    if (o.ok)
        o.note = std::to_string(extensions) + " coatom extensions; lemma2 exhaustive on " + std::to_string(faithful) +
                 " lattices (faithful) and " + std::to_string(optimized) + " (atoms and coatoms, above the cap)";
    return o;
}

bool pattern_ok(const EmbeddingResult& r, const GraphSpec& g)
{
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!r.oml.is_atom(r.vertex_map[i]))
            return false;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (i != j && r.oml.orthogonal(r.vertex_map[i], r.vertex_map[j]) != g.adjacent(i, j))
                return false;
    }
    return std::set<std::size_t>(r.vertex_map.begin(), r.vertex_map.end()).size() == g.size();
}

Outcome pipeline()
{
    Outcome o;
    std::size_t graphs = 0, faithful = 0, largest = 0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask) {
            GraphSpec g = GraphSpec::from_edge_mask(n, mask);
            auto r = embed_atoms(g);
            o.require(check_oml(r.oml).passed, "lattice fails check_oml");
            o.require(verify_strong_embedding(r, g).passed && pattern_ok(r, g), "pattern differs from adjacency");
            largest = std::max(largest, r.oml.size());
            ++graphs;
            if (n <= 3) {
                auto f = embed_atoms(g, Lemma2Mode::Faithful);
                o.require(check_oml(f.oml).passed, "faithful lattice fails check_oml");
                o.require(verify_strong_embedding(f, g).passed && pattern_ok(f, g), "faithful pattern differs");
                ++faithful;
            }
        }
    if (o.ok)
        o.note = std::to_string(graphs) + " graphs optimized (largest lattice " + std::to_string(largest) +
                 "), " + std::to_string(faithful) + " faithful";
    return o;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr)
{
    std::ostringstream out, err;
    int c = cli::run(args, out, err);
    if (code)
        *code = c;
    return out.str();
}

Outcome determinism()
{
    Outcome o;
    const std::string fx = FIXTURE_DIR;
    const std::vector<std::vector<std::string>> commands = {
        {"--seed", "7", "center", "--samples", "50"},
        {"--seed", "7", "obstruct", "--samples", "500", "--height", "2"},
        {"figure1", "--x", "1", "--y", "w", "--z", "-1-w", "--field", "Qw"},
        {"mub"},
        {"witness", "--verify"},
        {"tao", "--graph", fx + "/c4.json", "--emit-gram"},
        {"check-oml", fx + "/o6.json"},
        {"embed", "--graph", fx + "/p3.json", "--stage", "atoms", "--stats"},
        {"loops", "--builtin", "witness"},
        {"find-subdiagram", "--pattern", fx + "/two-block.json", "--host", fx + "/figure2.json"},
        {"render", "--builtin", "figure1", "--format", "json"},
    };
    std::size_t lines = 0;
    for (const auto& c : commands) {
        int code = 0;
        std::string a = run_cli(c, &code), b = run_cli(c);
        o.require(code == 0 || (c[0] == "check-oml" && code == 1), "unexpected exit code for " + c[0]);
        o.require(a == b, "output of " + c[0] + " differs between runs");
        std::istringstream in(a);
        for (std::string line; std::getline(in, line);) {
            json j = json::parse(line);
            o.require(j.dump() == line && json::parse(j.dump()) == j, "JSON round trip for " + c[0]);
            ++lines;
        }
    }
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(fx)) {
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        json j = json::parse(ss.str());
        o.require(j.dump() + "\n" == ss.str(), "fixture " + entry.path().filename().string());
        ++files;
    }
    if (o.ok)
        o.note = std::to_string(commands.size()) + " commands byte-identical twice, " + std::to_string(lines) +
                 " JSON lines and " + std::to_string(files) + " fixtures round-trip";
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "MUB table", 1, mub},
        {2, "center iff unbiased", 5, center},
        {3, "figure 1 configuration", 30, figure1},
        {4, "witness realization", 5, witness},
        {5, "real obstruction", 600, obstruction},
        {6, "graph vectors", 60, tao},
        {7, "OML checker", 1, checker},
        {8, "construction lemmas", 120, constructions},
        {9, "graph to OML pipeline", 300, pipeline},
        {10, "determinism and round trip", 60, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (o.ok && secs > c.budget_seconds) {
            o.ok = false;
            o.note += "; over the time budget";
        }
        failures += !o.ok;
        std::cout << "criterion " << std::setw(2) << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name
                  << " (" << std::fixed << std::setprecision(2) << secs << " s of " << std::setprecision(0)
                  << c.budget_seconds << " s)  " << o.note << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
