#include <orthospace/graph2oml.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace orthospace {

std::string_view to_string(EmbeddingStage s)
{
    return s == EmbeddingStage::Atoms ? "atoms" : "nonzero";
}

namespace {

std::string step_name(const std::string& kind, std::size_t n)
{
    return kind + "[" + std::to_string(n) + "]";
}

EmbeddingResult embed_rec(const GraphSpec& g, Lemma2Mode mode, std::vector<StepSize>& stats)
{
    const std::size_t n = g.size();
    EmbeddingResult r;
    if (n == 1) {
        r.oml = boolean_powerset(1);
        r.vertex_map = {r.oml.top()};
        stats.push_back({"base", r.oml.size()});
        return r;
    }

    std::size_t w = n;
    for (std::size_t v = 0; v < n && w == n; ++v)
        if (g.degree(v) < n - 1)
            w = v;
    if (w == n) {
        r.oml = boolean_powerset(n);
        for (std::size_t v = 0; v < n; ++v)
            r.vertex_map.push_back(*r.oml.index_of("{" + std::to_string(v) + "}"));
        stats.push_back({"base", r.oml.size()});
        return r;
    }

    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
        if (v != w)
            rest.push_back(v);
    EmbeddingResult h = embed_rec(g.induced(rest), mode, stats);

    Lemma2Result m;
    try {
        m = lemma2_extend(h.oml, mode, mode == Lemma2Mode::Optimized ? h.vertex_map : std::vector<std::size_t>{});
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SizeLimitExceeded)
            throw Error(e.kind(), step_name("lemma2", n) + ": " + e.what());
        throw;
    }
    stats.push_back({step_name("lemma2", n), m.oml.size()});

    // k = g o h on the vertices of H
    std::vector<std::size_t> k(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) {
        std::size_t hx = h.vertex_map[i];
        auto it = std::find(m.domain.begin(), m.domain.end(), hx);
        k[i] = m.image[static_cast<std::size_t>(it - m.domain.begin())];
    }
    std::vector<std::size_t> kp;
    for (std::size_t i = 0; i < rest.size(); ++i)
        if (g.adjacent(w, rest[i]))
            kp.push_back(k[i]);
    auto joined = m.oml.join_of(kp);
    if (!joined)
        throw Error(ErrorKind::VerificationFailure, "join of k(P) does not exist");
    const std::size_t e = m.oml.ortho(*joined);
    if (e == m.oml.bottom())
        throw Error(ErrorKind::VerificationFailure, "e = 0 at " + step_name("coatom", n));

    CoatomExtension ext;
    try {
        ext = kalmbach_coatom_extension(m.oml, e);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::SizeLimitExceeded)
            throw Error(err.kind(), step_name("coatom", n) + ": " + err.what());
        throw;
    }
    stats.push_back({step_name("coatom", n), ext.oml.size()});

    r.oml = std::move(ext.oml);
    r.vertex_map.assign(n, 0);
    r.vertex_map[w] = ext.atom;
    for (std::size_t i = 0; i < rest.size(); ++i)
        r.vertex_map[rest[i]] = ext.embed[k[i]];

    auto report = verify_strong_embedding(r, g);
    if (!report.passed)
        throw Error(ErrorKind::VerificationFailure, step_name("coatom", n) + " " + report.law + ": " + report.detail);
    return r;
}

}  // namespace

EmbeddingResult embed_nonzero(const GraphSpec& g, Lemma2Mode mode)
{
    if (g.size() == 0)
        throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
    std::vector<StepSize> stats;
    EmbeddingResult r = embed_rec(g, mode, stats);
    r.stats = std::move(stats);
    r.stage = EmbeddingStage::Nonzero;
    return r;
}

EmbeddingResult embed_atoms(const GraphSpec& g, Lemma2Mode mode)
{
    EmbeddingResult r = embed_nonzero(g, mode);
    BigCoatomExtension ext;
    try {
        ext = bigcoatom_extend(r.oml, r.vertex_map);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SizeLimitExceeded)
            throw Error(e.kind(), std::string("atoms: ") + e.what());
        throw;
    }
    r.stats.push_back({step_name("atoms", g.size()), ext.oml.size()});
    r.oml = std::move(ext.oml);
    r.vertex_map = std::move(ext.atoms);
    r.stage = EmbeddingStage::Atoms;
    auto report = verify_strong_embedding(r, g);
    if (!report.passed)
        throw Error(ErrorKind::VerificationFailure, "atoms " + report.law + ": " + report.detail);
    return r;
}

CheckReport verify_strong_embedding(const EmbeddingResult& res, const GraphSpec& g)
{
    const FiniteOml& l = res.oml;
    const std::size_t n = g.size();
    if (res.vertex_map.size() != n)
        return {false, "shape", {}, "vertex map does not cover the graph"};
    for (auto x : res.vertex_map)
        if (x >= l.size())
            return {false, "shape", {x}, "image out of range"};
    std::set<std::size_t> seen(res.vertex_map.begin(), res.vertex_map.end());
    if (seen.size() != n)
        return {false, "injective", {}, "two vertices share an image"};

    // bottom: the element below everything
    std::size_t bottom = FiniteOml::npos;
    for (std::size_t x = 0; x < l.size() && bottom == FiniteOml::npos; ++x)
        if (l.upset(x).count() == l.size())
            bottom = x;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t x = res.vertex_map[v];
        if (x == bottom)
            return {false, "nonzero", {v}, "vertex mapped to 0"};
        if (res.stage == EmbeddingStage::Atoms) {
            std::size_t below = 0;
            for (std::size_t y = 0; y < l.size(); ++y)
                if (l.leq(y, x))
                    ++below;
            if (below != 2)
                return {false, "atom", {v}, "image is not an atom"};
        }
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v)
                continue;
            bool perp = l.leq(res.vertex_map[u], l.ortho(res.vertex_map[v]));
            if (perp != g.adjacent(u, v))
                return {false, "pattern", {u, v}, perp ? "orthogonal images of non-adjacent vertices"
                                                       : "non-orthogonal images of adjacent vertices"};
        }
    return {};
}

nlohmann::json to_json(const EmbeddingResult& res)
{
    nlohmann::json stats = nlohmann::json::array();
    for (const auto& s : res.stats)
        stats.push_back({{"step", s.step}, {"size", s.size}});
    return {{"stage", to_string(res.stage)},
            {"vertex_map", res.vertex_map},
            {"stats", std::move(stats)},
            {"oml", to_json(res.oml)}};
}

}  // namespace orthospace
