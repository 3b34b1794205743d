#include <orthospace/greechie.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace orthospace {

GraphSpec::GraphSpec(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) : n_(n), adj_(n, Bitset(n))
{
    for (auto& [i, j] : edges) {
        if (i >= n || j >= n)
            throw Error(ErrorKind::InvalidGraph, "edge index out of range");
        if (i == j)
            throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(i));
        if (i > j)
            std::swap(i, j);
        if (adj_[i][j])
            throw Error(ErrorKind::InvalidGraph,
                        "duplicate edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
        adj_[i].set(j);
        adj_[j].set(i);
    }
    std::sort(edges.begin(), edges.end());
    edges_ = std::move(edges);
}

GraphSpec GraphSpec::complete(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return GraphSpec(n, std::move(e));
}

GraphSpec GraphSpec::from_edge_mask(std::size_t n, std::uint64_t mask)
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1u)
                e.emplace_back(i, j);
    return GraphSpec(n, std::move(e));
}

GraphSpec GraphSpec::induced(const std::vector<std::size_t>& keep) const
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            if (adjacent(keep[a], keep[b]))
                e.emplace_back(a, b);
    return GraphSpec(keep.size(), std::move(e));
}

GraphSpec GraphSpec::complement() const
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (!adjacent(i, j))
                e.emplace_back(i, j);
    return GraphSpec(n_, std::move(e));
}

namespace {

void bron_kerbosch(const GraphSpec& g, std::vector<std::size_t>& r, Bitset p, Bitset x,
                   std::vector<std::vector<std::size_t>>& out)
{
    if (p.none()) {
        if (x.none() && r.size() >= 2) {
            auto c = r;
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
        }
        return;
    }
    // pivot: vertex of P u X with the most neighbours in P
    std::size_t pivot = 0, best = 0;
    bool have = false;
    Bitset px = p | x;
    for (auto u = px.find_first(); u != Bitset::npos; u = px.find_next(u)) {
        std::size_t c = (p & g.neighbours(u)).count();
        if (!have || c > best) {
            pivot = u;
            best = c;
            have = true;
        }
    }
    Bitset candidates = p - g.neighbours(pivot);
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
        r.push_back(v);
        bron_kerbosch(g, r, p & g.neighbours(v), x & g.neighbours(v), out);
        r.pop_back();
        p.reset(v);
        x.set(v);
    }
}

std::vector<std::string> index_labels(std::size_t n)
{
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = std::to_string(i);
    return labels;
}

}  // namespace

std::vector<std::vector<std::size_t>> maximal_cliques(const GraphSpec& g)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> r;
    Bitset p(g.size());
    p.set();
    bron_kerbosch(g, r, p, Bitset(g.size()), out);
    std::sort(out.begin(), out.end());
    return out;
}

GreechieDiagram::GreechieDiagram(std::vector<std::string> vertices, std::vector<std::vector<std::size_t>> blocks)
    : vertices_(std::move(vertices))
{
    std::set<std::string> seen;
    for (const auto& v : vertices_)
        if (!seen.insert(v).second)
            throw Error(ErrorKind::InvalidDiagram, "duplicate vertex label '" + v + "'");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        if (b.size() < 2)
            throw Error(ErrorKind::InvalidDiagram, "block with fewer than 2 vertices");
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw Error(ErrorKind::InvalidDiagram, "block repeats a vertex");
        if (b.back() >= vertices_.size())
            throw Error(ErrorKind::InvalidDiagram, "block vertex out of range");
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (edge_set.emplace(b[i], b[j]).second)
                    edges.emplace_back(b[i], b[j]);
    }
    std::sort(blocks.begin(), blocks.end());
    if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end())
        throw Error(ErrorKind::InvalidDiagram, "duplicate block");
    auto cliques = maximal_cliques(GraphSpec(vertices_.size(), std::move(edges)));
    if (cliques != blocks) {
        // find a culprit for the message
        for (const auto& b : blocks)
            if (!std::binary_search(cliques.begin(), cliques.end(), b)) {
                std::string names;
                for (auto v : b)
                    names += (names.empty() ? "" : ",") + vertices_[v];
                throw Error(ErrorKind::InvalidDiagram, "block {" + names + "} is not a maximal clique");
            }
        throw Error(ErrorKind::InvalidDiagram, "co-block graph has maximal cliques that are not blocks");
    }
    blocks_ = std::move(blocks);
}

GreechieDiagram GreechieDiagram::from_labels(std::vector<std::string> vertices,
                                             const std::vector<std::vector<std::string>>& blocks)
{
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        index.emplace(vertices[i], i);
    std::vector<std::vector<std::size_t>> ib;
    for (const auto& b : blocks) {
        auto& out = ib.emplace_back();
        for (const auto& l : b) {
            auto it = index.find(l);
            if (it == index.end())
                throw Error(ErrorKind::InvalidDiagram, "block mentions unknown vertex '" + l + "'");
            out.push_back(it->second);
        }
    }
    return GreechieDiagram(std::move(vertices), std::move(ib));
}

std::optional<std::size_t> GreechieDiagram::index_of(const std::string& label) const
{
    auto it = std::find(vertices_.begin(), vertices_.end(), label);
    if (it == vertices_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

GreechieDiagram diagram_from_graph(const GraphSpec& g)
{
    return diagram_from_graph(g, index_labels(g.size()));
}

GreechieDiagram diagram_from_graph(const GraphSpec& g, std::vector<std::string> labels)
{
    if (labels.size() != g.size())
        throw Error(ErrorKind::InvalidArgument, "label count does not match vertex count");
    return GreechieDiagram(std::move(labels), maximal_cliques(g));
}

GraphSpec graph_from_diagram(const GreechieDiagram& d)
{
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& b : d.blocks())
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                edges.emplace(b[i], b[j]);
    return GraphSpec(d.size(), {edges.begin(), edges.end()});
}

namespace {

struct LoopSearch {
    const std::vector<std::vector<std::size_t>>& blocks;
    std::vector<std::vector<std::size_t>> blocks_of;  // atom -> blocks containing it
    std::vector<char> block_used;
    std::vector<char> atom_used;
    std::size_t start = 0;
    std::size_t best;

    LoopSearch(const GreechieDiagram& d)
        : blocks(d.blocks()), blocks_of(d.size()), block_used(d.blocks().size()), atom_used(d.size()),
          best(std::numeric_limits<std::size_t>::max())
    {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (auto a : blocks[b])
                blocks_of[a].push_back(b);
    }

    // `depth` blocks on the path so far, the last one being `cur`
    void extend(std::size_t cur, std::size_t depth)
    {
        for (auto atom : blocks[cur]) {
            if (atom_used[atom])
                continue;
            for (auto next : blocks_of[atom]) {
                if (next == start && depth >= 3 && depth < best)
                    best = depth;
                if (next <= start || block_used[next] || depth + 1 >= best)
                    continue;
                block_used[next] = 1;
                atom_used[atom] = 1;
                extend(next, depth + 1);
                atom_used[atom] = 0;
                block_used[next] = 0;
            }
        }
    }
};

}  // namespace

std::optional<std::size_t> min_loop_order(const GreechieDiagram& d)
{
    LoopSearch s(d);
    for (std::size_t b = 0; b < d.blocks().size(); ++b) {
        s.start = b;
        s.block_used[b] = 1;
        s.extend(b, 1);
        s.block_used[b] = 0;
        if (s.best == 3)
            break;
    }
    if (s.best == std::numeric_limits<std::size_t>::max())
        return std::nullopt;
    return s.best;
}

namespace {

constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();

class EmbeddingSearcher {
public:
    EmbeddingSearcher(const GraphSpec& pattern, const GraphSpec& host, bool full, Deadline deadline)
        : pattern_(pattern), host_(host), full_(full), deadline_(deadline), assignment_(pattern.size(), unassigned)
    {
    }

    EmbeddingSearch run()
    {
        EmbeddingSearch result;
        std::vector<Bitset> domains(pattern_.size(), Bitset(host_.size()));
        for (std::size_t p = 0; p < pattern_.size(); ++p)
            for (std::size_t h = 0; h < host_.size(); ++h)
                if (host_.degree(h) >= pattern_.degree(p))
                    domains[p].set(h);
        bool found = pattern_.size() <= host_.size() && search(domains, 0);
        result.nodes = nodes_;
        if (found) {
            result.status = SearchStatus::Found;
            result.embedding = DiagramEmbedding{assignment_, full_};
        } else {
            result.status = timed_out_ ? SearchStatus::Timeout : SearchStatus::None;
        }
        return result;
    }

private:
    bool out_of_time()
    {
        if (timed_out_)
            return true;
        if ((++nodes_ & 0xff) == 0 && std::chrono::steady_clock::now() > deadline_)
            timed_out_ = true;
        return timed_out_;
    }

    // smallest domain first; ties by larger pattern degree, then lower index
    std::size_t choose(const std::vector<Bitset>& domains) const
    {
        std::size_t best = unassigned, best_size = 0;
        for (std::size_t p = 0; p < pattern_.size(); ++p) {
            if (assignment_[p] != unassigned)
                continue;
            std::size_t size = domains[p].count();
            if (best == unassigned || size < best_size ||
                (size == best_size && pattern_.degree(p) > pattern_.degree(best))) {
                best = p;
                best_size = size;
            }
        }
        return best;
    }

    bool search(const std::vector<Bitset>& domains, std::size_t assigned)
    {
        if (assigned == pattern_.size())
            return true;
        if (out_of_time())
            return false;
        std::size_t p = choose(domains);
        const Bitset& dom = domains[p];
        for (auto h = dom.find_first(); h != Bitset::npos; h = dom.find_next(h)) {
            std::vector<Bitset> next = domains;
            bool wipeout = false;
            for (std::size_t q = 0; q < pattern_.size() && !wipeout; ++q) {
                if (assignment_[q] != unassigned || q == p)
                    continue;
                next[q].reset(h);
                if (pattern_.adjacent(p, q))
                    next[q] &= host_.neighbours(h);
                else if (full_)
                    next[q] -= host_.neighbours(h);
                wipeout = next[q].none();
            }
            if (wipeout)
                continue;
            assignment_[p] = h;
            if (search(next, assigned + 1))
                return true;
            assignment_[p] = unassigned;
            if (timed_out_)
                return false;
        }
        return false;
    }

    const GraphSpec& pattern_;
    const GraphSpec& host_;
    bool full_;
    Deadline deadline_;
    std::vector<std::size_t> assignment_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace

EmbeddingSearch find_graph_embedding(const GraphSpec& pattern, const GraphSpec& host, bool full, Deadline deadline)
{
    return EmbeddingSearcher(pattern, host, full, deadline).run();
}

EmbeddingSearch find_embedding(const GreechieDiagram& pattern, const GreechieDiagram& host, bool full,
                               Deadline deadline)
{
    return find_graph_embedding(graph_from_diagram(pattern), graph_from_diagram(host), full, deadline);
}

bool is_graph_embedding(const GraphSpec& pattern, const GraphSpec& host, const std::vector<std::size_t>& mapping,
                        bool full)
{
    if (mapping.size() != pattern.size())
        return false;
    std::set<std::size_t> image;
    for (auto h : mapping)
        if (h >= host.size() || !image.insert(h).second)
            return false;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        for (std::size_t j = i + 1; j < pattern.size(); ++j) {
            bool a = pattern.adjacent(i, j), b = host.adjacent(mapping[i], mapping[j]);
            if ((a && !b) || (full && b && !a))
                return false;
        }
    return true;
}

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const GreechieDiagram& d)
{
    std::ostringstream out;
    out << "digraph greechie {\n";
    if (d.size() > 0) {
        out << "  edge [dir=none];\n";
        for (std::size_t v = 0; v < d.size(); ++v)
            out << "  v" << v << " [label=\"" << dot_escape(d.vertices()[v]) << "\"];\n";
        for (std::size_t b = 0; b < d.blocks().size(); ++b)
            out << "  b" << b << " [shape=point];\n";
        for (std::size_t b = 0; b < d.blocks().size(); ++b)
            for (auto v : d.blocks()[b])
                out << "  b" << b << " -> v" << v << ";\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::json to_json(const GreechieDiagram& d)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : d.blocks()) {
        nlohmann::json jb = nlohmann::json::array();
        for (auto v : b)
            jb.push_back(d.vertices()[v]);
        blocks.push_back(std::move(jb));
    }
    return {{"vertices", d.vertices()}, {"blocks", std::move(blocks)}};
}

GreechieDiagram diagram_from_json(const nlohmann::json& j)
{
    try {
        return GreechieDiagram::from_labels(j.at("vertices").get<std::vector<std::string>>(),
                                            j.at("blocks").get<std::vector<std::vector<std::string>>>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

nlohmann::json to_json(const GraphSpec& g)
{
    nlohmann::json edges = nlohmann::json::array();
    for (auto [i, j] : g.edges())
        edges.push_back({i, j});
    return {{"n", g.size()}, {"edges", std::move(edges)}};
}

GraphSpec graph_from_json(const nlohmann::json& j)
{
    try {
        auto n = j.at("n").get<std::int64_t>();
        if (n < 0)
            throw Error(ErrorKind::InvalidGraph, "negative vertex count");
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw Error(ErrorKind::Parse, "edge must be a pair");
            auto a = e[0].get<std::int64_t>(), b = e[1].get<std::int64_t>();
            if (a < 0 || b < 0)
                throw Error(ErrorKind::InvalidGraph, "negative vertex index");
            edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
        return GraphSpec(static_cast<std::size_t>(n), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

}  // namespace orthospace
