#pragma once

// Greechie diagrams: a vertex set together with its blocks, the maximal
// cliques of an orthogonality graph.

#include <orthospace/bitset.hpp>
#include <orthospace/error.hpp>

#include <json.hpp>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orthospace {

/// Finite simple loopless undirected graph on vertices 0..n-1.
class GraphSpec {
public:
    GraphSpec() = default;
    /// Throws InvalidGraph on self-loops, duplicate edges or out-of-range indices.
    GraphSpec(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

    static GraphSpec complete(std::size_t n);
    /// Graph whose edges are the set bits of `mask` over the pairs (i<j) in lexicographic order.
    static GraphSpec from_edge_mask(std::size_t n, std::uint64_t mask);

    std::size_t size() const { return n_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i][j]; }
    const Bitset& neighbours(std::size_t i) const { return adj_[i]; }
    std::size_t degree(std::size_t i) const { return adj_[i].count(); }

    /// Induced subgraph on `keep` (in that order).
    GraphSpec induced(const std::vector<std::size_t>& keep) const;
    GraphSpec complement() const;

    friend bool operator==(const GraphSpec& a, const GraphSpec& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<Bitset> adj_;
};

class GreechieDiagram {
public:
    GreechieDiagram() = default;
    /// Blocks given as vertex indices. Throws InvalidDiagram unless the blocks
    /// are exactly the maximal cliques (of size >= 2) of the co-block graph.
    GreechieDiagram(std::vector<std::string> vertices, std::vector<std::vector<std::size_t>> blocks);

    static GreechieDiagram from_labels(std::vector<std::string> vertices,
                                       const std::vector<std::vector<std::string>>& blocks);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    /// Each block sorted ascending; blocks in lexicographic order.
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    friend bool operator==(const GreechieDiagram&, const GreechieDiagram&) = default;

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// Maximal cliques of size >= 2, each sorted, in lexicographic order (Bron-Kerbosch with pivoting).
std::vector<std::vector<std::size_t>> maximal_cliques(const GraphSpec& g);

GreechieDiagram diagram_from_graph(const GraphSpec& g);
GreechieDiagram diagram_from_graph(const GraphSpec& g, std::vector<std::string> labels);
GraphSpec graph_from_diagram(const GreechieDiagram& d);

/// Smallest n >= 3 such that there are distinct blocks B1..Bn with Bi and
/// B(i+1 mod n) sharing an atom si and s1..sn pairwise distinct.
std::optional<std::size_t> min_loop_order(const GreechieDiagram& d);

struct DiagramEmbedding {
    std::vector<std::size_t> mapping;  // pattern vertex -> host vertex
    bool full = false;
};

enum class SearchStatus { Found, None, Timeout };

struct EmbeddingSearch {
    SearchStatus status = SearchStatus::None;
    std::optional<DiagramEmbedding> embedding;
    std::uint64_t nodes = 0;
};

using Deadline = std::chrono::steady_clock::time_point;

inline Deadline deadline_after(std::chrono::milliseconds budget)
{
    return std::chrono::steady_clock::now() + budget;
}

/// Injective map of the pattern's co-block graph into the host's preserving
/// adjacency (and non-adjacency too when `full`).
EmbeddingSearch find_embedding(const GreechieDiagram& pattern, const GreechieDiagram& host, bool full,
                               Deadline deadline = Deadline::max());
EmbeddingSearch find_graph_embedding(const GraphSpec& pattern, const GraphSpec& host, bool full,
                                     Deadline deadline = Deadline::max());

/// Whether `mapping` is an (optionally full) embedding of pattern into host.
bool is_graph_embedding(const GraphSpec& pattern, const GraphSpec& host, const std::vector<std::size_t>& mapping,
                        bool full);

std::string to_dot(const GreechieDiagram& d);

nlohmann::json to_json(const GreechieDiagram& d);
GreechieDiagram diagram_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GraphSpec& g);
GraphSpec graph_from_json(const nlohmann::json& j);

}  // namespace orthospace
