#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsc {

using Vertex = int;

/// Undirected edge stored with first < second.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Thrown when an oracle or simulator size guard is exceeded.
class GuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Immutable simple undirected graph on vertices [0, n).
class Graph {
  public:
    Graph() = default;

    /// Normalizes each pair to (min, max) and drops duplicates. Throws
    /// std::invalid_argument on self-loops or out-of-range endpoints.
    static Graph from_edge_list(int n, std::span<const std::pair<int, int>> pairs);
    static Graph from_edge_list(int n, std::initializer_list<std::pair<int, int>> pairs) {
        return from_edge_list(n, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    /// Indices into edges() of the edges touching v.
    const std::vector<int>& incident_edges(Vertex v) const { return incident_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    int max_degree() const;
    bool has_edge(Vertex a, Vertex b) const;

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<int>> incident_;
};

/// Bit v is 1 when vertex v is in the set.
using VertexAssignment = std::vector<std::uint8_t>;

/// Packs an assignment into a basis index, vertex 0 as the least significant bit.
std::uint64_t to_index(const VertexAssignment& a);
VertexAssignment from_index(std::uint64_t index, int n);
/// Vertex 0 printed first.
std::string to_string(const VertexAssignment& a);
int set_size(const VertexAssignment& a);

struct ViolationSet {
    std::vector<Edge> edges;
    /// Endpoints of violating edges (B).
    std::vector<Vertex> endpoints;
    /// Neighbors of B that are not themselves in B.
    std::vector<Vertex> boundary;

    bool empty() const { return edges.empty(); }
    /// B ∪ N(B), sorted and unique.
    std::vector<Vertex> reset_set() const;
};

ViolationSet violations(const Graph& g, const VertexAssignment& a);
ViolationSet violations_from_edges(const Graph& g, std::vector<Edge> bad_edges);
bool is_independent(const Graph& g, const VertexAssignment& a);
bool is_independent_index(const Graph& g, std::uint64_t index);

inline constexpr int kOracleMaxVertices = 24;

/// All independent sets, sorted by basis index.
std::vector<VertexAssignment> enumerate_independent_sets(const Graph& g);
/// Sum over independent sets of lambda^|s|.
double partition_function(const Graph& g, double lambda);
int max_independent_set_size(const Graph& g);

/// Graph text format: "n m" then m lines "i j".
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace qsc
