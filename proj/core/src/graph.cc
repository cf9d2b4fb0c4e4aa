#include "qsc/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qsc {

Graph Graph::from_edge_list(int n, std::span<const std::pair<int, int>> pairs) {
    if (n < 1) {
        throw std::invalid_argument("graph must have at least one vertex, got n=" + std::to_string(n));
    }
    Graph g;
    g.n_ = n;
    g.edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw std::invalid_argument("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                        ") out of range for n=" + std::to_string(n));
        }
        if (a == b) {
            throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        }
        g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.adjacency_.assign(n, {});
    g.incident_.assign(n, {});
    for (int k = 0; k < static_cast<int>(g.edges_.size()); ++k) {
        const Edge& e = g.edges_[k];
        g.adjacency_[e.u].push_back(e.v);
        g.adjacency_[e.v].push_back(e.u);
        g.incident_[e.u].push_back(k);
        g.incident_[e.v].push_back(k);
    }
    for (auto& nb : g.adjacency_) {
        std::sort(nb.begin(), nb.end());
    }
    return g;
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& nb : adjacency_) {
        best = std::max(best, static_cast<int>(nb.size()));
    }
    return best;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    const auto& nb = adjacency_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::uint64_t to_index(const VertexAssignment& a) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k]) {
            index |= std::uint64_t{1} << k;
        }
    }
    return index;
}

VertexAssignment from_index(std::uint64_t index, int n) {
    VertexAssignment a(n);
    for (int k = 0; k < n; ++k) {
        a[k] = static_cast<std::uint8_t>((index >> k) & 1U);
    }
    return a;
}

std::string to_string(const VertexAssignment& a) {
    std::string s;
    s.reserve(a.size());
    for (auto bit : a) {
        s.push_back(bit ? '1' : '0');
    }
    return s;
}

int set_size(const VertexAssignment& a) {
    return static_cast<int>(std::count(a.begin(), a.end(), std::uint8_t{1}));
}

std::vector<Vertex> ViolationSet::reset_set() const {
    std::vector<Vertex> out = endpoints;
    out.insert(out.end(), boundary.begin(), boundary.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ViolationSet violations_from_edges(const Graph& g, std::vector<Edge> bad_edges) {
    ViolationSet vs;
    std::sort(bad_edges.begin(), bad_edges.end());
    vs.edges = std::move(bad_edges);
    std::vector<std::uint8_t> in_b(g.num_vertices(), 0);
    for (const Edge& e : vs.edges) {
        in_b[e.u] = 1;
        in_b[e.v] = 1;
    }
    std::vector<std::uint8_t> in_boundary(g.num_vertices(), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (!in_b[v]) {
            continue;
        }
        vs.endpoints.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (!in_b[w]) {
                in_boundary[w] = 1;
            }
        }
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (in_boundary[v]) {
            vs.boundary.push_back(v);
        }
    }
    return vs;
}

ViolationSet violations(const Graph& g, const VertexAssignment& a) {
    if (static_cast<int>(a.size()) != g.num_vertices()) {
        throw std::invalid_argument("assignment length does not match vertex count");
    }
    std::vector<Edge> bad;
    for (const Edge& e : g.edges()) {
        if (a[e.u] && a[e.v]) {
            bad.push_back(e);
        }
    }
    return violations_from_edges(g, std::move(bad));
}

bool is_independent(const Graph& g, const VertexAssignment& a) {
    for (const Edge& e : g.edges()) {
        if (a[e.u] && a[e.v]) {
            return false;
        }
    }
    return true;
}

bool is_independent_index(const Graph& g, std::uint64_t index) {
    for (const Edge& e : g.edges()) {
        if (((index >> e.u) & 1U) && ((index >> e.v) & 1U)) {
            return false;
        }
    }
    return true;
}

namespace {

void check_oracle_size(const Graph& g) {
    if (g.num_vertices() > kOracleMaxVertices) {
        throw GuardError("independent-set enumeration limited to n <= " + std::to_string(kOracleMaxVertices) +
                         ", got n=" + std::to_string(g.num_vertices()));
    }
}

// Neighbor masks let the enumeration test a whole basis index in O(n).
std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
    std::vector<std::uint64_t> masks(g.num_vertices(), 0);
    for (const Edge& e : g.edges()) {
        masks[e.u] |= std::uint64_t{1} << e.v;
        masks[e.v] |= std::uint64_t{1} << e.u;
    }
    return masks;
}

template <class Fn>
void for_each_independent_index(const Graph& g, Fn&& fn) {
    check_oracle_size(g);
    const auto masks = neighbor_masks(g);
    const std::uint64_t dim = std::uint64_t{1} << g.num_vertices();
    for (std::uint64_t s = 0; s < dim; ++s) {
        bool ok = true;
        for (std::uint64_t rest = s; rest != 0 && ok; rest &= rest - 1) {
            int v = __builtin_ctzll(rest);
            ok = (masks[v] & s) == 0;
        }
        if (ok) {
            fn(s);
        }
    }
}

}  // namespace

std::vector<VertexAssignment> enumerate_independent_sets(const Graph& g) {
    std::vector<VertexAssignment> out;
    for_each_independent_index(g, [&](std::uint64_t s) { out.push_back(from_index(s, g.num_vertices())); });
    return out;
}

double partition_function(const Graph& g, double lambda) {
    if (!(lambda > 0)) {
        throw std::invalid_argument("lambda must be positive");
    }
    std::vector<double> by_size(g.num_vertices() + 1, 0.0);
    for_each_independent_index(g, [&](std::uint64_t s) { by_size[__builtin_popcountll(s)] += 1.0; });
    double z = 0.0;
    double power = 1.0;
    for (double count : by_size) {
        z += count * power;
        power *= lambda;
    }
    return z;
}

int max_independent_set_size(const Graph& g) {
    int best = 0;
    for_each_independent_index(g, [&](std::uint64_t s) { best = std::max(best, __builtin_popcountll(s)); });
    return best;
}

Graph read_graph(std::istream& in) {
    int n = 0;
    int m = 0;
    if (!(in >> n >> m)) {
        throw std::invalid_argument("graph file: expected header line \"n m\"");
    }
    if (m < 0) {
        throw std::invalid_argument("graph file: negative edge count");
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(m);
    for (int k = 0; k < m; ++k) {
        int a = 0;
        int b = 0;
        if (!(in >> a >> b)) {
            throw std::invalid_argument("graph file: expected " + std::to_string(m) + " edge lines, read " +
                                        std::to_string(k));
        }
        pairs.emplace_back(a, b);
    }
    return Graph::from_edge_list(n, pairs);
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open graph file: " + path);
    }
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.u << ' ' << e.v << '\n';
    }
}

}  // namespace qsc
