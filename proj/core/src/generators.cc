#include "qsc/generators.h"

#include <algorithm>
#include <array>
#include <tuple>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "qsc/rng.h"

namespace qsc {

Graph gen_regular(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 0 || d >= n) {
        throw std::invalid_argument("regular graph needs 0 <= d < n, got n=" + std::to_string(n) +
                                    " d=" + std::to_string(d));
    }
    if ((static_cast<long long>(n) * d) % 2 != 0) {
        throw std::invalid_argument("regular graph needs n*d even, got n=" + std::to_string(n) +
                                    " d=" + std::to_string(d));
    }
    Rng rng(seed);
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::uint8_t> seen;
    for (;;) {
        stubs.clear();
        for (int v = 0; v < n; ++v) {
            stubs.insert(stubs.end(), d, v);
        }
        std::shuffle(stubs.begin(), stubs.end(), rng);
        pairs.clear();
        seen.assign(static_cast<std::size_t>(n) * n, 0);
        bool simple = true;
        for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
            int a = std::min(stubs[k], stubs[k + 1]);
            int b = std::max(stubs[k], stubs[k + 1]);
            auto& slot = seen[static_cast<std::size_t>(a) * n + b];
            if (a == b || slot) {
                simple = false;
                break;
            }
            slot = 1;
            pairs.emplace_back(a, b);
        }
        if (simple) {
            return Graph::from_edge_list(n, pairs);
        }
    }
}

namespace {

struct Point {
    double x;
    double y;
};

double orient(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Segments sharing an endpoint never count as crossing; points are in general
// position with probability one.
bool segments_cross(const std::array<Point, 4>& p) {
    double d1 = orient(p[2], p[3], p[0]);
    double d2 = orient(p[2], p[3], p[1]);
    double d3 = orient(p[0], p[1], p[2]);
    double d4 = orient(p[0], p[1], p[3]);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

Graph gen_bounded_planar(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("bounded planar graph needs n >= 1 and d >= 1");
    }
    Rng rng(seed);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = uniform01(rng);
        p.y = uniform01(rng);
    }

    struct Candidate {
        double length2;
        int a;
        int b;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            double dx = pts[a].x - pts[b].x;
            double dy = pts[a].y - pts[b].y;
            candidates.push_back({dx * dx + dy * dy, a, b});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
        return std::tie(l.length2, l.a, l.b) < std::tie(r.length2, r.a, r.b);
    });

    // Greedy triangulation: shortest-first, keep every edge that crosses none kept so far.
    std::vector<std::pair<int, int>> kept;
    for (const auto& c : candidates) {
        bool crosses = false;
        for (const auto& [u, v] : kept) {
            if (u == c.a || u == c.b || v == c.a || v == c.b) {
                continue;
            }
            if (segments_cross({pts[c.a], pts[c.b], pts[u], pts[v]})) {
                crosses = true;
                break;
            }
        }
        if (!crosses) {
            kept.emplace_back(c.a, c.b);
        }
    }

    // One seeded pass suffices: degrees only decrease, so a vertex still above d
    // at the end would have had every incident edge deleted.
    std::shuffle(kept.begin(), kept.end(), rng);
    std::vector<int> degree(n, 0);
    for (const auto& [u, v] : kept) {
        ++degree[u];
        ++degree[v];
    }
    std::vector<std::pair<int, int>> pruned;
    for (const auto& [u, v] : kept) {
        if (degree[u] > d || degree[v] > d) {
            --degree[u];
            --degree[v];
        } else {
            pruned.emplace_back(u, v);
        }
    }
    return Graph::from_edge_list(n, pruned);
}

Graph gen_star(int leaves) {
    if (leaves < 1) {
        throw std::invalid_argument("star graph needs at least one leaf");
    }
    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v <= leaves; ++v) {
        pairs.emplace_back(0, v);
    }
    return Graph::from_edge_list(leaves + 1, pairs);
}

Graph empty_graph(int n) { return Graph::from_edge_list(n, std::span<const std::pair<int, int>>{}); }

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            pairs.emplace_back(a, b);
        }
    }
    return Graph::from_edge_list(n, pairs);
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v + 1 < n; ++v) {
        pairs.emplace_back(v, v + 1);
    }
    return Graph::from_edge_list(n, pairs);
}

Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < n; ++v) {
        pairs.emplace_back(v, (v + 1) % n);
    }
    return Graph::from_edge_list(n, pairs);
}

Graph petersen_graph() {
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < 5; ++k) {
        pairs.emplace_back(k, (k + 1) % 5);
        pairs.emplace_back(k, k + 5);
        pairs.emplace_back(5 + k, 5 + (k + 2) % 5);
    }
    return Graph::from_edge_list(10, pairs);
}

bool is_planar(const Graph& g) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(g.num_vertices());
    for (const Edge& e : g.edges()) {
        boost::add_edge(e.u, e.v, bg);
    }
    return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace qsc
