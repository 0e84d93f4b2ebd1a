#include "specflow/nonneg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "specflow/asymptotics.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

namespace {

using Graph = std::vector<std::vector<int>>;  // adjacency: i -> {j}

Graph graph_of(const CMatrix& A, bool check_nonneg) {
    if (!A.is_real())
        throw std::invalid_argument("nonnegative analysis requires a real matrix");
    const int n = A.n();
    double maxentry = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double a = std::real(A.at(i, j));
            if (check_nonneg && a < -tol::nonneg_edge * std::max(1.0, maxentry))
                throw std::invalid_argument("matrix has negative entries");
            maxentry = std::max(maxentry, a);
        }
    const double threshold = tol::nonneg_edge * std::max(1.0, maxentry);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::real(A.at(i, j)) > threshold) g[i].push_back(j);
    return g;
}

std::vector<int> bfs_dist(const Graph& g, int src) {
    std::vector<int> dist(g.size(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int w : g[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

Graph reversed(const Graph& g) {
    Graph r(g.size());
    for (size_t i = 0; i < g.size(); ++i)
        for (int j : g[i]) r[j].push_back(static_cast<int>(i));
    return r;
}

bool strongly_connected(const Graph& g) {
    const auto d1 = bfs_dist(g, 0);
    for (int d : d1)
        if (d < 0) return false;
    const auto d2 = bfs_dist(reversed(g), 0);
    for (int d : d2)
        if (d < 0) return false;
    return true;
}

Graph with_edge(Graph g, int i0, int j0) {
    if (std::find(g[i0].begin(), g[i0].end(), j0) == g[i0].end())
        g[i0].push_back(j0);
    return g;
}

void check_indices(const CMatrix& A, int i0, int j0) {
    if (i0 < 0 || j0 < 0 || i0 >= A.n() || j0 >= A.n())
        throw std::invalid_argument("edge indices out of range");
}

}  // namespace

bool is_irreducible(const CMatrix& A) {
    if (A.n() == 1) return true;
    return strongly_connected(graph_of(A, true));
}

int shortest_cycle_through_edge(const CMatrix& A, int i0, int j0) {
    check_indices(A, i0, j0);
    const Graph g = with_edge(graph_of(A, true), i0, j0);
    const auto dist = bfs_dist(g, j0);
    if (dist[i0] < 0)
        throw std::runtime_error("no cycle through the inserted edge");
    const int l = 1 + dist[i0];

    // Cross-check against exact-length reachability: the first k with a
    // length-k walk j0 -> i0 must equal dist (walk graph of A plus edge).
    const int n = A.n();
    std::vector<char> frontier(n, 0);
    frontier[j0] = 1;
    int first = (i0 == j0) ? 0 : -1;
    for (int k = 1; k <= n && first < 0; ++k) {
        std::vector<char> nxt(n, 0);
        for (int u = 0; u < n; ++u) {
            if (!frontier[u]) continue;
            for (int w : g[u]) nxt[w] = 1;
        }
        frontier = std::move(nxt);
        if (frontier[i0]) first = k;
    }
    if (first != dist[i0])
        throw std::runtime_error("cycle length cross-check failed");
    return l;
}

int imprimitivity_index_with_edge(const CMatrix& A, int i0, int j0) {
    check_indices(A, i0, j0);
    const Graph g = with_edge(graph_of(A, true), i0, j0);
    if (!strongly_connected(g))
        throw std::invalid_argument("graph is not strongly connected");
    const auto level = bfs_dist(g, 0);
    int gcd = 0;
    for (size_t u = 0; u < g.size(); ++u)
        for (int w : g[u])
            gcd = std::gcd(gcd, std::abs(level[u] + 1 - level[w]));
    return gcd == 0 ? 1 : gcd;
}

DivergenceCount divergence_count(const CMatrix& A, int i0, int j0) {
    check_indices(A, i0, j0);
    if (!is_irreducible(A))
        throw std::invalid_argument("divergence_count requires irreducible A");

    DivergenceCount out;
    out.l = shortest_cycle_through_edge(A, i0, j0);
    out.index = imprimitivity_index_with_edge(A, i0, j0);

    CVector u(A.n(), 0.0), v(A.n(), 0.0);
    u[i0] = 1.0;
    v[j0] = 1.0;
    const AsymptoticModel model = detect_kappa(RankOneSystem(A, u, v));
    out.kappa = model.degenerate ? -1 : model.kappa;
    out.check = (out.kappa == out.l - 1) && (out.l % out.index == 0);
    return out;
}

}  // namespace specflow
