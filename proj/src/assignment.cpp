#include "specflow/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace specflow {

std::vector<int> min_cost_assignment(
    const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("cost matrix must be square");

    // Jonker-Volgenant style shortest augmenting paths with potentials.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> pot_row(n + 1, 0.0), pot_col(n + 1, 0.0);
    std::vector<int> col_match(n + 1, 0);  // col -> row (1-based, 0 = free)
    std::vector<int> way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        col_match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = col_match[j0];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur =
                    cost[i0 - 1][j - 1] - pot_row[i0] - pot_col[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    pot_row[col_match[j]] += delta;
                    pot_col[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_match[j0] != 0);
        do {
            const int j1 = way[j0];
            col_match[j0] = col_match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> out(n, -1);
    for (int j = 1; j <= n; ++j)
        if (col_match[j] > 0) out[col_match[j] - 1] = j - 1;
    return out;
}

std::vector<int> match_points(const std::vector<Complex>& from,
                              const std::vector<Complex>& to) {
    if (from.size() != to.size())
        throw std::invalid_argument("match_points: size mismatch");
    const int n = static_cast<int>(from.size());
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost[i][j] = std::abs(from[i] - to[j]);
    return min_cost_assignment(cost);
}

}  // namespace specflow
