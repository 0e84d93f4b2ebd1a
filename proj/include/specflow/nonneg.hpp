#pragma once

#include "specflow/cmatrix.hpp"

namespace specflow {

/// Strong connectivity of the directed graph with an edge (i, j) wherever
/// a_ij exceeds the positivity threshold. Requires a real entrywise
/// nonnegative matrix.
bool is_irreducible(const CMatrix& A);

/// Length of the shortest directed cycle through the inserted (i0, j0) edge
/// in the graph of A + e_{i0} e_{j0}^T: one plus the shortest path from j0
/// back to i0. Indices are 0-based. Throws when no such cycle exists.
int shortest_cycle_through_edge(const CMatrix& A, int i0, int j0);

/// gcd of directed cycle lengths of the (strongly connected) graph of
/// A + e_{i0} e_{j0}^T.
int imprimitivity_index_with_edge(const CMatrix& A, int i0, int j0);

struct DivergenceCount {
    int l = 0;       // eigenvalues diverging as tau -> +infinity
    int index = 1;   // imprimitivity index of the perturbed graph
    int kappa = 0;   // first nonzero moment index of (A, e_i0, e_j0)
    bool check = false;  // l == kappa + 1 and index divides l
};

/// Predicted count of diverging eigenvalues of A + tau e_{i0} e_{j0}^T,
/// cross-checked against the moment sequence and the imprimitivity index.
DivergenceCount divergence_count(const CMatrix& A, int i0, int j0);

}  // namespace specflow
