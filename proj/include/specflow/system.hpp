#pragma once

#include <optional>

#include "specflow/cmatrix.hpp"

namespace specflow {

enum class StructureKind { h_selfadjoint, j_hamiltonian };

/// Structure certificate carried by a system: H Hermitian nonsingular for
/// the selfadjoint class, J real skew-symmetric nonsingular for the
/// Hamiltonian class. Validated by make_structured_system.
struct StructureContext {
    StructureKind kind;
    CMatrix G;
};

/// The perturbation family A + tau u v*. Vectors must be nonzero and match
/// the matrix dimension.
struct RankOneSystem {
    CMatrix A;
    CVector u;
    CVector v;
    std::optional<StructureContext> structure;

    RankOneSystem(CMatrix A_, CVector u_, CVector v_,
                  std::optional<StructureContext> structure_ = {});

    int n() const { return A.n(); }
    bool is_real() const;

    CMatrix perturbed_matrix(Complex tau) const;
};

}  // namespace specflow
