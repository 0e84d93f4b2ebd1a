#include "specflow/system.hpp"

#include <stdexcept>

namespace specflow {

RankOneSystem::RankOneSystem(CMatrix A_, CVector u_, CVector v_,
                             std::optional<StructureContext> structure_)
    : A(std::move(A_)),
      u(std::move(u_)),
      v(std::move(v_)),
      structure(std::move(structure_)) {
    if (static_cast<int>(u.size()) != A.n() ||
        static_cast<int>(v.size()) != A.n())
        throw std::invalid_argument("vector dimensions do not match matrix");
    if (vec_norm(u) == 0.0 || vec_norm(v) == 0.0)
        throw std::invalid_argument("perturbation vectors must be nonzero");
}

bool RankOneSystem::is_real() const {
    return A.is_real() && vec_is_real(u) && vec_is_real(v);
}

CMatrix RankOneSystem::perturbed_matrix(Complex tau) const {
    return A + rank_one(u, v) * tau;
}

}  // namespace specflow
