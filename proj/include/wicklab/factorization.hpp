#pragma once

// Γ±(k_low ⊕ k_high) ≅ Γ±(k_low) ⊗ Γ±(k_high) at a mode cut, realized as an
// explicit basis bijection onto the pairs of total grade <= M. Low modes
// precede high modes in the global order, so the Fermi wedge |S_low ∪ S_high>
// maps to |S_low> ⊗ |S_high> with sign +1, and a high-mode Fermi field picks up
// the low-factor parity (-1)^{N_low}.

#include <cstdint>

#include "wicklab/fock_basis.hpp"
#include "wicklab/sparse_operator.hpp"

namespace wicklab {

class SplitFock {
public:
    SplitFock(BasisPtr full, std::size_t cut_mode);

    const BasisPtr& full() const noexcept { return full_; }
    // Null when the factor has no modes (its Fock space is the vacuum line).
    const BasisPtr& low() const noexcept { return low_; }
    const BasisPtr& high() const noexcept { return high_; }
    std::size_t cut_mode() const noexcept { return cut_; }
    Index low_dim() const noexcept { return low_ ? low_->dimension() : 1; }
    Index high_dim() const noexcept { return high_ ? high_->dimension() : 1; }

    // W: full -> low ⊗ high (index low * high_dim + high). W^†W = 1.
    const SparseMat& embedding() const noexcept { return w_; }

    // Transport a full-space operator: W X W^†.
    SparseMat transport(const SparseMat& full_op) const;
    // low_op ⊗ 1 and (1 or parity) ⊗ high_op on the product space.
    SparseMat lift_low(const SparseMat& low_op) const;
    SparseMat lift_high(const SparseMat& high_op) const;
    // Diagonal (-1)^{N_low} ⊗ 1.
    SparseMat low_parity() const;

private:
    BasisPtr full_;
    std::size_t cut_;
    BasisPtr low_;
    BasisPtr high_;
    SparseMat w_;
};

struct FactorizationDefects {
    double isometry = 0;  // ‖W^†W - 1‖
    double fields = 0;    // max over modes/kinds of ‖W X W^† - P_W lift(X) P_W‖
};

FactorizationDefects factorization_defect(const BasisPtr& full, std::size_t cut_mode);

} // namespace wicklab
