#pragma once

// Independent construction of fields and second quantizations on the full
// tensor space ⊕_{k<=n} h^{⊗k}, compressed onto the (anti)symmetric subspace
// through the explicit isometry |n> -> sqrt(N!/prod n!) Π+ e_a1⊗...⊗e_aN
// (Bose) or |S> -> sqrt(N!) Π- e_s1⊗...⊗e_sN (Fermi, ascending s).

#include <cstdint>
#include <string>
#include <vector>

#include "wicklab/fock_basis.hpp"
#include "wicklab/types.hpp"

namespace wicklab {

// Dense operators on ⊕_{k<=n_max} (C^D)^{⊗k}; grade k occupies a contiguous
// block with the first tensor slot most significant.
class TensorSpace {
public:
    TensorSpace(std::size_t modes, std::size_t n_max);

    Index dimension() const noexcept { return offsets_.back(); }
    Index grade_offset(std::size_t k) const { return offsets_.at(k); }

    // A+(h): sqrt(k+1) h ⊗ (.), dropping the image of the top grade.
    CMatrix creation(const CVector& h) const;
    // Adjoint of creation: sqrt(k) <h| on the first slot.
    CMatrix annihilation(const CVector& h) const;
    CMatrix second_quantization(const CMatrix& u) const;
    CMatrix differential_second_quantization(const CMatrix& h) const;
    // (1/k!) sum_σ (±)^σ slot permutations on every grade.
    CMatrix symmetrizer(Statistics stats) const;
    // Columns are the tensor images of the occupation basis states.
    CMatrix embedding(const FockBasis& basis) const;
    // Projector onto grades <= k.
    CMatrix grade_projector(std::size_t k) const;

private:
    std::size_t modes_;
    std::size_t n_max_;
    std::vector<Index> offsets_;
};

struct OracleDefects {
    double bose_creation = 0, bose_annihilation = 0;
    double fermi_creation = 0, fermi_annihilation = 0;
    double bose_gamma = 0, fermi_gamma = 0;
    double bose_dgamma = 0, fermi_dgamma = 0;
    double bose_isometry = 0, fermi_isometry = 0;
    // {F-(f), F+(g)} - <f|g> on the tensor side, grades <= n_max - 1.
    double oracle_car = 0;
    // Γ(swap) route difference on the tensor side.
    double swap_gamma = 0;

    double max() const;
};

// D <= 3, n_max <= 3; f, g, U, H drawn from the given seed.
OracleDefects tensor_oracle_compare(std::size_t modes, std::size_t n_max, std::uint64_t seed = 7);

} // namespace wicklab
