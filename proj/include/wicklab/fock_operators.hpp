#pragma once

// Creation/annihilation fields, second quantization Γ(U), differential
// second quantization γ(H) and exponential vectors on a truncated Fock basis.
//
// Conventions:
//  * Bose creation past the truncation is mapped to zero.
//  * Fermi creation picks up (-1)^{#{s in S : s < m}}, i.e. the created
//    particle is prepended and bubbled into ascending position.
//  * Annihilation is antilinear in its argument and is the exact adjoint of
//    creation.

#include "wicklab/fock_basis.hpp"
#include "wicklab/kernels.hpp"
#include "wicklab/sparse_operator.hpp"
#include "wicklab/spectral_grid.hpp"

namespace wicklab {

enum class FieldKind { Creation, Annihilation };

SparseOperator field_operator(const BasisPtr& basis, FieldKind kind, const CVector& phi,
                              Exec exec = default_exec());
SparseOperator field_operator(const BasisPtr& basis, FieldKind kind, const OneParticleVector& phi,
                              Exec exec = default_exec());

// Single-mode fields b±_m (or f±_m on a Fermi basis).
SparseOperator mode_creation(const BasisPtr& basis, std::size_t mode);
SparseOperator mode_annihilation(const BasisPtr& basis, std::size_t mode);

// Γ±(U): permanents (Bose, with 1/sqrt(prod m_i! n_i!)) or determinants
// (Fermi) of row/column-selected submatrices of U. Grade preserving.
SparseOperator second_quantize(const BasisPtr& basis, const CMatrix& u, Exec exec = default_exec());

// γ±(H) = sum_{p,q} H_pq a+_p a-_q, assembled directly (no truncation effects).
SparseOperator diff_second_quantize(const BasisPtr& basis, const CMatrix& h, Exec exec = default_exec());

// Diagonal of γ±(P) for a 0/1 mode mask: number of particles in the masked modes.
CVector masked_number_diagonal(const FockBasis& basis, std::size_t first_mode, std::size_t last_mode);

CVector vacuum_vector(const FockBasis& basis);

// ε(φ) truncated at the basis cutoff: coefficient prod φ_m^{n_m} / sqrt(prod n_m!).
CVector exponential_vector(const FockBasis& basis, const CVector& phi);
CVector exponential_vector(const FockBasis& basis, const OneParticleVector& phi);
// Only the grade-n component of ε(φ) (zero elsewhere).
CVector exponential_vector_grade(const FockBasis& basis, const CVector& phi, std::size_t grade);

} // namespace wicklab
