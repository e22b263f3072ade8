#pragma once

// Frequency-indexed processes on H0 ⊗ Γ+(h): B±_φ(Ω), Λ(Ω), the parity J_Ω,
// and the mode-ordered Jordan-Wigner fields F±_φ(Ω) = Σ_{m below Ω} φ_m J_{<m} b±_m.
// Every cut Ω must be a bin edge; it selects the mode prefix [0, L).

#include <functional>

#include "wicklab/fock_basis.hpp"
#include "wicklab/fock_operators.hpp"
#include "wicklab/kernels.hpp"
#include "wicklab/sparse_operator.hpp"
#include "wicklab/spectral_grid.hpp"

namespace wicklab {

enum class ProcessKind { Create, Annihilate, Conserve };

class SpectralFockSpace {
public:
    SpectralFockSpace(GridPtr grid, std::size_t truncation, Index initial_dim = 1,
                      std::size_t dimension_cap = default_dimension_cap);

    const GridPtr& grid() const noexcept { return grid_; }
    const BasisPtr& basis() const noexcept { return basis_; }
    Index initial_dim() const noexcept { return initial_dim_; }
    std::size_t truncation() const noexcept { return basis_->truncation(); }
    Index dimension() const noexcept { return initial_dim_ * basis_->dimension(); }

    // Cut index (edge number) of an aligned frequency.
    std::size_t cut(double omega) const { return grid_->cut_index(omega); }

    SparseOperator create(const OneParticleVector& phi, double omega) const;
    SparseOperator annihilate(const OneParticleVector& phi, double omega) const;
    SparseOperator conserve(double omega) const;
    SparseOperator parity(double omega) const;
    SparseOperator fermi_create(const OneParticleVector& phi, double omega) const;
    SparseOperator fermi_annihilate(const OneParticleVector& phi, double omega) const;

    // Same families addressed by cut index c (bins [0, c)).
    SparseOperator create_at(const OneParticleVector& phi, std::size_t c) const;
    SparseOperator annihilate_at(const OneParticleVector& phi, std::size_t c) const;
    SparseOperator conserve_at(std::size_t c) const;
    SparseOperator parity_at(std::size_t c) const;
    SparseOperator fermi_create_at(const OneParticleVector& phi, std::size_t c) const;
    SparseOperator fermi_annihilate_at(const OneParticleVector& phi, std::size_t c) const;

    // Single-bin increments ΔB±_{φ,j}, ΔΛ_j.
    SparseOperator create_increment(const OneParticleVector& phi, std::size_t bin) const;
    SparseOperator annihilate_increment(const OneParticleVector& phi, std::size_t bin) const;
    SparseOperator conserve_increment(std::size_t bin) const;

    SparseOperator identity() const { return SparseOperator::identity(basis_, initial_dim_); }
    SparseOperator zero() const { return SparseOperator::zero(basis_, initial_dim_); }
    // 1 ⊗ b±_m.
    SparseOperator mode_field(FieldKind kind, std::size_t mode) const;
    // A ⊗ X for a Fock-space operator X (ampliation when A = 1).
    SparseOperator lift(const SparseOperator& fock_op) const;
    SparseOperator lift(const CMatrix& initial, const SparseOperator& fock_op) const;

    CVector vacuum() const;

private:
    void require_vector(const OneParticleVector& phi) const;
    SparseOperator jordan_wigner(FieldKind kind, const CVector& coeffs, std::size_t mode_limit) const;

    GridPtr grid_;
    BasisPtr basis_;
    Index initial_dim_;
};

// Generic entry point: phi is ignored for Conserve.
SparseOperator spectral_process(const SpectralFockSpace& space, ProcessKind kind, const OneParticleVector* phi,
                                double omega);

// max_{m above Ω} ‖[X, 1⊗b±_m]‖ restricted to grades <= M-1.
double adaptedness_defect(const SpectralFockSpace& space, const SparseOperator& x, double omega);
double adaptedness_defect_at(const SpectralFockSpace& space, const SparseOperator& x, std::size_t cut);

struct CarDefect {
    double anticommutator = 0;  // ‖{F-_φ, F+_ψ} - <Πφ|ψ>‖ on the window
    double square = 0;          // ‖F+_φ F+_φ‖ on inputs of the window
    double parity = 0;          // max ‖{J_Ω, F±_φ}‖, uncompressed
};

// The window is intersected with grades the truncation cannot reach: <= M-1
// for the anticommutator, inputs <= M-2 for the square.
CarDefect car_defect(const SpectralFockSpace& space, const OneParticleVector& phi, const OneParticleVector& psi,
                     double omega, GradeWindow window = {});

struct ParityRecursionDefect {
    double recursion = 0;        // ‖J_j - J_{j-1}(-1)^{ΔΛ_j}‖
    double differential_low = 0; // ‖(ΔJ + 2 J ΔΛ) P_{≤1 in bin j}‖
    double differential_full = 0;
};

ParityRecursionDefect parity_recursion_defect(const SpectralFockSpace& space, std::size_t bin);

struct AnalyticRuleDefect {
    double exact = 0;            // Δf(Λ) against f(Λ_{j-1} + ΔΛ_j) - f(Λ_{j-1})
    double increment_low = 0;   // [f(Λ+1) - f(Λ)]ΔΛ on ≤1-occupancy states of bin j
    double increment_full = 0;
};

AnalyticRuleDefect analytic_rule_defect(const SpectralFockSpace& space, const std::function<cplx(double)>& f,
                                        std::size_t bin);

} // namespace wicklab
