#pragma once

// The boson-to-fermion map Ξ: |n> ↦ |{m : n_m = 1}> on occupations <= 1 and
// 0 elsewhere, a partial isometry from Γ+ onto Γ- with initial projector P<=1.
// Mode-ordered Jordan-Wigner fields on the Bose side become the intrinsic
// Fermi fields under Ξ, because the prefix parity equals the fermionic sign.

#include <vector>

#include "wicklab/spectral_processes.hpp"

namespace wicklab {

class XiMap {
public:
    // Both bases over the same modes and truncation; Bose and Fermi respectively.
    static XiMap from_bases(BasisPtr bose, BasisPtr fermi);

    const BasisPtr& bose() const noexcept { return bose_; }
    const BasisPtr& fermi() const noexcept { return fermi_; }
    // fermi_dim x bose_dim.
    const SparseMat& matrix() const noexcept { return xi_; }
    // Diagonal projector onto occupations <= 1.
    const SparseMat& domain_projector() const noexcept { return p_; }

    CVector apply(const CVector& bose_vector) const { return xi_ * bose_vector; }

private:
    BasisPtr bose_;
    BasisPtr fermi_;
    SparseMat xi_;
    SparseMat p_;
};

XiMap build_xi(const SpectralGrid& grid, std::size_t truncation, std::size_t dimension_cap = default_dimension_cap);

struct IsometryDefect {
    double initial = 0;  // ‖Ξ†Ξ - P<=1‖
    double final = 0;    // ‖ΞΞ† - 1‖
};

IsometryDefect isometry_defect(const XiMap& xi);

struct FieldCovarianceDefect {
    double creation = 0;      // ‖Ξ P F+_φ(Ω) P Ξ† - F+(Π[0,Ω]φ)‖
    double annihilation = 0;  // same for F-
    double leakage = 0;       // ‖(1 - P) F+_φ(Ω) P‖ on inputs in the window
};

// The space must share the Bose basis parameters of xi.
FieldCovarianceDefect field_covariance_defect(const XiMap& xi, const SpectralFockSpace& space,
                                              const OneParticleVector& phi, double omega,
                                              GradeWindow leakage_window = {});

// ‖Ξ γ+(Π[0,Ω]) P Ξ† - γ-(Π[0,Ω])‖.
double number_covariance_defect(const XiMap& xi, const SpectralGrid& grid, double omega);

enum class ProductDirection {
    FermiFromBose,  // F+ products as signed strictly-ordered sums of B+ increments
    BoseFromFermi,  // B+ products as unsigned strictly-ordered sums of F+ increments
};

// ‖LHS Φ+ - RHS Φ+‖ on the Bose space. Needs phis.size() <= M.
double ordered_product_defect(const SpectralFockSpace& space, const std::vector<OneParticleVector>& phis,
                              double omega, ProductDirection direction);

// Max over ordered tuples of distinct modes (length <= n_max) of
// ‖Ξ F+_{e_m1}···F+_{e_mk} Φ+ - f+_{m1}···f+_{mk} Φ-‖. Needs D <= 4, n_max <= 3.
double xi_consistency_defect(const SpectralFockSpace& space, std::size_t n_max);

} // namespace wicklab
