#pragma once

// Discrete Wick integrals X_Ω = Σ_{bins j below Ω} X11(j)ΔΛ_j + X10(j)ΔB+_{φ,j}
// + X01(j)ΔB-_{ψ,j} + X00(j)Δω_j with step coefficients frozen at the left edge
// of each bin, their matrix elements on exponential vectors, the Itô table and
// product corrections, and the a-priori estimate.
//
// Matrix elements on a truncated space are taken degree-filtered:
//   <u⊗ε(f)| X |v⊗ε(g)>_K = Σ_{a+b<=K} <u⊗ε_a(f)| X |v⊗ε_b(g)>
// with ε_n the grade-n component. Filtering keeps every intermediate state
// below the truncation, so identities that hold on the full Fock space hold
// exactly on the truncated one.

#include <memory>
#include <optional>
#include <vector>

#include "wicklab/random.hpp"
#include "wicklab/spectral_processes.hpp"

namespace wicklab {

using SpacePtr = std::shared_ptr<const SpectralFockSpace>;

// Piecewise-constant adapted operator process. Piece p holds on bins
// [cuts[p], cuts[p+1]); cuts start at 0 and end at the bin count.
class AdaptedStepProcess {
public:
    // Throws AdaptednessViolation when a piece fails adaptedness_defect <= tol at its left cut.
    AdaptedStepProcess(SpacePtr space, std::vector<std::size_t> cuts, std::vector<SparseOperator> pieces,
                       double tolerance = 1e-10);

    static AdaptedStepProcess zero(const SpacePtr& space);
    // A single piece on the whole range; must be adapted at 0 (acts on H0 only).
    static AdaptedStepProcess constant(const SpacePtr& space, const SparseOperator& op);
    static AdaptedStepProcess identity(const SpacePtr& space);

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<std::size_t>& cuts() const noexcept { return cuts_; }
    const std::vector<SparseOperator>& pieces() const noexcept { return pieces_; }
    bool is_zero() const noexcept { return zero_; }

    // Coefficient used on bin j.
    const SparseOperator& at_bin(std::size_t bin) const;

private:
    AdaptedStepProcess(SpacePtr space, std::vector<std::size_t> cuts, std::vector<SparseOperator> pieces, bool zero);

    SpacePtr space_;
    std::vector<std::size_t> cuts_;
    std::vector<SparseOperator> pieces_;
    bool zero_ = false;
};

struct WickIntegrand {
    AdaptedStepProcess x11, x10, x01, x00;
    OneParticleVector phi;  // drives dB+
    OneParticleVector psi;  // drives dB-

    // All-zero integrand with φ = ψ = 0.
    static WickIntegrand zero(const SpacePtr& space);
    const SpacePtr& space() const noexcept { return x11.space(); }
};

enum class AdjointConvention {
    AdjointCoefficients,  // X11†ΔΛ + X10†ΔB-_φ + X01†ΔB+_ψ + X00†Δω (the operator adjoint)
    AsDisplayed,          // X11ΔΛ + X10ΔB-_φ + X01ΔB+_ψ + X00Δω
};

// Contribution of bin j alone.
SparseOperator wick_increment(const WickIntegrand& ig, std::size_t bin);
SparseOperator wick_integral(const WickIntegrand& ig, double omega);
SparseOperator wick_integral_at(const WickIntegrand& ig, std::size_t cut);
// X at every cut 0..N.
std::vector<SparseOperator> wick_process(const WickIntegrand& ig);
SparseOperator wick_integral_adjoint(const WickIntegrand& ig, double omega, AdjointConvention convention);

// u ⊗ v for an initial vector and a Fock vector.
CVector tensor_vector(const CVector& u, const CVector& fock);

// Σ_{a+b<=K} <u⊗ε_a(f)| X |v⊗ε_b(g)>; K < 0 gives 0.
cplx filtered_element(const SparseOperator& x, const CVector& u, const OneParticleVector& f, const CVector& v,
                      const OneParticleVector& g, long k);

// Right side of the defining relation with the same degree filter: the
// ΔΛ, ΔB±, Δω terms use K-2, K-1, K-1, K respectively.
cplx matrix_element_form(const WickIntegrand& ig, const CVector& u, const OneParticleVector& f, const CVector& v,
                         const OneParticleVector& g, double omega, long k);
// Default filter K = M-1.
cplx matrix_element_form(const WickIntegrand& ig, const CVector& u, const OneParticleVector& f, const CVector& v,
                         const OneParticleVector& g, double omega);

struct ProbePanel {
    std::vector<CVector> initial;             // u, v
    std::vector<OneParticleVector> functions; // f, g
};

// First min(d0, 2) standard basis vectors of H0 and the samples of 1, ω, ω²,
// each scaled by `scale`.
ProbePanel default_panel(const SpectralFockSpace& space, double scale = 0.5);

// max over the panel of |<X_Ω>_K - matrix_element_form|.
double route_defect(const WickIntegrand& ig, const ProbePanel& panel, double omega, long k);

enum class Differential { Lambda, Create, Annihilate, Time };

struct ItoProbe {
    cplx empirical;
    cplx predicted;
};

// ⟨ε(f)| ΔRow ΔCol |ε(g)⟩ on bin j against the table entry probed the same way.
// Row B± use ψ, column B± use φ. Evaluated on the Fock space of bin j alone
// (truncation `local_truncation`, filter local_truncation - 2) times the exact
// overlap exp<f|g> of the other bins.
ItoProbe ito_table_probe(const SpectralGrid& grid, Differential row, Differential col, std::size_t bin,
                         const OneParticleVector& phi, const OneParticleVector& psi, const OneParticleVector& f,
                         const OneParticleVector& g, std::size_t local_truncation = 8);
// Vacuum bra f = 0.
ItoProbe ito_table_probe(const SpectralGrid& grid, Differential row, Differential col, std::size_t bin,
                         const OneParticleVector& phi, const OneParticleVector& psi, const OneParticleVector& g,
                         std::size_t local_truncation = 8);
bool ito_entry_is_null(Differential row, Differential col);
// Entries whose vacuum-bra probe is exact. The four products of B- and dω
// with each other survive on the vacuum at order Δω² and are tested by decay.
bool ito_entry_exact_on_vacuum(Differential row, Differential col);

struct ItoCorrection {
    double abel = 0;       // ‖X_ΩY_Ω - Σ(X_jΔY_j + ΔX_jY_j + ΔX_jΔY_j)‖
    double deviation = 0;  // max over the panel of |measured - predicted| correction
};

// X0 = Y0 = 0. The measured correction is Σ_j ΔX_jΔY_j; the predicted one is
// X11Y11ΔΛ + X11Y10ΔB+_{φY} + X01Y11ΔB-_{ψX} + X01Y10<ψX_j|φY_j>, both filtered with K.
ItoCorrection ito_correction_defect(const WickIntegrand& x, const WickIntegrand& y, double omega,
                                    const ProbePanel& panel, long k);

struct EstimateCheck {
    double lhs = 0;
    double rhs = 0;
};

// lhs = ‖X_Ω u⊗ε(f)‖², rhs = Σ_j exp{Ω - ω_j + 3Σ_{k>=j}‖f_k‖²}
//   × [3‖f_j‖²‖X11 ξ‖² + 3‖φ_j‖²‖X10 ξ‖² + ‖ψ_j‖²‖X01 ξ‖² + Δω_j‖X00 ξ‖²],
// ξ = u⊗ε(f), ω_j the left edge of bin j.
EstimateCheck estimate_bound_check(const WickIntegrand& ig, const CVector& u, const OneParticleVector& f,
                                   double omega);

// Integrand with every coefficient A⊗1 + B⊗J_c on random breakpoints, and
// random φ, ψ; used by the estimate audit.
WickIntegrand random_integrand(const SpacePtr& space, Rng& rng);

} // namespace wicklab
