#pragma once

// Algebraic identities of the truncated Fock spaces, measured as operator-norm
// defects. Truncation only breaks relations at the top grade, so the Bose
// commutators are compressed to grades <= M-1.

#include "wicklab/fock_basis.hpp"
#include "wicklab/random.hpp"
#include "wicklab/sparse_operator.hpp"

namespace wicklab {

// max of ‖[b-(f), b+(g)] - <f|g>‖ and ‖[b-(f), b-(g)]‖ on grades <= M-1 of a Bose basis.
double ccr_defect(const BasisPtr& bose, const CVector& f, const CVector& g);

// max of ‖{f-(f), f+(g)} - <f|g>‖ and ‖{f+(f), f+(g)}‖ on a Fermi basis;
// compressed to grades <= M-1 when M is below the mode count.
double intrinsic_car_defect(const BasisPtr& fermi, const CVector& f, const CVector& g);

struct ExponentialOverlap {
    cplx truncated;         // <ε(f)|ε(g)> on the basis
    cplx partial_sum;       // Σ_{n<=M} <f|g>^n / n!
    double tail_error = 0;  // |exp<f|g> - truncated|
    double tail_bound = 0;  // |z|^{M+1}/(M+1)! e^{|z|}, z = <f|g>
};

ExponentialOverlap exponential_overlap(const BasisPtr& bose, const CVector& f, const CVector& g);

struct SecondQuantizationDefects {
    double multiplicative = 0;  // ‖Γ(UV) - Γ(U)Γ(V)‖
    double exponential = 0;     // ‖Γ(e^{iH}) - exp(i γ(H))‖
    double covariance = 0;      // max ‖Γ(U) a±(f) Γ(U)† - a±(Uf)‖
    double rank_one = 0;        // ‖γ(|f><g|) - a+(f) a-(g)‖
    double max() const;
};

// Random U, V, H, f, g drawn from rng; dense exponential, so the basis
// dimension must stay below 4000.
SecondQuantizationDefects second_quantization_defects(const BasisPtr& basis, Rng& rng);

} // namespace wicklab
