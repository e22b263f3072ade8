#pragma once

#include <memory>

#include "wicklab/fock_basis.hpp"
#include "wicklab/types.hpp"

namespace wicklab {

// Inclusive range of particle-number grades.
struct GradeWindow {
    std::size_t lo = 0;
    std::size_t hi = static_cast<std::size_t>(-1);

    bool contains(std::size_t n) const noexcept { return n >= lo && n <= hi; }
    static GradeWindow up_to(std::size_t hi) { return {0, hi}; }
    static GradeWindow exactly(std::size_t n) { return {n, n}; }
};

// Complex sparse matrix acting on H0 ⊗ Fock (codomain ← domain). The initial
// space H0 has dimension initial_dim (1 when absent); global index of
// u ⊗ |i> is u * dim(Fock) + i.
class SparseOperator {
public:
    SparseOperator(BasisPtr codomain, BasisPtr domain, SparseMat matrix, Index initial_dim = 1);

    static SparseOperator zero(BasisPtr basis, Index initial_dim = 1);
    static SparseOperator identity(BasisPtr basis, Index initial_dim = 1);
    // Diagonal operator with the given Fock-space diagonal (same on every H0 slice).
    static SparseOperator diagonal(BasisPtr basis, const CVector& fock_diagonal, Index initial_dim = 1);

    const BasisPtr& codomain() const noexcept { return codomain_; }
    const BasisPtr& domain() const noexcept { return domain_; }
    Index initial_dim() const noexcept { return initial_dim_; }
    const SparseMat& matrix() const noexcept { return matrix_; }
    Index rows() const noexcept { return matrix_.rows(); }
    Index cols() const noexcept { return matrix_.cols(); }

    SparseOperator adjoint() const;
    CVector apply(const CVector& v) const;
    CMatrix dense() const { return CMatrix(matrix_); }

    SparseOperator operator+(const SparseOperator& o) const;
    SparseOperator operator-(const SparseOperator& o) const;
    SparseOperator operator*(const SparseOperator& o) const;
    SparseOperator operator*(cplx s) const;
    friend SparseOperator operator*(cplx s, const SparseOperator& op) { return op * s; }

    // Identity on a d0-dimensional initial space tensored with this Fock operator.
    SparseOperator ampliate(Index d0) const;
    // initial ⊗ this, for a Fock-only operator.
    SparseOperator tensor_initial(const CMatrix& initial) const;

private:
    BasisPtr codomain_;
    BasisPtr domain_;
    Index initial_dim_;
    SparseMat matrix_;
};

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

// 0/1 diagonal projector onto basis states whose grade lies in the window.
SparseMat grade_projector(const FockBasis& basis, GradeWindow window, Index initial_dim = 1);
// P_out X P_in with both projectors taken from the same window.
SparseOperator compress(const SparseOperator& op, GradeWindow window);
SparseOperator compress(const SparseOperator& op, GradeWindow out, GradeWindow in);

// Spectral norm. Restricts to the nonzero row/column support first; exact
// (SVD) when the smaller side has at most 512 entries, otherwise 20 power
// iterations on the Gram operator with relative tolerance 1e-6.
double operator_norm(const SparseMat& m);
inline double operator_norm(const SparseOperator& op) { return operator_norm(op.matrix()); }
double max_abs_entry(const SparseMat& m);

// Kronecker product with a dense left factor.
SparseMat kron(const CMatrix& left, const SparseMat& right);
SparseMat kron(const SparseMat& left, const SparseMat& right);

} // namespace wicklab
