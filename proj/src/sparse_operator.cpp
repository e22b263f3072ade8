#include "wicklab/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wicklab/error.hpp"

namespace wicklab {

namespace {

void require_same(const BasisPtr& a, const BasisPtr& b, const char* what)
{
    if (a != b && !(*a == *b))
        throw Error(ErrorKind::BasisMismatch, what);
}

Index fock_dim(const BasisPtr& b) { return b->dimension(); }

} // namespace

SparseOperator::SparseOperator(BasisPtr codomain, BasisPtr domain, SparseMat matrix, Index initial_dim)
    : codomain_(std::move(codomain)), domain_(std::move(domain)), initial_dim_(initial_dim),
      matrix_(std::move(matrix))
{
    if (initial_dim_ < 1)
        throw Error(ErrorKind::DimMismatch, "initial space dimension must be positive");
    if (matrix_.rows() != initial_dim_ * fock_dim(codomain_) || matrix_.cols() != initial_dim_ * fock_dim(domain_))
        throw Error(ErrorKind::DimMismatch, "matrix shape does not match H0 ⊗ Fock dimensions");
    matrix_.makeCompressed();
}

SparseOperator SparseOperator::zero(BasisPtr basis, Index initial_dim)
{
    const Index n = initial_dim * basis->dimension();
    return {basis, basis, SparseMat(n, n), initial_dim};
}

SparseOperator SparseOperator::identity(BasisPtr basis, Index initial_dim)
{
    const Index n = initial_dim * basis->dimension();
    SparseMat id(n, n);
    id.setIdentity();
    return {basis, basis, std::move(id), initial_dim};
}

SparseOperator SparseOperator::diagonal(BasisPtr basis, const CVector& fock_diagonal, Index initial_dim)
{
    const Index dim = basis->dimension();
    if (fock_diagonal.size() != dim)
        throw Error(ErrorKind::DimMismatch, "diagonal length must equal the basis dimension");
    SparseMat m(initial_dim * dim, initial_dim * dim);
    m.reserve(Eigen::VectorXi::Constant(initial_dim * dim, 1));
    for (Index u = 0; u < initial_dim; ++u)
        for (Index i = 0; i < dim; ++i)
            if (fock_diagonal(i) != cplx(0.0))
                m.insert(u * dim + i, u * dim + i) = fock_diagonal(i);
    return {basis, basis, std::move(m), initial_dim};
}

SparseOperator SparseOperator::adjoint() const
{
    SparseMat adj = matrix_.adjoint();
    return {domain_, codomain_, std::move(adj), initial_dim_};
}

CVector SparseOperator::apply(const CVector& v) const
{
    if (v.size() != matrix_.cols())
        throw Error(ErrorKind::DimMismatch, "vector length does not match operator domain");
    return matrix_ * v;
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const
{
    require_same(codomain_, o.codomain_, "sum of operators with different codomains");
    require_same(domain_, o.domain_, "sum of operators with different domains");
    if (initial_dim_ != o.initial_dim_)
        throw Error(ErrorKind::DimMismatch, "initial space dimensions differ");
    SparseMat s = matrix_ + o.matrix_;
    return {codomain_, domain_, std::move(s), initial_dim_};
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const
{
    return *this + o * cplx(-1.0);
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const
{
    require_same(domain_, o.codomain_, "product of operators with incompatible bases");
    if (initial_dim_ != o.initial_dim_)
        throw Error(ErrorKind::DimMismatch, "initial space dimensions differ");
    SparseMat p = matrix_ * o.matrix_;
    return {codomain_, o.domain_, std::move(p), initial_dim_};
}

SparseOperator SparseOperator::operator*(cplx s) const
{
    SparseMat m = matrix_ * s;
    return {codomain_, domain_, std::move(m), initial_dim_};
}

SparseOperator SparseOperator::ampliate(Index d0) const
{
    return tensor_initial(CMatrix::Identity(d0, d0));
}

SparseOperator SparseOperator::tensor_initial(const CMatrix& initial) const
{
    if (initial_dim_ != 1)
        throw Error(ErrorKind::DimMismatch, "operator already carries an initial space");
    if (initial.rows() != initial.cols())
        throw Error(ErrorKind::DimMismatch, "initial-space factor must be square");
    return {codomain_, domain_, kron(initial, matrix_), initial.rows()};
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b)
{
    return a * b - b * a;
}

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b)
{
    return a * b + b * a;
}

SparseMat grade_projector(const FockBasis& basis, GradeWindow window, Index initial_dim)
{
    const Index dim = basis.dimension();
    SparseMat p(initial_dim * dim, initial_dim * dim);
    p.reserve(Eigen::VectorXi::Constant(initial_dim * dim, 1));
    for (Index u = 0; u < initial_dim; ++u)
        for (Index i = 0; i < dim; ++i)
            if (window.contains(basis.grade(i)))
                p.insert(u * dim + i, u * dim + i) = 1.0;
    p.makeCompressed();
    return p;
}

SparseOperator compress(const SparseOperator& op, GradeWindow window)
{
    return compress(op, window, window);
}

SparseOperator compress(const SparseOperator& op, GradeWindow out, GradeWindow in)
{
    const SparseMat po = grade_projector(*op.codomain(), out, op.initial_dim());
    const SparseMat pi = grade_projector(*op.domain(), in, op.initial_dim());
    SparseMat m = po * op.matrix() * pi;
    m.prune([](Index, Index, const cplx& v) { return v != cplx(0.0); });
    return {op.codomain(), op.domain(), std::move(m), op.initial_dim()};
}

double max_abs_entry(const SparseMat& m)
{
    double r = 0.0;
    for (Index k = 0; k < m.outerSize(); ++k)
        for (SparseMat::InnerIterator it(m, k); it; ++it)
            r = std::max(r, std::abs(it.value()));
    return r;
}

double operator_norm(const SparseMat& m)
{
    std::vector<Index> row_map(static_cast<std::size_t>(m.rows()), -1);
    std::vector<Index> col_map(static_cast<std::size_t>(m.cols()), -1);
    std::vector<int> row_count(static_cast<std::size_t>(m.rows()), 0);
    Index nr = 0, nc = 0;
    bool monomial = true;
    for (Index c = 0; c < m.outerSize(); ++c) {
        int in_col = 0;
        for (SparseMat::InnerIterator it(m, c); it; ++it) {
            if (it.value() == cplx(0.0))
                continue;
            ++in_col;
            auto r = static_cast<std::size_t>(it.row());
            if (row_map[r] < 0)
                row_map[r] = nr++;
            if (++row_count[r] > 1)
                monomial = false;
        }
        if (in_col > 0)
            col_map[static_cast<std::size_t>(c)] = nc++;
        if (in_col > 1)
            monomial = false;
    }
    if (nr == 0)
        return 0.0;
    if (monomial)
        return max_abs_entry(m);

    if (std::min(nr, nc) <= 512) {
        CMatrix sub = CMatrix::Zero(nr, nc);
        for (Index c = 0; c < m.outerSize(); ++c)
            for (SparseMat::InnerIterator it(m, c); it; ++it)
                if (it.value() != cplx(0.0))
                    sub(row_map[static_cast<std::size_t>(it.row())], col_map[static_cast<std::size_t>(c)]) += it.value();
        Eigen::BDCSVD<CMatrix> svd(sub);
        return svd.singularValues()(0);
    }

    // Power iteration on m^† m from a fixed pseudo-random start.
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    CVector v(m.cols());
    for (Index i = 0; i < v.size(); ++i)
        v(i) = cplx(normal(rng), normal(rng));
    v.normalize();
    double estimate = 0.0;
    for (int iter = 0; iter < 20; ++iter) {
        CVector w = m.adjoint() * (m * v);
        const double lambda = w.norm();
        if (lambda == 0.0)
            return 0.0;
        v = w / lambda;
        const double next = std::sqrt(lambda);
        if (iter > 0 && std::abs(next - estimate) <= 1e-6 * next) {
            estimate = next;
            break;
        }
        estimate = next;
    }
    return estimate;
}

SparseMat kron(const CMatrix& left, const SparseMat& right)
{
    SparseMat l = left.sparseView();
    return kron(l, right);
}

SparseMat kron(const SparseMat& left, const SparseMat& right)
{
    const Index rr = right.rows(), rc = right.cols();
    std::vector<Eigen::Triplet<cplx, Index>> t;
    t.reserve(static_cast<std::size_t>(left.nonZeros() * right.nonZeros()));
    for (Index lc = 0; lc < left.outerSize(); ++lc)
        for (SparseMat::InnerIterator li(left, lc); li; ++li)
            for (Index c = 0; c < right.outerSize(); ++c)
                for (SparseMat::InnerIterator ri(right, c); ri; ++ri)
                    t.emplace_back(li.row() * rr + ri.row(), lc * rc + c, li.value() * ri.value());
    SparseMat out(left.rows() * rr, left.cols() * rc);
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

} // namespace wicklab
