#include "wicklab/fock_identities.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "wicklab/error.hpp"
#include "wicklab/fock_operators.hpp"

namespace wicklab {

namespace {

SparseOperator scalar(const BasisPtr& basis, cplx s) { return SparseOperator::identity(basis) * s; }

GradeWindow below_top(const FockBasis& basis)
{
    return GradeWindow::up_to(basis.truncation() == 0 ? 0 : basis.truncation() - 1);
}

} // namespace

double ccr_defect(const BasisPtr& bose, const CVector& f, const CVector& g)
{
    if (bose->statistics() != Statistics::Bose)
        throw Error(ErrorKind::StatisticsMismatch, "CCR needs a Bose basis");
    const auto fm = field_operator(bose, FieldKind::Annihilation, f);
    const auto gp = field_operator(bose, FieldKind::Creation, g);
    const auto gm = field_operator(bose, FieldKind::Annihilation, g);
    const GradeWindow w = below_top(*bose);
    return std::max(operator_norm(compress(commutator(fm, gp) - scalar(bose, f.dot(g)), w)),
                    operator_norm(compress(commutator(fm, gm), w)));
}

double intrinsic_car_defect(const BasisPtr& fermi, const CVector& f, const CVector& g)
{
    if (fermi->statistics() != Statistics::Fermi)
        throw Error(ErrorKind::StatisticsMismatch, "CAR needs a Fermi basis");
    const auto fm = field_operator(fermi, FieldKind::Annihilation, f);
    const auto fp = field_operator(fermi, FieldKind::Creation, f);
    const auto gp = field_operator(fermi, FieldKind::Creation, g);
    const GradeWindow w = fermi->truncation() < fermi->modes() ? below_top(*fermi) : GradeWindow{};
    return std::max(operator_norm(compress(anticommutator(fm, gp) - scalar(fermi, f.dot(g)), w)),
                    operator_norm(compress(anticommutator(fp, gp), w)));
}

ExponentialOverlap exponential_overlap(const BasisPtr& bose, const CVector& f, const CVector& g)
{
    const cplx z = f.dot(g);
    ExponentialOverlap out;
    out.truncated = exponential_vector(*bose, f).dot(exponential_vector(*bose, g));
    cplx term = 1.0;
    out.partial_sum = term;
    double fact = 1.0;
    for (std::size_t n = 1; n <= bose->truncation(); ++n) {
        term *= z / static_cast<double>(n);
        out.partial_sum += term;
        fact *= static_cast<double>(n);
    }
    fact *= static_cast<double>(bose->truncation() + 1);
    out.tail_error = std::abs(std::exp(z) - out.truncated);
    out.tail_bound = std::pow(std::abs(z), static_cast<double>(bose->truncation() + 1)) / fact * std::exp(std::abs(z));
    return out;
}

double SecondQuantizationDefects::max() const { return std::max({multiplicative, exponential, covariance, rank_one}); }

SecondQuantizationDefects second_quantization_defects(const BasisPtr& basis, Rng& rng)
{
    if (basis->dimension() > 4000)
        throw Error(ErrorKind::SizeOverflow, "dense exponential limited to dimension 4000");
    const Index d = static_cast<Index>(basis->modes());
    const CMatrix u = random_unitary(rng, d), v = random_unitary(rng, d);
    const CMatrix h = random_hermitian(rng, d);
    const CVector f = random_vector(rng, d), g = random_vector(rng, d);

    SecondQuantizationDefects out;
    const SparseOperator gu = second_quantize(basis, u);
    out.multiplicative = operator_norm(second_quantize(basis, u * v) - gu * second_quantize(basis, v));

    const CMatrix e = (cplx(0, 1) * diff_second_quantize(basis, h).dense()).exp();
    const CMatrix eh = (cplx(0, 1) * h).exp();
    out.exponential = operator_norm(SparseMat((second_quantize(basis, eh).dense() - e).sparseView()));

    const SparseOperator gu_adj = gu.adjoint();
    const CVector uf = u * f;
    for (auto kind : {FieldKind::Creation, FieldKind::Annihilation})
        out.covariance = std::max(out.covariance, operator_norm(gu * field_operator(basis, kind, f) * gu_adj -
                                                                field_operator(basis, kind, uf)));

    const CMatrix rank_one = f * g.adjoint();
    out.rank_one = operator_norm(diff_second_quantize(basis, rank_one) -
                                 field_operator(basis, FieldKind::Creation, f) *
                                     field_operator(basis, FieldKind::Annihilation, g));
    return out;
}

} // namespace wicklab
