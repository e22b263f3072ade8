#include "wicklab/random.hpp"

#include <cmath>

namespace wicklab {

CVector random_vector(Rng& rng, Index n)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CVector v(n);
    for (Index i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

CMatrix random_matrix(Rng& rng, Index rows, Index cols)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = cplx(re, im);
        }
    return m;
}

CMatrix random_hermitian(Rng& rng, Index n)
{
    CMatrix a = random_matrix(rng, n, n);
    return 0.5 * (a + a.adjoint());
}

CMatrix random_unitary(Rng& rng, Index n)
{
    CMatrix z = random_matrix(rng, n, n);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0)
            q.col(j) *= d / a;
    }
    return q;
}

} // namespace wicklab
