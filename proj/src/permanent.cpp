#include "wicklab/permanent.hpp"

#include <bit>
#include <cstdint>

#include "wicklab/error.hpp"

namespace wicklab {

cplx permanent(const CMatrix& a, Index cap)
{
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimMismatch, "permanent needs a square matrix");
    const Index n = a.rows();
    if (n > cap)
        throw Error(ErrorKind::SizeOverflow, "matrix exceeds the permanent size cap");
    if (n == 0)
        return 1.0;
    if (n == 1)
        return a(0, 0);
    if (n == 2)
        return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);

    CVector row_sums = CVector::Zero(n);
    std::uint64_t gray = 0;
    cplx total = 0.0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << j;
        gray ^= bit;
        if (gray & bit)
            row_sums += a.col(j);
        else
            row_sums -= a.col(j);
        cplx prod = row_sums.prod();
        if (std::popcount(gray) % 2 == 1)
            total -= prod;
        else
            total += prod;
    }
    return (n % 2 == 1) ? -total : total;
}

} // namespace wicklab
