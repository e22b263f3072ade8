#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wicklab {

using cplx = std::complex<double>;
using Index = Eigen::Index;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using SparseMat = Eigen::SparseMatrix<cplx, Eigen::ColMajor, Index>;

inline constexpr std::size_t default_dimension_cap = 200'000;

} // namespace wicklab
