#pragma once

// Test-only oracle: every mode carries its own (cutoff+1)-level oscillator and
// multi-mode operators are explicit Kronecker products. Independent of the
// occupation-basis assembly in the library; it only shares the occupation
// labels through embed().

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wicklab/fock_basis.hpp"

namespace wicklab::testing {

class DenseModes {
public:
    DenseModes(std::size_t modes, std::size_t cutoff) : modes_(modes), levels_(cutoff + 1)
    {
        dim_ = 1;
        for (std::size_t m = 0; m < modes; ++m)
            dim_ *= static_cast<Eigen::Index>(levels_);
    }

    Eigen::Index dimension() const { return dim_; }

    Eigen::Index index_of(std::span<const std::uint8_t> occ) const
    {
        Eigen::Index x = 0;
        for (std::size_t m = 0; m < modes_; ++m)
            x = x * static_cast<Eigen::Index>(levels_) + occ[m];
        return x;
    }

    std::vector<std::size_t> occupation(Eigen::Index x) const
    {
        std::vector<std::size_t> occ(modes_);
        for (std::size_t m = modes_; m-- > 0;) {
            occ[m] = static_cast<std::size_t>(x % static_cast<Eigen::Index>(levels_));
            x /= static_cast<Eigen::Index>(levels_);
        }
        return occ;
    }

    Eigen::MatrixXcd lowering(std::size_t mode) const
    {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(levels_), static_cast<Eigen::Index>(levels_));
        for (std::size_t n = 1; n < levels_; ++n)
            a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(double(n));
        return embed_single(a, mode);
    }

    Eigen::MatrixXcd raising(std::size_t mode) const { return lowering(mode).adjoint(); }

    // prod_{k < mode} (-1)^{n_k}
    Eigen::MatrixXcd parity_before(std::size_t mode) const
    {
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim_, dim_);
        for (Eigen::Index x = 0; x < dim_; ++x) {
            const auto occ = occupation(x);
            std::size_t n = 0;
            for (std::size_t k = 0; k < mode; ++k)
                n += occ[k];
            p(x, x) = (n % 2 == 0) ? 1.0 : -1.0;
        }
        return p;
    }

    // Columns: the dense images of the library basis states.
    Eigen::MatrixXcd embed(const FockBasis& basis) const
    {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim_, basis.dimension());
        for (Eigen::Index s = 0; s < basis.dimension(); ++s)
            e(index_of(basis.occupation(s)), s) = 1.0;
        return e;
    }

private:
    Eigen::MatrixXcd embed_single(const Eigen::MatrixXcd& a, std::size_t mode) const
    {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
        for (std::size_t m = 0; m < modes_; ++m) {
            const Eigen::MatrixXcd f = (m == mode) ? a
                                                   : Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(levels_),
                                                                                static_cast<Eigen::Index>(levels_));
            Eigen::MatrixXcd next(out.rows() * f.rows(), out.cols() * f.cols());
            for (Eigen::Index i = 0; i < out.rows(); ++i)
                for (Eigen::Index j = 0; j < out.cols(); ++j)
                    next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
            out = std::move(next);
        }
        return out;
    }

    std::size_t modes_;
    std::size_t levels_;
    Eigen::Index dim_;
};

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace wicklab::testing
