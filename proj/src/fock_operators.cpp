#include "wicklab/fock_operators.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "wicklab/error.hpp"
#include "wicklab/permanent.hpp"

namespace wicklab {

namespace {

void require_mode_vector(const FockBasis& basis, Index size)
{
    if (static_cast<std::size_t>(size) != basis.modes())
        throw Error(ErrorKind::DimMismatch, "one-particle vector length must equal the mode count");
}

// Number of occupied modes strictly below m.
int occupied_below(std::span<const std::uint8_t> occ, std::size_t m)
{
    int k = 0;
    for (std::size_t s = 0; s < m; ++s)
        k += occ[s];
    return k;
}

double sign_of(int count) { return (count % 2 == 0) ? 1.0 : -1.0; }

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

} // namespace

SparseOperator field_operator(const BasisPtr& basis, FieldKind kind, const CVector& phi, Exec exec)
{
    require_mode_vector(*basis, phi.size());
    const std::size_t d = basis->modes();
    const bool fermi = basis->statistics() == Statistics::Fermi;
    const Index dim = basis->dimension();

    auto column = [&](Index c, std::vector<Entry>& out) {
        const auto occ = basis->occupation(c);
        std::vector<std::uint8_t> target(occ.begin(), occ.end());
        for (std::size_t m = 0; m < d; ++m) {
            const cplx coeff = phi(static_cast<Index>(m));
            if (coeff == cplx(0.0))
                continue;
            if (kind == FieldKind::Creation) {
                if (fermi && occ[m] != 0)
                    continue;
                ++target[m];
                if (auto r = basis->index_of(target)) {
                    const double amp = fermi ? sign_of(occupied_below(occ, m)) : std::sqrt(occ[m] + 1.0);
                    out.push_back({*r, coeff * amp});
                }
                --target[m];
            } else {
                if (occ[m] == 0)
                    continue;
                --target[m];
                if (auto r = basis->index_of(target)) {
                    const double amp = fermi ? sign_of(occupied_below(occ, m)) : std::sqrt(double(occ[m]));
                    out.push_back({*r, std::conj(coeff) * amp});
                }
                ++target[m];
            }
        }
    };
    return {basis, basis, kernels::assemble_columns(dim, dim, column, exec)};
}

SparseOperator field_operator(const BasisPtr& basis, FieldKind kind, const OneParticleVector& phi, Exec exec)
{
    return field_operator(basis, kind, phi.coefficients(), exec);
}

SparseOperator mode_creation(const BasisPtr& basis, std::size_t mode)
{
    CVector e = CVector::Zero(static_cast<Index>(basis->modes()));
    e(static_cast<Index>(mode)) = 1.0;
    return field_operator(basis, FieldKind::Creation, e);
}

SparseOperator mode_annihilation(const BasisPtr& basis, std::size_t mode)
{
    CVector e = CVector::Zero(static_cast<Index>(basis->modes()));
    e(static_cast<Index>(mode)) = 1.0;
    return field_operator(basis, FieldKind::Annihilation, e);
}

SparseOperator second_quantize(const BasisPtr& basis, const CMatrix& u, Exec exec)
{
    const auto d = static_cast<Index>(basis->modes());
    if (u.rows() != d || u.cols() != d)
        throw Error(ErrorKind::DimMismatch, "second quantization needs a D x D matrix");
    const bool fermi = basis->statistics() == Statistics::Fermi;
    const Index dim = basis->dimension();

    auto norm_factor = [&](Index state) {
        double f = 1.0;
        for (auto n : basis->occupation(state))
            f *= factorial(n);
        return f;
    };

    auto column = [&](Index c, std::vector<Entry>& out) {
        const std::size_t n = basis->grade(c);
        const auto in_modes = basis->mode_list(c);
        const double in_norm = fermi ? 1.0 : norm_factor(c);
        CMatrix sub(static_cast<Index>(n), static_cast<Index>(n));
        for (Index r = basis->grade_begin(n); r < basis->grade_end(n); ++r) {
            const auto out_modes = basis->mode_list(r);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    sub(static_cast<Index>(i), static_cast<Index>(j)) =
                        u(static_cast<Index>(out_modes[i]), static_cast<Index>(in_modes[j]));
            cplx v;
            if (n == 0)
                v = 1.0;
            else if (fermi)
                v = sub.determinant();
            else
                v = permanent(sub) / std::sqrt(in_norm * norm_factor(r));
            if (v != cplx(0.0))
                out.push_back({r, v});
        }
    };
    return {basis, basis, kernels::assemble_columns(dim, dim, column, exec)};
}

SparseOperator diff_second_quantize(const BasisPtr& basis, const CMatrix& h, Exec exec)
{
    const auto d = basis->modes();
    if (h.rows() != static_cast<Index>(d) || h.cols() != static_cast<Index>(d))
        throw Error(ErrorKind::DimMismatch, "differential second quantization needs a D x D matrix");
    const bool fermi = basis->statistics() == Statistics::Fermi;
    const Index dim = basis->dimension();

    auto column = [&](Index c, std::vector<Entry>& out) {
        const auto occ = basis->occupation(c);
        std::vector<std::uint8_t> target(occ.begin(), occ.end());
        for (std::size_t q = 0; q < d; ++q) {
            if (occ[q] == 0)
                continue;
            const double lower_amp = fermi ? sign_of(occupied_below(occ, q)) : std::sqrt(double(occ[q]));
            --target[q];
            for (std::size_t p = 0; p < d; ++p) {
                const cplx hpq = h(static_cast<Index>(p), static_cast<Index>(q));
                if (hpq == cplx(0.0))
                    continue;
                if (fermi && target[p] != 0)
                    continue;
                const double raise_amp =
                    fermi ? sign_of(occupied_below(target, p)) : std::sqrt(target[p] + 1.0);
                ++target[p];
                if (auto r = basis->index_of(target))
                    out.push_back({*r, hpq * lower_amp * raise_amp});
                --target[p];
            }
            ++target[q];
        }
    };
    return {basis, basis, kernels::assemble_columns(dim, dim, column, exec)};
}

CVector masked_number_diagonal(const FockBasis& basis, std::size_t first_mode, std::size_t last_mode)
{
    CVector diag(basis.dimension());
    for (Index i = 0; i < basis.dimension(); ++i) {
        const auto occ = basis.occupation(i);
        int n = 0;
        for (std::size_t m = first_mode; m < last_mode; ++m)
            n += occ[m];
        diag(i) = double(n);
    }
    return diag;
}

CVector vacuum_vector(const FockBasis& basis)
{
    CVector v = CVector::Zero(basis.dimension());
    v(basis.vacuum()) = 1.0;
    return v;
}

CVector exponential_vector(const FockBasis& basis, const CVector& phi)
{
    if (basis.statistics() != Statistics::Bose)
        throw Error(ErrorKind::StatisticsMismatch, "exponential vectors live in Bose Fock space");
    require_mode_vector(basis, phi.size());
    CVector v(basis.dimension());
    for (Index i = 0; i < basis.dimension(); ++i) {
        const auto occ = basis.occupation(i);
        cplx c = 1.0;
        for (std::size_t m = 0; m < occ.size(); ++m) {
            if (occ[m] == 0)
                continue;
            cplx power = 1.0;
            for (int k = 0; k < occ[m]; ++k)
                power *= phi(static_cast<Index>(m));
            c *= power / std::sqrt(factorial(occ[m]));
        }
        v(i) = c;
    }
    return v;
}

CVector exponential_vector(const FockBasis& basis, const OneParticleVector& phi)
{
    return exponential_vector(basis, phi.coefficients());
}

CVector exponential_vector_grade(const FockBasis& basis, const CVector& phi, std::size_t grade)
{
    CVector full = exponential_vector(basis, phi);
    CVector v = CVector::Zero(full.size());
    if (grade <= basis.max_grade()) {
        const Index b = basis.grade_begin(grade), e = basis.grade_end(grade);
        v.segment(b, e - b) = full.segment(b, e - b);
    }
    return v;
}

} // namespace wicklab
