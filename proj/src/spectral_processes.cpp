#include "wicklab/spectral_processes.hpp"

#include <algorithm>
#include <cmath>

#include "wicklab/error.hpp"
#include "wicklab/fock_operators.hpp"

namespace wicklab {

namespace {

double sign_of(int count) { return (count % 2 == 0) ? 1.0 : -1.0; }

CVector diagonal_of(const SparseOperator& op)
{
    return op.matrix().diagonal();
}

SparseMat diag_matrix(const CVector& d)
{
    SparseMat m(d.size(), d.size());
    m.reserve(Eigen::VectorXi::Constant(d.size(), 1));
    for (Index i = 0; i < d.size(); ++i)
        if (d(i) != cplx(0.0))
            m.insert(i, i) = d(i);
    m.makeCompressed();
    return m;
}

// Full-length coefficients supported on one bin.
CVector bin_restricted(const SpectralGrid& grid, const OneParticleVector& phi, std::size_t bin)
{
    CVector c = CVector::Zero(phi.coefficients().size());
    const auto off = static_cast<Index>(grid.mode_offset(bin));
    const auto len = static_cast<Index>(grid.mode_offset(bin + 1)) - off;
    c.segment(off, len) = phi.coefficients().segment(off, len);
    return c;
}

} // namespace

SpectralFockSpace::SpectralFockSpace(GridPtr grid, std::size_t truncation, Index initial_dim,
                                     std::size_t dimension_cap)
    : grid_(std::move(grid)), initial_dim_(initial_dim)
{
    if (!grid_ || grid_->empty())
        throw Error(ErrorKind::EmptyGrid, "spectral Fock space needs a non-empty grid");
    if (initial_dim < 1)
        throw Error(ErrorKind::DimMismatch, "initial space dimension must be positive");
    basis_ = enumerate_basis(Statistics::Bose, grid_->mode_count(), truncation, dimension_cap);
    if (static_cast<std::uint64_t>(basis_->dimension()) * static_cast<std::uint64_t>(initial_dim) > dimension_cap)
        throw Error(ErrorKind::SizeOverflow, "H0 ⊗ Fock exceeds the dimension cap");
}

void SpectralFockSpace::require_vector(const OneParticleVector& phi) const
{
    if (phi.coefficients().size() != static_cast<Index>(grid_->mode_count()))
        throw Error(ErrorKind::DimMismatch, "one-particle vector does not match the grid");
    if (phi.grid() != grid_ && !(*phi.grid() == *grid_))
        throw Error(ErrorKind::GridMismatch, "one-particle vector lives on a different grid");
}

SparseOperator SpectralFockSpace::lift(const SparseOperator& fock_op) const
{
    return initial_dim_ == 1 ? fock_op : fock_op.ampliate(initial_dim_);
}

SparseOperator SpectralFockSpace::lift(const CMatrix& initial, const SparseOperator& fock_op) const
{
    if (initial.rows() != initial_dim_)
        throw Error(ErrorKind::DimMismatch, "initial-space factor has the wrong dimension");
    return fock_op.tensor_initial(initial);
}

CVector SpectralFockSpace::vacuum() const
{
    CVector v = CVector::Zero(dimension());
    v(basis_->vacuum()) = 1.0;
    return v;
}

SparseOperator SpectralFockSpace::mode_field(FieldKind kind, std::size_t mode) const
{
    return lift(kind == FieldKind::Creation ? mode_creation(basis_, mode) : mode_annihilation(basis_, mode));
}

SparseOperator SpectralFockSpace::create_at(const OneParticleVector& phi, std::size_t c) const
{
    require_vector(phi);
    CVector coeffs = phi.coefficients();
    coeffs.tail(coeffs.size() - static_cast<Index>(grid_->mode_offset(c))).setZero();
    return lift(field_operator(basis_, FieldKind::Creation, coeffs));
}

SparseOperator SpectralFockSpace::annihilate_at(const OneParticleVector& phi, std::size_t c) const
{
    require_vector(phi);
    CVector coeffs = phi.coefficients();
    coeffs.tail(coeffs.size() - static_cast<Index>(grid_->mode_offset(c))).setZero();
    return lift(field_operator(basis_, FieldKind::Annihilation, coeffs));
}

SparseOperator SpectralFockSpace::conserve_at(std::size_t c) const
{
    return SparseOperator::diagonal(basis_, masked_number_diagonal(*basis_, 0, grid_->mode_offset(c)), initial_dim_);
}

SparseOperator SpectralFockSpace::parity_at(std::size_t c) const
{
    const std::size_t limit = grid_->mode_offset(c);
    CVector diag(basis_->dimension());
    for (Index i = 0; i < basis_->dimension(); ++i) {
        const auto occ = basis_->occupation(i);
        int n = 0;
        for (std::size_t m = 0; m < limit; ++m)
            n += occ[m];
        diag(i) = sign_of(n);
    }
    return SparseOperator::diagonal(basis_, diag, initial_dim_);
}

SparseOperator SpectralFockSpace::jordan_wigner(FieldKind kind, const CVector& coeffs, std::size_t mode_limit) const
{
    const Index dim = basis_->dimension();
    const bool creation = kind == FieldKind::Creation;
    auto column = [&](Index c, std::vector<Entry>& out) {
        const auto occ = basis_->occupation(c);
        std::vector<std::uint8_t> target(occ.begin(), occ.end());
        int below = 0;
        for (std::size_t m = 0; m < mode_limit; ++m) {
            const cplx coeff = coeffs(static_cast<Index>(m));
            if (coeff != cplx(0.0)) {
                // Creation: J_{<m} b+_m; annihilation: (J_{<m} b+_m)^† = b-_m J_{<m}, and J_{<m} commutes with b_m.
                if (creation) {
                    ++target[m];
                    if (auto r = basis_->index_of(target))
                        out.push_back({*r, coeff * sign_of(below) * std::sqrt(occ[m] + 1.0)});
                    --target[m];
                } else if (occ[m] > 0) {
                    --target[m];
                    if (auto r = basis_->index_of(target))
                        out.push_back({*r, std::conj(coeff) * sign_of(below) * std::sqrt(double(occ[m]))});
                    ++target[m];
                }
            }
            below += occ[m];
        }
    };
    return lift(SparseOperator(basis_, basis_, kernels::assemble_columns(dim, dim, column, default_exec())));
}

SparseOperator SpectralFockSpace::fermi_create_at(const OneParticleVector& phi, std::size_t c) const
{
    require_vector(phi);
    return jordan_wigner(FieldKind::Creation, phi.coefficients(), grid_->mode_offset(c));
}

SparseOperator SpectralFockSpace::fermi_annihilate_at(const OneParticleVector& phi, std::size_t c) const
{
    require_vector(phi);
    return jordan_wigner(FieldKind::Annihilation, phi.coefficients(), grid_->mode_offset(c));
}

SparseOperator SpectralFockSpace::create(const OneParticleVector& phi, double omega) const
{
    return create_at(phi, cut(omega));
}

SparseOperator SpectralFockSpace::annihilate(const OneParticleVector& phi, double omega) const
{
    return annihilate_at(phi, cut(omega));
}

SparseOperator SpectralFockSpace::conserve(double omega) const { return conserve_at(cut(omega)); }

SparseOperator SpectralFockSpace::parity(double omega) const { return parity_at(cut(omega)); }

SparseOperator SpectralFockSpace::fermi_create(const OneParticleVector& phi, double omega) const
{
    return fermi_create_at(phi, cut(omega));
}

SparseOperator SpectralFockSpace::fermi_annihilate(const OneParticleVector& phi, double omega) const
{
    return fermi_annihilate_at(phi, cut(omega));
}

SparseOperator SpectralFockSpace::create_increment(const OneParticleVector& phi, std::size_t bin) const
{
    require_vector(phi);
    return lift(field_operator(basis_, FieldKind::Creation, bin_restricted(*grid_, phi, bin)));
}

SparseOperator SpectralFockSpace::annihilate_increment(const OneParticleVector& phi, std::size_t bin) const
{
    require_vector(phi);
    return lift(field_operator(basis_, FieldKind::Annihilation, bin_restricted(*grid_, phi, bin)));
}

SparseOperator SpectralFockSpace::conserve_increment(std::size_t bin) const
{
    return SparseOperator::diagonal(
        basis_, masked_number_diagonal(*basis_, grid_->mode_offset(bin), grid_->mode_offset(bin + 1)), initial_dim_);
}

SparseOperator spectral_process(const SpectralFockSpace& space, ProcessKind kind, const OneParticleVector* phi,
                                double omega)
{
    if (kind != ProcessKind::Conserve && phi == nullptr)
        throw Error(ErrorKind::DimMismatch, "field processes need a one-particle vector");
    switch (kind) {
    case ProcessKind::Create:
        return space.create(*phi, omega);
    case ProcessKind::Annihilate:
        return space.annihilate(*phi, omega);
    case ProcessKind::Conserve:
        break;
    }
    return space.conserve(omega);
}

double adaptedness_defect_at(const SpectralFockSpace& space, const SparseOperator& x, std::size_t cut)
{
    const std::size_t m_max = space.truncation();
    if (m_max == 0)
        return 0.0;
    const GradeWindow window = GradeWindow::up_to(m_max - 1);
    double worst = 0.0;
    for (std::size_t m = space.grid()->mode_offset(cut); m < space.grid()->mode_count(); ++m)
        for (auto kind : {FieldKind::Creation, FieldKind::Annihilation})
            worst = std::max(worst, operator_norm(compress(commutator(x, space.mode_field(kind, m)), window)));
    return worst;
}

double adaptedness_defect(const SpectralFockSpace& space, const SparseOperator& x, double omega)
{
    return adaptedness_defect_at(space, x, space.cut(omega));
}

CarDefect car_defect(const SpectralFockSpace& space, const OneParticleVector& phi, const OneParticleVector& psi,
                     double omega, GradeWindow window)
{
    const std::size_t c = space.cut(omega);
    const std::size_t m_max = space.truncation();
    const SparseOperator fm = space.fermi_annihilate_at(phi, c);
    const SparseOperator fp_psi = space.fermi_create_at(psi, c);
    const SparseOperator fp_phi = space.fermi_create_at(phi, c);
    const SparseOperator j = space.parity_at(c);

    CarDefect out;
    const cplx overlap = inner_product(project_below(phi, omega), psi);
    if (m_max >= 1) {
        const GradeWindow w{window.lo, std::min(window.hi, m_max - 1)};
        const SparseOperator anti = anticommutator(fm, fp_psi) - space.identity() * overlap;
        out.anticommutator = operator_norm(compress(anti, w));
    }
    if (m_max >= 2 && window.lo <= m_max - 2) {
        const GradeWindow in{window.lo, std::min(window.hi, m_max - 2)};
        out.square = operator_norm(compress(fp_phi * fp_phi, GradeWindow{}, in));
    }
    out.parity = std::max(operator_norm(anticommutator(j, fp_phi)), operator_norm(anticommutator(j, fm)));
    return out;
}

namespace {

// 1 on states with at most one particle in the given bin.
CVector low_occupancy_mask(const SpectralFockSpace& space, std::size_t bin)
{
    const CVector n = diagonal_of(space.conserve_increment(bin));
    CVector mask(n.size());
    for (Index i = 0; i < n.size(); ++i)
        mask(i) = n(i).real() <= 1.0 ? 1.0 : 0.0;
    return mask;
}

} // namespace

ParityRecursionDefect parity_recursion_defect(const SpectralFockSpace& space, std::size_t bin)
{
    if (bin >= space.grid()->bin_count())
        throw Error(ErrorKind::DimMismatch, "bin index out of range");
    const SparseOperator j_prev = space.parity_at(bin);
    const SparseOperator j_next = space.parity_at(bin + 1);
    const SparseOperator dl = space.conserve_increment(bin);

    CVector flip = diagonal_of(dl);
    for (Index i = 0; i < flip.size(); ++i)
        flip(i) = sign_of(static_cast<int>(std::lround(flip(i).real())));
    const SparseOperator flip_op(space.basis(), space.basis(), diag_matrix(flip), space.initial_dim());

    ParityRecursionDefect out;
    out.recursion = operator_norm(j_next - j_prev * flip_op);
    const SparseOperator diff = (j_next - j_prev) + j_prev * dl * cplx(2.0);
    out.differential_full = operator_norm(diff);
    const SparseMat mask = diag_matrix(low_occupancy_mask(space, bin));
    out.differential_low = operator_norm(SparseMat(diff.matrix() * mask));
    return out;
}

AnalyticRuleDefect analytic_rule_defect(const SpectralFockSpace& space, const std::function<cplx(double)>& f,
                                        std::size_t bin)
{
    if (bin >= space.grid()->bin_count())
        throw Error(ErrorKind::DimMismatch, "bin index out of range");
    const CVector prev = diagonal_of(space.conserve_at(bin));
    const CVector next = diagonal_of(space.conserve_at(bin + 1));
    const CVector inc = diagonal_of(space.conserve_increment(bin));
    const CVector mask = low_occupancy_mask(space, bin);

    AnalyticRuleDefect out;
    for (Index i = 0; i < prev.size(); ++i) {
        const double a = prev(i).real(), b = next(i).real(), d = inc(i).real();
        const cplx measured = f(b) - f(a);
        out.exact = std::max(out.exact, std::abs(measured - (f(a + d) - f(a))));
        const double rule = std::abs(measured - (f(a + 1.0) - f(a)) * d);
        out.increment_full = std::max(out.increment_full, rule);
        if (mask(i) != cplx(0.0))
            out.increment_low = std::max(out.increment_low, rule);
    }
    return out;
}

} // namespace wicklab
