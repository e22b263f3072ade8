#include "wicklab/unification.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "wicklab/error.hpp"
#include "wicklab/fock_operators.hpp"

namespace wicklab {

namespace {

SparseMat identity_of(Index n)
{
    SparseMat id(n, n);
    id.setIdentity();
    return id;
}

void require_compatible(const XiMap& xi, const SpectralFockSpace& space)
{
    if (!(*xi.bose() == *space.basis()) || space.initial_dim() != 1)
        throw Error(ErrorKind::BasisMismatch, "space does not carry the Bose basis of the map");
}

} // namespace

XiMap XiMap::from_bases(BasisPtr bose, BasisPtr fermi)
{
    if (!bose || !fermi || bose->statistics() != Statistics::Bose || fermi->statistics() != Statistics::Fermi)
        throw Error(ErrorKind::BasisMismatch, "Ξ needs a Bose domain and a Fermi codomain");
    if (bose->modes() != fermi->modes() || bose->truncation() != fermi->truncation())
        throw Error(ErrorKind::BasisMismatch, "Bose and Fermi bases differ in modes or truncation");

    XiMap out;
    std::vector<Eigen::Triplet<cplx, Index>> xi_t, p_t;
    for (Index s = 0; s < bose->dimension(); ++s) {
        const auto occ = bose->occupation(s);
        if (std::any_of(occ.begin(), occ.end(), [](std::uint8_t n) { return n > 1; }))
            continue;
        xi_t.emplace_back(*fermi->index_of(occ), s, 1.0);
        p_t.emplace_back(s, s, 1.0);
    }
    out.xi_.resize(fermi->dimension(), bose->dimension());
    out.xi_.setFromTriplets(xi_t.begin(), xi_t.end());
    out.p_.resize(bose->dimension(), bose->dimension());
    out.p_.setFromTriplets(p_t.begin(), p_t.end());
    out.bose_ = std::move(bose);
    out.fermi_ = std::move(fermi);
    return out;
}

XiMap build_xi(const SpectralGrid& grid, std::size_t truncation, std::size_t dimension_cap)
{
    return XiMap::from_bases(enumerate_basis(Statistics::Bose, grid.mode_count(), truncation, dimension_cap),
                             enumerate_basis(Statistics::Fermi, grid.mode_count(), truncation, dimension_cap));
}

IsometryDefect isometry_defect(const XiMap& xi)
{
    const SparseMat& x = xi.matrix();
    const SparseMat xh = x.adjoint();
    IsometryDefect out;
    out.initial = operator_norm(SparseMat(xh * x - xi.domain_projector()));
    out.final = operator_norm(SparseMat(x * xh - identity_of(x.rows())));
    return out;
}

FieldCovarianceDefect field_covariance_defect(const XiMap& xi, const SpectralFockSpace& space,
                                              const OneParticleVector& phi, double omega,
                                              GradeWindow leakage_window)
{
    require_compatible(xi, space);
    const SparseMat& x = xi.matrix();
    const SparseMat xh = x.adjoint();
    const SparseMat& p = xi.domain_projector();
    const CVector projected = project_below(phi, omega).coefficients();

    const SparseMat fp = space.fermi_create(phi, omega).matrix();
    const SparseMat fm = space.fermi_annihilate(phi, omega).matrix();
    const SparseMat cp = field_operator(xi.fermi(), FieldKind::Creation, projected).matrix();
    const SparseMat cm = field_operator(xi.fermi(), FieldKind::Annihilation, projected).matrix();

    FieldCovarianceDefect out;
    out.creation = operator_norm(SparseMat(x * p * fp * p * xh - cp));
    out.annihilation = operator_norm(SparseMat(x * p * fm * p * xh - cm));
    const SparseMat outside = identity_of(p.rows()) - p;
    const SparseMat window = grade_projector(*space.basis(), leakage_window);
    out.leakage = operator_norm(SparseMat(outside * fp * p * window));
    return out;
}

double number_covariance_defect(const XiMap& xi, const SpectralGrid& grid, double omega)
{
    const std::size_t limit = grid.modes_below(omega);
    if (grid.mode_count() != xi.bose()->modes())
        throw Error(ErrorKind::BasisMismatch, "grid does not match the map's modes");
    const SparseMat lb = SparseOperator::diagonal(xi.bose(), masked_number_diagonal(*xi.bose(), 0, limit)).matrix();
    CMatrix proj = CMatrix::Zero(static_cast<Index>(grid.mode_count()), static_cast<Index>(grid.mode_count()));
    for (std::size_t m = 0; m < limit; ++m)
        proj(static_cast<Index>(m), static_cast<Index>(m)) = 1.0;
    const SparseMat lf = diff_second_quantize(xi.fermi(), proj).matrix();
    const SparseMat& x = xi.matrix();
    return operator_norm(SparseMat(x * lb * xi.domain_projector() * SparseMat(x.adjoint()) - lf));
}

double ordered_product_defect(const SpectralFockSpace& space, const std::vector<OneParticleVector>& phis,
                              double omega, ProductDirection direction)
{
    const std::size_t n = phis.size();
    if (n > space.truncation())
        throw Error(ErrorKind::TruncationTooSmall, "product length exceeds the truncation");
    if (n > 16)
        throw Error(ErrorKind::SizeOverflow, "product length limited to 16");
    const std::size_t c = space.cut(omega);
    const bool fermi_lhs = direction == ProductDirection::FermiFromBose;

    CVector lhs = space.vacuum();
    for (std::size_t i = n; i-- > 0;) {
        const SparseOperator op = fermi_lhs ? space.fermi_create_at(phis[i], c) : space.create_at(phis[i], c);
        lhs = op.apply(lhs);
    }

    // increments[k][j]: single-bin increment of the RHS family for φ_k on bin j
    std::vector<std::vector<SparseOperator>> increments(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < c; ++j) {
            if (fermi_lhs)
                increments[k].push_back(space.create_increment(phis[k], j));
            else
                increments[k].push_back(space.fermi_create_at(phis[k], j + 1) - space.fermi_create_at(phis[k], j));
        }

    // w[S][j]: signed sum over placements of the φ's in S onto the last |S|
    // factor positions using bins >= j in strictly increasing order.
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<CVector>> w(subsets, std::vector<CVector>(c + 1, CVector::Zero(space.dimension())));
    for (std::size_t j = 0; j <= c; ++j)
        w[0][j] = space.vacuum();
    for (std::size_t s = 1; s < subsets; ++s) {
        for (std::size_t j = c; j-- > 0;) {
            CVector acc = w[s][j + 1];
            for (std::size_t k = 0; k < n; ++k) {
                if (!(s & (std::size_t{1} << k)))
                    continue;
                const std::size_t rest = s & ~(std::size_t{1} << k);
                double sign = 1.0;
                // inversions created by putting φ_k in front of the φ's in rest
                if (fermi_lhs && std::popcount(rest & ((std::size_t{1} << k) - 1)) % 2 == 1)
                    sign = -1.0;
                acc += sign * increments[k][j].apply(w[rest][j + 1]);
            }
            w[s][j] = std::move(acc);
        }
    }
    return (lhs - w[subsets - 1][0]).norm();
}

double xi_consistency_defect(const SpectralFockSpace& space, std::size_t n_max)
{
    const std::size_t d = space.grid()->mode_count();
    if (d > 4 || n_max > 3)
        throw Error(ErrorKind::SizeOverflow, "consistency sweep limited to D <= 4 and n <= 3");
    if (n_max > space.truncation())
        throw Error(ErrorKind::TruncationTooSmall, "tuple length exceeds the truncation");
    const XiMap xi = XiMap::from_bases(space.basis(), enumerate_basis(Statistics::Fermi, d, space.truncation()));
    require_compatible(xi, space);

    std::vector<SparseOperator> jw, intrinsic;
    for (std::size_t m = 0; m < d; ++m) {
        jw.push_back(space.fermi_create_at(OneParticleVector::basis_vector(space.grid(), m), space.grid()->bin_count()));
        intrinsic.push_back(mode_creation(xi.fermi(), m));
    }

    double worst = 0.0;
    std::vector<std::size_t> tuple;
    std::function<void()> visit = [&] {
        if (!tuple.empty()) {
            CVector b = space.vacuum();
            CVector f = vacuum_vector(*xi.fermi());
            for (std::size_t i = tuple.size(); i-- > 0;) {
                b = jw[tuple[i]].apply(b);
                f = intrinsic[tuple[i]].apply(f);
            }
            worst = std::max(worst, (xi.apply(b) - f).norm());
        }
        if (tuple.size() == n_max)
            return;
        for (std::size_t m = 0; m < d; ++m) {
            if (std::find(tuple.begin(), tuple.end(), m) != tuple.end())
                continue;
            tuple.push_back(m);
            visit();
            tuple.pop_back();
        }
    };
    visit();
    return worst;
}

} // namespace wicklab
