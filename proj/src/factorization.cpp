#include "wicklab/factorization.hpp"

#include <algorithm>
#include <vector>

#include "wicklab/error.hpp"
#include "wicklab/fock_operators.hpp"

namespace wicklab {

SplitFock::SplitFock(BasisPtr full, std::size_t cut_mode) : full_(std::move(full)), cut_(cut_mode)
{
    const std::size_t d = full_->modes();
    if (cut_ > d)
        throw Error(ErrorKind::MisalignedCut, "cut mode beyond the mode count");
    const auto stats = full_->statistics();
    const std::size_t m = full_->truncation();
    if (cut_ > 0)
        low_ = enumerate_basis(stats, cut_, m);
    if (cut_ < d)
        high_ = enumerate_basis(stats, d - cut_, m);

    std::vector<Eigen::Triplet<cplx, Index>> t;
    for (Index s = 0; s < full_->dimension(); ++s) {
        const auto occ = full_->occupation(s);
        Index lo = 0, hi = 0;
        if (low_)
            lo = *low_->index_of(occ.subspan(0, cut_));
        if (high_)
            hi = *high_->index_of(occ.subspan(cut_));
        t.emplace_back(lo * high_dim() + hi, s, 1.0);
    }
    w_.resize(low_dim() * high_dim(), full_->dimension());
    w_.setFromTriplets(t.begin(), t.end());
}

SparseMat SplitFock::transport(const SparseMat& full_op) const
{
    SparseMat r = w_ * full_op * SparseMat(w_.adjoint());
    return r;
}

SparseMat SplitFock::low_parity() const
{
    SparseMat p(low_dim() * high_dim(), low_dim() * high_dim());
    p.reserve(Eigen::VectorXi::Constant(p.cols(), 1));
    for (Index lo = 0; lo < low_dim(); ++lo) {
        const double sign = (low_ && low_->grade(lo) % 2 == 1) ? -1.0 : 1.0;
        for (Index hi = 0; hi < high_dim(); ++hi)
            p.insert(lo * high_dim() + hi, lo * high_dim() + hi) = sign;
    }
    return p;
}

SparseMat SplitFock::lift_low(const SparseMat& low_op) const
{
    SparseMat id(high_dim(), high_dim());
    id.setIdentity();
    return kron(low_op, id);
}

SparseMat SplitFock::lift_high(const SparseMat& high_op) const
{
    SparseMat id(low_dim(), low_dim());
    id.setIdentity();
    SparseMat lifted = kron(id, high_op);
    if (full_->statistics() == Statistics::Fermi)
        return low_parity() * lifted;
    return lifted;
}

FactorizationDefects factorization_defect(const BasisPtr& full, std::size_t cut_mode)
{
    const SplitFock split(full, cut_mode);
    const SparseMat& w = split.embedding();
    const SparseMat wh = w.adjoint();
    const SparseMat pw = w * wh;

    FactorizationDefects out;
    SparseMat id(full->dimension(), full->dimension());
    id.setIdentity();
    out.isometry = operator_norm(SparseMat(wh * w - id));

    for (std::size_t m = 0; m < full->modes(); ++m) {
        for (auto kind : {FieldKind::Creation, FieldKind::Annihilation}) {
            const bool creation = kind == FieldKind::Creation;
            const SparseMat x = (creation ? mode_creation(full, m) : mode_annihilation(full, m)).matrix();
            SparseMat lifted;
            if (m < cut_mode) {
                const auto& lb = split.low();
                lifted = split.lift_low((creation ? mode_creation(lb, m) : mode_annihilation(lb, m)).matrix());
            } else {
                const auto& hb = split.high();
                const std::size_t local = m - cut_mode;
                lifted = split.lift_high((creation ? mode_creation(hb, local) : mode_annihilation(hb, local)).matrix());
            }
            const SparseMat diff = split.transport(x) - SparseMat(pw * lifted * pw);
            out.fields = std::max(out.fields, operator_norm(diff));
        }
    }
    return out;
}

} // namespace wicklab
