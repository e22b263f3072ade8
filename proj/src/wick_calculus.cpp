#include "wicklab/wick_calculus.hpp"

#include <algorithm>
#include <cmath>

#include "wicklab/error.hpp"
#include "wicklab/fock_operators.hpp"

namespace wicklab {

namespace {

void require_same_space(const SpacePtr& a, const SpacePtr& b)
{
    if (a == b)
        return;
    if (!(*a->grid() == *b->grid()) || !(*a->basis() == *b->basis()) || a->initial_dim() != b->initial_dim())
        throw Error(ErrorKind::RefinementMismatch, "processes live on different spaces");
}

cplx bin_overlap(const SpectralGrid& grid, const OneParticleVector& a, const OneParticleVector& b, std::size_t bin)
{
    const auto off = static_cast<Index>(grid.mode_offset(bin));
    const auto len = static_cast<Index>(grid.mode_offset(bin + 1)) - off;
    return a.coefficients().segment(off, len).dot(b.coefficients().segment(off, len));
}

double bin_norm2(const SpectralGrid& grid, const OneParticleVector& a, std::size_t bin)
{
    return bin_overlap(grid, a, a, bin).real();
}

// Zero outside grades [0, top].
CVector keep_grades(const FockBasis& basis, CVector v, long top)
{
    const Index end = top < 0 ? 0
                              : (static_cast<std::size_t>(top) >= basis.max_grade()
                                     ? basis.dimension()
                                     : basis.grade_end(static_cast<std::size_t>(top)));
    v.tail(v.size() - end).setZero();
    return v;
}

} // namespace

AdaptedStepProcess::AdaptedStepProcess(SpacePtr space, std::vector<std::size_t> cuts,
                                       std::vector<SparseOperator> pieces, bool zero)
    : space_(std::move(space)), cuts_(std::move(cuts)), pieces_(std::move(pieces)), zero_(zero)
{
}

AdaptedStepProcess::AdaptedStepProcess(SpacePtr space, std::vector<std::size_t> cuts,
                                       std::vector<SparseOperator> pieces, double tolerance)
    : space_(std::move(space)), cuts_(std::move(cuts)), pieces_(std::move(pieces))
{
    const std::size_t n = space_->grid()->bin_count();
    if (cuts_.size() < 2 || cuts_.front() != 0 || cuts_.back() != n || pieces_.size() + 1 != cuts_.size())
        throw Error(ErrorKind::MisalignedCut, "breakpoints must run from 0 to the bin count, one piece per interval");
    for (std::size_t p = 0; p + 1 < cuts_.size(); ++p)
        if (cuts_[p] >= cuts_[p + 1])
            throw Error(ErrorKind::MisalignedCut, "breakpoints must be strictly increasing");
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
        const auto& op = pieces_[p];
        if (op.initial_dim() != space_->initial_dim() || !(*op.domain() == *space_->basis()) ||
            !(*op.codomain() == *space_->basis()))
            throw Error(ErrorKind::BasisMismatch, "piece does not act on the process space");
        const double defect = adaptedness_defect_at(*space_, op, cuts_[p]);
        if (defect > tolerance)
            throw Error(ErrorKind::AdaptednessViolation,
                        "piece " + std::to_string(p) + " is not adapted at its left breakpoint (defect " +
                            std::to_string(defect) + ")");
    }
}

AdaptedStepProcess AdaptedStepProcess::zero(const SpacePtr& space)
{
    return {space, {0, space->grid()->bin_count()}, {space->zero()}, true};
}

AdaptedStepProcess AdaptedStepProcess::constant(const SpacePtr& space, const SparseOperator& op)
{
    return {space, std::vector<std::size_t>{0, space->grid()->bin_count()}, std::vector<SparseOperator>{op}};
}

AdaptedStepProcess AdaptedStepProcess::identity(const SpacePtr& space)
{
    return {space, {0, space->grid()->bin_count()}, {space->identity()}, false};
}

const SparseOperator& AdaptedStepProcess::at_bin(std::size_t bin) const
{
    const auto it = std::upper_bound(cuts_.begin(), cuts_.end(), bin);
    return pieces_.at(static_cast<std::size_t>(it - cuts_.begin()) - 1);
}

WickIntegrand WickIntegrand::zero(const SpacePtr& space)
{
    const auto z = AdaptedStepProcess::zero(space);
    const auto o = OneParticleVector::zero(space->grid());
    return {z, z, z, z, o, o};
}

SparseOperator wick_increment(const WickIntegrand& ig, std::size_t bin)
{
    const auto& s = *ig.space();
    SparseOperator out = s.zero();
    if (!ig.x11.is_zero())
        out = out + ig.x11.at_bin(bin) * s.conserve_increment(bin);
    if (!ig.x10.is_zero())
        out = out + ig.x10.at_bin(bin) * s.create_increment(ig.phi, bin);
    if (!ig.x01.is_zero())
        out = out + ig.x01.at_bin(bin) * s.annihilate_increment(ig.psi, bin);
    if (!ig.x00.is_zero())
        out = out + ig.x00.at_bin(bin) * cplx(s.grid()->width(bin));
    return out;
}

SparseOperator wick_integral_at(const WickIntegrand& ig, std::size_t cut)
{
    for (const auto* p : {&ig.x10, &ig.x01, &ig.x00})
        require_same_space(ig.x11.space(), p->space());
    SparseOperator out = ig.space()->zero();
    for (std::size_t j = 0; j < cut; ++j)
        out = out + wick_increment(ig, j);
    return out;
}

SparseOperator wick_integral(const WickIntegrand& ig, double omega)
{
    return wick_integral_at(ig, ig.space()->cut(omega));
}

std::vector<SparseOperator> wick_process(const WickIntegrand& ig)
{
    for (const auto* p : {&ig.x10, &ig.x01, &ig.x00})
        require_same_space(ig.x11.space(), p->space());
    std::vector<SparseOperator> out{ig.space()->zero()};
    for (std::size_t j = 0; j < ig.space()->grid()->bin_count(); ++j)
        out.push_back(out.back() + wick_increment(ig, j));
    return out;
}

SparseOperator wick_integral_adjoint(const WickIntegrand& ig, double omega, AdjointConvention convention)
{
    const auto& s = *ig.space();
    const bool star = convention == AdjointConvention::AdjointCoefficients;
    auto coeff = [&](const AdaptedStepProcess& p, std::size_t j) {
        return star ? p.at_bin(j).adjoint() : p.at_bin(j);
    };
    SparseOperator out = s.zero();
    for (std::size_t j = 0; j < s.cut(omega); ++j) {
        if (!ig.x11.is_zero())
            out = out + coeff(ig.x11, j) * s.conserve_increment(j);
        if (!ig.x10.is_zero())
            out = out + coeff(ig.x10, j) * s.annihilate_increment(ig.phi, j);
        if (!ig.x01.is_zero())
            out = out + coeff(ig.x01, j) * s.create_increment(ig.psi, j);
        if (!ig.x00.is_zero())
            out = out + coeff(ig.x00, j) * cplx(s.grid()->width(j));
    }
    return out;
}

CVector tensor_vector(const CVector& u, const CVector& fock)
{
    CVector out(u.size() * fock.size());
    for (Index i = 0; i < u.size(); ++i)
        out.segment(i * fock.size(), fock.size()) = u(i) * fock;
    return out;
}

cplx filtered_element(const SparseOperator& x, const CVector& u, const OneParticleVector& f, const CVector& v,
                      const OneParticleVector& g, long k)
{
    if (k < 0)
        return 0.0;
    const FockBasis& out_basis = *x.codomain();
    const FockBasis& in_basis = *x.domain();
    const CVector ef = exponential_vector(out_basis, f);
    const CVector eg = exponential_vector(in_basis, g);
    cplx sum = 0.0;
    const long top = std::min<long>(k, static_cast<long>(in_basis.max_grade()));
    for (long b = 0; b <= top; ++b) {
        CVector ket = CVector::Zero(eg.size());
        const Index lo = in_basis.grade_begin(static_cast<std::size_t>(b));
        const Index hi = in_basis.grade_end(static_cast<std::size_t>(b));
        ket.segment(lo, hi - lo) = eg.segment(lo, hi - lo);
        const CVector image = x.apply(tensor_vector(v, ket));
        const CVector bra = tensor_vector(u, keep_grades(out_basis, ef, k - b));
        sum += bra.dot(image);
    }
    return sum;
}

cplx matrix_element_form(const WickIntegrand& ig, const CVector& u, const OneParticleVector& f, const CVector& v,
                         const OneParticleVector& g, double omega, long k)
{
    const auto& s = *ig.space();
    const auto& grid = *s.grid();
    cplx sum = 0.0;
    for (std::size_t j = 0; j < s.cut(omega); ++j) {
        if (!ig.x11.is_zero())
            sum += bin_overlap(grid, f, g, j) * filtered_element(ig.x11.at_bin(j), u, f, v, g, k - 2);
        if (!ig.x10.is_zero())
            sum += bin_overlap(grid, f, ig.phi, j) * filtered_element(ig.x10.at_bin(j), u, f, v, g, k - 1);
        if (!ig.x01.is_zero())
            sum += bin_overlap(grid, ig.psi, g, j) * filtered_element(ig.x01.at_bin(j), u, f, v, g, k - 1);
        if (!ig.x00.is_zero())
            sum += grid.width(j) * filtered_element(ig.x00.at_bin(j), u, f, v, g, k);
    }
    return sum;
}

cplx matrix_element_form(const WickIntegrand& ig, const CVector& u, const OneParticleVector& f, const CVector& v,
                         const OneParticleVector& g, double omega)
{
    return matrix_element_form(ig, u, f, v, g, omega, static_cast<long>(ig.space()->truncation()) - 1);
}

ProbePanel default_panel(const SpectralFockSpace& space, double scale)
{
    ProbePanel panel;
    const Index d0 = space.initial_dim();
    for (Index i = 0; i < std::min<Index>(d0, 2); ++i)
        panel.initial.push_back(CVector::Unit(d0, i));
    const auto& grid = space.grid();
    panel.functions.push_back(sample_scalar(grid, [scale](double) { return cplx(scale); }));
    panel.functions.push_back(sample_scalar(grid, [scale](double w) { return cplx(scale * w); }));
    panel.functions.push_back(sample_scalar(grid, [scale](double w) { return cplx(scale * w * w); }));
    return panel;
}

double route_defect(const WickIntegrand& ig, const ProbePanel& panel, double omega, long k)
{
    const SparseOperator x = wick_integral(ig, omega);
    double worst = 0.0;
    for (const auto& u : panel.initial)
        for (const auto& f : panel.functions)
            for (const auto& v : panel.initial)
                for (const auto& g : panel.functions)
                    worst = std::max(worst, std::abs(filtered_element(x, u, f, v, g, k) -
                                                     matrix_element_form(ig, u, f, v, g, omega, k)));
    return worst;
}

bool ito_entry_is_null(Differential row, Differential col)
{
    if (row == Differential::Lambda)
        return !(col == Differential::Lambda || col == Differential::Create);
    if (row == Differential::Annihilate)
        return !(col == Differential::Lambda || col == Differential::Create);
    return true;
}

bool ito_entry_exact_on_vacuum(Differential row, Differential col)
{
    auto lowering = [](Differential d) { return d == Differential::Annihilate || d == Differential::Time; };
    return !(lowering(row) && lowering(col));
}

ItoProbe ito_table_probe(const SpectralGrid& grid, Differential row, Differential col, std::size_t bin,
                         const OneParticleVector& phi, const OneParticleVector& psi, const OneParticleVector& f,
                         const OneParticleVector& g, std::size_t local_truncation)
{
    if (bin >= grid.bin_count())
        throw Error(ErrorKind::DimMismatch, "bin index out of range");
    if (local_truncation < 2)
        throw Error(ErrorKind::TruncationTooSmall, "the Itô probe needs a local truncation of at least 2");
    const auto edges = grid.edges();
    auto local_grid = std::make_shared<const SpectralGrid>(std::vector<double>{edges[bin], edges[bin + 1]},
                                                           std::vector<std::size_t>{grid.internal_dims()[bin]});
    const SpectralFockSpace local(local_grid, local_truncation);
    auto restrict = [&](const OneParticleVector& x) { return OneParticleVector(local_grid, x.bin_block(bin)); };
    const auto phi_l = restrict(phi), psi_l = restrict(psi), f_l = restrict(f), g_l = restrict(g);

    auto increment = [&](Differential d, const OneParticleVector& field) {
        switch (d) {
        case Differential::Lambda:
            return local.conserve_increment(0);
        case Differential::Create:
            return local.create_increment(field, 0);
        case Differential::Annihilate:
            return local.annihilate_increment(field, 0);
        case Differential::Time:
            break;
        }
        return local.identity() * cplx(grid.width(bin));
    };

    const SparseOperator product = increment(row, psi_l) * increment(col, phi_l);
    SparseOperator entry = local.zero();
    if (row == Differential::Lambda && col == Differential::Lambda)
        entry = local.conserve_increment(0);
    else if (row == Differential::Lambda && col == Differential::Create)
        entry = local.create_increment(phi_l, 0);
    else if (row == Differential::Annihilate && col == Differential::Lambda)
        entry = local.annihilate_increment(psi_l, 0);
    else if (row == Differential::Annihilate && col == Differential::Create)
        entry = local.identity() * psi_l.coefficients().dot(phi_l.coefficients());

    const cplx rest = std::exp(inner_product(f, g) - f_l.coefficients().dot(g_l.coefficients()));
    const long k = static_cast<long>(local_truncation) - 2;
    const CVector one = CVector::Ones(1);
    return {rest * filtered_element(product, one, f_l, one, g_l, k),
            rest * filtered_element(entry, one, f_l, one, g_l, k)};
}

ItoProbe ito_table_probe(const SpectralGrid& grid, Differential row, Differential col, std::size_t bin,
                         const OneParticleVector& phi, const OneParticleVector& psi, const OneParticleVector& g,
                         std::size_t local_truncation)
{
    return ito_table_probe(grid, row, col, bin, phi, psi, OneParticleVector::zero(g.grid()), g, local_truncation);
}

ItoCorrection ito_correction_defect(const WickIntegrand& x, const WickIntegrand& y, double omega,
                                    const ProbePanel& panel, long k)
{
    require_same_space(x.space(), y.space());
    const auto& s = *x.space();
    const auto& grid = *s.grid();
    const std::size_t c = s.cut(omega);

    SparseOperator xj = s.zero(), yj = s.zero();
    SparseOperator leibniz = s.zero();
    SparseOperator measured = s.zero();
    SparseOperator predicted = s.zero();
    for (std::size_t j = 0; j < c; ++j) {
        const SparseOperator dx = wick_increment(x, j);
        const SparseOperator dy = wick_increment(y, j);
        const SparseOperator dxdy = dx * dy;
        leibniz = leibniz + xj * dy + dx * yj + dxdy;
        measured = measured + dxdy;
        if (!x.x11.is_zero() && !y.x11.is_zero())
            predicted = predicted + x.x11.at_bin(j) * y.x11.at_bin(j) * s.conserve_increment(j);
        if (!x.x11.is_zero() && !y.x10.is_zero())
            predicted = predicted + x.x11.at_bin(j) * y.x10.at_bin(j) * s.create_increment(y.phi, j);
        if (!x.x01.is_zero() && !y.x11.is_zero())
            predicted = predicted + x.x01.at_bin(j) * y.x11.at_bin(j) * s.annihilate_increment(x.psi, j);
        if (!x.x01.is_zero() && !y.x10.is_zero())
            predicted = predicted + x.x01.at_bin(j) * y.x10.at_bin(j) * bin_overlap(grid, x.psi, y.phi, j);
        xj = xj + dx;
        yj = yj + dy;
    }

    ItoCorrection out;
    out.abel = operator_norm(xj * yj - leibniz);
    const SparseOperator gap = measured - predicted;
    for (const auto& u : panel.initial)
        for (const auto& f : panel.functions)
            for (const auto& v : panel.initial)
                for (const auto& g : panel.functions)
                    out.deviation = std::max(out.deviation, std::abs(filtered_element(gap, u, f, v, g, k)));
    return out;
}

EstimateCheck estimate_bound_check(const WickIntegrand& ig, const CVector& u, const OneParticleVector& f,
                                   double omega)
{
    const auto& s = *ig.space();
    const auto& grid = *s.grid();
    const std::size_t c = s.cut(omega);
    const CVector xi = tensor_vector(u, exponential_vector(*s.basis(), f));

    EstimateCheck out;
    out.lhs = wick_integral_at(ig, c).apply(xi).squaredNorm();

    std::vector<double> tail(c + 1, 0.0);
    for (std::size_t j = c; j-- > 0;)
        tail[j] = tail[j + 1] + bin_norm2(grid, f, j);
    auto norm2 = [&](const AdaptedStepProcess& p, std::size_t j) {
        return p.is_zero() ? 0.0 : p.at_bin(j).apply(xi).squaredNorm();
    };
    for (std::size_t j = 0; j < c; ++j) {
        const double weight = std::exp(omega - grid.edges()[j] + 3.0 * tail[j]);
        const double bracket = 3.0 * bin_norm2(grid, f, j) * norm2(ig.x11, j) +
                               3.0 * bin_norm2(grid, ig.phi, j) * norm2(ig.x10, j) +
                               bin_norm2(grid, ig.psi, j) * norm2(ig.x01, j) + grid.width(j) * norm2(ig.x00, j);
        out.rhs += weight * bracket;
    }
    return out;
}

WickIntegrand random_integrand(const SpacePtr& space, Rng& rng)
{
    const std::size_t n = space->grid()->bin_count();
    const Index d0 = space->initial_dim();
    const SparseOperator fock_id = SparseOperator::identity(space->basis());
    std::bernoulli_distribution coin(0.5);

    auto process = [&] {
        std::vector<std::size_t> cuts{0};
        for (std::size_t c = 1; c < n; ++c)
            if (coin(rng))
                cuts.push_back(c);
        cuts.push_back(n);
        std::vector<SparseOperator> pieces;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            const CMatrix a = random_matrix(rng, d0, d0);
            const CMatrix b = random_matrix(rng, d0, d0);
            pieces.push_back(space->lift(a, fock_id) + space->lift(b, fock_id) * space->parity_at(cuts[p]));
        }
        return AdaptedStepProcess(space, std::move(cuts), std::move(pieces));
    };

    const auto& grid = space->grid();
    auto field = [&] {
        CVector c = random_vector(rng, static_cast<Index>(grid->mode_count()));
        for (std::size_t m = 0; m < grid->mode_count(); ++m)
            c(static_cast<Index>(m)) *= std::sqrt(grid->width(grid->bin_of_mode(m)));
        return OneParticleVector(grid, c);
    };
    auto x11 = process();
    auto x10 = process();
    auto x01 = process();
    auto x00 = process();
    auto phi = field();
    auto psi = field();
    return {std::move(x11), std::move(x10), std::move(x01), std::move(x00), std::move(phi), std::move(psi)};
}

} // namespace wicklab
