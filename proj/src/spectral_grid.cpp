#include "wicklab/spectral_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wicklab/error.hpp"

namespace wicklab {

namespace {

double edge_tolerance(std::span<const double> edges)
{
    const double span = std::max(std::abs(edges.front()), std::abs(edges.back()));
    return 1e-9 * std::max(span, 1.0);
}

void require_same_grid(const OneParticleVector& a, const OneParticleVector& b)
{
    if (a.grid() != b.grid() && !(*a.grid() == *b.grid()))
        throw Error(ErrorKind::GridMismatch, "one-particle vectors live on different grids");
}

} // namespace

SpectralGrid::SpectralGrid(std::vector<double> bin_edges, std::vector<std::size_t> internal_dims)
    : edges_(std::move(bin_edges)), dims_(std::move(internal_dims))
{
    if (edges_.empty())
        throw Error(ErrorKind::EmptyGrid, "grid needs at least one edge");
    if (edges_.size() != dims_.size() + 1)
        throw Error(ErrorKind::DimMismatch, "need one internal dimension per bin");
    for (std::size_t j = 0; j + 1 < edges_.size(); ++j) {
        if (!(edges_[j + 1] > edges_[j]))
            throw Error(ErrorKind::EmptyGrid, "bin edges must be strictly increasing");
    }
    offsets_.resize(dims_.size() + 1, 0);
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        if (dims_[j] == 0)
            throw Error(ErrorKind::DimMismatch, "internal dimensions must be positive");
        offsets_[j + 1] = offsets_[j] + dims_[j];
    }
}

double SpectralGrid::max_width() const
{
    double w = 0.0;
    for (std::size_t j = 0; j < bin_count(); ++j)
        w = std::max(w, width(j));
    return w;
}

std::size_t SpectralGrid::bin_of_mode(std::size_t mode) const
{
    if (mode >= mode_count())
        throw Error(ErrorKind::DimMismatch, "mode index out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), mode);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

ModeLabel SpectralGrid::label(std::size_t mode) const
{
    const std::size_t bin = bin_of_mode(mode);
    return {bin, mode - offsets_[bin]};
}

std::size_t SpectralGrid::mode(ModeLabel l) const
{
    if (l.bin >= bin_count() || l.internal >= dims_[l.bin])
        throw Error(ErrorKind::DimMismatch, "mode label out of range");
    return offsets_[l.bin] + l.internal;
}

bool SpectralGrid::is_edge(double omega) const
{
    const double tol = edge_tolerance(edges_);
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](double e) { return std::abs(e - omega) <= tol; });
}

std::size_t SpectralGrid::cut_index(double omega) const
{
    const double tol = edge_tolerance(edges_);
    for (std::size_t c = 0; c < edges_.size(); ++c) {
        if (std::abs(edges_[c] - omega) <= tol)
            return c;
    }
    std::ostringstream msg;
    msg << "frequency " << omega << " is not a bin edge";
    throw Error(ErrorKind::MisalignedCut, msg.str());
}

bool SpectralGrid::operator==(const SpectralGrid& other) const
{
    return edges_ == other.edges_ && dims_ == other.dims_;
}

GridPtr build_grid(double omega_max, std::size_t bin_count, std::vector<std::size_t> internal_dims)
{
    if (bin_count == 0 || !(omega_max > 0.0))
        throw Error(ErrorKind::EmptyGrid, "need omega_max > 0 and at least one bin");
    if (internal_dims.size() != bin_count)
        throw Error(ErrorKind::DimMismatch, "internal_dims length must equal bin_count");
    std::vector<double> edges(bin_count + 1);
    for (std::size_t j = 0; j <= bin_count; ++j)
        edges[j] = omega_max * static_cast<double>(j) / static_cast<double>(bin_count);
    edges.back() = omega_max;
    return std::make_shared<const SpectralGrid>(std::move(edges), std::move(internal_dims));
}

GridPtr build_uniform_grid(double omega_max, std::size_t bin_count, std::size_t internal_dim)
{
    return build_grid(omega_max, bin_count, std::vector<std::size_t>(bin_count, internal_dim));
}

OneParticleVector::OneParticleVector(GridPtr grid, CVector coefficients)
    : grid_(std::move(grid)), coeffs_(std::move(coefficients))
{
    if (!grid_)
        throw Error(ErrorKind::GridMismatch, "null grid");
    if (static_cast<std::size_t>(coeffs_.size()) != grid_->mode_count())
        throw Error(ErrorKind::DimMismatch, "coefficient count must equal the mode count");
}

OneParticleVector OneParticleVector::zero(GridPtr grid)
{
    const auto d = static_cast<Index>(grid->mode_count());
    return {std::move(grid), CVector::Zero(d)};
}

OneParticleVector OneParticleVector::basis_vector(GridPtr grid, std::size_t mode)
{
    CVector c = CVector::Zero(static_cast<Index>(grid->mode_count()));
    if (mode >= grid->mode_count())
        throw Error(ErrorKind::DimMismatch, "mode index out of range");
    c(static_cast<Index>(mode)) = 1.0;
    return {std::move(grid), std::move(c)};
}

CVector OneParticleVector::bin_block(std::size_t bin) const
{
    const auto off = static_cast<Index>(grid_->mode_offset(bin));
    const auto len = static_cast<Index>(grid_->internal_dims()[bin]);
    return coeffs_.segment(off, len);
}

OneParticleVector OneParticleVector::operator+(const OneParticleVector& o) const
{
    require_same_grid(*this, o);
    return {grid_, coeffs_ + o.coeffs_};
}

OneParticleVector sample_function(const GridPtr& grid, const ComponentFunction& phi)
{
    CVector c(static_cast<Index>(grid->mode_count()));
    for (std::size_t j = 0; j < grid->bin_count(); ++j) {
        const auto values = phi(grid->center(j), j);
        if (values.size() != grid->internal_dims()[j])
            throw Error(ErrorKind::DimMismatch, "callable returned the wrong component count");
        const double w = std::sqrt(grid->width(j));
        for (std::size_t k = 0; k < values.size(); ++k)
            c(static_cast<Index>(grid->mode_offset(j) + k)) = values[k] * w;
    }
    return {grid, std::move(c)};
}

OneParticleVector sample_scalar(const GridPtr& grid, const std::function<cplx(double)>& phi)
{
    return sample_function(grid, [&](double omega, std::size_t bin) {
        return std::vector<cplx>(grid->internal_dims()[bin], phi(omega));
    });
}

cplx inner_product(const OneParticleVector& phi, const OneParticleVector& psi)
{
    require_same_grid(phi, psi);
    return phi.coefficients().dot(psi.coefficients());
}

namespace {

// Bin range [first, last) covered by an aligned window.
std::pair<std::size_t, std::size_t> window_bins(const SpectralGrid& grid, const SpectralWindow& w)
{
    if (w.lower > w.upper)
        throw Error(ErrorKind::MisalignedCut, "window lower bound exceeds upper bound");
    return {grid.cut_index(w.lower), grid.cut_index(w.upper)};
}

} // namespace

OneParticleVector project(const SpectralWindow& window, const OneParticleVector& phi)
{
    const auto& grid = *phi.grid();
    const auto [first, last] = window_bins(grid, window);
    CVector c = CVector::Zero(phi.coefficients().size());
    const auto lo = static_cast<Index>(grid.mode_offset(first));
    const auto hi = static_cast<Index>(grid.mode_offset(last));
    c.segment(lo, hi - lo) = phi.coefficients().segment(lo, hi - lo);
    return {phi.grid(), std::move(c)};
}

CMatrix projection_matrix(const SpectralGrid& grid, const SpectralWindow& window)
{
    const auto [first, last] = window_bins(grid, window);
    const auto d = static_cast<Index>(grid.mode_count());
    CMatrix p = CMatrix::Zero(d, d);
    for (std::size_t m = grid.mode_offset(first); m < grid.mode_offset(last); ++m)
        p(static_cast<Index>(m), static_cast<Index>(m)) = 1.0;
    return p;
}

OneParticleVector project_below(const OneParticleVector& phi, double omega)
{
    return project({phi.grid()->lower(), omega}, phi);
}

CMatrix one_particle_hamiltonian(const SpectralGrid& grid)
{
    const auto d = static_cast<Index>(grid.mode_count());
    CMatrix h = CMatrix::Zero(d, d);
    for (std::size_t m = 0; m < grid.mode_count(); ++m)
        h(static_cast<Index>(m), static_cast<Index>(m)) = grid.center(grid.bin_of_mode(m));
    return h;
}

std::pair<GridPtr, GridPtr> split(const SpectralGrid& grid, double omega)
{
    const std::size_t c = grid.cut_index(omega);
    const auto edges = grid.edges();
    const auto dims = grid.internal_dims();
    std::vector<double> low_edges(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(c) + 1);
    std::vector<std::size_t> low_dims(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(c));
    std::vector<double> high_edges(edges.begin() + static_cast<std::ptrdiff_t>(c), edges.end());
    std::vector<std::size_t> high_dims(dims.begin() + static_cast<std::ptrdiff_t>(c), dims.end());
    return {std::make_shared<const SpectralGrid>(std::move(low_edges), std::move(low_dims)),
            std::make_shared<const SpectralGrid>(std::move(high_edges), std::move(high_dims))};
}

} // namespace wicklab
