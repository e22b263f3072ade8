#pragma once

// Discretized direct integral h = ∫⊕ k_ω dω: frequency bins carrying
// internal spaces of dimension d_j, flattened to D orthonormal modes in
// bin-major, internal-minor order. The measure weight √Δω is absorbed into
// the coefficients at sampling time, so every inner product downstream is a
// plain coefficient sum.

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "wicklab/types.hpp"

namespace wicklab {

struct ModeLabel {
    std::size_t bin;
    std::size_t internal;
    bool operator==(const ModeLabel&) const = default;
};

class SpectralGrid {
public:
    // General constructor from explicit edges; edges need not start at 0 (the
    // upper half of a split does not). An empty grid has a single edge.
    SpectralGrid(std::vector<double> bin_edges, std::vector<std::size_t> internal_dims);

    std::size_t bin_count() const noexcept { return dims_.size(); }
    std::size_t mode_count() const noexcept { return offsets_.back(); }
    bool empty() const noexcept { return dims_.empty(); }

    double lower() const noexcept { return edges_.front(); }
    double omega_max() const noexcept { return edges_.back(); }

    std::span<const double> edges() const noexcept { return edges_; }
    std::span<const std::size_t> internal_dims() const noexcept { return dims_; }

    double width(std::size_t bin) const { return edges_.at(bin + 1) - edges_.at(bin); }
    double center(std::size_t bin) const { return 0.5 * (edges_.at(bin) + edges_.at(bin + 1)); }
    double max_width() const;

    // First global mode of a bin; mode_offset(bin_count()) == mode_count().
    std::size_t mode_offset(std::size_t bin) const { return offsets_.at(bin); }
    std::size_t bin_of_mode(std::size_t mode) const;
    ModeLabel label(std::size_t mode) const;
    std::size_t mode(ModeLabel label) const;

    // Index c of the edge equal to omega (so bins [0, c) lie in [lower, omega]).
    // Throws MisalignedCut when omega is not a bin edge.
    std::size_t cut_index(double omega) const;
    bool is_edge(double omega) const;

    // Number of modes in bins below the cut at omega.
    std::size_t modes_below(double omega) const { return offsets_[cut_index(omega)]; }

    bool operator==(const SpectralGrid& other) const;

private:
    std::vector<double> edges_;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

// Uniform bins of width omega_max / bin_count starting at 0.
GridPtr build_grid(double omega_max, std::size_t bin_count, std::vector<std::size_t> internal_dims);
GridPtr build_uniform_grid(double omega_max, std::size_t bin_count, std::size_t internal_dim = 1);

class OneParticleVector {
public:
    OneParticleVector(GridPtr grid, CVector coefficients);
    static OneParticleVector zero(GridPtr grid);
    static OneParticleVector basis_vector(GridPtr grid, std::size_t mode);

    const GridPtr& grid() const noexcept { return grid_; }
    const CVector& coefficients() const noexcept { return coeffs_; }
    cplx operator[](std::size_t mode) const { return coeffs_(static_cast<Index>(mode)); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }

    // Coefficients restricted to one bin's internal modes.
    CVector bin_block(std::size_t bin) const;
    double norm() const { return coeffs_.norm(); }

    OneParticleVector operator*(cplx s) const { return {grid_, s * coeffs_}; }
    OneParticleVector operator+(const OneParticleVector& o) const;

private:
    GridPtr grid_;
    CVector coeffs_;
};

// [lower, upper]; both ends must be bin edges when used.
struct SpectralWindow {
    double lower;
    double upper;
};

using ComponentFunction = std::function<std::vector<cplx>(double omega, std::size_t bin)>;

// Midpoint rule: coefficient (j, k) = phi_k(center_j) * sqrt(width_j).
OneParticleVector sample_function(const GridPtr& grid, const ComponentFunction& phi);
// Same scalar value on every internal component of a bin.
OneParticleVector sample_scalar(const GridPtr& grid, const std::function<cplx(double)>& phi);

cplx inner_product(const OneParticleVector& phi, const OneParticleVector& psi);

OneParticleVector project(const SpectralWindow& window, const OneParticleVector& phi);
// Diagonal 0/1 matrix of the spectral projection onto the window.
CMatrix projection_matrix(const SpectralGrid& grid, const SpectralWindow& window);
// Projection onto [lower, omega]: the spectral cut Π[0,Ω].
OneParticleVector project_below(const OneParticleVector& phi, double omega);

// diag(center_j) repeated over each bin's internal modes.
CMatrix one_particle_hamiltonian(const SpectralGrid& grid);

// Grids covering [lower, omega] and (omega, omega_max]; either may be empty.
std::pair<GridPtr, GridPtr> split(const SpectralGrid& grid, double omega);

} // namespace wicklab
