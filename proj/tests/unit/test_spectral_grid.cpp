#include "doctest.h"

#include <cmath>
#include <random>

#include "wicklab/error.hpp"
#include "wicklab/spectral_grid.hpp"

using namespace wicklab;

namespace {

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::IoError;
}

OneParticleVector vec3(const GridPtr& g, cplx a, cplx b, cplx c)
{
    CVector v(3);
    v << a, b, c;
    return {g, v};
}

} // namespace

TEST_CASE("build_grid: uniform partition")
{
    auto g = build_grid(3.0, 3, {1, 1, 1});
    CHECK(g->bin_count() == 3);
    CHECK(g->mode_count() == 3);
    CHECK(g->width(0) == doctest::Approx(1.0));
    CHECK(g->center(0) == doctest::Approx(0.5));
    CHECK(g->center(1) == doctest::Approx(1.5));
    CHECK(g->center(2) == doctest::Approx(2.5));

    auto g2 = build_grid(1.0, 4, {2, 2, 2, 2});
    CHECK(g2->width(3) == doctest::Approx(0.25));
    CHECK(g2->mode_count() == 8);
}

TEST_CASE("build_grid: errors")
{
    CHECK(kind_of([] { build_grid(1.0, 0, {}); }) == ErrorKind::EmptyGrid);
    CHECK(kind_of([] { build_grid(0.0, 2, {1, 1}); }) == ErrorKind::EmptyGrid);
    CHECK(kind_of([] { build_grid(1.0, 2, {1}); }) == ErrorKind::DimMismatch);
}

TEST_CASE("mode order is bin-major and bijective")
{
    auto g = build_grid(2.0, 3, {2, 1, 3});
    CHECK(g->mode_count() == 6);
    for (std::size_t m = 0; m < g->mode_count(); ++m)
        CHECK(g->mode(g->label(m)) == m);
    CHECK(g->label(0) == ModeLabel{0, 0});
    CHECK(g->label(1) == ModeLabel{0, 1});
    CHECK(g->label(2) == ModeLabel{1, 0});
    CHECK(g->label(5) == ModeLabel{2, 2});
}

TEST_CASE("sample_function: midpoint rule with sqrt(width) weight")
{
    auto g = build_grid(3.0, 3, {1, 1, 1});
    auto one = sample_scalar(g, [](double) { return cplx(1.0); });
    CHECK(std::abs(one[0] - 1.0) < 1e-15);
    CHECK(std::abs(one[2] - 1.0) < 1e-15);

    auto lin = sample_scalar(g, [](double w) { return cplx(w); });
    CHECK(std::abs(lin[0] - 0.5) < 1e-15);
    CHECK(std::abs(lin[1] - 1.5) < 1e-15);
    CHECK(std::abs(lin[2] - 2.5) < 1e-15);

    auto g4 = build_grid(1.0, 4, {1, 1, 1, 1});
    auto q = sample_scalar(g4, [](double) { return cplx(1.0); });
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(std::abs(q[m] - 0.5) < 1e-15);

    CHECK(kind_of([&] {
              sample_function(g, [](double, std::size_t) { return std::vector<cplx>(2, 1.0); });
          }) == ErrorKind::DimMismatch);
}

TEST_CASE("inner_product: quadrature, orthogonality, conjugate linearity")
{
    auto g = build_grid(3.0, 3, {1, 1, 1});
    auto one = vec3(g, 1, 1, 1);
    CHECK(std::abs(inner_product(one, one) - 3.0) < 1e-15);
    CHECK(std::abs(inner_product(vec3(g, 1, 0, 0), vec3(g, 0, 2, 3))) == 0.0);

    auto phi = vec3(g, {1, 2}, {0, -1}, 3);
    auto psi = vec3(g, 2, {1, 1}, {0, 4});
    const cplx lhs = inner_product(phi * cplx(0, 1), psi);
    const cplx rhs = cplx(0, -1) * inner_product(phi, psi);
    CHECK(std::abs(lhs - rhs) < 1e-14);

    auto other = build_grid(3.0, 3, {1, 1, 1});
    CHECK(std::abs(inner_product(one, vec3(other, 1, 1, 1)) - 3.0) < 1e-15);
    auto different = build_grid(2.0, 3, {1, 1, 1});
    CHECK(kind_of([&] { inner_product(one, vec3(different, 1, 1, 1)); }) == ErrorKind::GridMismatch);
}

TEST_CASE("project: indicator action and misaligned windows")
{
    auto g = build_grid(3.0, 3, {1, 1, 1});
    auto phi = vec3(g, 1, 2, 3);
    auto p = project({0.0, 2.0}, phi);
    CHECK(p.coefficients() == vec3(g, 1, 2, 0).coefficients());
    CHECK(project({0.0, 0.0}, phi).coefficients().isZero(0.0));
    CHECK(kind_of([&] { project({0.0, 1.5}, phi); }) == ErrorKind::MisalignedCut);
}

TEST_CASE("projection properties: idempotent, self-adjoint, multiplicative on aligned windows")
{
    auto g = build_grid(2.0, 8, {1, 2, 1, 3, 1, 1, 2, 1});
    const auto edges = g->edges();
    for (std::size_t a = 0; a < edges.size(); ++a)
        for (std::size_t b = a; b < edges.size(); ++b) {
            const CMatrix p = projection_matrix(*g, {edges[a], edges[b]});
            CHECK((p * p - p).isZero(0.0));
            CHECK((p.adjoint() - p).isZero(0.0));
            for (std::size_t c = 0; c < edges.size(); ++c)
                for (std::size_t d = c; d < edges.size(); ++d) {
                    const CMatrix q = projection_matrix(*g, {edges[c], edges[d]});
                    const std::size_t lo = std::max(a, c), hi = std::min(b, d);
                    const CMatrix meet = lo <= hi ? projection_matrix(*g, {edges[lo], edges[hi]})
                                                  : CMatrix::Zero(p.rows(), p.cols());
                    CHECK((p * q - meet).isZero(0.0));
                }
        }
}

TEST_CASE("one_particle_hamiltonian: bin centers, commutes with projections")
{
    auto g = build_grid(3.0, 3, {1, 1, 1});
    const CMatrix h = one_particle_hamiltonian(*g);
    CHECK(std::abs(h(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(h(1, 1) - 1.5) < 1e-15);
    CHECK(std::abs(h(2, 2) - 2.5) < 1e-15);
    const CVector e0 = vec3(g, 1, 0, 0).coefficients();
    CHECK(std::abs(e0.dot(h * e0) - 0.5) < 1e-15);
    const CMatrix p = projection_matrix(*g, {0.0, 2.0});
    CHECK((h * p - p * h).isZero(0.0));
}

TEST_CASE("split: aligned cuts preserve bins")
{
    auto g = build_grid(3.0, 3, {1, 1, 1});
    auto [lo, hi] = split(*g, 1.0);
    CHECK(lo->mode_count() == 1);
    CHECK(hi->mode_count() == 2);
    CHECK(hi->lower() == doctest::Approx(1.0));

    auto [e, full] = split(*g, 0.0);
    CHECK(e->empty());
    CHECK(e->mode_count() == 0);
    CHECK(*full == *g);
    CHECK(kind_of([&] { split(*g, 1.5); }) == ErrorKind::MisalignedCut);
}

TEST_CASE("sampled inner products converge at least first order")
{
    // ∫_0^1 (1 + ω) e^{-ω} dω · conj? both real: ∫ (1+ω) cos(ω) dω
    const double exact = [] {
        // ∫_0^1 (1+ω)cos ω dω = [ (1+ω) sin ω + cos ω ]_0^1 = 2 sin 1 + cos 1 - 1
        return 2.0 * std::sin(1.0) + std::cos(1.0) - 1.0;
    }();
    std::vector<double> errors;
    for (std::size_t n : {4, 8, 16, 32}) {
        auto g = build_uniform_grid(1.0, n);
        auto f = sample_scalar(g, [](double w) { return cplx(1.0 + w); });
        auto h = sample_scalar(g, [](double w) { return cplx(std::cos(w)); });
        errors.push_back(std::abs(inner_product(f, h) - exact));
    }
    for (std::size_t i = 1; i < errors.size(); ++i)
        CHECK(std::log2(errors[i - 1] / errors[i]) >= 0.9);
}
