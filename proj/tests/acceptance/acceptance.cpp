// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dense_modes.hpp"
#include "wicklab/factorization.hpp"
#include "wicklab/fock_identities.hpp"
#include "wicklab/suite.hpp"
#include "wicklab/tensor_oracle.hpp"
#include "wicklab/unification.hpp"
#include "wicklab/wick_calculus.hpp"

using namespace wicklab;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what, double value)
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s=%.3g", detail.empty() ? "" : ", ", what.c_str(), value);
        detail += buf;
        if (!ok) {
            pass = false;
            detail += "(!)";
        }
    }
};

const std::vector<std::size_t> sweep{4, 8, 16, 32};

std::vector<double> sweep_widths()
{
    std::vector<double> dw;
    for (std::size_t n : sweep)
        dw.push_back(1.0 / static_cast<double>(n));
    return dw;
}

double slope_of(const std::vector<double>& y) { return fit_slope(sweep_widths(), y).slope; }

OneParticleVector uniform(const GridPtr& g) { return sample_scalar(g, [](double) { return cplx(1.0); }); }

OneParticleVector smeared(const GridPtr& g)
{
    return sample_scalar(g, [](double w) { return cplx((1.0 + w) * std::exp(-w)); });
}

std::vector<double> edges_of(const SpectralGrid& g) { return {g.edges().begin(), g.edges().end()}; }

const std::vector<Differential> differentials{Differential::Lambda, Differential::Create, Differential::Annihilate,
                                              Differential::Time};

Verdict oracle_equivalence()
{
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (std::size_t d = 1; d <= 3; ++d)
        for (std::size_t n = 1; n <= 3; ++n)
            worst = std::max(worst, tensor_oracle_compare(d, n, 100 + 10 * d + n).max());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(worst <= 1e-12, "max defect", worst);
    v.require(secs < 5.0, "seconds", secs);
    return v;
}

Verdict ccr()
{
    Verdict v;
    Rng rng(2);
    auto b = enumerate_basis(Statistics::Bose, 6, 3);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const CVector f = random_vector(rng, 6), g = random_vector(rng, 6);
        worst = std::max(worst, ccr_defect(b, f, g));
    }
    v.require(worst <= 1e-10, "max defect over 20 pairs", worst);
    return v;
}

Verdict car_intrinsic()
{
    Verdict v;
    Rng rng(3);
    auto b = enumerate_basis(Statistics::Fermi, 6, 6);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const CVector f = random_vector(rng, 6), g = random_vector(rng, 6);
        worst = std::max(worst, intrinsic_car_defect(b, f, g));
    }
    v.require(worst <= 1e-12, "max defect", worst);
    return v;
}

Verdict exponential_vectors()
{
    Verdict v;
    Rng rng(4);
    auto b = enumerate_basis(Statistics::Bose, 4, 4);
    double partial = 0, excess = -1e300;
    for (int i = 0; i < 20; ++i) {
        const CVector f = random_vector(rng, 4) * 0.5, g = random_vector(rng, 4) * 0.5;
        const auto e = exponential_overlap(b, f, g);
        partial = std::max(partial, std::abs(e.truncated - e.partial_sum));
        excess = std::max(excess, e.tail_error - e.tail_bound);
    }
    v.require(partial <= 1e-12, "partial-sum defect", partial);
    v.require(excess < 0, "max(error - tail bound)", excess);
    return v;
}

Verdict second_quantization()
{
    Verdict v;
    Rng rng(5);
    SecondQuantizationDefects worst;
    for (auto st : {Statistics::Bose, Statistics::Fermi})
        for (std::size_t d = 1; d <= 4; ++d)
            for (std::size_t m = 1; m <= 3; ++m) {
                if (st == Statistics::Fermi && m > d)
                    continue;
                const auto x = second_quantization_defects(enumerate_basis(st, d, m), rng);
                worst.multiplicative = std::max(worst.multiplicative, x.multiplicative);
                worst.exponential = std::max(worst.exponential, x.exponential);
                worst.covariance = std::max(worst.covariance, x.covariance);
                worst.rank_one = std::max(worst.rank_one, x.rank_one);
            }
    v.require(worst.multiplicative <= 1e-10, "Gamma(UV)", worst.multiplicative);
    v.require(worst.exponential <= 1e-8, "exponential", worst.exponential);
    v.require(worst.covariance <= 1e-10, "covariance", worst.covariance);
    v.require(worst.rank_one <= 1e-12, "rank-one", worst.rank_one);
    return v;
}

Verdict factorization()
{
    Verdict v;
    double worst = 0;
    for (std::size_t d = 1; d <= 6; ++d) {
        auto b = enumerate_basis(Statistics::Bose, d, 3);
        for (std::size_t cut = 0; cut <= d; ++cut) {
            const auto x = factorization_defect(b, cut);
            worst = std::max({worst, x.isometry, x.fields});
        }
    }
    v.require(worst <= 1e-12, "max defect", worst);
    return v;
}

Verdict ito_table()
{
    Verdict v;
    auto g8 = build_uniform_grid(1.0, 8);
    const auto phi = sample_scalar(g8, [](double w) { return cplx(1.0 + w, 0.3); });
    const auto psi = sample_scalar(g8, [](double w) { return cplx(std::cos(w)); });
    const auto ket = sample_scalar(g8, [](double w) { return cplx(0.5 * w, -0.2); });
    double exact = 0;
    for (auto r : differentials)
        for (auto c : differentials)
            if (ito_entry_exact_on_vacuum(r, c))
                for (std::size_t j = 0; j < 8; ++j) {
                    const auto p = ito_table_probe(*g8, r, c, j, phi, psi, ket);
                    exact = std::max(exact, std::abs(p.empirical - p.predicted));
                }
    v.require(exact <= 1e-12, "exact entries", exact);

    double min_slope = 1e300;
    for (auto r : differentials)
        for (auto c : differentials) {
            if (!ito_entry_is_null(r, c))
                continue;
            std::vector<double> defects;
            for (std::size_t n : sweep) {
                auto g = build_uniform_grid(1.0, n);
                const auto p = ito_table_probe(*g, r, c, n / 2, sample_scalar(g, [](double w) { return cplx(1.0 + w); }),
                                               sample_scalar(g, [](double w) { return cplx(1.0, w); }),
                                               sample_scalar(g, [](double w) { return cplx(0.5 + w * w); }),
                                               sample_scalar(g, [](double w) { return cplx(0.8 - 0.3 * w); }));
                defects.push_back(std::abs(p.empirical - p.predicted));
            }
            min_slope = std::min(min_slope, slope_of(defects));
        }
    v.require(min_slope >= 1.8, "min null-entry slope (12 entries)", min_slope);
    return v;
}

Verdict ito_correction()
{
    Verdict v;
    double abel = 0;
    std::vector<double> deviation;
    for (std::size_t n : sweep) {
        auto s = std::make_shared<const SpectralFockSpace>(build_uniform_grid(1.0, n), 3, 2);
        auto x = WickIntegrand::zero(s);
        x.x01 = AdaptedStepProcess::identity(s);
        x.psi = sample_scalar(s->grid(), [](double w) { return cplx(1.0, w); });
        auto y = WickIntegrand::zero(s);
        y.x10 = AdaptedStepProcess::identity(s);
        y.phi = sample_scalar(s->grid(), [](double w) { return cplx(1.0 + w); });
        const auto c = ito_correction_defect(x, y, 1.0, default_panel(*s), 2);
        abel = std::max(abel, c.abel);
        deviation.push_back(c.deviation);
    }
    v.require(abel <= 1e-12, "Abel identity", abel);
    const double slope = slope_of(deviation);
    v.require(slope >= 0.8 && slope <= 1.2, "B-/B+ slope", slope);
    return v;
}

Verdict estimate()
{
    Verdict v;
    auto s = std::make_shared<const SpectralFockSpace>(build_uniform_grid(1.0, 8), 2, 2);
    Rng rng(9);
    int counterexamples = 0;
    for (int t = 0; t < 100; ++t) {
        const auto ig = random_integrand(s, rng);
        const CVector u = random_vector(rng, 2).normalized();
        const OneParticleVector f(s->grid(), random_vector(rng, 8) * std::sqrt(1.0 / 8.0));
        const auto e = estimate_bound_check(ig, u, f, 1.0);
        counterexamples += e.lhs > e.rhs ? 1 : 0;
    }
    v.require(counterexamples == 0, "counterexamples of 100", counterexamples);
    return v;
}

Verdict parity_process()
{
    Verdict v;
    const SpectralFockSpace s(build_grid(1.0, 6, {1, 2, 1, 1, 2, 1}), 3);
    double comm = 0, vac = 0, rec = 0;
    for (std::size_t a = 0; a <= 6; ++a) {
        vac = std::max(vac, (s.parity_at(a).apply(s.vacuum()) - s.vacuum()).norm());
        for (std::size_t b = 0; b <= 6; ++b)
            comm = std::max(comm, operator_norm(commutator(s.parity_at(a), s.parity_at(b))));
    }
    for (std::size_t j = 0; j < 6; ++j)
        rec = std::max(rec, parity_recursion_defect(s, j).recursion);
    v.require(comm <= 1e-12, "commutation", comm);
    v.require(vac <= 1e-12, "vacuum", vac);
    v.require(rec <= 1e-12, "recursion", rec);
    return v;
}

Verdict parity_anticommutation()
{
    Verdict v;
    auto g = build_grid(1.0, 6, {1, 2, 1, 1, 2, 1});
    const SpectralFockSpace s(g, 3);
    const auto phi = smeared(g);
    double worst = 0;
    for (double omega : edges_of(*g))
        worst = std::max(worst, car_defect(s, phi, phi, omega).parity);
    v.require(worst <= 1e-12, "max defect over cuts", worst);
    return v;
}

// Dense Jordan-Wigner fields on per-mode oscillators, one-particle block.
double dense_uniform_car_defect(std::size_t n)
{
    const testing::DenseModes dm(n, 2);
    const double c = std::sqrt(1.0 / static_cast<double>(n));
    CMatrix fp = CMatrix::Zero(dm.dimension(), dm.dimension());
    for (std::size_t m = 0; m < n; ++m)
        fp += c * dm.parity_before(m) * dm.raising(m);
    const CMatrix fm = fp.adjoint();
    const CMatrix anti = fm * fp + fp * fm - CMatrix::Identity(dm.dimension(), dm.dimension());
    auto b = enumerate_basis(Statistics::Bose, n, 2);
    const CMatrix e = dm.embed(*b).middleCols(b->grade_begin(1), b->grade_end(1) - b->grade_begin(1));
    return (e.adjoint() * anti * e).jacobiSvd().singularValues()(0);
}

Verdict car_defect_rates()
{
    Verdict v;
    double oracle = 0;
    for (std::size_t n : {2, 3, 4})
        oracle = std::max(oracle, std::abs(dense_uniform_car_defect(n) - 2.0 / static_cast<double>(n)));
    v.require(oracle <= 1e-12, "dense oracle vs 2/N", oracle);

    double closed = 0;
    std::vector<double> smeared_defects;
    for (std::size_t n : sweep) {
        auto g = build_uniform_grid(1.0, n);
        const SpectralFockSpace s(g, 3);
        const auto one = uniform(g);
        closed = std::max(closed, std::abs(car_defect(s, one, one, 1.0, GradeWindow::exactly(1)).anticommutator -
                                           2.0 / static_cast<double>(n)));
        const auto phi = smeared(g);
        smeared_defects.push_back(car_defect(s, phi, phi, 1.0).anticommutator);
    }
    v.require(closed <= 1e-12, "uniform vs 2/N", closed);
    const double slope = slope_of(smeared_defects);
    v.require(std::abs(slope - 1.0) <= 0.2, "smeared slope", slope);
    return v;
}

Verdict ordered_products()
{
    Verdict v;
    auto g = build_grid(1.0, 6, {1, 2, 1, 1, 2, 1});
    const SpectralFockSpace s(g, 3);
    Rng rng(13);
    auto on_bins = [&](std::size_t lo, std::size_t hi) {
        CVector c = CVector::Zero(static_cast<Index>(g->mode_count()));
        for (std::size_t m = g->mode_offset(lo); m < g->mode_offset(hi); ++m)
            c(static_cast<Index>(m)) = random_vector(rng, 1)(0);
        return OneParticleVector(g, c);
    };
    const std::vector<OneParticleVector> phis{on_bins(4, 6), on_bins(0, 2), on_bins(2, 4)};
    double disjoint = 0;
    for (auto dir : {ProductDirection::FermiFromBose, ProductDirection::BoseFromFermi})
        for (double omega : edges_of(*g))
            disjoint = std::max(disjoint, ordered_product_defect(s, phis, omega, dir));
    v.require(disjoint <= 1e-12, "disjoint supports", disjoint);

    for (auto dir : {ProductDirection::FermiFromBose, ProductDirection::BoseFromFermi}) {
        std::vector<double> overlap;
        for (std::size_t n : sweep) {
            auto gn = build_uniform_grid(1.0, n);
            const SpectralFockSpace sn(gn, 3);
            const auto a = smeared(gn);
            const auto b = sample_scalar(gn, [](double w) { return cplx(1.0, w); });
            overlap.push_back(ordered_product_defect(sn, {a, b}, 1.0, dir));
        }
        const double slope = slope_of(overlap);
        v.require(std::abs(slope - 0.5) <= 0.2,
                  dir == ProductDirection::FermiFromBose ? "fermi-from-bose slope" : "bose-from-fermi slope", slope);
    }
    return v;
}

Verdict xi_map()
{
    Verdict v;
    auto g = build_grid(1.0, 4, {1, 2, 1, 2});
    const SpectralFockSpace s(g, 3);
    const XiMap xi = build_xi(*g, 3);
    const auto iso = isometry_defect(xi);
    v.require(std::max(iso.initial, iso.final) <= 1e-12, "partial isometry", std::max(iso.initial, iso.final));
    double cov = 0;
    for (double omega : edges_of(*g)) {
        const auto d = field_covariance_defect(xi, s, smeared(g), omega);
        cov = std::max({cov, d.creation, d.annihilation});
    }
    v.require(cov <= 1e-12, "field covariance", cov);
    std::vector<double> leak;
    for (std::size_t n : sweep) {
        auto gn = build_uniform_grid(1.0, n);
        const SpectralFockSpace sn(gn, 3);
        leak.push_back(field_covariance_defect(build_xi(*gn, 3), sn, smeared(gn), 1.0).leakage);
    }
    const double slope = slope_of(leak);
    v.require(std::abs(slope - 0.5) <= 0.2, "leakage slope", slope);
    return v;
}

Verdict number_covariance()
{
    Verdict v;
    auto g = build_grid(1.0, 5, {2, 1, 1, 2, 1});
    const XiMap xi = build_xi(*g, 3);
    double worst = 0;
    for (double omega : edges_of(*g))
        worst = std::max(worst, number_covariance_defect(xi, *g, omega));
    v.require(worst <= 1e-12, "max defect over cuts", worst);
    return v;
}

Verdict end_to_end()
{
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const Report a = run_verify({});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Report b = run_verify({});
    v.require(a.all_pass(), "default suite passes", a.all_pass() ? 1 : 0);
    v.require(secs <= 60.0, "seconds", secs);
    const bool same_json = render_json(a) == render_json(b);
    const bool same_csv = render_csv(a) == render_csv(b);
    v.require(same_json && same_csv, "byte-identical reports", same_json && same_csv ? 1 : 0);
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"CCR on truncated Bose space", ccr},
        {"CAR for intrinsic Fermi fields", car_intrinsic},
        {"exponential vectors", exponential_vectors},
        {"second-quantization laws", second_quantization},
        {"factorization", factorization},
        {"Ito table", ito_table},
        {"Ito correction", ito_correction},
        {"a-priori estimate", estimate},
        {"parity process", parity_process},
        {"parity anticommutation", parity_anticommutation},
        {"CAR defect of Jordan-Wigner fields", car_defect_rates},
        {"ordered products", ordered_products},
        {"Xi partial isometry", xi_map},
        {"number covariance", number_covariance},
        {"end-to-end verify", end_to_end},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
