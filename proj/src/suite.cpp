#include "wicklab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <set>

#include "wicklab/error.hpp"
#include "wicklab/factorization.hpp"
#include "wicklab/fock_identities.hpp"
#include "wicklab/tensor_oracle.hpp"
#include "wicklab/unification.hpp"
#include "wicklab/wick_calculus.hpp"

namespace wicklab {

Command parse_command(const std::string& name)
{
    if (name == "verify")
        return Command::Verify;
    if (name == "converge")
        return Command::Converge;
    if (name == "ito-table")
        return Command::ItoTable;
    if (name == "xi")
        return Command::Xi;
    throw Error(ErrorKind::ConfigInvalid, "unknown command " + name);
}

std::string to_string(Command command)
{
    switch (command) {
    case Command::Verify:
        return "verify";
    case Command::Converge:
        return "converge";
    case Command::ItoTable:
        return "ito-table";
    case Command::Xi:
        return "xi";
    }
    return "verify";
}

namespace {

// Initial space dimension for the Wick checks.
constexpr Index wick_initial_dim = 2;
constexpr int random_pairs = 20;
constexpr int estimate_integrands = 100;

struct Context {
    const SuiteConfig& config;
    std::size_t bins;
    GridPtr grid;

    std::size_t modes() const { return grid->mode_count(); }
    std::size_t truncation() const { return config.truncation; }
    double omega_max() const { return grid->omega_max(); }

    Rng rng(const std::string& label) const
    {
        // FNV-1a of the label mixed with the suite seed and the bin count
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : label) {
            h ^= c;
            h *= 1099511628211ull;
        }
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                          static_cast<std::uint32_t>(bins)};
        return Rng(seq);
    }

    std::shared_ptr<const SpectralFockSpace> space(Index initial_dim = 1) const
    {
        return std::make_shared<const SpectralFockSpace>(grid, config.truncation, initial_dim, suite_dimension_cap);
    }
};

struct Outcome {
    double defect = 0;
    ordered_json parameters = ordered_json::object();
};

using CheckFn = std::function<Outcome(const Context&)>;

struct CheckDef {
    std::string name;
    CheckFn run;
};

struct SeriesDef {
    std::string name;
    double slope_min;
    double slope_max;
    ordered_json parameters;
    CheckFn run;
};

ordered_json vector_json(const CVector& v)
{
    ordered_json a = ordered_json::array();
    for (Index i = 0; i < v.size(); ++i)
        a.push_back(ordered_json::array({v(i).real(), v(i).imag()}));
    return a;
}

OneParticleVector smeared_phi(const GridPtr& g)
{
    return sample_scalar(g, [](double w) { return cplx((1.0 + w) * std::exp(-w)); });
}

OneParticleVector smeared_psi(const GridPtr& g)
{
    return sample_scalar(g, [](double w) { return cplx(std::cos(w), 0.5 * w); });
}

OneParticleVector uniform(const GridPtr& g) { return sample_scalar(g, [](double) { return cplx(1.0); }); }

const char* phi_label = "(1+w)exp(-w)";
const char* psi_label = "cos(w)+i w/2";

std::vector<double> all_cuts(const SpectralGrid& g) { return {g.edges().begin(), g.edges().end()}; }

const std::vector<Differential> differentials{Differential::Lambda, Differential::Create, Differential::Annihilate,
                                              Differential::Time};

std::string differential_name(Differential d)
{
    switch (d) {
    case Differential::Lambda:
        return "lambda";
    case Differential::Create:
        return "create";
    case Differential::Annihilate:
        return "annihilate";
    case Differential::Time:
        return "time";
    }
    return "";
}

std::string entry_name(Differential r, Differential c) { return differential_name(r) + "." + differential_name(c); }

// fock_core

Outcome check_oracle(const Context& ctx)
{
    const std::size_t d = std::min<std::size_t>(ctx.modes(), 3), m = std::min<std::size_t>(ctx.truncation(), 3);
    Rng rng = ctx.rng("oracle");
    const std::uint64_t seed = rng();
    Outcome o;
    o.defect = tensor_oracle_compare(d, m, seed).max();
    o.parameters = {{"modes", d}, {"truncation", m}, {"rng_seed", seed}};
    return o;
}

template <class Fn>
Outcome over_random_pairs(const Context& ctx, const std::string& label, std::size_t modes, Fn&& fn)
{
    Rng rng = ctx.rng(label);
    const double scale = 1.0 / std::sqrt(static_cast<double>(modes));
    Outcome o;
    ordered_json pairs = ordered_json::array();
    for (int i = 0; i < random_pairs; ++i) {
        const CVector f = random_vector(rng, static_cast<Index>(modes)) * scale;
        const CVector g = random_vector(rng, static_cast<Index>(modes)) * scale;
        o.defect = std::max(o.defect, fn(f, g));
        pairs.push_back({{"f", vector_json(f)}, {"g", vector_json(g)}});
    }
    o.parameters = {{"modes", modes}, {"truncation", ctx.truncation()}, {"pairs", std::move(pairs)}};
    return o;
}

Outcome check_ccr(const Context& ctx)
{
    auto b = enumerate_basis(Statistics::Bose, ctx.modes(), ctx.truncation(), suite_dimension_cap);
    return over_random_pairs(ctx, "ccr", ctx.modes(), [&](const CVector& f, const CVector& g) { return ccr_defect(b, f, g); });
}

Outcome check_car_intrinsic(const Context& ctx)
{
    const std::size_t m = std::min(ctx.truncation(), ctx.modes());
    auto b = enumerate_basis(Statistics::Fermi, ctx.modes(), m, suite_dimension_cap);
    auto o = over_random_pairs(ctx, "car-intrinsic", ctx.modes(),
                               [&](const CVector& f, const CVector& g) { return intrinsic_car_defect(b, f, g); });
    o.parameters["truncation"] = m;
    return o;
}

Outcome check_exponential(const Context& ctx, bool tail)
{
    auto b = enumerate_basis(Statistics::Bose, ctx.modes(), ctx.truncation(), suite_dimension_cap);
    return over_random_pairs(ctx, "exponential", ctx.modes(), [&](const CVector& f, const CVector& g) {
        const auto e = exponential_overlap(b, f, g);
        return tail ? std::max(0.0, e.tail_error - e.tail_bound) : std::abs(e.truncated - e.partial_sum);
    });
}

Outcome check_second_quantization(const Context& ctx, double SecondQuantizationDefects::*field)
{
    const std::size_t d = std::min<std::size_t>(ctx.modes(), 6);
    Rng rng = ctx.rng("second-quantization");
    const std::uint64_t seed = rng();
    Rng draw(seed);
    Outcome o;
    for (auto st : {Statistics::Bose, Statistics::Fermi}) {
        const std::size_t m = st == Statistics::Fermi ? std::min(ctx.truncation(), d) : ctx.truncation();
        const auto defects = second_quantization_defects(enumerate_basis(st, d, m), draw);
        o.defect = std::max(o.defect, defects.*field);
    }
    o.parameters = {{"modes", d}, {"truncation", ctx.truncation()}, {"rng_seed", seed}};
    return o;
}

Outcome check_factorization(const Context& ctx)
{
    auto b = enumerate_basis(Statistics::Bose, ctx.modes(), ctx.truncation(), suite_dimension_cap);
    Outcome o;
    for (std::size_t c = 0; c <= ctx.bins; ++c) {
        const auto d = factorization_defect(b, ctx.grid->mode_offset(c));
        o.defect = std::max({o.defect, d.isometry, d.fields});
    }
    o.parameters = {{"cuts", "all bin edges"}, {"truncation", ctx.truncation()}};
    return o;
}

// spectral_processes

Outcome check_adaptedness(const Context& ctx)
{
    const auto s = ctx.space();
    const auto phi = smeared_phi(ctx.grid);
    Outcome o;
    for (std::size_t c = 0; c <= ctx.bins; ++c)
        for (const auto& x : {s->create_at(phi, c), s->annihilate_at(phi, c), s->conserve_at(c), s->parity_at(c),
                              s->fermi_create_at(phi, c), s->fermi_annihilate_at(phi, c)})
            o.defect = std::max(o.defect, adaptedness_defect_at(*s, x, c));
    o.parameters = {{"phi", phi_label}, {"processes", "B+, B-, Lambda, J, F+, F-"}, {"cuts", "all bin edges"}};
    return o;
}

Outcome check_parity(const Context& ctx)
{
    const auto s = ctx.space();
    Outcome o;
    std::vector<SparseOperator> j;
    for (std::size_t c = 0; c <= ctx.bins; ++c)
        j.push_back(s->parity_at(c));
    for (std::size_t a = 0; a <= ctx.bins; ++a) {
        o.defect = std::max(o.defect, (j[a].apply(s->vacuum()) - s->vacuum()).norm());
        for (std::size_t b = a + 1; b <= ctx.bins; ++b)
            o.defect = std::max(o.defect, operator_norm(commutator(j[a], j[b])));
    }
    for (std::size_t bin = 0; bin < ctx.bins; ++bin)
        o.defect = std::max(o.defect, parity_recursion_defect(*s, bin).recursion);
    o.parameters = {{"parts", "commutation, vacuum invariance, recursion"}};
    return o;
}

Outcome check_parity_differential(const Context& ctx)
{
    const auto s = ctx.space();
    Outcome o;
    for (std::size_t bin = 0; bin < ctx.bins; ++bin)
        o.defect = std::max(o.defect, parity_recursion_defect(*s, bin).differential_low);
    o.parameters = {{"states", "occupation <= 1 in the bin"}};
    return o;
}

Outcome check_analytic_rule(const Context& ctx)
{
    const auto s = ctx.space();
    const auto f = [](double x) { return std::exp(cplx(0.0, 0.7 * x)) + 0.3 * x * x; };
    Outcome o;
    for (std::size_t bin = 0; bin < ctx.bins; ++bin) {
        const auto d = analytic_rule_defect(*s, f, bin);
        o.defect = std::max({o.defect, d.exact, d.increment_low});
    }
    o.parameters = {{"f", "exp(0.7 i x) + 0.3 x^2"}, {"states", "occupation <= 1 in the bin"}};
    return o;
}

Outcome check_parity_anticommutation(const Context& ctx)
{
    const auto s = ctx.space();
    const auto phi = smeared_phi(ctx.grid), psi = smeared_psi(ctx.grid);
    Outcome o;
    for (double omega : all_cuts(*ctx.grid))
        o.defect = std::max(o.defect, car_defect(*s, phi, psi, omega).parity);
    o.parameters = {{"phi", phi_label}, {"cuts", "all bin edges"}};
    return o;
}

Outcome check_car_closed_form(const Context& ctx)
{
    const auto s = ctx.space();
    const auto one = uniform(ctx.grid);
    const double measured = car_defect(*s, one, one, ctx.omega_max(), GradeWindow::exactly(1)).anticommutator;
    const double expected = 2.0 * ctx.grid->max_width();
    Outcome o;
    o.defect = std::abs(measured - expected);
    o.parameters = {{"phi", "1"}, {"grade", 1}, {"measured", measured}, {"closed_form", expected}};
    return o;
}

// wick_calculus

Outcome check_wick_route(const Context& ctx)
{
    const auto s = ctx.space(wick_initial_dim);
    Rng rng = ctx.rng("wick-route");
    const auto ig = random_integrand(s, rng);
    const auto panel = default_panel(*s);
    const long k = static_cast<long>(ctx.truncation()) - 1;
    Outcome o;
    for (double omega : all_cuts(*ctx.grid))
        o.defect = std::max(o.defect, route_defect(ig, panel, omega, k));
    o.parameters = {{"initial_dim", wick_initial_dim}, {"filter", k}, {"phi", vector_json(ig.phi.coefficients())},
                    {"psi", vector_json(ig.psi.coefficients())}};
    return o;
}

WickIntegrand annihilation_integrand(const SpacePtr& s)
{
    auto x = WickIntegrand::zero(s);
    x.x01 = AdaptedStepProcess::identity(s);
    x.psi = smeared_psi(s->grid());
    return x;
}

WickIntegrand creation_integrand(const SpacePtr& s)
{
    auto y = WickIntegrand::zero(s);
    y.x10 = AdaptedStepProcess::identity(s);
    y.phi = smeared_phi(s->grid());
    return y;
}

Outcome check_ito_abel(const Context& ctx)
{
    const auto s = ctx.space(wick_initial_dim);
    Rng rng = ctx.rng("ito-abel");
    const auto panel = default_panel(*s);
    const long k = static_cast<long>(ctx.truncation()) - 1;
    Outcome o;
    o.defect = ito_correction_defect(annihilation_integrand(s), creation_integrand(s), ctx.omega_max(), panel, k).abel;
    const auto x = random_integrand(s, rng), y = random_integrand(s, rng);
    o.defect = std::max(o.defect, ito_correction_defect(x, y, ctx.omega_max(), panel, k).abel);
    o.parameters = {{"pairs", "B- against B+, random against random"}, {"initial_dim", wick_initial_dim}};
    return o;
}

Outcome check_ito_entry(const Context& ctx, Differential r, Differential c)
{
    const auto phi = smeared_phi(ctx.grid), psi = smeared_psi(ctx.grid);
    const auto ket = sample_scalar(ctx.grid, [](double w) { return cplx(0.5 * w, -0.2); });
    Outcome o;
    for (std::size_t j : {std::size_t{0}, ctx.bins / 2, ctx.bins - 1}) {
        const auto p = ito_table_probe(*ctx.grid, r, c, j, phi, psi, ket);
        o.defect = std::max(o.defect, std::abs(p.empirical - p.predicted));
    }
    o.parameters = {{"bra", "vacuum"}, {"ket", "exponential of 0.5w - 0.2i"}, {"phi", phi_label}, {"psi", psi_label}};
    return o;
}

Outcome check_ito_exact(const Context& ctx)
{
    Outcome o;
    for (auto r : differentials)
        for (auto c : differentials)
            if (ito_entry_exact_on_vacuum(r, c))
                o.defect = std::max(o.defect, check_ito_entry(ctx, r, c).defect);
    o.parameters = check_ito_entry(ctx, Differential::Lambda, Differential::Lambda).parameters;
    o.parameters["entries"] = 12;
    return o;
}

Outcome check_ito_lambda_create(const Context& ctx)
{
    const auto s = ctx.space();
    auto x = WickIntegrand::zero(s);
    x.x11 = AdaptedStepProcess::identity(s);
    const ProbePanel vac{{CVector::Ones(1)}, {OneParticleVector::zero(ctx.grid)}};
    Outcome o;
    o.defect = ito_correction_defect(x, creation_integrand(s), ctx.omega_max(), vac,
                                     static_cast<long>(ctx.truncation()) - 1)
                   .deviation;
    o.parameters = {{"bra", "vacuum"}, {"phi", phi_label}};
    return o;
}

Outcome check_estimate(const Context& ctx)
{
    const auto s = ctx.space(wick_initial_dim);
    Rng rng = ctx.rng("estimate");
    const double scale = 1.0 / std::sqrt(static_cast<double>(ctx.modes()));
    Outcome o;
    int counterexamples = 0;
    double worst_ratio = 0;
    for (int t = 0; t < estimate_integrands; ++t) {
        const auto ig = random_integrand(s, rng);
        const CVector u = random_vector(rng, wick_initial_dim).normalized();
        const OneParticleVector f(ctx.grid, random_vector(rng, static_cast<Index>(ctx.modes())) * scale);
        const auto e = estimate_bound_check(ig, u, f, ctx.omega_max());
        if (e.lhs > e.rhs)
            ++counterexamples;
        o.defect = std::max(o.defect, e.lhs - e.rhs);
        if (e.rhs > 0)
            worst_ratio = std::max(worst_ratio, e.lhs / e.rhs);
    }
    o.parameters = {{"integrands", estimate_integrands},
                    {"counterexamples", counterexamples},
                    {"max_lhs_over_rhs", worst_ratio},
                    {"initial_dim", wick_initial_dim}};
    return o;
}

// unification

Outcome check_ordered_disjoint(const Context& ctx)
{
    const std::size_t n = std::min({std::size_t{3}, ctx.truncation(), ctx.bins});
    const auto s = ctx.space();
    Rng rng = ctx.rng("ordered-disjoint");
    std::vector<OneParticleVector> phis;
    ordered_json logged = ordered_json::array();
    // φ_i lives on the i-th block of bins; blocks are visited in reverse so both signs occur
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t first = i * ctx.bins / n, last = (i + 1) * ctx.bins / n;
        CVector c = CVector::Zero(static_cast<Index>(ctx.modes()));
        for (std::size_t m = ctx.grid->mode_offset(first); m < ctx.grid->mode_offset(last); ++m)
            c(static_cast<Index>(m)) = random_vector(rng, 1)(0);
        phis.emplace_back(ctx.grid, c);
        logged.push_back(vector_json(c));
    }
    Outcome o;
    for (auto dir : {ProductDirection::FermiFromBose, ProductDirection::BoseFromFermi})
        for (double omega : all_cuts(*ctx.grid))
            o.defect = std::max(o.defect, ordered_product_defect(*s, phis, omega, dir));
    o.parameters = {{"factors", n}, {"phis", std::move(logged)}, {"directions", "both"}};
    return o;
}

Outcome check_xi_isometry(const Context& ctx)
{
    const auto d = isometry_defect(build_xi(*ctx.grid, ctx.truncation(), suite_dimension_cap));
    Outcome o;
    o.defect = std::max(d.initial, d.final);
    o.parameters = {{"initial", d.initial}, {"final", d.final}};
    return o;
}

Outcome check_xi_covariance(const Context& ctx)
{
    const auto s = ctx.space();
    const auto xi = build_xi(*ctx.grid, ctx.truncation(), suite_dimension_cap);
    const auto phi = smeared_phi(ctx.grid);
    Outcome o;
    for (double omega : all_cuts(*ctx.grid)) {
        const auto d = field_covariance_defect(xi, *s, phi, omega);
        o.defect = std::max({o.defect, d.creation, d.annihilation});
    }
    o.parameters = {{"phi", phi_label}, {"cuts", "all bin edges"}};
    return o;
}

Outcome check_number_covariance(const Context& ctx)
{
    const auto xi = build_xi(*ctx.grid, ctx.truncation(), suite_dimension_cap);
    Outcome o;
    for (double omega : all_cuts(*ctx.grid))
        o.defect = std::max(o.defect, number_covariance_defect(xi, *ctx.grid, omega));
    o.parameters = {{"cuts", "all bin edges"}};
    return o;
}

Outcome check_xi_consistency(const Context& ctx)
{
    const std::size_t d = std::min<std::size_t>(ctx.modes(), 4), n = std::min<std::size_t>(ctx.truncation(), 3);
    auto g = build_uniform_grid(ctx.omega_max(), d);
    const SpectralFockSpace s(g, n);
    Outcome o;
    o.defect = xi_consistency_defect(s, n);
    o.parameters = {{"modes", d}, {"max_factors", n}};
    return o;
}

// convergence points

Outcome point_car_uniform(const Context& ctx)
{
    const auto one = uniform(ctx.grid);
    Outcome o;
    o.defect = car_defect(*ctx.space(), one, one, ctx.omega_max(), GradeWindow::exactly(1)).anticommutator;
    return o;
}

Outcome point_car_smeared(const Context& ctx)
{
    const auto phi = smeared_phi(ctx.grid);
    Outcome o;
    o.defect = car_defect(*ctx.space(), phi, phi, ctx.omega_max()).anticommutator;
    return o;
}

Outcome point_car_square(const Context& ctx)
{
    const auto phi = smeared_phi(ctx.grid);
    Outcome o;
    o.defect = car_defect(*ctx.space(), phi, phi, ctx.omega_max()).square;
    return o;
}

Outcome point_ordered_overlap(const Context& ctx, ProductDirection dir)
{
    const auto one = uniform(ctx.grid);
    Outcome o;
    o.defect = ordered_product_defect(*ctx.space(), {one, one}, ctx.omega_max(), dir);
    return o;
}

Outcome point_xi_leakage(const Context& ctx)
{
    const auto xi = build_xi(*ctx.grid, ctx.truncation(), suite_dimension_cap);
    Outcome o;
    o.defect = field_covariance_defect(xi, *ctx.space(), smeared_phi(ctx.grid), ctx.omega_max(),
                                       GradeWindow::up_to(ctx.truncation() - 1))
                   .leakage;
    return o;
}

struct ItoSmeared {
    OneParticleVector phi, psi, f, g;
};

ItoSmeared ito_smeared(const GridPtr& grid)
{
    return {sample_scalar(grid, [](double w) { return cplx(1.0 + w); }),
            sample_scalar(grid, [](double w) { return cplx(1.0, w); }),
            sample_scalar(grid, [](double w) { return cplx(0.5 + w * w); }),
            sample_scalar(grid, [](double w) { return cplx(0.8 - 0.3 * w); })};
}

const ordered_json ito_smeared_parameters = {
    {"phi", "1+w"}, {"psi", "1+iw"}, {"bra", "exponential of 0.5+w^2"}, {"ket", "exponential of 0.8-0.3w"},
    {"bin", "N/2"}};

Outcome point_ito_entry(const Context& ctx, Differential r, Differential c)
{
    const auto v = ito_smeared(ctx.grid);
    const auto p = ito_table_probe(*ctx.grid, r, c, ctx.bins / 2, v.phi, v.psi, v.f, v.g);
    Outcome o;
    o.defect = std::abs(p.empirical - p.predicted);
    return o;
}

Outcome point_ito_null(const Context& ctx)
{
    Outcome o;
    for (auto r : differentials)
        for (auto c : differentials)
            if (ito_entry_is_null(r, c))
                o.defect = std::max(o.defect, point_ito_entry(ctx, r, c).defect);
    return o;
}

Outcome point_ito_correction(const Context& ctx)
{
    const auto s = ctx.space(wick_initial_dim);
    Outcome o;
    o.defect = ito_correction_defect(annihilation_integrand(s), creation_integrand(s), ctx.omega_max(),
                                     default_panel(*s), static_cast<long>(ctx.truncation()) - 1)
                   .deviation;
    return o;
}

std::vector<CheckDef> verify_checks()
{
    return {
        {"analytic-rule", check_analytic_rule},
        {"adaptedness", check_adaptedness},
        {"car-closed-form", check_car_closed_form},
        {"car-intrinsic", check_car_intrinsic},
        {"ccr", check_ccr},
        {"exponential-partial-sum", [](const Context& c) { return check_exponential(c, false); }},
        {"exponential-tail", [](const Context& c) { return check_exponential(c, true); }},
        {"factorization", check_factorization},
        {"gamma-covariance",
         [](const Context& c) { return check_second_quantization(c, &SecondQuantizationDefects::covariance); }},
        {"gamma-exponential",
         [](const Context& c) { return check_second_quantization(c, &SecondQuantizationDefects::exponential); }},
        {"gamma-multiplicative",
         [](const Context& c) { return check_second_quantization(c, &SecondQuantizationDefects::multiplicative); }},
        {"gamma-rank-one",
         [](const Context& c) { return check_second_quantization(c, &SecondQuantizationDefects::rank_one); }},
        {"estimate", check_estimate},
        {"ito-abel", check_ito_abel},
        {"ito-exact", check_ito_exact},
        {"ito-lambda-create", check_ito_lambda_create},
        {"number-covariance", check_number_covariance},
        {"oracle", check_oracle},
        {"ordered-disjoint", check_ordered_disjoint},
        {"parity", check_parity},
        {"parity-anticommutation", check_parity_anticommutation},
        {"parity-differential", check_parity_differential},
        {"wick-route", check_wick_route},
        {"xi-consistency", check_xi_consistency},
        {"xi-covariance", check_xi_covariance},
        {"xi-isometry", check_xi_isometry},
    };
}

std::vector<SeriesDef> converge_series()
{
    return {
        {"car-smeared", 0.8, 1.2, {{"phi", phi_label}, {"grades", "<= M-1"}}, point_car_smeared},
        {"car-square", 0.3, 0.7, {{"phi", phi_label}, {"grades", "inputs <= M-2"}}, point_car_square},
        {"car-uniform", 0.8, 1.2, {{"phi", "1"}, {"grade", 1}}, point_car_uniform},
        {"ito-correction", 0.8, 1.2, {{"pair", "B- against B+"}, {"phi", phi_label}, {"psi", psi_label}},
         point_ito_correction},
        {"ito-null-pairs", 1.8, 2.3, ito_smeared_parameters, point_ito_null},
        {"ordered-overlap-bose", 0.3, 0.7, {{"phis", "1, 1"}, {"direction", "bose from fermi"}},
         [](const Context& c) { return point_ordered_overlap(c, ProductDirection::BoseFromFermi); }},
        {"ordered-overlap-fermi", 0.3, 0.7, {{"phis", "1, 1"}, {"direction", "fermi from bose"}},
         [](const Context& c) { return point_ordered_overlap(c, ProductDirection::FermiFromBose); }},
        {"xi-leakage", 0.3, 0.7, {{"phi", phi_label}, {"grades", "<= M-1"}}, point_xi_leakage},
    };
}

std::vector<CheckDef> ito_checks()
{
    std::vector<CheckDef> out;
    for (auto r : differentials)
        for (auto c : differentials)
            if (ito_entry_exact_on_vacuum(r, c))
                out.push_back({"ito-exact." + entry_name(r, c), [r, c](const Context& ctx) { return check_ito_entry(ctx, r, c); }});
    return out;
}

std::vector<SeriesDef> ito_series()
{
    std::vector<SeriesDef> out;
    for (auto r : differentials)
        for (auto c : differentials) {
            ordered_json p = ito_smeared_parameters;
            p["null"] = ito_entry_is_null(r, c);
            out.push_back({"ito." + entry_name(r, c), 1.8, 2.3, p,
                           [r, c](const Context& ctx) { return point_ito_entry(ctx, r, c); }});
        }
    return out;
}

std::vector<CheckDef> xi_checks()
{
    return {
        {"number-covariance", check_number_covariance}, {"ordered-disjoint", check_ordered_disjoint},
        {"xi-consistency", check_xi_consistency},       {"xi-covariance", check_xi_covariance},
        {"xi-isometry", check_xi_isometry},
    };
}

std::vector<SeriesDef> xi_series()
{
    std::vector<SeriesDef> out;
    for (auto& s : converge_series())
        if (s.name.starts_with("xi-") || s.name.starts_with("ordered-"))
            out.push_back(std::move(s));
    return out;
}

std::vector<CheckDef> checks_of(Command command)
{
    switch (command) {
    case Command::Verify:
        return verify_checks();
    case Command::ItoTable:
        return ito_checks();
    case Command::Xi:
        return xi_checks();
    case Command::Converge:
        return {};
    }
    return {};
}

std::vector<SeriesDef> series_of(Command command)
{
    switch (command) {
    case Command::Converge:
        return converge_series();
    case Command::ItoTable:
        return ito_series();
    case Command::Xi:
        return xi_series();
    case Command::Verify:
        return {};
    }
    return {};
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

std::vector<std::size_t> dims_for(const SuiteConfig& c, std::size_t bins)
{
    return c.internal_dims.size() == 1 ? std::vector<std::size_t>(bins, c.internal_dims[0]) : c.internal_dims;
}

template <class T>
T get_as(const nlohmann::json& v, const std::string& key)
{
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        invalid("config key " + key + " has the wrong type");
    }
}

std::vector<std::size_t> size_list(const nlohmann::json& v, const std::string& key)
{
    if (v.is_number_unsigned())
        return {v.get<std::size_t>()};
    if (v.is_array()) {
        std::vector<std::size_t> out;
        for (const auto& x : v) {
            if (!x.is_number_unsigned())
                invalid("config key " + key + " must hold non-negative integers");
            out.push_back(x.get<std::size_t>());
        }
        return out;
    }
    invalid("config key " + key + " must be an integer or a list of integers");
}

ReportFormat parse_format(const std::string& s)
{
    if (s == "json")
        return ReportFormat::Json;
    if (s == "csv")
        return ReportFormat::Csv;
    invalid("format must be json or csv");
}

ordered_json config_json(Command command, const SuiteConfig& c)
{
    ordered_json j;
    j["command"] = to_string(command);
    j["bins"] = c.bins;
    j["omega-max"] = c.omega_max;
    j["internal-dims"] = c.internal_dims;
    j["truncation"] = c.truncation;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance;
    j["checks"] = c.checks;
    return j;
}

} // namespace

void apply_config_json(SuiteConfig& config, const nlohmann::json& json)
{
    if (!json.is_object())
        invalid("config file must hold a JSON object");
    for (auto it = json.begin(); it != json.end(); ++it) {
        const std::string& key = it.key();
        const auto& v = it.value();
        if (key == "bins")
            config.bins = size_list(v, key);
        else if (key == "omega-max") {
            if (!v.is_number())
                invalid("omega-max must be a number");
            config.omega_max = v.get<double>();
        } else if (key == "internal-dims")
            config.internal_dims = size_list(v, key);
        else if (key == "truncation") {
            if (!v.is_number_unsigned())
                invalid("truncation must be a non-negative integer");
            config.truncation = v.get<std::size_t>();
        } else if (key == "seed") {
            if (!v.is_number_unsigned())
                invalid("seed must be a non-negative integer");
            config.seed = v.get<std::uint64_t>();
        } else if (key == "tolerance") {
            if (!v.is_number())
                invalid("tolerance must be a number");
            config.tolerance = v.get<double>();
        } else if (key == "checks")
            config.checks = get_as<std::vector<std::string>>(v, key);
        else if (key == "out")
            config.out = get_as<std::string>(v, key);
        else if (key == "format")
            config.format = parse_format(get_as<std::string>(v, key));
        else
            invalid("unknown config key " + key);
    }
}

SuiteConfig load_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        invalid("cannot read config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        invalid("config file " + path + " is not valid JSON: " + e.what());
    }
    SuiteConfig c;
    apply_config_json(c, j);
    return c;
}

std::vector<std::string> available_checks(Command command)
{
    std::vector<std::string> out;
    for (const auto& c : checks_of(command))
        out.push_back(c.name);
    for (const auto& s : series_of(command))
        out.push_back(s.name);
    std::sort(out.begin(), out.end());
    return out;
}

SuiteConfig resolve_config(Command command, SuiteConfig c)
{
    if (c.bins.empty())
        c.bins = command == Command::Verify ? std::vector<std::size_t>{8} : std::vector<std::size_t>{4, 8, 16, 32};
    if (c.internal_dims.empty())
        c.internal_dims = {1};
    if (!std::isfinite(c.omega_max) || c.omega_max <= 0)
        invalid("omega-max must be positive and finite");
    for (std::size_t i = 0; i < c.bins.size(); ++i) {
        if (c.bins[i] == 0)
            invalid("bins must be positive");
        if (i > 0 && c.bins[i] <= c.bins[i - 1])
            invalid("bins must be strictly increasing");
    }
    if (command == Command::Converge && c.bins.size() < 3)
        invalid("converge needs at least three bin counts");
    for (std::size_t d : c.internal_dims)
        if (d == 0)
            invalid("internal-dims must be positive");
    if (c.internal_dims.size() > 1 && (c.bins.size() != 1 || c.internal_dims.size() != c.bins[0]))
        invalid("a list of internal-dims needs a single bin count of the same length");
    const std::size_t min_truncation = command == Command::Verify || command == Command::ItoTable ? 1 : 2;
    if (c.truncation < min_truncation || c.truncation > 255)
        invalid("truncation must lie in [" + std::to_string(min_truncation) + ", 255]");
    if (!std::isfinite(c.tolerance) || c.tolerance < 0)
        invalid("tolerance must be non-negative and finite");

    const auto names = available_checks(command);
    if (c.checks.empty())
        c.checks = names;
    std::set<std::string> seen;
    for (const auto& name : c.checks) {
        if (!std::binary_search(names.begin(), names.end(), name))
            invalid("unknown check " + name + " for " + to_string(command));
        if (!seen.insert(name).second)
            invalid("check " + name + " listed twice");
    }
    std::sort(c.checks.begin(), c.checks.end());

    for (std::size_t n : c.bins) {
        std::size_t modes = 0;
        for (std::size_t d : dims_for(c, n))
            modes += d;
        if (fock_dimension(Statistics::Bose, modes, c.truncation) > suite_dimension_cap)
            throw Error(ErrorKind::SizeOverflow, "Fock dimension at N=" + std::to_string(n) + " exceeds " +
                                                     std::to_string(suite_dimension_cap));
    }
    return c;
}

Report run_suite(Command command, const SuiteConfig& raw)
{
    const SuiteConfig c = resolve_config(command, raw);
    const std::set<std::string> selected(c.checks.begin(), c.checks.end());
    Report report;
    report.config = config_json(command, c);

    for (const auto& def : checks_of(command)) {
        if (!selected.count(def.name))
            continue;
        for (std::size_t n : c.bins) {
            const Context ctx{c, n, build_grid(c.omega_max, n, dims_for(c, n))};
            const auto start = std::chrono::steady_clock::now();
            Outcome o = def.run(ctx);
            CheckResult r;
            r.name = def.name;
            r.parameters = std::move(o.parameters);
            r.bins = n;
            r.delta_omega = ctx.grid->max_width();
            r.defect = o.defect;
            r.tolerance = c.tolerance;
            r.pass = o.defect <= c.tolerance;
            r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            report.checks.push_back(std::move(r));
        }
    }
    for (const auto& def : series_of(command)) {
        if (!selected.count(def.name))
            continue;
        ConvergenceSeries s;
        s.name = def.name;
        s.parameters = def.parameters;
        s.slope_min = def.slope_min;
        s.slope_max = def.slope_max;
        for (std::size_t n : c.bins) {
            const Context ctx{c, n, build_grid(c.omega_max, n, dims_for(c, n))};
            s.points.push_back({n, ctx.grid->max_width(), def.run(ctx).defect});
        }
        s.finalize();
        report.convergence.push_back(std::move(s));
    }
    auto by_name = [](const auto& a, const auto& b) { return a.name < b.name; };
    std::stable_sort(report.checks.begin(), report.checks.end(), by_name);
    std::stable_sort(report.convergence.begin(), report.convergence.end(), by_name);
    return report;
}

Report run_verify(const SuiteConfig& config) { return run_suite(Command::Verify, config); }
Report run_converge(const SuiteConfig& config) { return run_suite(Command::Converge, config); }
Report run_ito_table(const SuiteConfig& config) { return run_suite(Command::ItoTable, config); }
Report run_xi(const SuiteConfig& config) { return run_suite(Command::Xi, config); }

} // namespace wicklab
