#include "wicklab/tensor_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wicklab/error.hpp"
#include "wicklab/fock_operators.hpp"
#include "wicklab/random.hpp"

namespace wicklab {

namespace {

Index ipow(Index base, std::size_t e)
{
    Index r = 1;
    for (std::size_t i = 0; i < e; ++i)
        r *= base;
    return r;
}

double factorial(std::size_t n)
{
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k)
        f *= double(k);
    return f;
}

int permutation_sign(const std::vector<std::size_t>& p)
{
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j])
                ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Flat index inside grade k of the product vector e_{i1} ⊗ ... ⊗ e_{ik}.
Index tensor_index(const std::vector<std::size_t>& slots, std::size_t modes)
{
    Index x = 0;
    for (auto s : slots)
        x = x * static_cast<Index>(modes) + static_cast<Index>(s);
    return x;
}

std::vector<std::size_t> tensor_slots(Index x, std::size_t k, std::size_t modes)
{
    std::vector<std::size_t> slots(k);
    for (std::size_t t = k; t-- > 0;) {
        slots[t] = static_cast<std::size_t>(x % static_cast<Index>(modes));
        x /= static_cast<Index>(modes);
    }
    return slots;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace

TensorSpace::TensorSpace(std::size_t modes, std::size_t n_max) : modes_(modes), n_max_(n_max)
{
    offsets_.push_back(0);
    for (std::size_t k = 0; k <= n_max; ++k)
        offsets_.push_back(offsets_.back() + ipow(static_cast<Index>(modes), k));
}

CMatrix TensorSpace::creation(const CVector& h) const
{
    CMatrix a = CMatrix::Zero(dimension(), dimension());
    const auto d = static_cast<Index>(modes_);
    for (std::size_t k = 0; k < n_max_; ++k) {
        const Index block = ipow(d, k);
        const double amp = std::sqrt(double(k + 1));
        for (Index x = 0; x < block; ++x)
            for (Index i = 0; i < d; ++i)
                a(offsets_[k + 1] + i * block + x, offsets_[k] + x) = amp * h(i);
    }
    return a;
}

CMatrix TensorSpace::annihilation(const CVector& h) const
{
    return creation(h).adjoint();
}

CMatrix TensorSpace::second_quantization(const CMatrix& u) const
{
    CMatrix g = CMatrix::Zero(dimension(), dimension());
    g(0, 0) = 1.0;
    CMatrix power = CMatrix::Identity(1, 1);
    for (std::size_t k = 1; k <= n_max_; ++k) {
        CMatrix next(power.rows() * u.rows(), power.cols() * u.cols());
        for (Index i = 0; i < power.rows(); ++i)
            for (Index j = 0; j < power.cols(); ++j)
                next.block(i * u.rows(), j * u.cols(), u.rows(), u.cols()) = power(i, j) * u;
        power = std::move(next);
        g.block(offsets_[k], offsets_[k], power.rows(), power.cols()) = power;
    }
    return g;
}

CMatrix TensorSpace::differential_second_quantization(const CMatrix& h) const
{
    CMatrix g = CMatrix::Zero(dimension(), dimension());
    const auto d = static_cast<Index>(modes_);
    for (std::size_t k = 1; k <= n_max_; ++k) {
        const Index block = ipow(d, k);
        for (Index x = 0; x < block; ++x) {
            const auto slots = tensor_slots(x, k, modes_);
            for (std::size_t t = 0; t < k; ++t) {
                auto out = slots;
                for (Index p = 0; p < d; ++p) {
                    out[t] = static_cast<std::size_t>(p);
                    g(offsets_[k] + tensor_index(out, modes_), offsets_[k] + x) +=
                        h(p, static_cast<Index>(slots[t]));
                }
            }
        }
    }
    return g;
}

CMatrix TensorSpace::symmetrizer(Statistics stats) const
{
    CMatrix p = CMatrix::Zero(dimension(), dimension());
    p(0, 0) = 1.0;
    const auto d = static_cast<Index>(modes_);
    for (std::size_t k = 1; k <= n_max_; ++k) {
        const Index block = ipow(d, k);
        const double weight = 1.0 / factorial(k);
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            const double sign = (stats == Statistics::Fermi) ? permutation_sign(perm) : 1.0;
            for (Index x = 0; x < block; ++x) {
                const auto slots = tensor_slots(x, k, modes_);
                std::vector<std::size_t> permuted(k);
                for (std::size_t t = 0; t < k; ++t)
                    permuted[t] = slots[perm[t]];
                p(offsets_[k] + tensor_index(permuted, modes_), offsets_[k] + x) += sign * weight;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return p;
}

CMatrix TensorSpace::embedding(const FockBasis& basis) const
{
    if (basis.modes() != modes_ || basis.max_grade() > n_max_)
        throw Error(ErrorKind::DimMismatch, "basis does not fit inside the tensor space");
    const CMatrix sym = symmetrizer(basis.statistics());
    CMatrix v = CMatrix::Zero(dimension(), basis.dimension());
    for (Index s = 0; s < basis.dimension(); ++s) {
        const auto modes = basis.mode_list(s);
        const std::size_t n = modes.size();
        double scale = factorial(n);
        if (basis.statistics() == Statistics::Bose)
            for (auto o : basis.occupation(s))
                scale /= factorial(o);
        CVector product = CVector::Zero(dimension());
        product(offsets_[n] + tensor_index(modes, modes_)) = 1.0;
        v.col(s) = std::sqrt(scale) * (sym * product);
    }
    return v;
}

CMatrix TensorSpace::grade_projector(std::size_t k) const
{
    CMatrix p = CMatrix::Zero(dimension(), dimension());
    for (Index i = 0; i < offsets_[std::min(k, n_max_) + 1]; ++i)
        p(i, i) = 1.0;
    return p;
}

double OracleDefects::max() const
{
    return std::max({bose_creation, bose_annihilation, fermi_creation, fermi_annihilation, bose_gamma,
                     fermi_gamma, bose_dgamma, fermi_dgamma, bose_isometry, fermi_isometry, oracle_car,
                     swap_gamma});
}

OracleDefects tensor_oracle_compare(std::size_t modes, std::size_t n_max, std::uint64_t seed)
{
    if (modes == 0 || modes > 3 || n_max > 3)
        throw Error(ErrorKind::SizeOverflow, "tensor oracle limited to D <= 3 and n_max <= 3");

    Rng rng(seed);
    const auto d = static_cast<Index>(modes);
    const CVector f = random_vector(rng, d);
    const CVector g = random_vector(rng, d);
    const CMatrix u = random_unitary(rng, d);
    const CMatrix h = random_hermitian(rng, d);

    const TensorSpace space(modes, n_max);
    OracleDefects out;

    for (auto stats : {Statistics::Bose, Statistics::Fermi}) {
        const auto basis = enumerate_basis(stats, modes, n_max);
        const CMatrix pi = space.symmetrizer(stats);
        const CMatrix v = space.embedding(*basis);
        const CMatrix vh = v.adjoint();

        auto compressed = [&](const CMatrix& a) { return CMatrix(vh * pi * a * pi * v); };
        const double cre = max_abs(compressed(space.creation(f)) - field_operator(basis, FieldKind::Creation, f).dense());
        const double ann =
            max_abs(compressed(space.annihilation(f)) - field_operator(basis, FieldKind::Annihilation, f).dense());
        const double gam = max_abs(compressed(space.second_quantization(u)) - second_quantize(basis, u).dense());
        const double dgam = max_abs(compressed(space.differential_second_quantization(h)) -
                                    diff_second_quantize(basis, h).dense());
        const double iso = std::max(max_abs(vh * v - CMatrix::Identity(v.cols(), v.cols())), max_abs(v * vh - pi));

        if (stats == Statistics::Bose) {
            out.bose_creation = cre;
            out.bose_annihilation = ann;
            out.bose_gamma = gam;
            out.bose_dgamma = dgam;
            out.bose_isometry = iso;
        } else {
            out.fermi_creation = cre;
            out.fermi_annihilation = ann;
            out.fermi_gamma = gam;
            out.fermi_dgamma = dgam;
            out.fermi_isometry = iso;

            if (n_max == 0)
                continue;
            const CMatrix fm = pi * space.annihilation(f) * pi;
            const CMatrix gp = pi * space.creation(g) * pi;
            const cplx fg = f.dot(g);
            const CMatrix low = space.grade_projector(n_max - 1);
            const CMatrix car = low * (fm * gp + gp * fm - fg * pi) * low;
            out.oracle_car = max_abs(car);
        }

        if (stats == Statistics::Bose && modes >= 2) {
            CMatrix swap = CMatrix::Identity(d, d);
            swap.col(0).swap(swap.col(d - 1));
            CMatrix relabel = CMatrix::Zero(basis->dimension(), basis->dimension());
            for (Index s = 0; s < basis->dimension(); ++s) {
                const auto occ = basis->occupation(s);
                std::vector<std::uint8_t> swapped(occ.begin(), occ.end());
                std::swap(swapped.front(), swapped.back());
                relabel(*basis->index_of(swapped), s) = 1.0;
            }
            out.swap_gamma = std::max(max_abs(compressed(space.second_quantization(swap)) - relabel),
                                      max_abs(second_quantize(basis, swap).dense() - relabel));
        }
    }
    return out;
}

} // namespace wicklab
