#include "wicklab/fock_basis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wicklab/error.hpp"

namespace wicklab {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_binom(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    // C(n, i+1) = C(n, i) * (n-i) / (i+1) stays integral at every step.
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > saturated)
            return saturated;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b)
{
    return (a > saturated - b) ? saturated : a + b;
}

// Advance an ascending mode list to its lexicographic successor; false when exhausted.
bool next_mode_list(std::vector<std::size_t>& a, std::size_t modes, bool strict)
{
    const std::size_t n = a.size();
    for (std::size_t i = n; i-- > 0;) {
        // Largest value position i may take given the tail after it.
        const std::size_t cap = strict ? modes - (n - i) : modes - 1;
        if (a[i] < cap) {
            ++a[i];
            for (std::size_t k = i + 1; k < n; ++k)
                a[k] = strict ? a[k - 1] + 1 : a[k - 1];
            return true;
        }
    }
    return false;
}

} // namespace

std::uint64_t fock_dimension(Statistics stats, std::size_t modes, std::size_t truncation)
{
    std::uint64_t total = 0;
    if (stats == Statistics::Bose) {
        for (std::size_t n = 0; n <= truncation; ++n)
            total = saturating_add(total, saturating_binom(modes + n - 1, n));
    } else {
        for (std::size_t n = 0; n <= std::min(truncation, modes); ++n)
            total = saturating_add(total, saturating_binom(modes, n));
    }
    return total;
}

FockBasis::FockBasis(Statistics stats, std::size_t modes, std::size_t truncation,
                     std::size_t dimension_cap)
    : stats_(stats), modes_(modes), truncation_(truncation)
{
    if (modes == 0)
        throw Error(ErrorKind::DimMismatch, "Fock basis needs at least one mode");
    if (truncation > 255)
        throw Error(ErrorKind::SizeOverflow, "truncation above 255 is not supported");
    const std::uint64_t dim = fock_dimension(stats, modes, truncation);
    if (dim > dimension_cap) {
        std::ostringstream msg;
        msg << "Fock dimension " << dim << " exceeds cap " << dimension_cap;
        throw Error(ErrorKind::SizeOverflow, msg.str());
    }

    binom_stride_ = modes + truncation + 1;
    binomials_.assign(binom_stride_ * binom_stride_, 0);
    for (std::size_t n = 0; n < binom_stride_; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            binomials_[n * binom_stride_ + k] = saturating_binom(n, k);

    const bool strict = stats == Statistics::Fermi;
    const std::size_t top = strict ? std::min(truncation, modes) : truncation;
    occupations_.reserve(static_cast<std::size_t>(dim) * modes);
    grades_.reserve(static_cast<std::size_t>(dim));
    grade_offsets_.push_back(0);
    for (std::size_t n = 0; n <= top; ++n) {
        std::vector<std::size_t> a(n);
        for (std::size_t i = 0; i < n; ++i)
            a[i] = strict ? i : 0;
        do {
            const std::size_t base = occupations_.size();
            occupations_.resize(base + modes, 0);
            for (std::size_t m : a)
                ++occupations_[base + m];
            grades_.push_back(static_cast<std::uint32_t>(n));
        } while (n > 0 && next_mode_list(a, modes, strict));
        grade_offsets_.push_back(static_cast<Index>(grades_.size()));
    }
}

std::uint64_t FockBasis::binom(std::size_t n, std::size_t k) const
{
    if (k > n)
        return 0;
    return binomials_[n * binom_stride_ + k];
}

std::vector<std::size_t> FockBasis::mode_list(Index state) const
{
    std::vector<std::size_t> out;
    const auto occ = occupation(state);
    for (std::size_t m = 0; m < modes_; ++m)
        out.insert(out.end(), occ[m], m);
    return out;
}

std::optional<Index> FockBasis::index_of(std::span<const std::uint8_t> occupation) const
{
    if (occupation.size() != modes_)
        return std::nullopt;
    std::size_t n = 0;
    for (auto o : occupation) {
        if (stats_ == Statistics::Fermi && o > 1)
            return std::nullopt;
        n += o;
    }
    if (n > max_grade())
        return std::nullopt;

    // Combinatorial rank of the ascending mode list inside its grade.
    std::uint64_t rank = 0;
    std::size_t placed = 0;
    if (stats_ == Statistics::Bose) {
        std::size_t prev = 0;
        for (std::size_t m = 0; m < modes_; ++m) {
            for (std::uint8_t c = 0; c < occupation[m]; ++c) {
                const std::size_t remaining = n - placed - 1;
                for (std::size_t v = prev; v < m; ++v)
                    rank += binom(modes_ - v + remaining - 1, remaining);
                prev = m;
                ++placed;
            }
        }
    } else {
        std::size_t next_free = 0;
        for (std::size_t m = 0; m < modes_; ++m) {
            if (occupation[m] == 0)
                continue;
            const std::size_t remaining = n - placed - 1;
            for (std::size_t v = next_free; v < m; ++v)
                rank += binom(modes_ - v - 1, remaining);
            next_free = m + 1;
            ++placed;
        }
    }
    return grade_offsets_[n] + static_cast<Index>(rank);
}

BasisPtr enumerate_basis(Statistics stats, std::size_t modes, std::size_t truncation,
                         std::size_t dimension_cap)
{
    return std::make_shared<const FockBasis>(stats, modes, truncation, dimension_cap);
}

} // namespace wicklab
