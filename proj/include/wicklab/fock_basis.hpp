#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wicklab/types.hpp"

namespace wicklab {

enum class Statistics { Bose, Fermi };

// Orthonormal occupation basis of a truncated Bose or Fermi Fock space over D
// modes. States are graded by particle number; inside a grade they are sorted
// lexicographically by their ascending mode list, e.g. for Bose D=2, M=2:
// (0,0) (1,0) (0,1) (2,0) (1,1) (0,2).
class FockBasis {
public:
    FockBasis(Statistics stats, std::size_t modes, std::size_t truncation,
              std::size_t dimension_cap = default_dimension_cap);

    Statistics statistics() const noexcept { return stats_; }
    std::size_t modes() const noexcept { return modes_; }
    std::size_t truncation() const noexcept { return truncation_; }
    // Highest populated grade: M for Bose, min(M, D) for Fermi.
    std::size_t max_grade() const noexcept { return grade_offsets_.size() - 2; }
    Index dimension() const noexcept { return static_cast<Index>(grades_.size()); }

    std::span<const std::uint8_t> occupation(Index state) const
    {
        return {occupations_.data() + static_cast<std::size_t>(state) * modes_, modes_};
    }
    std::uint8_t occupation(Index state, std::size_t mode) const
    {
        return occupations_[static_cast<std::size_t>(state) * modes_ + mode];
    }
    std::size_t grade(Index state) const { return grades_[static_cast<std::size_t>(state)]; }
    std::vector<std::size_t> mode_list(Index state) const;

    // States of grade n occupy [grade_begin(n), grade_end(n)).
    Index grade_begin(std::size_t n) const { return grade_offsets_.at(n); }
    Index grade_end(std::size_t n) const { return grade_offsets_.at(n + 1); }

    // Rank of an occupation vector; nullopt when it lies outside the truncated space.
    std::optional<Index> index_of(std::span<const std::uint8_t> occupation) const;
    Index vacuum() const noexcept { return 0; }

    bool operator==(const FockBasis& other) const
    {
        return stats_ == other.stats_ && modes_ == other.modes_ && truncation_ == other.truncation_;
    }

private:
    std::uint64_t binom(std::size_t n, std::size_t k) const;

    Statistics stats_;
    std::size_t modes_;
    std::size_t truncation_;
    std::vector<std::uint8_t> occupations_;
    std::vector<std::uint32_t> grades_;
    std::vector<Index> grade_offsets_;
    std::vector<std::uint64_t> binomials_;
    std::size_t binom_stride_ = 0;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

// Dimension of the truncated space, saturating at UINT64_MAX.
std::uint64_t fock_dimension(Statistics stats, std::size_t modes, std::size_t truncation);

BasisPtr enumerate_basis(Statistics stats, std::size_t modes, std::size_t truncation,
                         std::size_t dimension_cap = default_dimension_cap);

} // namespace wicklab
