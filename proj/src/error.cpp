#include "wicklab/error.hpp"

namespace wicklab {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::MisalignedCut: return "MisalignedCut";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::StatisticsMismatch: return "StatisticsMismatch";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::AdaptednessViolation: return "AdaptednessViolation";
    case ErrorKind::RefinementMismatch: return "RefinementMismatch";
    case ErrorKind::InvalidDifferential: return "InvalidDifferential";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace wicklab
