#pragma once

#include <stdexcept>
#include <string>

namespace confocal {

enum class ErrorKind {
    InvalidInput,
    DimensionMismatch,
    NoSignChange,
    NonConvergence,
    RankDeficient,
    OffSurface,
    NotAnEllipsoid,
    OnFocalMembrane,
    IndexOutOfRange,
    DegeneratePoint,
    NegativeSquare,
    NoRealTangency,
    PoleParameter,
    NotExterior,
    NotConfocal,
    CoincidentParameters,
    NoRealEdge,
    ParallelEdge,
    NoIntersection,
    DegeneratePair,
    DegenerateTriple,
    UnconstructibleConfiguration,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "invalid_input";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::NoSignChange: return "no_sign_change";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::RankDeficient: return "rank_deficient";
    case ErrorKind::OffSurface: return "off_surface";
    case ErrorKind::NotAnEllipsoid: return "not_an_ellipsoid";
    case ErrorKind::OnFocalMembrane: return "on_focal_membrane";
    case ErrorKind::IndexOutOfRange: return "index_out_of_range";
    case ErrorKind::DegeneratePoint: return "degenerate_point";
    case ErrorKind::NegativeSquare: return "negative_square";
    case ErrorKind::NoRealTangency: return "no_real_tangency";
    case ErrorKind::PoleParameter: return "pole_parameter";
    case ErrorKind::NotExterior: return "not_exterior";
    case ErrorKind::NotConfocal: return "not_confocal";
    case ErrorKind::CoincidentParameters: return "coincident_parameters";
    case ErrorKind::NoRealEdge: return "no_real_edge";
    case ErrorKind::ParallelEdge: return "parallel_edge";
    case ErrorKind::NoIntersection: return "no_intersection";
    case ErrorKind::DegeneratePair: return "degenerate_pair";
    case ErrorKind::DegenerateTriple: return "degenerate_triple";
    case ErrorKind::UnconstructibleConfiguration: return "unconstructible_configuration";
    }
    return "unknown";
}

/// Exception carrying a machine-readable failure kind alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace confocal
