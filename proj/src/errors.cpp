#include "crflat/errors.hpp"

namespace crflat {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ContextMismatch: return "context_mismatch";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::NonAdmissibleComposition: return "non_admissible_composition";
    case ErrorCode::NotAUnit: return "not_a_unit";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::SingularJacobian: return "singular_jacobian";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::UndeclaredVariable: return "undeclared_variable";
    case ErrorCode::DivisionByNonUnit: return "division_by_non_unit";
    case ErrorCode::NormalizationError: return "normalization_error";
    case ErrorCode::RealityError: return "reality_error";
    case ErrorCode::UnsupportedDimension: return "unsupported_dimension";
    case ErrorCode::LeviDegenerate: return "levi_degenerate";
    case ErrorCode::NonReal: return "non_real";
    case ErrorCode::RankCondition: return "rank_condition";
    case ErrorCode::NonInvertibleMap: return "non_invertible_map";
    case ErrorCode::ImageNotGraphable: return "image_not_graphable";
    case ErrorCode::InsufficientOrder: return "insufficient_order";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::UsageError: return "usage_error";
  }
  return "unknown";
}

}  // namespace crflat
