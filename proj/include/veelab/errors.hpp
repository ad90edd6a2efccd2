#pragma once

#include <stdexcept>
#include <string>

namespace veelab {

enum class errc {
  dimension_mismatch,
  zero_vector,
  mixed_scalar_mode,
  span_deficient,
  not_eigenvector,
  sampling_exhausted,
  pole_hit,
  singular_metric,
  rank_deficient,
  zero_h,
  h_vanishes,
  bad_case_parameters,
  factorization_failure,
  isotropic_complement,
  condition_one_fails,
  no_root_in_interval,
  singular_jacobian,
  diverged,
  parse_error,
  unknown_target,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::dimension_mismatch:   return "DimensionMismatch";
    case errc::zero_vector:          return "ZeroVector";
    case errc::mixed_scalar_mode:    return "MixedScalarMode";
    case errc::span_deficient:       return "SpanDeficient";
    case errc::not_eigenvector:      return "NotEigenvector";
    case errc::sampling_exhausted:   return "SamplingExhausted";
    case errc::pole_hit:             return "PoleHit";
    case errc::singular_metric:      return "SingularMetric";
    case errc::rank_deficient:       return "RankDeficient";
    case errc::zero_h:               return "ZeroH";
    case errc::h_vanishes:           return "HVanishes";
    case errc::bad_case_parameters:  return "BadCaseParameters";
    case errc::factorization_failure:return "FactorizationFailure";
    case errc::isotropic_complement: return "IsotropicComplement";
    case errc::condition_one_fails:  return "ConditionOneFails";
    case errc::no_root_in_interval:  return "NoRootInInterval";
    case errc::singular_jacobian:    return "SingularJacobian";
    case errc::diverged:             return "Diverged";
    case errc::parse_error:          return "ParseError";
    case errc::unknown_target:       return "UnknownTarget";
    case errc::invalid_argument:     return "InvalidArgument";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace veelab
