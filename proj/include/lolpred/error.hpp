#pragma once

#include <stdexcept>
#include <string>

namespace lolpred {

// Machine-readable failure codes. The CLI prints these verbatim and maps
// them onto exit codes; tests match on them.
enum class errc {
  invalid_argument,
  malformed_json,
  missing_field,
  invalid_timeline,
  http_status,
  timeout,
  rate_config_invalid,
  invalid_config,
  empty_input,
  pet_out_of_range,
  constant_column,
  length_mismatch,
  no_rows_for_pet,
  empty_fit_set,
  single_class,
  nonfinite_feature,
  diverged,
  schema_mismatch,
  unsupported_family,
  io,
  version_unsupported,
  corrupt,
  class_too_small,
  empty,
  internal,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_argument: return "INVALID_ARGUMENT";
    case errc::malformed_json: return "MALFORMED_JSON";
    case errc::missing_field: return "MISSING_FIELD";
    case errc::invalid_timeline: return "INVALID_TIMELINE";
    case errc::http_status: return "HTTP_STATUS";
    case errc::timeout: return "TIMEOUT";
    case errc::rate_config_invalid: return "RATE_CONFIG_INVALID";
    case errc::invalid_config: return "INVALID_CONFIG";
    case errc::empty_input: return "EMPTY_INPUT";
    case errc::pet_out_of_range: return "PET_OUT_OF_RANGE";
    case errc::constant_column: return "CONSTANT_COLUMN";
    case errc::length_mismatch: return "LENGTH_MISMATCH";
    case errc::no_rows_for_pet: return "NO_ROWS_FOR_PET";
    case errc::empty_fit_set: return "EMPTY_FIT_SET";
    case errc::single_class: return "SINGLE_CLASS";
    case errc::nonfinite_feature: return "NONFINITE_FEATURE";
    case errc::diverged: return "DIVERGED";
    case errc::schema_mismatch: return "SCHEMA_MISMATCH";
    case errc::unsupported_family: return "UNSUPPORTED_FAMILY";
    case errc::io: return "IO";
    case errc::version_unsupported: return "VERSION_UNSUPPORTED";
    case errc::corrupt: return "CORRUPT";
    case errc::class_too_small: return "CLASS_TOO_SMALL";
    case errc::empty: return "EMPTY";
    case errc::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        detail_(std::move(message)) {}

  static Error http(int status, const std::string& context) {
    Error e(errc::http_status,
            "status " + std::to_string(status) + " from " + context);
    e.http_status_ = status;
    return e;
  }

  errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  int http_status() const noexcept { return http_status_; }

 private:
  errc code_;
  std::string detail_;
  int http_status_ = 0;
};

}  // namespace lolpred
