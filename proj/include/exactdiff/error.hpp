#pragma once

#include <stdexcept>
#include <string>

namespace exactdiff {

enum class Errc {
  non_convergent,
  radius_infeasible,
  extrapolation_unstable,
  aliasing_bound,
  unsupported_order,
  nonpositive_base,
  parse_error,
  invalid_params,
};

const char* to_string(Errc c) noexcept;

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

inline const char* to_string(Errc c) noexcept {
  switch (c) {
    case Errc::non_convergent: return "NON_CONVERGENT";
    case Errc::radius_infeasible: return "RADIUS_INFEASIBLE";
    case Errc::extrapolation_unstable: return "EXTRAPOLATION_UNSTABLE";
    case Errc::aliasing_bound: return "ALIASING_BOUND";
    case Errc::unsupported_order: return "UNSUPPORTED_ORDER";
    case Errc::nonpositive_base: return "NONPOSITIVE_BASE";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::invalid_params: return "INVALID_PARAMS";
  }
  return "UNKNOWN";
}

}  // namespace exactdiff
