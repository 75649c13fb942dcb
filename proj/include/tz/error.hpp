#ifndef TZ_ERROR_HPP
#define TZ_ERROR_HPP
//
// Project : tzsolve
// Module  : error
//

#include <stdexcept>
#include <string>

namespace tz {

enum class errc {
  invalid_size,
  corner_mismatch,
  size_guard,
  length_mismatch,
  geometry_violation,
  domain,
  map_validation,
  shift_collision,
  rank_deficient,
  singular,
  singular_block,
  numerically_singular,
  format_unsupported,
  io,
  config,
};

inline const char* to_string(errc c) noexcept {
  switch (c) {
    case errc::invalid_size:         return "INVALID_SIZE";
    case errc::corner_mismatch:      return "CORNER_MISMATCH";
    case errc::size_guard:           return "SIZE_GUARD";
    case errc::length_mismatch:      return "LENGTH_MISMATCH";
    case errc::geometry_violation:   return "GEOMETRY_VIOLATION";
    case errc::domain:               return "DOMAIN";
    case errc::map_validation:       return "MAP_VALIDATION";
    case errc::shift_collision:      return "SHIFT_COLLISION";
    case errc::rank_deficient:       return "RANK_DEFICIENT";
    case errc::singular:             return "SINGULAR";
    case errc::singular_block:       return "SINGULAR_BLOCK";
    case errc::numerically_singular: return "NUMERICALLY_SINGULAR";
    case errc::format_unsupported:   return "FORMAT_UNSUPPORTED";
    case errc::io:                   return "IO";
    case errc::config:               return "CONFIG";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace tz

#endif
