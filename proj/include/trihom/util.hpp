#pragma once
// Shared error taxonomy and small numeric helpers.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihom {

enum class errc {
  parse_error,
  non_symmetric,
  bad_diagonal,
  unsupported_type,
  unsupported_field,
  generator_out_of_range,
  variable_mismatch,
  inexact_division,
  grading_violation,
  shape_mismatch,
  slot_out_of_range,
  intertwining_violated,
  realization_mismatch,
  arity_mismatch,
  fit_unstable,
  window_too_small,
  recursion_budget,
  cache_corrupt,
  io_error,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::parse_error: return "parse_error";
    case errc::non_symmetric: return "non_symmetric";
    case errc::bad_diagonal: return "bad_diagonal";
    case errc::unsupported_type: return "unsupported_type";
    case errc::unsupported_field: return "unsupported_field";
    case errc::generator_out_of_range: return "generator_out_of_range";
    case errc::variable_mismatch: return "variable_mismatch";
    case errc::inexact_division: return "inexact_division";
    case errc::grading_violation: return "grading_violation";
    case errc::shape_mismatch: return "shape_mismatch";
    case errc::slot_out_of_range: return "slot_out_of_range";
    case errc::intertwining_violated: return "intertwining_violated";
    case errc::realization_mismatch: return "realization_mismatch";
    case errc::arity_mismatch: return "arity_mismatch";
    case errc::fit_unstable: return "fit_unstable";
    case errc::window_too_small: return "window_too_small";
    case errc::recursion_budget: return "recursion_budget";
    case errc::cache_corrupt: return "cache_corrupt";
    case errc::io_error: return "io_error";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

// C(n, k) as unsigned long long; n small (desk scale), no overflow concerns.
inline unsigned long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (unsigned long long)(n - k + i) / (unsigned long long)i;
  return r;
}

inline int popcount32(std::uint32_t x) { return __builtin_popcount(x); }

// FNV-1a 64-bit, used for cache checksums and key digests.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace trihom
