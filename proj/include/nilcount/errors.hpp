#pragma once

#include <stdexcept>
#include <string>

namespace nilcount {

// Failure taxonomy shared by all modules. Codes are stable so callers (and
// the CLI) can branch on them rather than on message text.
enum class errc {
  not_a_prime_power,
  too_large,
  division_by_zero,
  shape_mismatch,
  not_square,
  not_nilpotent_orbit,
  not_nilpotent_pair,
  not_eventually_constant,
  edge_not_in_tree,
  out_of_range,
  invalid_triple,
  io_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nilcount
