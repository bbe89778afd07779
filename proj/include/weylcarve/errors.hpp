#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace weylcarve {

// Failure classes surfaced by the library. The CLI maps oracle_mismatch to
// exit 1 and every precondition-class code to exit 2; messages name the
// violated hypothesis.
enum class errc {
  invalid_argument,
  ramified_prime,
  not_coprime,
  p_too_small,
  size_limit,
  wrong_case,
  not_effective,
  oracle_mismatch,
  degenerate_eigenvalues,
  not_stable,
  not_torus_stable,
  not_quasi_idempotent,
  wrong_degree,
  invalid_generator,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace weylcarve
