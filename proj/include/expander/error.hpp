#pragma once

#include <stdexcept>
#include <string>

namespace expander {

enum class Errc {
  non_regular,
  half_loop,
  non_biregular,
  side_mismatch,
  degree_incompatible,
  disconnected,
  no_convergence,
  out_of_range,
  even_power,
  non_regular_out_degree,
  unknown_family,
  size_exceeded,
  unknown_code,
  rank_deficient,
  degree_mismatch,
  too_large,
  rate_mismatch,
  divergent,
  budget_exceeded,
  bad_input,
  io_error,
  empty_graph,
  size_mismatch,
  length_mismatch,
  invalid_element,
  non_symmetric,
  level_budget,
};

const char* errc_name(Errc c);

// Domain error; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace expander
