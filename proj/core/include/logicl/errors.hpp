#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logicl {

/// Stable identifiers for every failure mode surfaced by the library.
enum class Errc {
  empty_template,
  mask_length,
  encoder_unavailable,
  degenerate_embedding,
  dimension_mismatch,
  invalid_k,
  kernel_not_psd,
  no_candidates,
  locator_collision,
  backend_unavailable,
  prompt_too_long,
  missing_labels,
  ingest_error,
  join_error,
  empty_evaluation,
  config_error,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace logicl
