#include "logicl/errors.hpp"

namespace logicl {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::empty_template: return "EmptyTemplate";
    case Errc::mask_length: return "MaskLength";
    case Errc::encoder_unavailable: return "EncoderUnavailable";
    case Errc::degenerate_embedding: return "DegenerateEmbedding";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_k: return "InvalidK";
    case Errc::kernel_not_psd: return "KernelNotPsd";
    case Errc::no_candidates: return "NoCandidates";
    case Errc::locator_collision: return "LocatorCollision";
    case Errc::backend_unavailable: return "BackendUnavailable";
    case Errc::prompt_too_long: return "PromptTooLong";
    case Errc::missing_labels: return "MissingLabels";
    case Errc::ingest_error: return "IngestError";
    case Errc::join_error: return "JoinError";
    case Errc::empty_evaluation: return "EmptyEvaluation";
    case Errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace logicl
