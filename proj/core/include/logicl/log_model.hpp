#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logicl {

/// The wildcard marking a variable position inside a template. It may be
/// embedded mid-token (e.g. `attempt_<*>`), so matching works on characters,
/// not whole tokens.
inline constexpr std::string_view kWildcard = "<*>";

/// Collapses runs of whitespace to single spaces and trims both ends.
std::string collapse_whitespace(std::string_view text);

/// A normalized log template: the constant skeleton of a log message with
/// every variable replaced by `<*>`. Instances are always normalized, so
/// equality is plain string equality.
class Template {
 public:
  Template() = default;

  const std::string& text() const noexcept { return text_; }
  bool empty() const noexcept { return text_.empty(); }

  /// Single-space-delimited tokens of the template text.
  std::vector<std::string> tokens() const;

  /// Number of `<*>` occurrences.
  std::size_t wildcard_count() const noexcept;

  friend bool operator==(const Template&, const Template&) = default;
  friend std::strong_ordering operator<=>(const Template&, const Template&) = default;

 private:
  friend Template normalize_template(std::string_view raw);
  explicit Template(std::string normalized) : text_(std::move(normalized)) {}

  std::string text_;
};

/// Parameters captured at the wildcard positions of a matched template,
/// ordered left to right. Length always equals the template's wildcard count.
struct ParameterList {
  std::vector<std::string> values;

  friend bool operator==(const ParameterList&, const ParameterList&) = default;
};

/// Canonicalizes template text: collapses internal whitespace to single
/// spaces, trims the ends, leaves `<*>` untouched. Idempotent. Throws
/// Errc::empty_template when nothing but whitespace remains.
Template normalize_template(std::string_view raw);

/// Builds a template from tokens: positions where the mask is true become
/// `<*>`, the rest stay untouched; tokens are joined with single spaces.
/// Throws Errc::mask_length when the mask length differs from the tokens'.
Template apply_mapping(std::span<const std::string> tokens,
                       const std::vector<bool>& variable_mask);

/// Matches `content` against the template, treating each `<*>` as a
/// non-empty substring capture and everything else as literal text that must
/// match exactly; the whole content must be covered. When several capture
/// assignments are possible, the leftmost-shortest one wins: each wildcard
/// takes the shortest capture that still lets the rest of the template match.
/// A non-match returns nullopt; it is not an error.
std::optional<ParameterList> match_template(std::string_view content, const Template& tmpl);

/// Re-substitutes parameters into the wildcards left to right; the inverse of
/// match_template on success. Throws Errc::config_error when the parameter
/// count does not equal the wildcard count.
std::string substitute_parameters(const Template& tmpl, const ParameterList& params);

/// One dataset row: raw log content plus optional ground-truth labeling.
struct LogRecord {
  std::size_t line_id = 0;
  std::string content;
  std::optional<Template> ground_truth;
  std::optional<std::string> event_id;
};

}  // namespace logicl
