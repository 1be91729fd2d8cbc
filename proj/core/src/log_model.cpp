#include "logicl/log_model.hpp"

#include <cctype>

#include "logicl/errors.hpp"

namespace logicl {

namespace {

/// Literal pieces between wildcards: a template with w wildcards yields w+1
/// segments, the first and last possibly empty.
std::vector<std::string_view> split_on_wildcard(std::string_view text) {
  std::vector<std::string_view> segments;
  std::size_t pos = 0;
  while (true) {
    const std::size_t at = text.find(kWildcard, pos);
    if (at == std::string_view::npos) {
      segments.push_back(text.substr(pos));
      break;
    }
    segments.push_back(text.substr(pos, at - pos));
    pos = at + kWildcard.size();
  }
  return segments;
}

bool match_wildcards(std::string_view content, std::size_t pos,
                     const std::vector<std::string_view>& segments, std::size_t wildcard,
                     std::vector<std::string>& captures) {
  const std::string_view next = segments[wildcard + 1];
  const bool last = wildcard + 2 == segments.size();
  if (last) {
    // The final literal is anchored at the end, so the capture is forced.
    if (content.size() < next.size()) return false;
    const std::size_t capture_end = content.size() - next.size();
    if (capture_end <= pos) return false;  // captures must be non-empty
    if (content.substr(capture_end) != next) return false;
    captures.emplace_back(content.substr(pos, capture_end - pos));
    return true;
  }
  // Try occurrences of the next literal from the shortest capture up,
  // backtracking when the remainder cannot match.
  for (std::size_t at = content.find(next, pos + 1); at != std::string_view::npos;
       at = content.find(next, at + 1)) {
    captures.emplace_back(content.substr(pos, at - pos));
    if (match_wildcards(content, at + next.size(), segments, wildcard + 1, captures)) {
      return true;
    }
    captures.pop_back();
  }
  return false;
}

}  // namespace

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char ch : text) {
    if (std::isspace(ch)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(ch));
  }
  return out;
}

std::vector<std::string> Template::tokens() const {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text_.size()) {
    const std::size_t space = text_.find(' ', pos);
    if (space == std::string::npos) {
      out.push_back(text_.substr(pos));
      break;
    }
    out.push_back(text_.substr(pos, space - pos));
    pos = space + 1;
  }
  return out;
}

std::size_t Template::wildcard_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t pos = text_.find(kWildcard); pos != std::string::npos;
       pos = text_.find(kWildcard, pos + kWildcard.size())) {
    ++count;
  }
  return count;
}

Template normalize_template(std::string_view raw) {
  std::string collapsed = collapse_whitespace(raw);
  if (collapsed.empty()) {
    raise(Errc::empty_template, "template text is empty after trimming");
  }
  return Template(std::move(collapsed));
}

Template apply_mapping(std::span<const std::string> tokens,
                       const std::vector<bool>& variable_mask) {
  if (tokens.size() != variable_mask.size()) {
    raise(Errc::mask_length, "mask length " + std::to_string(variable_mask.size()) +
                                 " does not match token count " + std::to_string(tokens.size()));
  }
  std::string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) joined.push_back(' ');
    if (variable_mask[i]) {
      joined.append(kWildcard);
    } else {
      joined.append(tokens[i]);
    }
  }
  return normalize_template(joined);
}

std::optional<ParameterList> match_template(std::string_view content, const Template& tmpl) {
  const auto segments = split_on_wildcard(tmpl.text());
  if (segments.size() == 1) {
    if (content == segments[0]) return ParameterList{};
    return std::nullopt;
  }
  if (!content.starts_with(segments[0])) return std::nullopt;
  std::vector<std::string> captures;
  captures.reserve(segments.size() - 1);
  if (!match_wildcards(content, segments[0].size(), segments, 0, captures)) {
    return std::nullopt;
  }
  return ParameterList{std::move(captures)};
}

std::string substitute_parameters(const Template& tmpl, const ParameterList& params) {
  const auto segments = split_on_wildcard(tmpl.text());
  if (params.values.size() + 1 != segments.size()) {
    raise(Errc::config_error,
          "parameter count " + std::to_string(params.values.size()) +
              " does not match wildcard count " + std::to_string(segments.size() - 1));
  }
  std::string out{segments[0]};
  for (std::size_t i = 0; i < params.values.size(); ++i) {
    out.append(params.values[i]);
    out.append(segments[i + 1]);
  }
  return out;
}

}  // namespace logicl
