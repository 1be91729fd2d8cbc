#include "fixtures.hpp"

#include <fstream>
#include <stdexcept>

#include "logicl/csv.hpp"

namespace logicl::testing {

const std::vector<std::string>& synthetic_templates() {
  // All templates carry exactly two variables and comparable constant mass,
  // so the clusters are roughly isotropic and diverse sampling spreads its
  // budget across every template instead of favoring wider ones.
  static const std::vector<std::string> templates = {
      "Accepted connection from <*> port <*>",
      "Rejected password for operator <*> attempt <*>",
      "Cache eviction removed <*> entries in bucket <*>",
      "Thermal sensor <*> reading <*> degrees",
      "Compaction merged <*> segments into <*>",
      "Heartbeat missing on follower <*> for <*> rounds",
      "Snapshot written to volume <*> bytes=<*>",
      "Quota exceeded by tenant <*> limit <*>",
      "Migration moved shard <*> onto host <*>",
      "Garbage collector paused <*> ms freeing <*> objects",
      "Index rebuild scanned <*> documents across <*> partitions",
      "Lease granted until epoch <*> holder <*>",
      "Backpressure throttled producer <*> to <*> msgs",
      "Checksum mismatch inside block <*> offset <*>",
      "Authentication token issued: user_<*> scope <*>",
      "Watchdog restarted unit <*> after <*> faults",
      "Prefetcher loaded <*> pages of extent <*>",
      "Replica promoted as primary at term <*> zone <*>",
      "Telemetry batch flushed <*> events toward sink <*>",
      "Certificate rotation scheduled near window <*> serial <*>",
  };
  return templates;
}

std::vector<SyntheticRow> make_synthetic_rows(std::size_t rows, std::size_t template_count) {
  const auto& templates = synthetic_templates();
  if (template_count == 0 || template_count > templates.size()) {
    throw std::invalid_argument("template_count out of range");
  }
  std::vector<SyntheticRow> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t which = i % template_count;
    const std::string& text = templates[which];
    SyntheticRow row;
    row.line_id = i;
    row.event_id = "E" + std::to_string(which + 1);
    row.template_text = text;
    // Substitute unique numeric parameters derived from the row index. Kept
    // short so the constant words dominate the n-gram similarity.
    std::string content;
    std::size_t pos = 0;
    std::size_t param = 0;
    while (true) {
      const std::size_t at = text.find(kWildcard, pos);
      if (at == std::string::npos) {
        content.append(text.substr(pos));
        break;
      }
      content.append(text.substr(pos, at - pos));
      content.append(std::to_string(11 + i * 7 + param * 3));
      pos = at + kWildcard.size();
      ++param;
    }
    row.content = std::move(content);
    out.push_back(std::move(row));
  }
  return out;
}

void write_structured_csv(const std::filesystem::path& path,
                          const std::vector<SyntheticRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv_row(out, std::vector<std::string>{"LineId", "Content", "EventId", "EventTemplate"});
  for (const SyntheticRow& row : rows) {
    write_csv_row(out, std::vector<std::string>{std::to_string(row.line_id + 1), row.content,
                                                row.event_id, row.template_text});
  }
}

}  // namespace logicl::testing
