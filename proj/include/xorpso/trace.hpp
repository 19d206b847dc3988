#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "xorpso/swarm.hpp"

namespace xorpso {

nlohmann::ordered_json to_json(const IterationRecord& record);
IterationRecord record_from_json(const nlohmann::json& j);

// One JSON object per line, fields in the documented order.
std::string trace_line(const IterationRecord& record);

// Reads a trace written by TraceWriter. Rejects a file whose last line is not
// newline-terminated or any line that does not parse as a complete record.
std::vector<IterationRecord> read_trace(const std::filesystem::path& path);

// Writes to `<path>.partial`, flushing after every record, and renames into
// place on commit(). An abandoned writer leaves no file at `path`.
class TraceWriter {
 public:
  explicit TraceWriter(std::filesystem::path path);
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;
  ~TraceWriter();

  void write(const IterationRecord& record);
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

// Whole-file write through a temporary sibling and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace xorpso
