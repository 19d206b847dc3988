#include "xorpso/trace.hpp"

#include <sstream>
#include <stdexcept>

#include "xorpso/data.hpp"

namespace xorpso {

nlohmann::ordered_json to_json(const IterationRecord& r) {
  // ordered_json keeps the documented field order; plain json sorts keys.
  nlohmann::ordered_json j;
  j["iteration"] = r.iteration;
  j["gbest_fitness"] = r.gbest_fitness;
  j["gbest_accuracy"] = r.gbest_accuracy;
  j["gbest_selected"] = r.gbest_selected;
  j["inertia"] = r.inertia;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

IterationRecord record_from_json(const nlohmann::json& j) {
  IterationRecord r;
  r.iteration = j.at("iteration").get<std::size_t>();
  r.gbest_fitness = j.at("gbest_fitness").get<double>();
  r.gbest_accuracy = j.at("gbest_accuracy").get<double>();
  r.gbest_selected = j.at("gbest_selected").get<std::size_t>();
  r.inertia = j.at("inertia").get<double>();
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string trace_line(const IterationRecord& r) { return to_json(r).dump(); }

std::vector<IterationRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open trace '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (!text.empty() && text.back() != '\n') {
    throw DataError("trace '" + path.string() + "' ends with a truncated line");
  }
  std::vector<IterationRecord> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const std::string line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("trace '" + path.string() + "' line " + std::to_string(line_no) +
                      ": " + e.what());
    }
  }
  return out;
}

TraceWriter::TraceWriter(std::filesystem::path path)
    : path_(std::move(path)), partial_(path_.string() + ".partial") {
  out_.open(partial_, std::ios::binary | std::ios::trunc);
  if (!out_) throw DataError("cannot write '" + partial_.string() + "'");
}

TraceWriter::~TraceWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(partial_, ec);
  }
}

void TraceWriter::write(const IterationRecord& record) {
  out_ << trace_line(record) << '\n';
  out_.flush();
  if (!out_) throw DataError("write failed for '" + partial_.string() + "'");
}

void TraceWriter::commit() {
  out_.close();
  if (!out_) throw DataError("write failed for '" + partial_.string() + "'");
  std::filesystem::rename(partial_, path_);
  committed_ = true;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw DataError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace xorpso
