// Copyright 2026 The mplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mplab/report.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "json.hpp"

#include "mplab/error.hpp"

namespace mplab {
namespace {

using nlohmann::json;


std::string CsvQuote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) Fail(ErrorCode::kParse, "csv: unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

double ParseCsvDouble(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    Fail(ErrorCode::kParse, "csv: bad number '" + s + "'");
  return v;
}

template <typename Int>
Int ParseCsvInt(const std::string& s) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    Fail(ErrorCode::kParse, "csv: bad integer '" + s + "'");
  return v;
}

// Visits (name, member) pairs in field order.
template <typename Rec, typename F>
void VisitFields(Rec& r, F&& f) {
  f("experiment", r.experiment);
  f("trial", r.trial);
  f("seed", r.seed);
  f("model", r.model);
  f("family", r.family);
  f("p", r.p);
  f("n", r.n);
  f("q", r.q);
  f("epsilon", r.epsilon);
  f("z_re", r.z_re);
  f("z_im", r.z_im);
  f("b_spec", r.b_spec);
  f("c_spec", r.c_spec);
  f("statistic", r.statistic);
  f("x", r.x);
  f("value", r.value);
  f("value_im", r.value_im);
  f("se", r.se);
  f("wall_ms", r.wall_ms);
}

std::string CsvCell(const std::string& v) { return CsvQuote(v); }
std::string CsvCell(double v) { return FormatDouble(v); }
std::string CsvCell(std::int64_t v) { return std::to_string(v); }
std::string CsvCell(std::uint64_t v) { return std::to_string(v); }

std::string JsonCell(const std::string& v) { return json(v).dump(); }
std::string JsonCell(double v) { return std::isfinite(v) ? FormatDouble(v) : "null"; }
std::string JsonCell(std::int64_t v) { return std::to_string(v); }
std::string JsonCell(std::uint64_t v) { return std::to_string(v); }

void FromCsv(const std::string& s, std::string& out) { out = s; }
void FromCsv(const std::string& s, double& out) { out = ParseCsvDouble(s); }
void FromCsv(const std::string& s, std::int64_t& out) { out = ParseCsvInt<std::int64_t>(s); }
void FromCsv(const std::string& s, std::uint64_t& out) { out = ParseCsvInt<std::uint64_t>(s); }

void FromJson(const json& j, double& out) {
  out = j.is_null() ? std::nan("") : j.get<double>();
}
template <typename T>
void FromJson(const json& j, T& out) {
  out = j.get<T>();
}

}  // namespace

const std::vector<std::string>& RecordFields() {
  static const std::vector<std::string> fields = [] {
    std::vector<std::string> names;
    TrialRecord r;
    VisitFields(r, [&](const char* name, auto&) { names.emplace_back(name); });
    return names;
  }();
  return fields;
}

ReportFormat ParseFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  Fail(ErrorCode::kParse, "format: expected csv or json, got '" + std::string(name) + "'");
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RecordWriter::RecordWriter(const std::string& path, ReportFormat format)
    : out_(path, std::ios::binary | std::ios::trunc), format_(format) {
  if (!out_) Fail(ErrorCode::kIo, "report: cannot open '" + path + "' for writing");
  if (format_ == ReportFormat::kCsv) {
    const auto& names = RecordFields();
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
  } else {
    out_ << '[';
  }
  out_.flush();
}

RecordWriter::~RecordWriter() {
  try {
    Close();
  } catch (...) {
  }
}

void RecordWriter::Write(const TrialRecord& r) {
  Require(!closed_, ErrorCode::kPrecondition, "report: writer already closed");
  if (format_ == ReportFormat::kCsv) {
    bool first = true;
    VisitFields(r, [&](const char*, const auto& v) {
      out_ << (first ? "" : ",") << CsvCell(v);
      first = false;
    });
    out_ << '\n';
  } else {
    out_ << (written_ ? ",\n" : "\n") << '{';
    bool first = true;
    VisitFields(r, [&](const char* name, const auto& v) {
      out_ << (first ? "" : ",") << '"' << name << "\":" << JsonCell(v);
      first = false;
    });
    out_ << '}';
  }
  out_.flush();
  if (!out_) Fail(ErrorCode::kIo, "report: write failed");
  ++written_;
}

void RecordWriter::Close() {
  if (closed_) return;
  closed_ = true;
  if (format_ == ReportFormat::kJson) out_ << "\n]\n";
  out_.flush();
  if (!out_) Fail(ErrorCode::kIo, "report: write failed");
  out_.close();
}

std::vector<TrialRecord> ReadRecordsCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "report: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kParse, "csv: missing header");
  const auto header = SplitCsvLine(line);
  if (header != RecordFields()) Fail(ErrorCode::kParse, "csv: unexpected header");
  std::vector<TrialRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != header.size())
      Fail(ErrorCode::kParse, "csv: row has " + std::to_string(cells.size()) + " fields");
    TrialRecord r;
    std::size_t i = 0;
    VisitFields(r, [&](const char*, auto& v) { FromCsv(cells[i++], v); });
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrialRecord> ReadRecordsJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "report: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("json: ") + e.what());
  }
  if (!doc.is_array()) Fail(ErrorCode::kParse, "json: expected an array of records");
  std::vector<TrialRecord> out;
  for (const json& obj : doc) {
    TrialRecord r;
    try {
      VisitFields(r, [&](const char* name, auto& v) { FromJson(obj.at(name), v); });
    } catch (const json::exception& e) {
      Fail(ErrorCode::kParse, std::string("json: ") + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

template <typename T>
void PutLe(std::ostream& out, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T GetLe(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  if (!in) Fail(ErrorCode::kParse, "matrix dump: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

void WriteMatrixBinary(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "matrix dump: cannot open '" + path + "'");
  PutLe<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  PutLe<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) PutLe<double>(out, m(i, j));
  if (!out) Fail(ErrorCode::kIo, "matrix dump: write failed");
}

Matrix ReadMatrixBinary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "matrix dump: cannot open '" + path + "'");
  const auto rows = GetLe<std::uint64_t>(in);
  const auto cols = GetLe<std::uint64_t>(in);
  if (rows > (1u << 20) || cols > (1u << 20))
    Fail(ErrorCode::kParse, "matrix dump: implausible dimensions");
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = GetLe<double>(in);
  return m;
}

}  // namespace mplab
