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

#ifndef MPLAB_REPORT_HPP_
#define MPLAB_REPORT_HPP_

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "mplab/matcore.hpp"

namespace mplab {

struct TrialRecord {
  std::string experiment;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::string model;
  std::string family;
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t q = 0;
  double epsilon = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
  std::string b_spec;
  std::string c_spec;
  std::string statistic;
  double x = 0.0;
  double value = 0.0;
  double value_im = 0.0;
  double se = 0.0;
  double wall_ms = 0.0;

  bool operator==(const TrialRecord&) const = default;
};

// Field names in emission order.
const std::vector<std::string>& RecordFields();

enum class ReportFormat { kCsv, kJson };

ReportFormat ParseFormat(std::string_view name);

// %.17g; JSON output maps non-finite values to null.
std::string FormatDouble(double v);

// Writes one record at a time and flushes it, so memory stays constant in
// the number of records.
class RecordWriter {
 public:
  RecordWriter(const std::string& path, ReportFormat format);
  ~RecordWriter();
  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;

  void Write(const TrialRecord& r);
  void Close();
  std::size_t written() const { return written_; }

 private:
  std::ofstream out_;
  ReportFormat format_;
  std::size_t written_ = 0;
  bool closed_ = false;
};

std::vector<TrialRecord> ReadRecordsCsv(const std::string& path);
std::vector<TrialRecord> ReadRecordsJson(const std::string& path);

// Two little-endian u64 dims followed by row-major little-endian f64.
void WriteMatrixBinary(const Matrix& m, const std::string& path);
Matrix ReadMatrixBinary(const std::string& path);

}  // namespace mplab

#endif  // MPLAB_REPORT_HPP_
