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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mplab/error.hpp"

namespace mplab {
namespace {

namespace fs = std::filesystem;

std::string TempPath(const std::string& name) {
  return (fs::temp_directory_path() / ("mplab_report_" + name)).string();
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TrialRecord Sample(std::int64_t trial) {
  TrialRecord r;
  r.experiment = "equivalence";
  r.trial = trial;
  r.seed = 0xffffffffffffffffull;
  r.model = "weak-ma:3,4";  // comma forces quoting
  r.family = "identity";
  r.p = 512;
  r.n = 1024;
  r.q = 0;
  r.epsilon = 0.1;
  r.z_re = -1.0;
  r.z_im = 0.5;
  r.b_spec = "scaled:0.25";
  r.c_spec = "none";
  r.statistic = "resolvent_gap";
  r.x = 1.0 / 3.0;
  r.value = 1e-300 * static_cast<double>(trial + 1);
  r.value_im = -2.5e-17;
  r.se = 0.0;
  r.wall_ms = 12.25;
  return r;
}

TEST(Report, FieldsAndFormatDouble) {
  EXPECT_EQ(RecordFields().size(), 19u);
  EXPECT_EQ(RecordFields().front(), "experiment");
  EXPECT_EQ(FormatDouble(0.1), "0.10000000000000001");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(ParseFormat("json"), ReportFormat::kJson);
  EXPECT_THROW(ParseFormat("xml"), Error);
}

TEST(Report, SingleRecordCsvIsTwoLines) {
  const std::string path = TempPath("one.csv");
  {
    RecordWriter w(path, ReportFormat::kCsv);
    w.Write(Sample(0));
    EXPECT_EQ(w.written(), 1u);
  }
  const std::string text = Slurp(path);
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2);
  EXPECT_NE(text.find("\"weak-ma:3,4\""), std::string::npos);
  fs::remove(path);
}

TEST(Report, CsvAndJsonRoundTrip) {
  const std::string csv = TempPath("rt.csv");
  const std::string json = TempPath("rt.json");
  std::vector<TrialRecord> recs;
  for (int t = 0; t < 5; ++t) recs.push_back(Sample(t));
  recs[3].model = "he said \"hi\"";
  {
    RecordWriter a(csv, ReportFormat::kCsv);
    RecordWriter b(json, ReportFormat::kJson);
    for (const auto& r : recs) {
      a.Write(r);
      b.Write(r);
    }
  }
  const auto from_csv = ReadRecordsCsv(csv);
  const auto from_json = ReadRecordsJson(json);
  ASSERT_EQ(from_csv.size(), recs.size());
  ASSERT_EQ(from_json.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(from_csv[i], recs[i]) << i;
    EXPECT_EQ(from_json[i], from_csv[i]) << i;
  }
  fs::remove(csv);
  fs::remove(json);
}

TEST(Report, EmptyJsonIsValidArray) {
  const std::string path = TempPath("empty.json");
  { RecordWriter w(path, ReportFormat::kJson); }
  EXPECT_TRUE(ReadRecordsJson(path).empty());
  fs::remove(path);
}

TEST(Report, NonFiniteJsonIsNull) {
  const std::string path = TempPath("nan.json");
  TrialRecord r = Sample(0);
  r.value = std::numeric_limits<double>::infinity();
  {
    RecordWriter w(path, ReportFormat::kJson);
    w.Write(r);
  }
  EXPECT_NE(Slurp(path).find("\"value\":null"), std::string::npos) << Slurp(path);
  fs::remove(path);
}

TEST(Report, StreamsManyRecords) {
  const std::string path = TempPath("many.csv");
  {
    RecordWriter w(path, ReportFormat::kCsv);
    for (int t = 0; t < 10000; ++t) w.Write(Sample(t));
    w.Close();
    EXPECT_EQ(w.written(), 10000u);
  }
  const auto back = ReadRecordsCsv(path);
  ASSERT_EQ(back.size(), 10000u);
  EXPECT_EQ(back.back(), Sample(9999));
  fs::remove(path);
}

TEST(Report, UnwritablePathIsIoError) {
  try {
    RecordWriter w("/nonexistent-dir/x.csv", ReportFormat::kCsv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Report, MalformedCsvIsParseError) {
  const std::string path = TempPath("bad.csv");
  {
    std::ofstream out(path);
    out << "experiment,trial\nesd,1\n";
  }
  try {
    ReadRecordsCsv(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  fs::remove(path);
}

TEST(MatrixBinary, ExactLayout) {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const std::string path = TempPath("m.bin");
  WriteMatrixBinary(m, path);
  const std::string bytes = Slurp(path);
  ASSERT_EQ(bytes.size(), 16u + 6u * 8u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 2u);
  for (int i = 1; i < 8; ++i) EXPECT_EQ(bytes[static_cast<std::size_t>(i)], 0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 3u);
  // Row-major: second stored value is m(0, 1) = 2.0 = 0x4000000000000000.
  EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 8 + 7]), 0x40u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 8 + 6]), 0x00u);
  EXPECT_EQ(ReadMatrixBinary(path), m);
  fs::remove(path);
}

TEST(MatrixBinary, TruncatedFileRejected) {
  const std::string path = TempPath("short.bin");
  {
    std::ofstream out(path, std::ios::binary);
    const char hdr[16] = {4, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0};
    out.write(hdr, 16);
  }
  EXPECT_THROW(ReadMatrixBinary(path), Error);
  fs::remove(path);
}

}  // namespace
}  // namespace mplab
