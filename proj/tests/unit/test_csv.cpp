/*
 * Copyright 2026 The nulldist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nulldist/csv.hpp"
#include "nulldist/random.hpp"

namespace nulldist {
namespace {

TEST(FormatDouble, Shortest) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(5.0), "5");
  EXPECT_EQ(format_double(-2.5e-10), "-2.5e-10");
  EXPECT_EQ(format_double(NAN), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(FormatDouble, RoundTrips) {
  Rng rng(1);
  for (int k = 0; k < 10000; ++k) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
    const std::string s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
    std::string mantissa;
    for (char c : s.substr(0, s.find('e')))
      if (std::isdigit(static_cast<unsigned char>(c))) mantissa += c;
    mantissa.erase(0, mantissa.find_first_not_of('0'));
    mantissa.erase(mantissa.find_last_not_of('0') + 1);
    EXPECT_LE(mantissa.size(), 17u) << s;
  }
}

TEST(Csv, FieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  const std::string f[] = {"x", "[1,2]", ""};
  EXPECT_EQ(csv_row(f), "x,\"[1,2]\",\n");
}

TEST(Csv, FormatPoint) { EXPECT_EQ(format_point(Point{0.5, -1, 3}), "[0.5,-1,3]"); }

TEST(Csv, AtomicWrite) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nulldist_csv_test" / "nested";
  fs::remove_all(dir.parent_path());
  const fs::path file = dir / "out.csv";
  write_file_atomic(file, "a,b\n1,2\n");
  write_file_atomic(file, "a,b\n3,4\n");
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "a,b\n3,4\n");
  EXPECT_FALSE(fs::exists(fs::path(file) += ".tmp"));
  fs::remove_all(dir.parent_path());
}

}  // namespace
}  // namespace nulldist
