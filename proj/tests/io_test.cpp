// Copyright 2026 The ncmarkov Authors
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

#include "ncm/io.hpp"

#include <gtest/gtest.h>

#include "ncm/error.hpp"
#include "support.hpp"

namespace ncm {
namespace {

using testing::model_of;
using testing::random_model;

const std::string kData = NCM_TEST_DATA;

TEST(ModelFile, RoundTripIsBitIdentical) {
  for (const InteractionModel& m :
       {random_model(1), random_model(2, {3, 2, 2}), model_of("partial_swap:0.3"), random_model(3, {1, 3, 3})}) {
    const InteractionModel back = io::parse_model(io::model_to_json(m));
    EXPECT_EQ(back.dim_h, m.dim_h);
    EXPECT_EQ(back.dim_k, m.dim_k);
    EXPECT_EQ(back.dim_p, m.dim_p);
    EXPECT_EQ(back.u, m.u);
    EXPECT_EQ(back.omega_h, m.omega_h);
    EXPECT_EQ(back.omega_k, m.omega_k);
    EXPECT_EQ(back.omega_p, m.omega_p);
    EXPECT_EQ(io::model_to_json(back), io::model_to_json(m));
  }
}

TEST(ModelFile, RowMajorLayout) {
  InteractionModel m = model_of("identity");
  m.u(0, 1) = Complex(0.25, -0.5);
  const std::string text = io::model_to_json(m);
  EXPECT_NE(text.find("\"u\": [\n    [1, 0], [0.25, -0.5], [0, 0], [0, 0],"), std::string::npos) << text;
}

TEST(ModelFile, LoadsFixtures) {
  const InteractionModel swap = io::load_model(kData + "/swap.json");
  EXPECT_TRUE(validate(swap).empty());
  EXPECT_EQ(swap.u, testing::swap_matrix(2));
  EXPECT_FALSE(validate(io::load_model(kData + "/vacuum_violation.json")).empty());
}

TEST(ModelFile, MalformedInputIsShapeError) {
  EXPECT_THROW(io::load_model(kData + "/malformed.json"), ShapeError);
  EXPECT_THROW(io::load_model(kData + "/dim_mismatch.json"), ShapeError);
  EXPECT_THROW(io::load_model(kData + "/does_not_exist.json"), ShapeError);
  EXPECT_THROW(io::parse_model("[1, 2]"), ShapeError);
  EXPECT_THROW(io::parse_model(R"({"dim_h": 1.5, "dim_k": 1, "dim_p": 1})"), ShapeError);
  EXPECT_THROW(io::parse_model(R"({"dim_h": 1, "dim_k": 1, "dim_p": 1, "omega_h": [[1, 0]],
      "omega_k": [[1, 0]], "omega_p": [[1, 0]], "u": [[1, 0], [0, 0]]})"),
               ShapeError);
  EXPECT_THROW(io::parse_model(R"({"dim_h": 1, "dim_k": 1, "dim_p": 1, "omega_h": [[1, 0]],
      "omega_k": [1], "omega_p": [[1, 0]], "u": [[1, 0]]})"),
               ShapeError);
  EXPECT_NO_THROW(io::parse_model(R"({"dim_h": 1, "dim_k": 1, "dim_p": 1, "omega_h": [[1, 0]],
      "omega_k": [[1, 0]], "omega_p": [[1, 0]], "u": [[1, 0]]})"));
}

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_real(1.0), "1");
  EXPECT_EQ(std::stod(io::format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Csv, RecordsHaveResidualRow) {
  RecordDistribution d;
  d.words = {Word(), Word(std::vector<int>{1, 2})};
  d.probabilities = {0.25, 0.5};
  d.residual = 0.25;
  io::Header h{"transfer", 3, {{"max_len", "1"}}};
  EXPECT_EQ(io::records_csv(h, d),
            "# tool: ncmarkov " + io::tool_version() +
                "\n# command: transfer\n# seed: 3\n# max_len: 1\nword,probability\n-,0.25\n1.2,0.5\nresidual,0.25\n");
}

TEST(Csv, CoefficientRowsCarryPartialDefect) {
  const InteractionModel m = model_of("swap");
  const TransferSeries s = series(extract_colligation(m, canonical_frame(m)), 1);
  const std::string csv = io::coefficients_csv({"transfer", 0, {}}, s);
  EXPECT_NE(csv.find("word,length,row,col,re,im,partial_defect\n"), std::string::npos);
  EXPECT_NE(csv.find("-,0,0,0,0,0,1\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("1,1,0,0,1,0,0\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("2,1,0,1,1,0,0\n"), std::string::npos) << csv;
}

TEST(Json, DiagnosticsFieldNames) {
  const std::string text = io::diagnostics_json({"diagnose", 0, {}}, diagnose(model_of("swap")));
  for (const char* field : {"\"fixed_space_dim\"", "\"ergodic\"", "\"gramian\"", "\"gramian_defect\"", "\"observable\"",
                            "\"stability_radius_estimate\"", "\"stable\"", "\"inner_defects\"", "\"consistent\"",
                            "\"xfixed\"", "\"seed\"", "\"version\""}) {
    EXPECT_NE(text.find(field), std::string::npos) << field;
  }
}

}  // namespace
}  // namespace ncm
