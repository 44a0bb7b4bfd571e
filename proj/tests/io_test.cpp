// Copyright 2026 The qspforge Authors
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

#include "qspforge/io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace qspforge {
namespace {

using io::Json;

const std::string kFixtures = QSPFORGE_FIXTURES;

TEST(StateDocument, RoundTripIsBitExact) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const PolynomialState s = evaluate_protocol_3d(random_protocol_3d(trial % 5, rng()));
    const std::string text = io::dump(io::state_to_json(s));
    const PolynomialState back = io::state_from_json(io::parse_json(text));
    EXPECT_EQ(back, s);
    EXPECT_EQ(io::dump(io::state_to_json(back)), text);
  }
}

TEST(StateDocument, CounterexampleFixtureMatchesHandCopy) {
  const PolynomialState s =
      io::state_from_json(io::load_json_file(kFixtures + "/counterexample.json"));
  EXPECT_LE(l2_distance(s, testing::counterexample()), 1e-15);
}

TEST(StateDocument, BadExponentLengthNamesTheTerm) {
  const std::string text = R"({"schema_version": "1", "num_vars": 2, "dim": 2,
    "kind": "analytic", "terms": [
      {"exp": [0, 0], "coeff": [[1, 0], [0, 0]]},
      {"exp": [1], "coeff": [[1, 0], [0, 0]]}]})";
  try {
    io::state_from_json(io::parse_json(text));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::Schema);
    EXPECT_NE(std::string(e.what()).find("terms[1]"), std::string::npos) << e.what();
  }
}

TEST(StateDocument, RationalStringsAndVersion) {
  const std::string text = R"({"schema_version": "1", "num_vars": 1, "dim": 2,
    "kind": "laurent", "terms": [{"exp": [-1], "coeff": [["-122/37", "8/37"], 0.5]}]})";
  const PolynomialState s = io::state_from_json(io::parse_json(text));
  const CVector v = s.coefficient(MultiIndex{-1});
  EXPECT_EQ(v[0], Complex(-122.0 / 37, 8.0 / 37));
  EXPECT_EQ(v[1], Complex(0.5, 0));
  Json wrong = io::parse_json(text);
  wrong["schema_version"] = "2";
  EXPECT_THROW(io::state_from_json(wrong), Error);
  Json bad = io::parse_json(text);
  bad["terms"][0]["coeff"][0][0] = "1/0";
  EXPECT_THROW(io::state_from_json(bad), Error);
}

TEST(Json, SyntaxErrorReportsLine) {
  try {
    io::parse_json("{\n  \"a\": 1,\n  oops\n}");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::Schema);
    EXPECT_EQ(e.details().at("line"), 3);
  }
  try {
    io::load_json_file("/nonexistent/file.json");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(ProtocolDocument, RoundTripEveryFamily) {
  std::vector<io::AnyProtocol> protocols{
      random_protocol_3d(3, 1),
      random_protocol_2d_choice(4, 2, Picture::Laurent),
      random_protocol_1d({Picture::Analytic, SignalBasis::Wz, Algebra::XRotations}, 3, 3),
      random_protocol_1d({Picture::Laurent, SignalBasis::Wx, Algebra::FullSU2}, 3, 4),
  };
  for (const auto &p : protocols) {
    const Json doc = io::protocol_to_json(p);
    const io::AnyProtocol back = io::protocol_from_json(io::parse_json(io::dump(doc)));
    EXPECT_EQ(back.index(), p.index());
    EXPECT_EQ(io::protocol_to_json(back), doc);
    EXPECT_EQ(io::evaluate(back), io::evaluate(p));
  }
}

TEST(ProtocolDocument, NonUnitaryOpReportsResidual) {
  Matrix m = haar_random_unitary(3, 9).matrix();
  m *= 1.01;
  Json doc = io::protocol_to_json(Protocol3D{{UnitaryMatrix::identity(3)}});
  Json rows = Json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  doc["ops"].push_back(rows);
  try {
    io::protocol_from_json(doc);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
    EXPECT_NEAR(e.details().at("residual"), 0.0201, 1e-9);
    EXPECT_EQ(e.details().at("op"), 1);
  }
}

TEST(ProtocolDocument, RotationPhasesWithoutOps) {
  const Json doc = io::parse_json(R"({"schema_version": "1", "family": "univariate-analytic",
    "basis": "Wz", "algebra": "x-rotations", "phases": [-0.7853981633974483, 0.7853981633974483]})");
  const auto p = std::get<Protocol1D>(io::protocol_from_json(doc));
  EXPECT_EQ(p.ops.size(), 2u);
  EXPECT_EQ(p.convention.algebra, Algebra::XRotations);
}

TEST(Verify, FirstDifference) {
  const Json a = io::parse_json(R"({"x": [1.0, 2.0], "y": "s"})");
  Json b = a;
  EXPECT_EQ(io::first_difference(a, b, 1e-12), "");
  b["x"][1] = 2.0 + 1e-6;
  EXPECT_EQ(io::first_difference(a, b, 1e-9), "/x/1");
  EXPECT_EQ(io::first_difference(a, b, 1e-3), "");
  b["z"] = 1;
  EXPECT_NE(io::first_difference(a, b, 1e-3), "");
}

}  // namespace
}  // namespace qspforge
