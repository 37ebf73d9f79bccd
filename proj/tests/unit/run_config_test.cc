// Copyright 2026 The Rolegrad Authors.
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


#include "rolegrad/run_config.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rolegrad/error.h"

namespace rolegrad {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(RunConfig, PresetsParseAndValidate) {
  ASSERT_GE(preset_names().size(), 7u);
  for (const std::string& name : preset_names()) {
    const RunConfig c = load_run_config(name);
    EXPECT_EQ(c.name, name);
    EXPECT_NO_THROW(c.validate()) << name;
  }
}

TEST(RunConfig, NamedRows) {
  const RunConfig a = load_run_config("conll05-3pct-ufo");
  EXPECT_DOUBLE_EQ(a.weights.lambda_u, 2.0);
  EXPECT_DOUBLE_EQ(a.weights.lambda_o, 0.5);
  EXPECT_DOUBLE_EQ(a.weights.lambda_f, 0.5);
  EXPECT_EQ(a.schedule.stage1_epochs, 30);
  EXPECT_DOUBLE_EQ(a.schedule.stage1_lr, 3e-5);
  EXPECT_EQ(a.schedule.stage2_epochs, 5);
  EXPECT_DOUBLE_EQ(a.schedule.stage2_lr, 1e-5);
  const RunConfig b = load_run_config("conll12-full-ufo");
  EXPECT_DOUBLE_EQ(b.weights.lambda_o, 1.0);
  EXPECT_DOUBLE_EQ(b.weights.lambda_f, 0.1);
  const RunConfig u = load_run_config("conll05-full-u");
  EXPECT_TRUE(u.enabled('U'));
  EXPECT_FALSE(u.enabled('O'));
  EXPECT_FALSE(u.enabled('F'));
}

TEST(RunConfig, ShippedFilesMatchEmbeddedPresets) {
  for (const std::string& name : preset_names()) {
    const auto path = std::filesystem::path(ROLEGRAD_PRESET_DIR) / (name + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(nlohmann::json::parse(slurp(path)),
              nlohmann::json::parse(*preset_json(name)))
        << name;
    EXPECT_EQ(load_run_config(path.string()).to_json(),
              load_run_config(name).to_json());
  }
}

TEST(RunConfig, MergeOverridesOnlyGivenKeys) {
  const RunConfig base = load_run_config("desk-u");
  const RunConfig c = merge_config(base, R"({"lambda_u": 3, "seed": 9})", "x");
  EXPECT_DOUBLE_EQ(c.weights.lambda_u, 3.0);
  EXPECT_EQ(c.schedule.seed, 9u);
  EXPECT_EQ(c.schedule.stage1_epochs, base.schedule.stage1_epochs);
  EXPECT_TRUE(c.schedule.freeze_transitions);
}

TEST(RunConfig, ToJsonRoundTrips) {
  const RunConfig c = load_run_config("desk-ufo");
  const RunConfig back = merge_config(RunConfig{}, c.to_json(), "dump");
  EXPECT_EQ(back.to_json(), c.to_json());
}

TEST(RunConfig, StrictKeysAndTypes) {
  EXPECT_THROW(merge_config({}, R"({"lambda_q": 1})", "x"), ConfigError);
  EXPECT_THROW(merge_config({}, R"({"lambda_u": "high"})", "x"), ConfigError);
  EXPECT_THROW(merge_config({}, "[1, 2]", "x"), ConfigError);
  EXPECT_THROW(merge_config({}, "{", "x"), ConfigError);
  try {
    merge_config({}, R"({"nope": 1})", "my.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("my.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
}

TEST(RunConfig, ValidationFailures) {
  RunConfig c = merge_config({}, R"({"constraints": "UX"})", "x");
  EXPECT_THROW(c.validate(), ConfigError);
  c = merge_config({}, R"({"constraints": "U", "lambda_o": 1})", "x");
  EXPECT_THROW(c.validate(), ConfigError);
  c = merge_config({}, R"({"threads": 0})", "x");
  EXPECT_THROW(c.validate(), ConfigError);
  c = merge_config({}, R"({"lambda_u": -1})", "x");
  EXPECT_THROW(c.validate(), ConfigError);
  c = merge_config({}, R"({"dropout": 1.0})", "x");
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(load_run_config("no-such-preset"), ConfigError);
}

TEST(RunConfig, PathStemFallsBackToPreset) {
  const RunConfig c = load_run_config("/nonexistent/dir/desk-u.json");
  EXPECT_EQ(c.name, "desk-u");
}

}  // namespace
}  // namespace rolegrad
