/*
 * Copyright 2026 The Mirage Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Runs the mirage executable and checks exit statuses and emitted files.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "mirage/ingest.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kCli = MIRAGE_CLI_PATH;
const fs::path kSamples = MIRAGE_SAMPLES_DIR;

int run(const std::string& args) {
  const std::string cmd = "\"" + kCli.string() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mirage_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("simulate --list"), 0);
  EXPECT_EQ(run("simulate no-such-preset --seed 1"), 2);
  EXPECT_EQ(run("simulate toy-accuracy"), 2);  // no seed
  EXPECT_EQ(run("simulate toy-accuracy --seed 1 --set colour=red"), 2);
  EXPECT_EQ(run("score"), 2);
}

TEST(Cli, ScoreExitStatuses) {
  const auto dir = scratch("score");
  EXPECT_EQ(run("score /nonexistent/results.csv"), 5);
  mirage::write_text_file(dir / "bad.csv", "task,metric\n");
  EXPECT_EQ(run("score \"" + (dir / "bad.csv").string() + "\""), 3);
  mirage::write_text_file(dir / "dup.csv",
                          "task,metric,family,scale,score,test_size\na,m,f,1,0,\na,m,f,1,1,\n");
  EXPECT_EQ(run("score \"" + (dir / "dup.csv").string() + "\""), 4);
  mirage::write_text_file(dir / "short.csv",
                          "task,metric,family,scale,score,test_size\na,m,f,1,0,\na,m,f,2,1,\n");
  EXPECT_EQ(run("score \"" + (dir / "short.csv").string() + "\""), 4);
  EXPECT_EQ(run("score \"" + (kSamples / "step_curves.csv").string() + "\" -o \"" +
                dir.string() + "\""),
            0);
  const auto report = mirage::read_text_file(dir / "emergence_report.csv");
  EXPECT_NE(report.find("arithmetic,exact_match,family-a,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "emergence_summary.csv"));
  EXPECT_EQ(run("meta \"" + (kSamples / "step_curves.csv").string() + "\""), 0);
  EXPECT_EQ(run("score \"" + (kSamples / "step_curves.csv").string() + "\" -t -1"), 2);
}

TEST(Cli, SimulateAndPlot) {
  const auto dir = scratch("simulate");
  const auto out = dir / "run";
  ASSERT_EQ(run("simulate toy-brier --seed 3 --set grid.count=5 --set test_size=100 -o \"" +
                out.string() + "\" -j 2"),
            0);
  EXPECT_TRUE(fs::exists(out / "toy-brier.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.txt"));
  // Rerun from the manifest into a second directory.
  const auto again = dir / "again";
  ASSERT_EQ(run("simulate --config \"" + (out / "manifest.txt").string() + "\" -o \"" +
                again.string() + "\""),
            0);
  EXPECT_EQ(mirage::read_text_file(out / "toy-brier.csv"),
            mirage::read_text_file(again / "toy-brier.csv"));
  EXPECT_EQ(mirage::read_text_file(out / "toy-brier.svg"),
            mirage::read_text_file(again / "toy-brier.svg"));
  EXPECT_EQ(run("plot \"" + (out / "toy-brier.plot").string() + "\" -o \"" +
                (dir / "re.svg").string() + "\""),
            0);
  EXPECT_EQ(mirage::read_text_file(dir / "re.svg"), mirage::read_text_file(out / "toy-brier.svg"));
  mirage::write_text_file(dir / "dangling.plot", "output = x.svg\nseries = missing.csv\n");
  EXPECT_EQ(run("plot \"" + (dir / "dangling.plot").string() + "\""), 5);
  EXPECT_EQ(run("plot /nonexistent.plot"), 5);
  EXPECT_EQ(run("simulate --config /nonexistent.conf"), 5);
  mirage::write_text_file(dir / "broken.conf", "preset = toy-brier\nseed\n");
  EXPECT_EQ(run("simulate --config \"" + (dir / "broken.conf").string() + "\""), 3);
}
