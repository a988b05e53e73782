// Copyright 2026 The Marble Drop Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the command line tool as a subprocess.

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("marbledrop-cli-") + info->name() + "-" +
            std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = (env.empty() ? "" : env + " ") +
                            std::string("'") + MARBLEDROP_CLI_PATH + "' " +
                            args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  std::string Fixture(const std::string& name) const {
    return std::string(MARBLEDROP_FIXTURE_DIR) + "/" + name;
  }

  // File name -> contents under `root`, manifest excluded.
  std::map<std::string, std::string> Tree(const fs::path& root) const {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file() || e.path().filename() == "manifest.json") {
        continue;
      }
      files[fs::relative(e.path(), root).generic_string()] = Slurp(e.path());
    }
    return files;
  }

  fs::path dir_;
};

TEST_F(CliTest, CheckTable1Passes) {
  const Result r = Run("solve --all --check-table1");
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* g : {"G1 ", "G2 ", "G3 ", "G4 ", "G1t", "G3t"}) {
    EXPECT_NE(r.out.find(std::string("table1 ") + g), std::string::npos) << g;
  }
  EXPECT_NE(r.out.find("table1 check: passed"), std::string::npos);
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
}

TEST_F(CliTest, SolveNamedGameAndTreeFile) {
  const Result named = Run("solve G1");
  EXPECT_EQ(named.code, 0);
  EXPECT_NE(named.out.find("EFR  C: a;e | P: d;g"), std::string::npos)
      << named.out;
  const Result file = Run("solve --tree '" + Fixture("g1.tree") + "'");
  EXPECT_EQ(file.code, 0) << file.err;
  EXPECT_EQ(file.out.substr(file.out.find('\n')),
            named.out.substr(named.out.find('\n')));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run("--no-such-flag").code, 1);
  EXPECT_EQ(Run("solve --bogus").code, 1);
  EXPECT_EQ(Run("solve G9").code, 2);
  EXPECT_EQ(Run("simulate --profiles '" + (dir_ / "missing.txt").string() + "'")
                .code,
            2);
  const Result help = Run("--help");
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
}

TEST_F(CliTest, TreeParseErrorNamesTheLine) {
  const Result r = Run("solve --tree '" + Fixture("alternation.tree") + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("alternate"), std::string::npos) << r.err;
  std::ofstream(dir_ / "bad.tree")
      << "node 1 mover=C exit=a:(4,1) cont=b\nnode 2 mover=Q exit=c:(1,2) "
         "cont=d\n";
  const Result bad = Run("solve --tree '" + (dir_ / "bad.tree").string() + "'");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
}

TEST_F(CliTest, SimulateAndAnalyzeAreDeterministic) {
  const std::string profiles = Fixture("profiles_small.txt");
  const Result a = Run("simulate --profiles '" + profiles +
                       "' --seed 9 --threads 1 --out '" +
                       (dir_ / "a").string() + "'");
  ASSERT_EQ(a.code, 0) << a.err;
  const Result b = Run("simulate --profiles '" + profiles +
                       "' --seed 9 --threads 3 --out '" +
                       (dir_ / "b").string() + "'");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  const auto ta = Tree(dir_ / "a");
  EXPECT_EQ(ta, Tree(dir_ / "b"));
  int logs = 0;
  for (const auto& [name, body] : ta) logs += name.rfind("logs/", 0) == 0;
  EXPECT_EQ(logs, 8);
  EXPECT_TRUE(fs::exists(dir_ / "a" / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "summary.csv"));

  const Result r1 = Run("analyze '" + (dir_ / "a" / "logs").string() +
                        "' --restarts 3 --out '" + (dir_ / "r1").string() + "'");
  ASSERT_EQ(r1.code, 0) << r1.err;
  const Result r2 = Run("analyze '" + (dir_ / "b" / "logs").string() +
                        "' --restarts 3 --out '" + (dir_ / "r2").string() + "'");
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(Tree(dir_ / "r1"), Tree(dir_ / "r2"));
  EXPECT_TRUE(fs::exists(dir_ / "r1" / "regression.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "r1" / "plot_results.py"));
}

TEST_F(CliTest, AnalyzeRefusesBrokenLogs) {
  const std::string profiles = Fixture("profiles_small.txt");
  ASSERT_EQ(Run("simulate --profiles '" + profiles + "' --out '" +
                (dir_ / "s").string() + "'")
                .code,
            0);
  const fs::path log = dir_ / "s" / "logs" / "sim0001.jsonl";
  std::string text = Slurp(log);
  // Corrupt the third line.
  std::size_t pos = 0;
  for (int i = 0; i < 2; ++i) pos = text.find('\n', pos) + 1;
  std::string broken = text;
  broken.insert(pos, "{oops\n");
  std::ofstream(log, std::ios::binary) << broken;
  Result r = Run("analyze '" + (dir_ / "s" / "logs").string() + "' --out '" +
                 (dir_ / "r").string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  // A log claiming another format version.
  std::string mixed = text;
  mixed.replace(0, text.find('\n'),
                R"({"format":"marbledrop-eventlog","version":2})");
  std::ofstream(log, std::ios::binary) << mixed;
  r = Run("analyze '" + (dir_ / "s" / "logs").string() + "' --out '" +
          (dir_ / "r").string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("version"), std::string::npos) << r.err;

  EXPECT_EQ(Run("analyze '" + (dir_ / "nowhere").string() + "'").code, 2);
}

TEST_F(CliTest, ExportAndOutputDirEnvironment) {
  const Result r =
      Run("export", "MARBLEDROP_OUTPUT_DIR='" + (dir_ / "env").string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Slurp(dir_ / "env" / "trees" / "G1.tree"),
            Slurp(Fixture("g1.tree")));
  EXPECT_TRUE(fs::exists(dir_ / "env" / "practice" / "practice-14.tree"));
  EXPECT_TRUE(fs::exists(dir_ / "env" / "table1.txt"));
  const Result solve = Run("solve --tree '" +
                           (dir_ / "env" / "practice" / "practice-07.tree")
                               .string() +
                           "'");
  EXPECT_EQ(solve.code, 0) << solve.err;
}

}  // namespace
