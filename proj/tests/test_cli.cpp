#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "layrel/cli.hpp"
#include "layrel/relation_text.hpp"

namespace fs = std::filesystem;

namespace {

// A case file lists one argument per `$ ` line, then `? <exit code>`, then
// the expected standard output verbatim.
struct GoldenCase {
  std::vector<std::string> args;
  int code = 0;
  std::string expected;
  bool has_code = false;
};

GoldenCase read_case(const fs::path &path) {
  std::ifstream in(path);
  GoldenCase c;
  std::string line;
  while (std::getline(in, line)) {
    if (!c.has_code && line.rfind("$ ", 0) == 0) {
      c.args.push_back(line.substr(2));
    } else if (!c.has_code && line.rfind("? ", 0) == 0) {
      c.code = std::stoi(line.substr(2));
      c.has_code = true;
    } else {
      c.expected += line + "\n";
    }
  }
  return c;
}

void write_case(const fs::path &path, const GoldenCase &c, int code,
                const std::string &out) {
  std::ofstream f(path);
  for (const auto &a : c.args)
    f << "$ " << a << "\n";
  f << "? " << code << "\n" << out;
}

std::vector<fs::path> case_files() {
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(LAYREL_GOLDEN_DIR))
    if (e.path().extension() == ".case")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

int run(const std::vector<std::string> &args, std::string &out, std::string &err) {
  std::ostringstream o, e;
  const int code = layrel::run_cli(args, o, e);
  out = o.str();
  err = e.str();
  return code;
}

} // namespace

TEST(CliGolden, AllCases) {
  const bool update = std::getenv("LAYREL_UPDATE_GOLDEN") != nullptr;
  const auto files = case_files();
  ASSERT_FALSE(files.empty());
  for (const auto &path : files) {
    const auto c = read_case(path);
    std::string out, err;
    const int code = run(c.args, out, err);
    if (update) {
      write_case(path, c, code, out);
      continue;
    }
    ASSERT_TRUE(c.has_code) << path;
    EXPECT_EQ(code, c.code) << path.filename() << "\n" << err;
    EXPECT_EQ(out, c.expected) << path.filename();
    if (code != 0)
      EXPECT_FALSE(err.empty()) << path.filename();
  }
}

TEST(Cli, JsonOutputRoundTrips) {
  std::string out, err;
  ASSERT_EQ(run({"--format", "json", "rel", "eval",
                 "{ [c0, c1] -> [c0 + 4*c1] : 0 <= c0 <= 3 and 0 <= c1 <= 1 }"},
                out, err),
            0);
  const std::string first = out;
  ASSERT_EQ(run({"--format", "json", "rel", "eval", first}, out, err), 0) << err;
  EXPECT_EQ(out, first);
  EXPECT_EQ(layrel::parse_relation(first).size(), 8u);
}

TEST(Cli, ReadsRelationFiles) {
  const fs::path file = fs::temp_directory_path() / "layrel_cli_relation.txt";
  {
    std::ofstream f(file);
    f << "{ [c] -> [9*c] : 0 <= c <= 2 }\n";
  }
  std::string out, err;
  EXPECT_EQ(run({"cute", "from-mapping", "--strides", "9", "@" + file.string()}, out, err), 0)
      << err;
  EXPECT_EQ(out, "3:9\n");
  fs::remove(file);
}

TEST(Cli, ExitCodes) {
  std::string out, err;
  EXPECT_EQ(run({}, out, err), 2);
  EXPECT_EQ(run({"--help"}, out, err), 0);
  EXPECT_EQ(run({"cute", "complement", "(2,2):(1,1)", "8"}, out, err), 1);
  EXPECT_NE(err.find("complement undefined"), std::string::npos);
  EXPECT_EQ(run({"--format", "yaml", "cute", "inverse", "8:1"}, out, err), 2);
  EXPECT_EQ(run({"cute", "from-mapping", "{ [c] -> [c] : 0 <= c <= 3 }"}, out, err), 2);
  EXPECT_EQ(run({"swizzle", "map", "1", "x", "1"}, out, err), 2);
}
