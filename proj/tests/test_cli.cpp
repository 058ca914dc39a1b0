#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rbss/cli.hpp"

using namespace rbss;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "rbss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("rbss_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, Bounds) {
  auto r = call({"bounds", "--h", "2", "--group", "C4"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "13\n");
  r = call({"bounds", "--h", "2", "--group", "Q8"});
  EXPECT_EQ(r.out, "25\n");
  EXPECT_NE(r.err.find("23"), std::string::npos);
  EXPECT_EQ(call({"bounds", "--h", "4", "--group", "C4", "--order", "12"}).out, "61\n");
  EXPECT_EQ(call({"bounds", "--h", "3", "--group", "Q8"}).code, cli::kUsage);
  EXPECT_EQ(call({"bounds", "--h", "2", "--group", "C4", "--order", "8"}).code, cli::kUsage);
  EXPECT_EQ(call({"bounds"}).code, cli::kUsage);
  EXPECT_EQ(call({"bounds", "--h", "two"}).code, cli::kUsage);
}

TEST(Cli, ThetaAndRegions) {
  EXPECT_EQ(call({"theta", "--h", "1"}).out, "8\n");
  EXPECT_EQ(call({"theta", "--h", "2", "--group", "C4"}).out, "32768\n");
  auto r = call({"regions", "--t", "0:3", "--s", "0:1"});
  EXPECT_EQ(r.code, cli::kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t\ts\tV\tslice_hfpss\thfpss_tate");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 8);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, cli::kUsage);
  EXPECT_EQ(call({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(call({"run", "--model", "adams", "--h", "1"}).code, cli::kUsage);
  EXPECT_EQ(call({"run", "--h", "1", "--window", "garbage"}).code, cli::kUsage);
  EXPECT_EQ(call({"run", "--h", "1", "--out", "x.png"}).code, cli::kUsage);
  EXPECT_EQ(call({"run", "--h", "1", "--config", "/nonexistent/cfg"}).code, cli::kUsage);
  EXPECT_EQ(call({"--help"}).code, cli::kOk);
}

TEST(Cli, Verify) {
  for (const char* h : {"1", "2", "3"}) {
    auto r = call({"verify", "--h", h});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("ok"), std::string::npos);
  }
  // Stopping before the d7 page leaves classes above the bound.
  auto r = call({"verify", "--h", "2", "--rmax", "3"});
  EXPECT_EQ(r.code, cli::kMismatch);
}

TEST(Cli, RunOutputsAreDeterministic) {
  auto d = scratch("det");
  std::vector<std::string> base = {"run", "--model", "slice", "--h", "2", "--localized", "v2", "--window", "-4:16x0:9"};
  for (const char* run : {"a", "b"}) {
    auto args = base;
    for (const char* ext : {"tsv", "json", "svg", "md"}) {
      args.push_back("--out");
      args.push_back((d / (std::string(run) + "." + ext)).string());
    }
    ASSERT_EQ(call(args).code, cli::kOk);
  }
  for (const char* ext : {"tsv", "json", "svg", "md"}) {
    std::string a = slurp(d / (std::string("a.") + ext)), b = slurp(d / (std::string("b.") + ext));
    EXPECT_FALSE(a.empty()) << ext;
    EXPECT_EQ(a, b) << ext;
  }
  auto j = nlohmann::json::parse(slurp(d / "a.json"));
  EXPECT_EQ(j["vanishing_line"], 7);
  EXPECT_EQ(j["collapse_page"], 8);
  ASSERT_FALSE(j["differentials"].empty());
  for (const auto& e : j["differentials"]) {
    EXPECT_TRUE(e.contains("page"));
    EXPECT_TRUE(e.contains("source"));
    EXPECT_TRUE(e.contains("target"));
    EXPECT_TRUE(e.contains("matrix_rank"));
  }
  EXPECT_EQ(slurp(d / "a.svg").rfind("<svg", 0), 0u);
  // Stdout TSV matches the file.
  EXPECT_EQ(call(base).out, slurp(d / "a.tsv"));
}

TEST(Cli, ConfigFileAndOverride) {
  auto d = scratch("cfg");
  {
    std::ofstream cfg(d / "run.cfg");
    cfg << "# height one\nmodel = slice\nh = 1\nlocalized = v1\nwindow = -8:24x0:12\n";
  }
  std::string path = (d / "run.cfg").string();
  auto from_cfg = call({"run", "--config", path});
  auto direct = call({"run", "--model", "slice", "--h", "1", "--localized", "v1", "--window", "-8:24x0:12"});
  EXPECT_EQ(from_cfg.code, cli::kOk);
  EXPECT_EQ(from_cfg.out, direct.out);
  auto overridden = call({"run", "--config", path, "--window", "0:4x0:2"});
  auto small = call({"run", "--model", "slice", "--h", "1", "--localized", "v1", "--window", "0:4x0:2"});
  EXPECT_EQ(overridden.out, small.out);
  EXPECT_NE(overridden.out, from_cfg.out);
}

TEST(Cli, ParseHelpers) {
  auto w = cli::parse_window("-8:24x0:12x-2:2");
  EXPECT_EQ(w.stem_lo, -8);
  EXPECT_EQ(w.stem_hi, 24);
  EXPECT_EQ(w.filt_hi, 12);
  EXPECT_EQ(w.twist_lo, -2);
  EXPECT_EQ(w.twist_hi, 2);
  EXPECT_THROW(cli::parse_window("1:2"), Error);
  EXPECT_THROW(cli::parse_localized("v1,w2"), Error);
  EXPECT_EQ(cli::extension("a/b.c.json"), "json");
}

TEST(Cli, IndeterminateWindowDetection) {
  RunConfig cfg;
  cfg.n = 1;
  cfg.localized = {"v1"};
  cfg.window = Window{0, 4, 0, 4, 0, 0, -1};
  Page p = build_e2(cfg);
  EXPECT_FALSE(cli::window_indeterminate(p));
  for (auto& [k, c] : p.cells)
    if (c.in_window) {
      c.z_ok = false;
      break;
    }
  EXPECT_TRUE(cli::window_indeterminate(p));
  EXPECT_NE(page_tsv(p).find("[indeterminate]"), std::string::npos);
}
