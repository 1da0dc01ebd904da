#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using symdyn::cli::kExitError;
using symdyn::cli::kExitFail;
using symdyn::cli::kExitPass;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = symdyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SYMDYN_TEST_DATA_DIR) + "/" + name; }
std::string golden(const std::string& name) { return std::string(SYMDYN_GOLDEN_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool one_error_line(const Run& r, const std::string& kind) {
  return r.code == kExitError && r.out.empty() && r.err.rfind("error: " + kind + ": ", 0) == 0 &&
         r.err.find('\n') == r.err.size() - 1;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("symdyn_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("gen prints the prefix") {
  CHECK(run({"gen", "--window", "1"}).out == "0\n");
  const auto r = run({"gen", "--window", "20"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == oracle::fibonacci(20) + "\n");
  CHECK(run({"gen", "--shift", "thue-morse", "--window", "16"}).out == oracle::thue_morse(16) + "\n");
  CHECK(run({"gen", "--shift", data("fibonacci.sub"), "--window", "30"}).out == oracle::fibonacci(30) + "\n");
}

TEST_CASE("lang and complexity") {
  const auto r = run({"lang", "--window", "2000", "--nmax", "4"});
  CHECK(r.code == kExitPass);
  for (const auto& f : oracle::factors(oracle::fibonacci(2000), 4)) CHECK(r.out.find(f) != std::string::npos);
  const auto c = run({"complexity", "--window", "5000", "--nmax", "8"});
  CHECK(c.code == kExitPass);
  CHECK(c.out.find("8,9") != std::string::npos);
}

TEST_CASE("errors are one line with a kind and exit 2") {
  CHECK(one_error_line(run({"gen", "--window", "0"}), "InvalidArgument"));
  CHECK(one_error_line(run({"gen", "--shift", "nosuchshift"}), "IoError"));
  CHECK(one_error_line(run({"frobnicate"}), "InvalidArgument"));
  CHECK(one_error_line(run({"perms", "--word", "1001", "--window", "50", "--nmax", "10"}), "WindowTooShort"));
  CHECK(one_error_line(run({}), "InvalidArgument"));
  CHECK(one_error_line(run({"perms", "--jump", "constant:2"}), "InvalidArgument"));
  // a word outside the window's language never recurs in it
  CHECK(one_error_line(run({"returns", "--window", "1000", "--word", "11"}), "WindowTooShort"));
  CHECK(one_error_line(run({"perms", "--word", "1001", "--jump", "constant:0"}), "InvalidArgument"));
}

TEST_CASE("validate-jump") {
  CHECK(run({"validate-jump", "--jump", "constant:2"}).code == kExitPass);
  const auto r = run({"validate-jump", "--jump", data("jump_k0_collide.txt"), "--window", "2000"});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("verdict: FAIL") != std::string::npos);
  CHECK(run({"validate-jump", "--jump", "first-return:3", "--window", "5000"}).code == kExitPass);
}

TEST_CASE("orbits and returns") {
  const auto o = run({"orbits", "--jump", "constant:3"});
  CHECK(o.code == kExitPass);
  CHECK(o.out.rfind("orbit number: 3\n", 0) == 0);
  const auto r = run({"returns", "--word", "1001", "--window", "5000"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("  1 10010\n  2 100\n") != std::string::npos);
  CHECK(r.out.find("derived sequence (first 40): 1 2 1 1 2 1 2") != std::string::npos);
}

TEST_CASE("perms on the Fibonacci shift") {
  const auto p2 = run({"perms", "--word", "1001"});
  CHECK(p2.code == kExitPass);
  CHECK(p2.out.find("entry positions: word 1001 at 1: 1[class 2] 2[class 1]") != std::string::npos);
  CHECK(p2.out.find("  100 (12)") != std::string::npos);
  CHECK(p2.out.find("  10010 (12)") != std::string::npos);
  const auto p3 = run({"perms", "--word", "1001", "--jump", "constant:3"});
  CHECK(p3.code == kExitPass);
  CHECK(p3.out.find("  100 e\n") != std::string::npos);
  CHECK(p3.out.find("  10010 (123)\n") != std::string::npos);
}

TEST_CASE("cocycle and localgroup") {
  const auto c = run({"cocycle", "--word", "1001", "--seed", "7", "--pairs", "300"});
  CHECK(c.code == kExitPass);
  CHECK(c.out.find("phi^0 = e") != std::string::npos);
  CHECK(c.out.find("300 pairs (seed 7): 0 failures") != std::string::npos);
  const auto l = run({"localgroup", "--word", "1001", "--anchor", "10010", "--anchor", "010010"});
  CHECK(l.code == kExitPass);
  CHECK(l.out.find("verdict: PASS") != std::string::npos);
}

TEST_CASE("lrscan reproduces the frozen goldens") {
  for (const auto& [jump, file] : {std::pair{"constant:2", "fib_p2_lrscan.txt"}, {"constant:3", "fib_p3_lrscan.txt"}}) {
    const auto dir = scratch(file);
    const auto r = run({"lrscan", "--jump", jump, "--window", "100000", "--nmax", "15", "--word", "1001", "--golden",
                        golden(file), "--out", dir.string()});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find(" != ") == std::string::npos);
    CHECK(slurp(dir / "base_profile.csv") == slurp(golden("fib_base_profile.csv")));
    const std::string p = std::string(jump).substr(9);
    CHECK(slurp(dir / "speedup_profile.csv") == slurp(golden("fib_p" + p + "_speedup_profile.csv")));
    fs::remove_all(dir);
  }
  // a golden frozen under another configuration is refused, not compared
  CHECK(one_error_line(run({"lrscan", "--window", "50000", "--nmax", "15", "--word", "1001", "--golden",
                            golden("fib_p2_lrscan.txt")}),
                       "InvalidArgument"));
}

TEST_CASE("check passes on the Fibonacci shift") {
  const auto r = run({"check", "--word", "1001", "--pairs", "200"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto sub = run({"check", "--shift", data("fibonacci.sub"), "--word", "1001", "--pairs", "200"});
  CHECK(sub.code == kExitPass);
  CHECK(sub.out.find("PASS primitive") != std::string::npos);
}

TEST_CASE("speedup-graph on the sample presentations") {
  for (const auto* file : {"golden_mean.txt", "even_shift.txt", "full2.txt"}) {
    const auto dir = scratch(file);
    const auto r = run({"speedup-graph", "--shift", data(file), "--nmax", "3", "--out", dir.string()});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("block length M = 5") != std::string::npos);
    CHECK(r.out.find("DIFFERENT") == std::string::npos);
    CHECK(slurp(dir / "speedup.dot").rfind("digraph", 0) == 0);
    fs::remove_all(dir);
  }
}

TEST_CASE("property: runs are deterministic, artifacts included") {
  oracle::Rng rng(20261016);
  const std::vector<std::vector<std::string>> cmds{
      {"cocycle", "--word", "1001", "--pairs", "100"},
      {"orbits", "--jump", "first-return:3", "--window", "5000"},
      {"perms", "--word", "1001", "--jump", "constant:3"},
  };
  for (int round = 0; round < 3; ++round) {
    auto args = cmds[rng.next() % cmds.size()];
    args.insert(args.end(), {"--seed", std::to_string(rng.between(1, 1000))});
    if (args[0] != "cocycle") args.resize(args.size() - 2);
    const auto a = scratch("det_a"), b = scratch("det_b");
    auto args_a = args, args_b = args;
    args_a.insert(args_a.end(), {"--out", a.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    const auto ra = run(args_a), rb = run(args_b);
    CHECK(ra.code == rb.code);
    CHECK(ra.out == rb.out);
    for (const auto& entry : fs::directory_iterator(a)) {
      REQUIRE(fs::exists(b / entry.path().filename()));
      CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_CASE("LR claims are not applicable to a non-primitive substitution") {
  const auto l = run({"lrscan", "--shift", data("nonprimitive.sub")});
  CHECK(l.code == kExitFail);
  CHECK(l.out.find("not applicable") != std::string::npos);
  const auto c = run({"check", "--shift", data("nonprimitive.sub"), "--window", "2000", "--nmax", "3", "--base-nmax", "4"});
  CHECK(c.code == kExitFail);
  CHECK(c.out.find("FAIL primitive") != std::string::npos);
  CHECK(c.out.find("N/A proof-bound") != std::string::npos);
  CHECK(c.out.find("N/A return-bound") != std::string::npos);
}
