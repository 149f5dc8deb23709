#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using modp::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the seconds column, the only nondeterministic field.
std::string without_seconds(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.push_back("");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i == 7) continue;
      out += fields[i] + (i + 1 < fields.size() ? "," : "");
    }
    out += '\n';
  }
  return out;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("modp_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST_CASE("env writes models and prints stats") {
  TempDir dir;
  const auto r = cli({"env", "sdst-rd", "--columns", "4", "--out", dir.file("s4.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("max_episode_length: 7") != std::string::npos);
  const std::string text = slurp(dir.file("s4.json"));
  CHECK(text.find("\"p\": 0.8") != std::string::npos);
  CHECK(text.find("\"p\": 0.19999999999999996") != std::string::npos);

  const auto h = cli({"env", "hansen", "--d", "3"});
  CHECK(h.code == 0);
  CHECK(h.out.find("\"version\": 1") != std::string::npos);
  CHECK(h.err.find("states: 4") != std::string::npos);

  CHECK(cli({"env", "pyramid", "--n", "0"}).code != 0);
  CHECK(cli({"env", "pyramid", "--n", "3", "--noise", "others", "--indexing", "0"}).code == 0);
  CHECK(cli({"env", "hansen", "--d", "4", "--kind", "exponential"}).code == 0);
  CHECK(cli({"env", "hansen", "--kind", "cubic"}).code == 1);
  CHECK(cli({"env", "cyclic", "--kind", "continuing"}).out.find("\"continuing\": true") != std::string::npos);
  CHECK(cli({"env", "maze"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("solve reports fronts and metrics") {
  TempDir dir;
  REQUIRE(cli({"env", "sdst-rd", "--columns", "4", "--out", dir.file("s4.json")}).code == 0);
  REQUIRE(cli({"env", "hansen", "--d", "3", "--out", dir.file("h3.json")}).code == 0);

  const auto b = cli({"solve", "--alg", "B", "--model", dir.file("s4.json"), "--hv-ref", "-25,0", "--out", dir.file("b.csv")});
  CHECK(b.code == 0);
  CHECK(b.out.find("cardinality: 56") != std::string::npos);
  CHECK(b.out.find("hypervolume: 88.93711237120002") != std::string::npos);
  CHECK(slurp(dir.file("b.csv")).rfind("obj1,obj2\n", 0) == 0);

  const auto w = cli({"solve", "--alg", "WLP", "--eps", "0.1", "--model", dir.file("s4.json"), "--iters", "auto"});
  CHECK(w.code == 0);
  CHECK(w.out.find("cardinality: 15") != std::string::npos);
  CHECK(w.out.find("iterations: 7 of 7") != std::string::npos);

  const auto zero = cli({"solve", "--alg", "W", "--model", dir.file("h3.json"), "--iters", "0"});
  CHECK(zero.code == 0);
  CHECK(zero.out.find("obj1,obj2\n0,0\n") != std::string::npos);

  const auto all = cli({"solve", "--alg", "W", "--model", dir.file("h3.json"), "--all-states", dir.file("all.csv")});
  CHECK(all.code == 0);
  CHECK(slurp(dir.file("all.csv")) == "state,obj1,obj2\ns0,3,0\ns0,2,1\ns0,1,2\ns0,0,3\ns1,2,0\ns1,1,1\ns1,0,2\n"
                                      "s2,1,0\ns2,0,1\ns3,0,0\n");

  const auto g = cli({"solve", "--alg", "B", "--model", dir.file("h3.json"), "--gamma", "0.5"});
  CHECK(g.out.find("1.75,0") != std::string::npos);
}

TEST_CASE("solve rejects inconsistent requests") {
  TempDir dir;
  REQUIRE(cli({"env", "hansen", "--d", "3", "--out", dir.file("h3.json")}).code == 0);
  REQUIRE(cli({"env", "cyclic", "--out", dir.file("loop.json")}).code == 0);
  const auto h3 = dir.file("h3.json");
  CHECK(cli({"solve", "--alg", "W", "--eps", "0.1", "--model", h3}).code == 1);
  CHECK(cli({"solve", "--alg", "WLP", "--model", h3}).code == 1);
  CHECK(cli({"solve", "--alg", "WLP", "--eps", "0", "--model", h3}).code == 1);
  CHECK(cli({"solve", "--alg", "B", "--iters", "3", "--model", h3}).code == 1);
  CHECK(cli({"solve", "--alg", "W", "--iters", "three", "--model", h3}).code == 1);
  CHECK(cli({"solve", "--alg", "X", "--model", h3}).code == 1);
  CHECK(cli({"solve", "--alg", "B", "--model", dir.file("missing.json")}).code == 1);
  CHECK(cli({"solve", "--alg", "B", "--model", h3, "--hv-ref", "1,2,3"}).code == 1);

  const auto cyclic_b = cli({"solve", "--alg", "B", "--model", dir.file("loop.json")});
  CHECK(cyclic_b.code == 2);
  CHECK(cyclic_b.err.find("requires a DAG") != std::string::npos);
  CHECK(cli({"solve", "--alg", "W", "--model", dir.file("loop.json")}).code == 2);
  CHECK(cli({"solve", "--alg", "W", "--iters", "4", "--model", dir.file("loop.json")}).code == 0);

  std::ofstream(dir.file("bad.json")) << R"({"version":1,"objectives":2,"gamma":1,"start":"a","terminals":["b"],)"
                                      << R"("states":[{"id":"a","actions":[{"name":"x","transitions":[{"to":"b","p":0.9,"r":[0,0]}]}]},)"
                                      << R"({"id":"b","actions":[]}]})";
  const auto bad = cli({"solve", "--alg", "B", "--model", dir.file("bad.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("probability mass 0.9") != std::string::npos);
  std::ofstream(dir.file("garbled.json")) << "{\"version\": 1,";
  CHECK(cli({"solve", "--alg", "B", "--model", dir.file("garbled.json")}).code == 2);
}

TEST_CASE("budget exhaustion exits with its own code") {
  TempDir dir;
  REQUIRE(cli({"env", "sdst-rd", "--columns", "10", "--out", dir.file("s10.json")}).code == 0);
  const auto r = cli({"solve", "--alg", "W", "--model", dir.file("s10.json"), "--budget", "0.001"});
  CHECK(r.code == 3);
  CHECK(r.out.find("budget-exceeded") != std::string::npos);
  CHECK(cli({"solve", "--alg", "W", "--model", dir.file("s10.json"), "--budget", "-1"}).code == 1);

  ::setenv(modp::cli::kBudgetVariable, "0.001", 1);
  CHECK(cli({"solve", "--alg", "B", "--model", dir.file("s10.json")}).code == 3);
  ::setenv(modp::cli::kBudgetVariable, "soon", 1);
  CHECK(cli({"solve", "--alg", "B", "--model", dir.file("s10.json")}).code == 1);
  ::unsetenv(modp::cli::kBudgetVariable);
}

TEST_CASE("bounds, hv and validate") {
  CHECK(cli({"bounds", "prop1", "--R", "1", "--d", "3", "--q", "2"}).out == "4\n");
  CHECK(cli({"bounds", "prop2", "--R", "1", "--n", "3", "--q", "2", "--eps", "0.5"}).out == "8\n");
  CHECK(cli({"bounds", "prop1", "--R", "5", "--d", "9", "--q", "1"}).out == "1\n");
  CHECK(cli({"bounds", "prop2", "--R", "1", "--n", "3", "--q", "2"}).code == 1);
  CHECK(cli({"bounds", "prop2", "--R", "1", "--n", "3", "--eps", "0"}).code == 1);
  CHECK(cli({"bounds", "prop3"}).code == 1);

  TempDir dir;
  std::ofstream(dir.file("f.csv")) << "obj1,obj2\n-1.4,1.2\n-2.6,1.8\n";
  const auto hv = cli({"hv", "--front", dir.file("f.csv"), "--ref", "-25,0"});
  CHECK(hv.code == 0);
  CHECK(std::abs(std::stod(hv.out) - 41.76) < 1e-9);
  CHECK(cli({"hv", "--front", dir.file("f.csv"), "--ref", "0,0,0"}).code == 1);
  CHECK(cli({"hv", "--front", dir.file("nope.csv"), "--ref", "0,0"}).code == 1);

  REQUIRE(cli({"env", "pyramid", "--n", "3", "--out", dir.file("p3.json")}).code == 0);
  const auto ok = cli({"validate", "--model", dir.file("p3.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("ok\n", 0) == 0);
  std::ofstream(dir.file("dim.json")) << R"({"version":1,"objectives":2,"gamma":1,"start":"a","terminals":["b"],)"
                                      << R"("states":[{"id":"a","actions":[{"name":"x","transitions":[{"to":"b","p":1,"r":[0]}]}]},)"
                                      << R"({"id":"b","actions":[]}]})";
  const auto bad = cli({"validate", "--model", dir.file("dim.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("reward dimension") != std::string::npos);
}

TEST_CASE("reproduce renders the published tables") {
  const auto t1 = cli({"reproduce", "--table", "1", "--max-instance", "4", "--budget", "60"});
  CHECK(t1.code == 0);
  CHECK(t1.out.find("     3   6      6     6     6     6    5\n") != std::string::npos);
  CHECK(t1.out.find("     4  56     56    45    34    24   15\n") != std::string::npos);

  const auto t2 = cli({"reproduce", "--table", "2", "--max-instance", "4", "--budget", "60"});
  for (const char* row : {"1  24.0", "2  41.8", "3  57.9", "4  88.9"}) CHECK(t2.out.find(row) != std::string::npos);

  const auto t3 = cli({"reproduce", "--table", "3", "--max-instance", "2", "--budget", "60"});
  CHECK(t3.out.find("2      2     2     2    2  2\n") != std::string::npos);

  CHECK(cli({"reproduce", "--table", "5"}).code == 1);
  CHECK(cli({"reproduce", "--table", "1", "--budget", "0"}).code == 1);
}

TEST_CASE("reproduce skips the rest of a column after a timeout") {
  const auto r = cli({"reproduce", "--table", "1", "--max-instance", "9", "--budget", "0.05"});
  CHECK(r.code == 0);
  const auto csv = r.out.substr(r.out.find("table,instance"));
  const auto timeout = csv.find(",B,,,,");
  REQUIRE(timeout != std::string::npos);
  CHECK(csv.find("budget-exceeded", timeout) != std::string::npos);
  CHECK(csv.find("1,9,B,,,,,,skipped") != std::string::npos);
}

TEST_CASE("identical invocations give identical files") {
  TempDir a, b;
  for (const TempDir* dir : {&a, &b}) {
    REQUIRE(cli({"env", "sdst-rd", "--columns", "5", "--out", dir->file("m.json")}).code == 0);
    REQUIRE(cli({"solve", "--alg", "WLP", "--eps", "0.01", "--model", dir->file("m.json"), "--out", dir->file("f.csv"),
                 "--all-states", dir->file("all.csv"), "--threads", dir == &a ? "1" : "3"})
                .code == 0);
    REQUIRE(cli({"reproduce", "--table", "1", "--max-instance", "4", "--out-dir", dir->file("t1")}).code == 0);
  }
  CHECK(slurp(a.file("m.json")) == slurp(b.file("m.json")));
  CHECK(slurp(a.file("f.csv")) == slurp(b.file("f.csv")));
  CHECK(slurp(a.file("all.csv")) == slurp(b.file("all.csv")));
  CHECK(without_seconds(slurp(a.file("t1/results.csv"))) == without_seconds(slurp(b.file("t1/results.csv"))));
  CHECK(slurp(a.file("t1/table1.txt")) == slurp(b.file("t1/table1.txt")));
  std::size_t fronts = 0;
  for (const auto& entry : fs::directory_iterator(a.path() / "t1" / "fronts")) {
    ++fronts;
    CHECK(slurp(entry.path()) == slurp(b.path() / "t1" / "fronts" / entry.path().filename()));
  }
  CHECK(fronts == 24);
}

TEST_SUITE("properties") {
  TEST_CASE("--iters auto resolves to the treasure distance") {
    TempDir dir;
    const int depths[] = {1, 2, 3, 4, 4, 4, 7, 7, 9, 10};
    for (int i = 1; i <= 10; ++i) {
      REQUIRE(cli({"env", "sdst-rd", "--columns", std::to_string(i), "--out", dir.file("m.json")}).code == 0);
      const auto r = cli({"solve", "--alg", "W", "--model", dir.file("m.json"), "--iters", "auto", "--budget", "0.01"});
      const std::string n = std::to_string((i - 1) + depths[i - 1]);
      CHECK(r.out.find(" of " + n + "\n") != std::string::npos);
      // Exit 0 exactly when the run finished.
      CHECK((r.code == 0) == (r.out.find("status: completed") != std::string::npos));
    }
  }
}
