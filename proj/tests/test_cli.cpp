#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

struct CliDir {
  fs::path path;
  CliDir() {
    path = fs::temp_directory_path() /
           ("epiflat_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~CliDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }

  fs::path file(const std::string& name) const { return path / name; }

  std::string slurp(const std::string& name) const {
    std::ifstream in(file(name), std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(file(name), std::ios::binary);
    out << content;
  }

  RunResult run(const std::string& args) const {
    const fs::path out_file = path / "stdout.txt";
    const fs::path err_file = path / "stderr.txt";
    const std::string command = std::string(EPIFLAT_CLI_PATH) + " " + args + " >" +
                                out_file.string() + " 2>" + err_file.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream out(out_file, std::ios::binary);
    std::ostringstream ob;
    ob << out.rdbuf();
    result.out = ob.str();
    std::ifstream err(err_file, std::ios::binary);
    std::ostringstream eb;
    eb << err.rdbuf();
    result.err = eb.str();
    return result;
  }
};

constexpr const char* kStar5 = "n 5\n0 1\n0 2\n0 3\n0 4\n";
constexpr const char* kPath5 = "n 5\n0 1\n1 2\n2 3\n3 4\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate emits a canonical edge list") {
    CliDir dir;
    const auto run =
        dir.run("generate --model ba --n 4 --m 3 --seed 1 --out " + dir.file("g.edges").string());
    CHECK(run.exit_code == 0);
    // n = m + 1 is just the seed clique, so the bytes are fully determined
    CHECK(dir.slurp("g.edges") == "n 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  }

  TEST_CASE("generate is reproducible") {
    CliDir dir;
    CHECK(dir.run("generate --model hk --n 80 --m 2 --triad-probability 0.7 --seed 9 --out " +
                  dir.file("a.edges").string())
              .exit_code == 0);
    CHECK(dir.run("generate --model hk --n 80 --m 2 --triad-probability 0.7 --seed 9 --out " +
                  dir.file("b.edges").string())
              .exit_code == 0);
    CHECK(dir.slurp("a.edges") == dir.slurp("b.edges"));
    CHECK(dir.run("generate --model hk --n 80 --m 2 --triad-probability 0.7 --seed 10 --out " +
                  dir.file("c.edges").string())
              .exit_code == 0);
    CHECK(dir.slurp("a.edges") != dir.slurp("c.edges"));
  }

  TEST_CASE("usage failures exit with 1") {
    CliDir dir;
    const std::string out = dir.file("x.edges").string();
    // triad probability belongs to the triadic model
    const auto wrong_model =
        dir.run("generate --model ba --n 20 --m 2 --triad-probability 0.5 --out " + out);
    CHECK(wrong_model.exit_code == 1);
    CHECK(wrong_model.err.find("--model hk") != std::string::npos);

    CHECK(dir.run("generate --model hk --n 20 --m 2 --pt 1.5 --out " + out).exit_code == 1);
    CHECK(dir.run("generate --model ba --n 20 --out " + out).exit_code == 1);
    CHECK(dir.run("frobnicate").exit_code == 1);
    CHECK(dir.run("--help").exit_code == 0);
  }

  TEST_CASE("gcc prints the coefficient") {
    CliDir dir;
    dir.write("k3.edges", "n 3\n0 1\n0 2\n1 2\n");
    const auto run = dir.run("gcc " + dir.file("k3.edges").string());
    CHECK(run.exit_code == 0);
    CHECK(run.out == "1\n");
  }

  TEST_CASE("gcc on a triple-free graph is a runtime failure") {
    CliDir dir;
    dir.write("k2.edges", "n 2\n0 1\n");
    const auto run = dir.run("gcc " + dir.file("k2.edges").string());
    CHECK(run.exit_code == 2);
    CHECK(run.err.find("NO_TRIPLETS") != std::string::npos);
  }

  TEST_CASE("input file problems exit with 3") {
    CliDir dir;
    CHECK(dir.run("gcc " + dir.file("missing.edges").string()).exit_code == 3);

    dir.write("bad.edges", "n 3\n0 one\n");
    const auto run = dir.run("gcc " + dir.file("bad.edges").string());
    CHECK(run.exit_code == 3);
    CHECK(run.err.find("line") != std::string::npos);
  }

  TEST_CASE("centrality prints csv scores") {
    CliDir dir;
    dir.write("star.edges", kStar5);
    const auto run =
        dir.run("centrality " + dir.file("star.edges").string() + " --measure degree");
    CHECK(run.exit_code == 0);
    CHECK(run.out ==
          "node_id,measure,score\n"
          "0,degree,4\n1,degree,1\n2,degree,1\n3,degree,1\n4,degree,1\n");
  }

  TEST_CASE("centrality covers every measure by default") {
    CliDir dir;
    dir.write("star.edges", kStar5);
    const auto run = dir.run("centrality " + dir.file("star.edges").string());
    CHECK(run.exit_code == 0);
    // header plus 7 measures x 5 nodes
    CHECK(std::count(run.out.begin(), run.out.end(), '\n') == 36);
  }

  TEST_CASE("centrality rejects unknown measures") {
    CliDir dir;
    dir.write("star.edges", kStar5);
    const auto run =
        dir.run("centrality " + dir.file("star.edges").string() + " --measure modularity");
    CHECK(run.exit_code == 1);
    CHECK(run.err.find("modularity") != std::string::npos);
  }

  TEST_CASE("centrality --out writes the file instead of stdout") {
    CliDir dir;
    dir.write("star.edges", kStar5);
    const auto run = dir.run("centrality " + dir.file("star.edges").string() +
                             " --measure degree --out " + dir.file("scores.csv").string());
    CHECK(run.exit_code == 0);
    CHECK(run.out.empty());
    CHECK(dir.slurp("scores.csv").rfind("node_id,measure,score\n", 0) == 0);
  }

  TEST_CASE("curve prints summary lines and writes csv") {
    CliDir dir;
    dir.write("p5.edges", kPath5);
    const auto run = dir.run("curve " + dir.file("p5.edges").string() + " --out " +
                             dir.file("curve.csv").string());
    CHECK(run.exit_code == 0);
    CHECK(run.out ==
          "peak_t 1\n"
          "peak_count 8\n"
          "mean_distance 2\n"
          "gamma_shape 4\n"
          "gamma_scale 0.5\n"
          "unreachable 0\n");
    CHECK(dir.slurp("curve.csv") ==
          "t,count,normalized\n"
          "0,5,0.25\n"
          "1,8,0.4\n"
          "2,6,0.3\n"
          "3,4,0.2\n"
          "4,2,0.1\n");
  }

  TEST_CASE("curve accepts an explicit source list") {
    CliDir dir;
    dir.write("p3.edges", "n 3\n0 1\n1 2\n");
    const auto run = dir.run("curve " + dir.file("p3.edges").string() + " --sources 0");
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("peak_t 1\n") != std::string::npos);
    CHECK(run.out.find("unreachable 0\n") != std::string::npos);

    const auto dup = dir.run("curve " + dir.file("p3.edges").string() + " --sources 0,0");
    CHECK(dup.exit_code == 2);
    const auto oob = dir.run("curve " + dir.file("p3.edges").string() + " --sources 7");
    CHECK(oob.exit_code == 2);
    CHECK(oob.err.find("OUT_OF_RANGE") != std::string::npos);
    CHECK(dir.run("curve " + dir.file("p3.edges").string() + " --sources nope").exit_code == 1);
  }

  TEST_CASE("one seeded walker lands on each step of a path") {
    CliDir dir;
    dir.write("p5.edges", kPath5);
    const auto run = dir.run("curve --in " + dir.file("p5.edges").string() +
                             " --sources 0 --out " + dir.file("single.csv").string());
    CHECK(run.exit_code == 0);
    CHECK(dir.slurp("single.csv") ==
          "t,count,normalized\n"
          "0,1,0.25\n"
          "1,1,0.25\n"
          "2,1,0.25\n"
          "3,1,0.25\n"
          "4,1,0.25\n");
  }

  TEST_CASE("curve isolation matches the no-op baseline at fraction zero") {
    CliDir dir;
    dir.write("p5.edges", kPath5);
    const auto plain = dir.run("curve " + dir.file("p5.edges").string() + " --sources all --out " +
                               dir.file("a.csv").string());
    const auto noop = dir.run("curve " + dir.file("p5.edges").string() +
                              " --isolate-top 0 --by degree --out " + dir.file("b.csv").string());
    CHECK(plain.exit_code == 0);
    CHECK(noop.exit_code == 0);
    CHECK(plain.out == noop.out);
    CHECK(dir.slurp("a.csv") == dir.slurp("b.csv"));
  }

  TEST_CASE("curve isolation removes the top-ranked nodes first") {
    CliDir dir;
    dir.write("p5.edges", kPath5);
    // degree ranks node 1 first; cutting it strands node 0 entirely
    const auto run = dir.run("curve " + dir.file("p5.edges").string() +
                             " --isolate-top 0.2 --by degree");
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("peak_count 4\n") != std::string::npos);
    CHECK(run.out.find("unreachable 10\n") != std::string::npos);

    const auto bad = dir.run("curve " + dir.file("p5.edges").string() +
                             " --isolate-top 0.2 --by sorcery");
    CHECK(bad.exit_code == 1);
  }

  TEST_CASE("curve omits the gamma lines when the fit is degenerate") {
    CliDir dir;
    dir.write("k2.edges", "n 2\n0 1\n");
    const auto run = dir.run("curve " + dir.file("k2.edges").string());
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("gamma_shape") == std::string::npos);
    CHECK(run.out.find("unreachable 0\n") != std::string::npos);
  }

  TEST_CASE("isolate removes the chosen fraction") {
    CliDir dir;
    dir.write("star.edges", kStar5);
    const auto run = dir.run("isolate " + dir.file("star.edges").string() +
                             " --by degree --fraction 0.2 --out " + dir.file("cut.edges").string());
    CHECK(run.exit_code == 0);
    // the hub goes first, taking every edge with it
    CHECK(dir.slurp("cut.edges") == "n 5\n");

    const auto keep = dir.run("isolate " + dir.file("star.edges").string() +
                              " --fraction 0.0 --out " + dir.file("same.edges").string());
    CHECK(keep.exit_code == 0);
    CHECK(dir.slurp("same.edges") == kStar5);
  }

  TEST_CASE("isolate validates the measure") {
    CliDir dir;
    dir.write("star.edges", kStar5);
    CHECK(dir.run("isolate " + dir.file("star.edges").string() + " --by sorcery --out " +
                  dir.file("x.edges").string())
              .exit_code == 1);
  }

  TEST_CASE("experiment writes tables and is rerunnable") {
    CliDir dir;
    dir.write("config.json",
              "{\"n\": 60, \"m\": 2, \"replicates\": 2, \"gcc_targets\": [0.15],"
              " \"measures\": [\"degree\"], \"master_seed\": 5}");
    const std::string args = "experiment --config " + dir.file("config.json").string() +
                             " --out " + dir.file("run1").string();
    const auto run = dir.run(args);
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("None") != std::string::npos);
    CHECK(run.out.find("Deg") != std::string::npos);
    CHECK(fs::exists(dir.file("run1") / "curves.csv"));
    CHECK(fs::exists(dir.file("run1") / "peaks.csv"));
    CHECK(fs::exists(dir.file("run1") / "result.json"));

    const auto rerun = dir.run("experiment --config " + dir.file("config.json").string() +
                               " --out-dir " + dir.file("run2").string());
    CHECK(rerun.exit_code == 0);
    std::ifstream a(dir.file("run1") / "result.json", std::ios::binary);
    std::ifstream b(dir.file("run2") / "result.json", std::ios::binary);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }

  TEST_CASE("experiment rejects malformed configs") {
    CliDir dir;
    dir.write("config.json", "{\"bogus\": true}");
    const auto run = dir.run("experiment --config " + dir.file("config.json").string() +
                             " --out " + dir.file("out").string());
    CHECK(run.exit_code == 3);
    CHECK(run.err.find("bogus") != std::string::npos);
  }
}
