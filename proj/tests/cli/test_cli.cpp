#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command line and captures stdout. stderr is merged when asked.
Run run(const std::string& command, bool merge_stderr = false) {
  const std::string line = command + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run result;
  FILE* pipe = popen(line.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli(const std::string& args) { return std::string(CLI_PATH) + " " + args; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("closest_pair_cli_" + name)).string();
}

}  // namespace

TEST_CASE("gen writes n lines and is deterministic") {
  const Run a = run(cli("gen --n 100 --seed 5"));
  CHECK(a.exit_code == 0);
  CHECK(lines(a.out).size() == 100);
  CHECK(run(cli("gen --n 100 --seed 5")).out == a.out);
  CHECK(run(cli("gen --n 100 --seed 6")).out != a.out);
  CHECK(lines(run(cli("gen --n 50 --dist clustered:3,0.01")).out).size() == 50);
}

TEST_CASE("gen usage errors") {
  CHECK(run(cli("gen --n 1")).exit_code == 1);
  CHECK(run(cli("gen")).exit_code == 1);
  CHECK(run(cli("gen --n 10 --dist nope")).exit_code == 1);
  CHECK(run(cli("frobnicate")).exit_code == 1);
}

TEST_CASE("solve reads a generated file") {
  const std::string path = temp_path("solve.txt");
  REQUIRE(run(cli("gen --n 1000 --seed 42 --out " + path)).exit_code == 0);
  const Run b2 = run(cli("solve --in " + path + " --metric 1 --algo basic2"));
  const Run b7 = run(cli("solve --in " + path + " --metric 1 --algo basic7"));
  const Run brute = run(cli("solve --in " + path + " --metric 1 --algo brute"));
  CHECK(b2.exit_code == 0);
  CHECK(b2.out == b7.out);
  CHECK(b2.out == brute.out);
  CHECK(lines(b2.out).size() == 1);

  const Run stats = run(cli("solve --in " + path + " --stats"));
  CHECK(stats.out.find("distance_calls_total=") != std::string::npos);
  CHECK(stats.out.find("recursion_depth_max=") != std::string::npos);

  const Run piped = run("cat " + path + " | " + cli("solve --metric 1"));
  CHECK(piped.out == b2.out);
  std::filesystem::remove(path);
}

TEST_CASE("solve errors") {
  const std::string path = temp_path("err.txt");
  {
    std::ofstream f(path);
    f << "0 0\n1 1\n";
  }
  CHECK(run(cli("solve --in " + path + " --metric 0.5")).exit_code == 1);
  CHECK(run(cli("solve --in " + path + " --algo basic5")).exit_code == 1);
  CHECK(run(cli("solve --in " + path + " --cutoff 1")).exit_code == 1);
  CHECK(run(cli("solve --in /nonexistent/file.txt")).exit_code == 2);
  {
    std::ofstream f(path);
    f << "0 0\n1 one\n";
  }
  const Run bad = run(cli("solve --in " + path), true);
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("line 2") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("verify passes and is reproducible") {
  const Run a = run(cli("verify --n-max 300 --trials 20 --seed 3"));
  CHECK(a.exit_code == 0);
  const auto out = lines(a.out);
  REQUIRE(out.size() == 7);
  CHECK(out[0].rfind("metric=1 PASS 20/20", 0) == 0);
  CHECK(out[3].rfind("metric=inf PASS 20/20", 0) == 0);
  CHECK(out[4].find("PASS") != std::string::npos);
  CHECK(out[6] == "verify: OK");
  CHECK(run(cli("verify --n-max 300 --trials 20 --seed 3")).out == a.out);
}

TEST_CASE("verify usage errors") {
  CHECK(run(cli("verify --trials 0")).exit_code == 1);
  CHECK(run(cli("verify --n-max 1")).exit_code == 1);
  CHECK(run(cli("verify --metrics 1,0.2")).exit_code == 1);
}

TEST_CASE("verify detects a broken combine step") {
  const std::string faulty = std::string(CLI_FAULTY_PATH) + " verify --n-max 400 --trials 30";
  const Run r = run(faulty, true);
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("verify: FAILED") != std::string::npos);
  CHECK(r.out.find("repro: ") != std::string::npos);
}

TEST_CASE("bench produces records and one ratio row per size and metric") {
  const std::string csv = temp_path("bench.csv");
  const std::string ratios = temp_path("ratios.csv");
  const Run r = run(cli("bench --sizes 1024 --reps 2 --metrics 1,inf --csv " + csv +
                        " --ratios-csv " + ratios + " --quiet"));
  CHECK(r.exit_code == 0);
  std::ifstream csv_in(csv);
  std::stringstream csv_text;
  csv_text << csv_in.rdbuf();
  const auto rows = lines(csv_text.str());
  REQUIRE(rows.size() == 1 + 2 * 2 * 2);
  CHECK(rows[0].rfind("n,algo,metric,seed,rep,wall_time_ns", 0) == 0);
  std::ifstream ratio_in(ratios);
  std::stringstream ratio_text;
  ratio_text << ratio_in.rdbuf();
  CHECK(lines(ratio_text.str()).size() == 1 + 2);
  std::filesystem::remove(csv);
  std::filesystem::remove(ratios);
}

TEST_CASE("bench text table on stdout") {
  const Run r = run(cli("bench --sizes 512,1024 --reps 1 --metrics 2 --quiet"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("time_ratio") != std::string::npos);
  CHECK(run(cli("bench --sizes 1024,512")).exit_code == 1);
  CHECK(run(cli("bench --reps 0")).exit_code == 1);
}
