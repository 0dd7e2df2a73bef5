#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kcpt/problem.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(KCPT_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const fs::path& scratch_dir() {
  struct Dir {
    fs::path path = fs::temp_directory_path() / ("kcpt_cli_test_" + std::to_string(::getpid()));
    Dir() { fs::create_directories(path); }
    ~Dir() {
      std::error_code ec;
      fs::remove_all(path, ec);
    }
  };
  static const Dir dir;
  return dir.path;
}

fs::path scratch_file(const std::string& name, const std::string& content) {
  const fs::path& dir = scratch_dir();
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("successful runs and deterministic output") {
  const Outcome text = run("--system quartic --order 2");
  CHECK(text.code == 0);
  CHECK(text.out.find("(3/8) a+1^2 a1^2 hbar^2") != std::string::npos);

  const Outcome a = run("--system henon-heiles --method vanvleck --order 3 --output json");
  const Outcome b = run("--system henon-heiles --method vanvleck --order 3 --output json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["method"] == "vanvleck");
  CHECK(doc["order"] == 3);
  CHECK(kcpt::series_from_json(doc["effective_hamiltonian"], 2, doc["order"].get<std::size_t>()) ==
        kcpt::run_method(kcpt::builtin_problem(kcpt::ProblemSpec::Builtin::HenonHeiles), kcpt::Method::VanVleck, 3)
            .effective_hamiltonian);

  const fs::path file = scratch_file("hh.txt", "modes 2\nomega 1 1\nperturb 1 q1^2*q2 - (1/3)*q2^3\n");
  const Outcome c = run(file.string() + " --method vanvleck --order 3 --output json");
  CHECK(c.code == 0);
  auto from_file = nlohmann::json::parse(c.out);
  CHECK(from_file["effective_hamiltonian"] == doc["effective_hamiltonian"]);
}

TEST_CASE("parse errors exit with 2") {
  CHECK(run("--system quartic --method birkhoff").code == 2);
  CHECK(run("--order 2").code == 2);
  CHECK(run(scratch_file("bad.txt", "omega sqrt2\nperturb 1 q1^4\n").string()).code == 2);
  CHECK(run(scratch_file("nh.txt", "omega 1\nperturb 1 p1*q1\n").string()).code == 2);
  CHECK(run("/nonexistent/problem.txt").code == 2);
  CHECK(run("--system quartic --shift-file " + scratch_file("shift.json", "{not json").string()).code == 2);
  CHECK(run("--system quartic --method magnus --shift-file " + scratch_file("s0.json", "[]").string()).code == 2);
}

TEST_CASE("computation errors exit with 3") {
  const fs::path two = scratch_file("two.txt", "omega 1\nperturb 1 q1^3\nperturb 2 q1^4\n");
  CHECK(run(two.string() + " --method kato --order 2").code == 3);
  CHECK(run(two.string() + " --method magnus --order 2").code == 0);
  CHECK(run("--system quartic --oracle --alpha 0.5").code == 3);
}

TEST_CASE("oracle tolerance") {
  const Outcome ok = run("--system quartic --order 4 --oracle --alpha 1e-3 --nmax 40 --k 3 --output json");
  CHECK(ok.code == 0);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["oracle"]["max_deviation"].get<double>() < 1e-6);
  CHECK(run("--system quartic --order 1 --oracle --alpha 1e-2 --nmax 40 --k 3 --oracle-tol 1e-9").code == 4);
}

TEST_CASE("shift file round trip") {
  const Outcome plain = run("--system henon-heiles --order 3 --output json");
  const fs::path zero = scratch_file("zero.json", "[]");
  const Outcome same = run("--system henon-heiles --order 3 --output json --shift-file " + zero.string());
  CHECK(same.code == 0);
  CHECK(same.out == plain.out);
  const std::string resonant =
      R"([{"alpha":0,"dagger":[1,1],"lower":[1,1],"sqrt_hbar":4,"re":"1/1","im":"0/1"}])";
  const Outcome shifted =
      run("--system henon-heiles --order 3 --output json --shift-file " + scratch_file("r.json", resonant).string());
  CHECK(shifted.code == 0);
  CHECK(shifted.out != plain.out);
}

TEST_CASE("benchmark stream") {
  const Outcome out = run("--system henon-heiles --benchmark --max-order 3 --reps 2 --methods kato,magnus");
  CHECK(out.code == 0);
  std::istringstream lines(out.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    CHECK(kcpt::benchmark_record_valid(nlohmann::json::parse(line)));
    ++count;
  }
  CHECK(count == 4);
  CHECK(run("--system henon-heiles --benchmark --max-order 1").code == 3);
}
