#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kcpt/errors.hpp"
#include "kcpt/problem.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kCompute = 3, kOracle = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kcpt::ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<kcpt::Method> parse_methods(const std::string& list) {
  std::vector<kcpt::Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(kcpt::parse_method(item));
  if (out.empty()) throw kcpt::ArgumentError("empty method list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-diagonalization of perturbed ladder-operator Hamiltonians"};

  std::string file;
  std::string system;
  std::string method = "kato";
  std::size_t order = 2;
  std::string output = "text";
  std::string shift_file;
  bool bench = false;
  std::size_t max_order = 2;
  std::size_t reps = 1;
  std::string methods = "kato,vanvleck,magnus";
  double timeout = 0.0;
  bool oracle = false;
  double hbar = 1.0;
  double alpha = 1e-3;
  int nmax = 20;
  std::size_t k_lowest = 5;
  double oracle_tol = 1e-6;

  app.add_option("file", file, "problem file");
  app.add_option("--system", system, "builtin problem")->check(CLI::IsMember({"quartic", "henon-heiles"}));
  app.add_option("--method", method, "kato | vanvleck | magnus")->check(CLI::IsMember({"kato", "vanvleck", "magnus"}));
  app.add_option("--order", order, "perturbation order N")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--shift-file", shift_file, "JSON term records of the shift series (kato only)");
  app.add_flag("--benchmark", bench, "time orders 2..max-order and emit JSON lines");
  app.add_option("--max-order", max_order, "benchmark: highest order");
  app.add_option("--reps", reps, "benchmark: repetitions per order")->check(CLI::PositiveNumber);
  app.add_option("--methods", methods, "benchmark: comma-separated methods");
  app.add_option("--timeout", timeout, "benchmark: seconds after which a method stops climbing orders");
  app.add_flag("--oracle", oracle, "compare eigenvalues against the truncated Fock matrix");
  app.add_option("--hbar", hbar, "oracle: value of hbar");
  app.add_option("--alpha", alpha, "oracle: perturbation strength, |alpha| <= 1e-2");
  app.add_option("--nmax", nmax, "oracle: occupation cutoff per mode")->check(CLI::NonNegativeNumber);
  app.add_option("--k", k_lowest, "oracle: number of lowest eigenvalues")->check(CLI::PositiveNumber);
  app.add_option("--oracle-tol", oracle_tol, "oracle: largest accepted eigenvalue deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  kcpt::ProblemSpec spec;
  std::optional<kcpt::AlphaSeries> shift;
  try {
    if (file.empty() == system.empty()) throw kcpt::ParseError("give exactly one of a problem file or --system", 0, 0);
    spec = file.empty() ? kcpt::parse_problem("system " + system) : kcpt::parse_problem(read_file(file));
    if (!shift_file.empty()) {
      if (method != "kato" || bench) throw kcpt::ParseError("--shift-file applies to a single kato run", 0, 0);
      shift = kcpt::series_from_json(nlohmann::json::parse(read_file(shift_file)), spec.modes(), order);
    }
  } catch (const kcpt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }

  try {
    if (bench) {
      kcpt::BenchmarkOptions options;
      options.methods = parse_methods(methods);
      options.max_order = max_order;
      options.repetitions = reps;
      if (timeout > 0.0) options.timeout_seconds = timeout;
      kcpt::benchmark(spec, options, [](const nlohmann::json& line) { std::cout << line.dump() << std::endl; });
      return kOk;
    }

    const kcpt::BlockDiagonalResult result = kcpt::run_method(spec, kcpt::parse_method(method), order, shift);
    std::optional<kcpt::EigenvalueReport> check;
    if (oracle) {
      check = kcpt::eigenvalue_check(result.effective_hamiltonian, kcpt::problem_hamiltonian(spec, order),
                                     kcpt::problem_system(spec), hbar, alpha, nmax, k_lowest);
    }

    if (output == "json") {
      nlohmann::json doc = kcpt::result_to_json(spec, result);
      if (check) {
        doc["oracle"] = kcpt::oracle_report_to_json(*check);
        doc["oracle"]["tolerance"] = oracle_tol;
      }
      std::cout << doc.dump(2) << '\n';
    } else {
      std::cout << kcpt::result_to_text(spec, result);
      if (check) {
        std::cout << "oracle: hbar=" << hbar << " alpha=" << alpha << " nmax=" << nmax << '\n';
        for (std::size_t i = 0; i < check->reference.size(); ++i) {
          std::cout << "  E" << i << "  reference " << check->reference[i] << "  effective " << check->effective[i]
                    << '\n';
        }
        std::cout << "  max deviation " << check->max_deviation << "  alpha^(N+1) " << check->alpha_power << "  ratio "
                  << check->ratio << '\n';
      }
    }
    if (check) {
      if (check->truncation_warning) std::cerr << "warning: Fock truncation may affect the oracle; raise --nmax\n";
      if (!(check->max_deviation <= oracle_tol)) {
        std::cerr << "oracle failure: deviation " << check->max_deviation << " exceeds " << oracle_tol << '\n';
        return kOracle;
      }
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return kCompute;
  }
}
