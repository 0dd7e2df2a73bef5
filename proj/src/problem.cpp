#include "kcpt/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "kcpt/errors.hpp"

namespace kcpt {

namespace {

constexpr int kMaxPower = 64;

using Clock = std::chrono::steady_clock;

// ---- polynomial expansion ------------------------------------------------

using Word = std::vector<PhaseSpaceFactor>;

// Distinct modes commute: stable-sort by mode, then fuse equal neighbours.
Word canonical_word(Word w) {
  std::stable_sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.mode < b.mode; });
  Word out;
  for (const auto& f : w) {
    if (f.power == 0) continue;
    if (!out.empty() && out.back().mode == f.mode && out.back().kind == f.kind) {
      out.back().power += f.power;
    } else {
      out.push_back(f);
    }
  }
  return out;
}

// Combines equal words, keeping first-appearance order, and drops zero coefficients.
PhaseSpacePolynomial normalized(std::vector<PhaseSpaceTerm> terms) {
  std::vector<PhaseSpaceTerm> merged;
  for (auto& t : terms) {
    t.word = canonical_word(std::move(t.word));
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.word == t.word; });
    if (it == merged.end()) {
      merged.push_back(std::move(t));
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(merged, [](const auto& t) { return t.coeff.is_zero(); });
  return PhaseSpacePolynomial{std::move(merged)};
}

PhaseSpacePolynomial constant_poly(const Rational& c) { return normalized({PhaseSpaceTerm{c, {}}}); }

PhaseSpacePolynomial add(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b, bool subtract) {
  std::vector<PhaseSpaceTerm> terms = a.terms;
  for (auto t : b.terms) {
    if (subtract) t.coeff = -t.coeff;
    terms.push_back(std::move(t));
  }
  return normalized(std::move(terms));
}

PhaseSpacePolynomial mul(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
  std::vector<PhaseSpaceTerm> terms;
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      Word w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      terms.push_back(PhaseSpaceTerm{x.coeff * y.coeff, std::move(w)});
    }
  }
  return normalized(std::move(terms));
}

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  PhaseSpacePolynomial parse() {
    PhaseSpacePolynomial p = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, line_, offset_ + at + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  PhaseSpacePolynomial expression() {
    skip_space();
    PhaseSpacePolynomial acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = add(acc, term(), negate);
    while (true) {
      if (accept('+')) {
        acc = add(acc, term(), false);
      } else if (accept('-')) {
        acc = add(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  PhaseSpacePolynomial term() {
    PhaseSpacePolynomial acc = power();
    while (accept('*')) acc = mul(acc, power());
    return acc;
  }

  PhaseSpacePolynomial power() {
    PhaseSpacePolynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    const std::string_view exp = digits();
    if (exp.empty()) fail("expected a nonnegative integer exponent");
    if (exp.size() > 3 || std::stoi(std::string(exp)) > kMaxPower) {
      fail_at("exponent exceeds " + std::to_string(kMaxPower), at);
    }
    const int n = std::stoi(std::string(exp));
    PhaseSpacePolynomial out = constant_poly(1);
    for (int k = 0; k < n; ++k) out = mul(out, base);
    return out;
  }

  PhaseSpacePolynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PhaseSpacePolynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return add(PhaseSpacePolynomial{}, power(), true);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        if (digits().empty()) fail("expected a denominator");
      }
      try {
        return constant_poly(Rational::parse(text_.substr(start, pos_ - start)));
      } catch (const std::invalid_argument& e) {
        fail_at(e.what(), start);
      }
    }
    if (c == 'q' || c == 'p') {
      const std::size_t start = pos_++;
      const std::string_view index = digits();
      if (index.empty() || index.size() > 2) fail_at("expected a mode index after '" + std::string(1, c) + "'", start);
      const int k = std::stoi(std::string(index));
      if (k < 1 || k > static_cast<int>(kMaxModes)) fail_at("mode index out of range", start);
      const auto kind = c == 'q' ? PhaseSpaceFactor::Kind::Position : PhaseSpaceFactor::Kind::Momentum;
      return PhaseSpacePolynomial{{PhaseSpaceTerm{1, {PhaseSpaceFactor{kind, static_cast<std::size_t>(k - 1), 1}}}}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

// Parsed JSON stores nonnegative integers as unsigned, in-memory documents as signed.
bool is_count(const nlohmann::json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

// ---- problem files -------------------------------------------------------

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_words(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

int parse_int(const Token& t, std::size_t line, const std::string& what) {
  if (t.text.empty() || t.text.size() > 6 ||
      !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError("expected " + what + ", got '" + std::string(t.text) + "'", line, t.column);
  }
  return std::stoi(std::string(t.text));
}

const char* builtin_text(ProblemSpec::Builtin which) {
  switch (which) {
    case ProblemSpec::Builtin::Quartic:
      return "name quartic\nmodes 1\nomega 1\nperturb 1 (1/4)*q1^4\n";
    case ProblemSpec::Builtin::HenonHeiles:
      return "name henon-heiles\nmodes 2\nomega 1 1\nperturb 1 q1^2*q2 - (1/3)*q2^3\n";
    case ProblemSpec::Builtin::Custom:
      break;
  }
  throw ArgumentError("custom problems have no builtin text");
}

ProblemSpec parse_custom(std::string_view text);

ProblemSpec make_builtin(ProblemSpec::Builtin which) {
  ProblemSpec spec = parse_custom(builtin_text(which));
  spec.builtin = which;
  return spec;
}

ProblemSpec parse_custom(std::string_view text) {
  ProblemSpec spec;
  std::optional<int> modes;
  std::size_t omega_line = 0;
  std::optional<ProblemSpec::Builtin> builtin;
  bool other_directives = false;
  std::map<int, std::pair<std::size_t, std::size_t>> perturb_pos;  // order -> (line, column)

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::vector<Token> words = split_words(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const Token& key = words[0];
    if (key.text == "system") {
      if (words.size() != 2) throw ParseError("usage: system quartic|henon-heiles", line_no, key.column);
      if (builtin) throw ParseError("duplicate 'system' directive", line_no, key.column);
      if (words[1].text == "quartic") {
        builtin = ProblemSpec::Builtin::Quartic;
      } else if (words[1].text == "henon-heiles") {
        builtin = ProblemSpec::Builtin::HenonHeiles;
      } else {
        throw ParseError("unknown system '" + std::string(words[1].text) + "'", line_no, words[1].column);
      }
    } else if (key.text == "name") {
      if (words.size() != 2) throw ParseError("usage: name <word>", line_no, key.column);
      spec.name = std::string(words[1].text);
      other_directives = true;
    } else if (key.text == "modes") {
      if (words.size() != 2) throw ParseError("usage: modes <d>", line_no, key.column);
      if (modes) throw ParseError("duplicate 'modes' directive", line_no, key.column);
      const int d = parse_int(words[1], line_no, "a mode count");
      if (d < 1 || d > static_cast<int>(kMaxModes)) {
        throw ParseError("mode count must be in [1, " + std::to_string(kMaxModes) + "]", line_no, words[1].column);
      }
      modes = d;
      other_directives = true;
    } else if (key.text == "omega") {
      if (omega_line != 0) throw ParseError("duplicate 'omega' directive", line_no, key.column);
      if (words.size() < 2) throw ParseError("usage: omega <r1> ... <rd>", line_no, key.column);
      for (std::size_t i = 1; i < words.size(); ++i) {
        Rational w;
        try {
          w = Rational::parse(words[i].text);
        } catch (const std::invalid_argument&) {
          throw ParseError("frequency must be a rational p or p/q, got '" + std::string(words[i].text) + "'", line_no,
                           words[i].column);
        }
        if (w.sign() <= 0) throw ParseError("frequency must be positive", line_no, words[i].column);
        spec.omega.push_back(std::move(w));
      }
      omega_line = line_no;
      other_directives = true;
    } else if (key.text == "perturb") {
      if (words.size() < 3) throw ParseError("usage: perturb <order> <polynomial>", line_no, key.column);
      const int order = parse_int(words[1], line_no, "a perturbation order");
      if (order < 1) throw ParseError("perturbation order must be at least 1", line_no, words[1].column);
      if (spec.perturbation.contains(order)) {
        throw ParseError("duplicate perturbation order " + std::to_string(order), line_no, words[1].column);
      }
      const std::size_t poly_col = words[2].column;
      spec.perturbation[order] = parse_polynomial(line.substr(poly_col - 1), line_no, poly_col - 1);
      perturb_pos[order] = {line_no, poly_col};
      other_directives = true;
    } else {
      throw ParseError("unknown directive '" + std::string(key.text) + "'", line_no, key.column);
    }
    if (end == text.size()) break;
  }

  if (builtin) {
    if (other_directives) throw ParseError("'system' cannot be combined with other directives", 1, 1);
    return make_builtin(*builtin);
  }
  if (spec.omega.empty()) throw ParseError("missing 'omega' directive", line_no, 1);
  if (modes && static_cast<std::size_t>(*modes) != spec.omega.size()) {
    throw ParseError("omega lists " + std::to_string(spec.omega.size()) + " frequencies but modes is " +
                         std::to_string(*modes),
                     omega_line, 1);
  }
  if (!modes && spec.omega.size() > kMaxModes) throw ParseError("too many frequencies", omega_line, 1);
  if (spec.perturbation.empty()) throw ParseError("missing 'perturb' directive", line_no, 1);

  for (const auto& [order, poly] : spec.perturbation) {
    const auto [line, column] = perturb_pos.at(order);
    if (poly.max_mode() > spec.modes()) {
      throw ParseError("polynomial uses mode " + std::to_string(poly.max_mode()) + " of a " +
                           std::to_string(spec.modes()) + "-mode system",
                       line, column);
    }
    if (!is_hermitian(from_position_momentum(poly, spec.modes()))) {
      throw ParseError("perturbation is not Hermitian", line, column);
    }
  }
  return spec;
}

}  // namespace

PhaseSpacePolynomial parse_polynomial(std::string_view text, std::size_t line, std::size_t column_offset) {
  return PolynomialParser(text, line, column_offset).parse();
}

ProblemSpec builtin_problem(ProblemSpec::Builtin which) { return make_builtin(which); }

ProblemSpec parse_problem(std::string_view text) { return parse_custom(text); }

std::string serialize_problem(const ProblemSpec& spec) {
  switch (spec.builtin) {
    case ProblemSpec::Builtin::Quartic:
      return "system quartic\n";
    case ProblemSpec::Builtin::HenonHeiles:
      return "system henon-heiles\n";
    case ProblemSpec::Builtin::Custom:
      break;
  }
  std::ostringstream os;
  os << "name " << spec.name << "\nmodes " << spec.modes() << "\nomega";
  for (const auto& w : spec.omega) os << ' ' << w.to_string();
  os << '\n';
  for (const auto& [order, poly] : spec.perturbation) os << "perturb " << order << ' ' << poly.to_string() << '\n';
  return os.str();
}

ModeSystem problem_system(const ProblemSpec& spec) { return ModeSystem(spec.omega); }

AlphaSeries problem_hamiltonian(const ProblemSpec& spec, std::size_t order) {
  const ModeSystem sys = problem_system(spec);
  AlphaSeries h(sys.modes(), order);
  h[0] = sys.h0();
  for (const auto& [k, poly] : spec.perturbation) {
    if (static_cast<std::size_t>(k) <= order) h[static_cast<std::size_t>(k)] = from_position_momentum(poly, sys.modes());
  }
  return h;
}

nlohmann::json series_to_json(const AlphaSeries& s) {
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t k = 0; k <= s.order(); ++k) {
    for (const auto& [m, c] : s[k].terms()) {
      records.push_back({{"alpha", k},
                         {"dagger", std::vector<int>(m.dagger().begin(), m.dagger().end())},
                         {"lower", std::vector<int>(m.lower().begin(), m.lower().end())},
                         {"sqrt_hbar", m.sqrt_hbar()},
                         {"re", c.re().numerator_string() + "/" + c.re().denominator_string()},
                         {"im", c.im().numerator_string() + "/" + c.im().denominator_string()}});
    }
  }
  return records;
}

AlphaSeries series_from_json(const nlohmann::json& records, std::size_t modes, std::optional<std::size_t> order) {
  if (!records.is_array()) throw ParseError("expected an array of term records", 1, 1);
  std::size_t top = 0;
  for (const auto& r : records) {
    if (r.is_object() && r.contains("alpha") && is_count(r["alpha"])) {
      top = std::max(top, r["alpha"].get<std::size_t>());
    }
  }
  const std::size_t n = order.value_or(top);
  std::vector<std::vector<OperatorExpression::Term>> terms(n + 1);
  std::size_t index = 0;
  for (const auto& r : records) {
    ++index;
    auto bad = [&](const std::string& why) { return ParseError("record " + std::to_string(index) + ": " + why, index, 1); };
    if (!r.is_object()) throw bad("not an object");
    for (const char* key : {"alpha", "dagger", "lower", "sqrt_hbar", "re", "im"}) {
      if (!r.contains(key)) throw bad(std::string("missing '") + key + "'");
    }
    if (!is_count(r["alpha"])) throw bad("'alpha' must be a nonnegative integer");
    const auto k = r["alpha"].get<std::size_t>();
    if (k > n) throw bad("alpha exceeds the series order");
    std::vector<int> dagger;
    std::vector<int> lower;
    for (auto [key, dst] : {std::pair{"dagger", &dagger}, std::pair{"lower", &lower}}) {
      const auto& arr = r[key];
      if (!arr.is_array() || arr.size() != modes) throw bad(std::string("'") + key + "' must list one exponent per mode");
      for (const auto& v : arr) {
        if (!is_count(v) || v.get<std::int64_t>() > 255) throw bad("exponents must be integers in [0, 255]");
        dst->push_back(v.get<int>());
      }
    }
    if (!r["sqrt_hbar"].is_number_integer()) throw bad("'sqrt_hbar' must be an integer");
    const auto e = r["sqrt_hbar"].get<std::int64_t>();
    if (e < -32768 || e > 32767) throw bad("'sqrt_hbar' out of range");
    if (!r["re"].is_string() || !r["im"].is_string()) throw bad("'re' and 'im' must be rational strings");
    Rational re;
    Rational im;
    try {
      re = Rational::parse(r["re"].get<std::string>());
      im = Rational::parse(r["im"].get<std::string>());
    } catch (const std::invalid_argument& ex) {
      throw bad(ex.what());
    }
    terms[k].emplace_back(LadderMonomial(dagger, lower, static_cast<int>(e)), GaussianRational(re, im));
  }
  std::vector<OperatorExpression> coeffs;
  coeffs.reserve(n + 1);
  for (auto& t : terms) coeffs.emplace_back(modes, std::move(t));
  return AlphaSeries(std::move(coeffs));
}

BlockDiagonalResult run_method(const ProblemSpec& spec, Method method, std::size_t order,
                               const std::optional<AlphaSeries>& shift) {
  if (order < 1) throw ArgumentError("order must be at least 1");
  const ModeSystem sys = problem_system(spec);
  if (shift && method != Method::Kato) throw ArgumentError("a shift series applies to the kato method only");
  switch (method) {
    case Method::Kato: {
      for (const auto& [k, poly] : spec.perturbation) {
        if (k != 1 && !poly.terms.empty()) {
          throw UnsupportedError("the kato method takes a perturbation linear in alpha (perturb 1 only)");
        }
      }
      const auto it = spec.perturbation.find(1);
      const OperatorExpression h1 =
          it == spec.perturbation.end() ? OperatorExpression(sys.modes()) : from_position_momentum(it->second, sys.modes());
      return kato_block_diagonalize(sys, h1, order, shift);
    }
    case Method::VanVleck:
      return van_vleck_block_diagonalize(sys, problem_hamiltonian(spec, order), order);
    case Method::Magnus:
      return magnus_block_diagonalize(sys, problem_hamiltonian(spec, order), order);
  }
  throw ArgumentError("unknown method");
}

RunReport make_report(const ProblemSpec& spec, const BlockDiagonalResult& result, double wall_time) {
  RunReport r;
  r.problem = spec.name;
  r.method = result.method;
  r.order = result.order;
  r.wall_time = wall_time;
  for (const auto& c : result.effective_hamiltonian.coeffs()) r.effective_terms.push_back(c.size());
  for (const auto& c : result.generator.coeffs.coeffs()) r.generator_terms.push_back(c.size());
  r.peak_terms = result.peak_terms;
  return r;
}

namespace {

std::string_view role_name(GeneratorRole role) {
  switch (role) {
    case GeneratorRole::OrderedExponential:
      return "ordered-exponential";
    case GeneratorRole::VanVleckChain:
      return "vanvleck-chain";
    case GeneratorRole::MagnusExponent:
      return "magnus-exponent";
  }
  return "unknown";
}

std::size_t sum(const std::vector<std::size_t>& v) {
  std::size_t s = 0;
  for (auto x : v) s += x;
  return s;
}

}  // namespace

nlohmann::json result_to_json(const ProblemSpec& spec, const BlockDiagonalResult& result) {
  const RunReport report = make_report(spec, result, 0.0);
  std::vector<std::string> omega;
  for (const auto& w : spec.omega) omega.push_back(w.to_string());
  return {{"problem", spec.name},
          {"method", std::string(method_name(result.method))},
          {"order", result.order},
          {"modes", spec.modes()},
          {"omega", omega},
          {"effective_hamiltonian", series_to_json(result.effective_hamiltonian)},
          {"generator", {{"role", std::string(role_name(result.generator.role))},
                         {"records", series_to_json(result.generator.coeffs)}}},
          {"term_counts", {{"effective", report.effective_terms}, {"generator", report.generator_terms}}},
          {"peak_terms", result.peak_terms}};
}

std::string result_to_text(const ProblemSpec& spec, const BlockDiagonalResult& result) {
  std::ostringstream os;
  os << "problem " << spec.name << "  method " << method_name(result.method) << "  order " << result.order << '\n';
  os << "effective Hamiltonian:\n";
  for (std::size_t k = 0; k <= result.effective_hamiltonian.order(); ++k) {
    os << "  alpha^" << k << ": " << result.effective_hamiltonian[k].to_string() << '\n';
  }
  os << "generator (" << role_name(result.generator.role) << "):\n";
  for (std::size_t k = 0; k <= result.generator.coeffs.order(); ++k) {
    os << "  G" << k << ": " << result.generator.coeffs[k].to_string() << '\n';
  }
  return os.str();
}

void benchmark(const ProblemSpec& spec, const BenchmarkOptions& options,
               const std::function<void(const nlohmann::json&)>& emit) {
  if (options.max_order < 2) throw ArgumentError("benchmark max order must be at least 2");
  if (options.repetitions < 1) throw ArgumentError("benchmark needs at least one repetition");
  for (const Method method : options.methods) {
    for (std::size_t n = 2; n <= options.max_order; ++n) {
      std::vector<double> times;
      std::optional<RunReport> report;
      bool timed_out = false;
      for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
        const auto start = Clock::now();
        const BlockDiagonalResult result = run_method(spec, method, n);
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        times.push_back(elapsed);
        if (!report) report = make_report(spec, result, elapsed);
        if (options.timeout_seconds && elapsed > *options.timeout_seconds) {
          timed_out = true;
          break;
        }
      }
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      const double median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
      emit({{"problem", spec.name},
            {"method", std::string(method_name(method))},
            {"order", n},
            {"repetitions", times.size()},
            {"wall_time_min", times.front()},
            {"wall_time_median", median},
            {"effective_terms", sum(report->effective_terms)},
            {"generator_terms", sum(report->generator_terms)},
            {"peak_terms", report->peak_terms},
            {"timed_out", timed_out}});
      if (timed_out) break;
    }
  }
}

bool benchmark_record_valid(const nlohmann::json& r) {
  if (!r.is_object() || r.size() != 10) return false;
  auto has = [&](const char* key, auto pred) { return r.contains(key) && pred(r[key]); };
  const auto is_string = [](const nlohmann::json& v) { return v.is_string(); };
  const auto is_time = [](const nlohmann::json& v) { return v.is_number() && v.get<double>() >= 0.0; };
  if (!has("method", is_string) || !has("problem", is_string)) return false;
  try {
    parse_method(r["method"].get<std::string>());
  } catch (const ArgumentError&) {
    return false;
  }
  return has("order", is_count) && r["order"].get<std::int64_t>() >= 2 && has("repetitions", is_count) &&
         r["repetitions"].get<std::int64_t>() >= 1 && has("wall_time_min", is_time) && has("wall_time_median", is_time) &&
         r["wall_time_min"].get<double>() <= r["wall_time_median"].get<double>() && has("effective_terms", is_count) &&
         has("generator_terms", is_count) && has("peak_terms", is_count) &&
         has("timed_out", [](const nlohmann::json& v) { return v.is_boolean(); });
}

nlohmann::json oracle_report_to_json(const EigenvalueReport& report) {
  return {{"reference", report.reference},         {"effective", report.effective},
          {"max_deviation", report.max_deviation}, {"alpha_power", report.alpha_power},
          {"ratio", report.ratio},                 {"truncation_warning", report.truncation_warning}};
}

}  // namespace kcpt
