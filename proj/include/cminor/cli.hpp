#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "applications.hpp"
#include "count.hpp"
#include "error.hpp"
#include "expansions.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "results.hpp"

namespace cminor {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Matrix documents
//
//   # optional comment lines
//   3
//   0 1 1
//   1 1 1
//   1 1 1
// ---------------------------------------------------------------------------

namespace detail {

inline Error parse_error(const std::string& what) { return Error(ErrorCategory::parse, what); }

inline Count parse_count(const std::string& token) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw parse_error("'" + token + "' is not a nonnegative integer");
  return Count(token);
}

inline std::size_t parse_size(const std::string& token, const char* what) {
  if (token.empty() || token.size() > 9 || token.find_first_not_of("0123456789") != std::string::npos)
    throw parse_error(std::string("invalid ") + what + " '" + token + "'");
  return static_cast<std::size_t>(std::stoul(token));
}

}  // namespace detail

inline SquareMatrix parse_matrix(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(t);
    lines.push_back(std::move(tokens));
  }
  if (lines.empty()) throw detail::parse_error("empty matrix document");
  if (lines[0].size() != 1) throw detail::parse_error("first line must hold only the matrix order");
  const auto n = detail::parse_size(lines[0][0], "matrix order");
  if (n == 0) throw detail::parse_error("matrix order must be at least 1");
  if (lines.size() - 1 != n)
    throw detail::parse_error("declared order " + std::to_string(n) + " but found " +
                              std::to_string(lines.size() - 1) + " rows");
  std::vector<Count> entries;
  entries.reserve(n * n);
  for (std::size_t r = 1; r <= n; ++r) {
    if (lines[r].size() != n)
      throw detail::parse_error("row " + std::to_string(r) + " has " + std::to_string(lines[r].size()) +
                                " entries, expected " + std::to_string(n));
    for (const auto& t : lines[r]) entries.push_back(detail::parse_count(t));
  }
  return SquareMatrix(n, std::move(entries));
}

inline SquareMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

inline std::string format_matrix(const SquareMatrix& a) {
  std::ostringstream os;
  os << a.order() << '\n';
  for (std::size_t i = 1; i <= a.order(); ++i) {
    for (std::size_t j = 1; j <= a.order(); ++j) os << (j == 1 ? "" : " ") << a.at(i, j);
    os << '\n';
  }
  return os.str();
}

/// Parses "2,3", "2^2,3" or "2^3" into prime powers.
inline std::vector<PrimePower> parse_factors(const std::string& spec) {
  std::vector<PrimePower> out;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto caret = item.find('^');
    PrimePower f;
    try {
      f.prime = std::stoull(std::string(item.substr(0, caret)));
    } catch (const std::exception&) {
      throw detail::parse_error("bad prime in factor '" + item + "'");
    }
    if (item.substr(0, caret).find_first_not_of("0123456789") != std::string::npos)
      throw detail::parse_error("bad prime in factor '" + item + "'");
    f.exponent = caret == std::string::npos ? 1 : detail::parse_size(item.substr(caret + 1), "exponent");
    out.push_back(f);
  }
  if (out.empty()) throw detail::parse_error("empty factor list");
  return out;
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

struct ResultDocument {
  std::string function;
  Json params = Json::object();
  Json result = Json::object();
  std::string strategy;
  std::optional<double> elapsed_ms;
  std::optional<std::string> oracle_check;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline Json to_json(const ResultDocument& doc) {
  Json j;
  j["function"] = doc.function;
  j["params"] = doc.params;
  j["result"] = doc.result;
  j["strategy"] = doc.strategy;
  if (doc.elapsed_ms) j["elapsed_ms"] = *doc.elapsed_ms;
  if (doc.oracle_check) j["oracle_check"] = *doc.oracle_check;
  return j;
}

inline ResultDocument result_from_json(const Json& j) {
  ResultDocument doc;
  doc.function = j.at("function").get<std::string>();
  doc.params = j.at("params");
  doc.result = j.at("result");
  doc.strategy = j.at("strategy").get<std::string>();
  if (j.contains("elapsed_ms")) doc.elapsed_ms = j.at("elapsed_ms").get<double>();
  if (j.contains("oracle_check")) doc.oracle_check = j.at("oracle_check").get<std::string>();
  return doc;
}

/// The part of a document that must not depend on strategy or timing.
inline std::string canonical_payload(const ResultDocument& doc) {
  Json j;
  j["function"] = doc.function;
  j["params"] = doc.params;
  j["result"] = doc.result;
  return j.dump();
}

inline Json counts_json(const std::vector<Count>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_decimal(c));
  return a;
}

inline Json indicator_json(const CycleIndicator& c) {
  Json terms = Json::array();
  for (const auto& [k, coef] : c.terms()) terms.push_back({{"exponents", k}, {"coefficient", to_decimal(coef)}});
  return {{"order", c.order()}, {"terms", terms}, {"polynomial", to_string(c)}};
}

namespace detail {

inline std::string join_strings(const Json& arr) {
  std::string s;
  for (const auto& v : arr) s += (s.empty() ? "" : " ") + v.get<std::string>();
  return s;
}

}  // namespace detail

inline std::string render_text(const ResultDocument& doc) {
  const auto& r = doc.result;
  std::ostringstream os;
  const auto& f = doc.function;
  if (f == "permanent") {
    os << "permanent = " << r["permanent"].get<std::string>() << '\n';
  } else if (f == "determinant") {
    os << "determinant = " << r["determinant"].get<std::string>() << '\n';
  } else if (f == "classes") {
    os << "classes mod " << doc.params["modulus"].get<std::size_t>() << " (k = 0.."
       << doc.params["modulus"].get<std::size_t>() - 1 << "): " << detail::join_strings(r["counts"]) << '\n';
  } else if (f == "evenodd") {
    os << "even = " << r["even"].get<std::string>() << '\n'
       << "odd = " << r["odd"].get<std::string>() << '\n'
       << "determinant = " << r["determinant"].get<std::string>() << '\n';
  } else if (f == "cycles") {
    os << "full cycles = " << r["full_cycles"].get<std::string>() << '\n';
  } else if (f == "stirling") {
    os << "stirling (k = 1.." << doc.params["order"].get<std::size_t>()
       << "): " << detail::join_strings(r["counts"]) << '\n';
  } else if (f == "indicator") {
    os << "indicator = " << r["polynomial"].get<std::string>() << '\n';
    for (const auto& t : r["terms"]) {
      os << "  ";
      for (const auto& e : t["exponents"]) os << e.get<std::size_t>() << ' ';
      os << ": " << t["coefficient"].get<std::string>() << '\n';
    }
  } else if (f == "divseq" || f == "hypercube") {
    os << "n = " << r["n"].get<std::string>() << '\n'
       << "divisors = " << detail::join_strings(r["divisors"]) << '\n'
       << "path count = " << r["path_count"].get<std::string>() << '\n'
       << "cycle count = " << r["cycle_count"].get<std::string>() << '\n';
  }
  os << "# strategy " << doc.strategy;
  if (doc.elapsed_ms) os << ", elapsed_ms " << *doc.elapsed_ms;
  if (doc.oracle_check) os << ", oracle " << *doc.oracle_check;
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,
  exit_guard = 3,
  exit_oracle_mismatch = 4,
  exit_internal = 5,
};

inline int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::parse:
    case ErrorCategory::precondition: return exit_usage;
    case ErrorCategory::guard_refusal: return exit_guard;
    case ErrorCategory::oracle_mismatch: return exit_oracle_mismatch;
    case ErrorCategory::invariant_violation: return exit_internal;
  }
  return exit_internal;
}

struct CliOptions {
  std::string command;
  std::string input = "-";
  std::optional<std::size_t> modulus;
  std::string factors;
  std::size_t dim = 0;
  std::string format = "text";
  std::string strategy = "memo";
  bool check_oracle = false;
  std::optional<std::size_t> max_n;
  std::size_t threads = 1;
  bool no_timing = false;
};

namespace detail {

inline Error mismatch(const std::string& what) {
  return Error(ErrorCategory::oracle_mismatch, "engine and oracle disagree on " + what);
}

inline void oracle_check_matrix(const std::string& fn, const SquareMatrix& a, const ResultDocument& doc,
                                std::size_t modulus) {
  const auto o = oracle_all_functions(a, modulus);
  const auto& r = doc.result;
  bool ok = true;
  if (fn == "permanent") ok = r["permanent"] == to_decimal(o.permanent);
  if (fn == "classes") ok = r["counts"] == counts_json(o.classes.counts);
  if (fn == "evenodd" || fn == "determinant") {
    const auto even = o.classes.counts[0], odd = o.classes.counts[1];
    ok = r["determinant"] == to_decimal(even - odd);
    if (fn == "evenodd") ok = ok && r["even"] == to_decimal(even) && r["odd"] == to_decimal(odd);
  }
  if (fn == "cycles") ok = r["full_cycles"] == to_decimal(o.full_cycles);
  if (fn == "stirling") ok = r["counts"] == counts_json(o.stirling.counts);
  if (fn == "indicator") ok = r["terms"] == indicator_json(o.indicator)["terms"];
  if (!ok) throw mismatch(fn);
}

inline Json divisor_result(const DivisorInstance& inst, const Evaluator& eval) {
  Json divs = Json::array();
  for (const auto& d : inst.divisors) divs.push_back(to_decimal(d));
  return {{"n", to_decimal(inst.n)},
          {"divisors", divs},
          {"path_count", to_decimal(gray_path_count(inst, eval))},
          {"cycle_count", to_decimal(gray_cycle_count(inst, eval))}};
}

}  // namespace detail

/// Evaluates one command. Throws cminor::Error on failure.
inline ResultDocument execute(const CliOptions& opt, std::istream& stdin_stream) {
  EvalOptions eo;
  if (opt.strategy == "naive")
    eo.strategy = Strategy::naive;
  else if (opt.strategy == "memo")
    eo.strategy = Strategy::memoized;
  else
    throw detail::parse_error("unknown strategy '" + opt.strategy + "'");
  eo.threads = opt.threads;
  if (opt.max_n) eo.max_order = eo.max_indicator_order = *opt.max_n;
  const Evaluator eval(eo);

  ResultDocument doc;
  doc.function = opt.command;
  doc.strategy = strategy_name(eo.strategy);
  const auto start = std::chrono::steady_clock::now();
  const auto& fn = opt.command;

  if (fn == "divseq" || fn == "hypercube") {
    auto inst = fn == "divseq" ? build_divisor_instance(parse_factors(opt.factors)) : hypercube_instance(opt.dim);
    if (fn == "divseq")
      doc.params = {{"factors", opt.factors}};
    else
      doc.params = {{"dim", opt.dim}};
    doc.result = detail::divisor_result(inst, eval);
    if (opt.check_oracle) {
      if (inst.divisors.size() <= default_oracle_limit) {
        if (doc.result["path_count"] != to_decimal(oracle_all_functions(inst.matrix_a, 1).full_cycles) ||
            doc.result["cycle_count"] != to_decimal(oracle_all_functions(inst.matrix_b, 1).full_cycles))
          throw detail::mismatch(fn);
        doc.oracle_check = "passed";
      } else {
        doc.oracle_check = "skipped";
      }
    }
  } else {
    std::optional<SquareMatrix> parsed;
    if (opt.input == "-") {
      parsed = parse_matrix(stdin_stream);
    } else {
      std::ifstream file(opt.input);
      if (!file) throw detail::parse_error("cannot open '" + opt.input + "'");
      parsed = parse_matrix(file);
    }
    const auto& a = *parsed;
    doc.params = {{"order", a.order()}};
    std::size_t modulus = 2;
    if (fn == "permanent") {
      doc.result = {{"permanent", to_decimal(eval.permanent(a))}};
    } else if (fn == "determinant") {
      doc.result = {{"determinant", to_decimal(eval.determinant(a))}};
    } else if (fn == "classes") {
      if (!opt.modulus) throw detail::parse_error("classes requires --mod");
      if (*opt.modulus == 0) throw precondition_error("modulus must be at least 1");
      modulus = *opt.modulus;
      doc.params["modulus"] = modulus;
      doc.result = {{"indexing", "0..m-1"}, {"counts", counts_json(eval.class_counts(a, modulus).counts)}};
    } else if (fn == "evenodd") {
      const auto eo2 = eval.even_odd_counts(a);
      doc.result = {{"even", to_decimal(eo2.even)},
                    {"odd", to_decimal(eo2.odd)},
                    {"determinant", to_decimal(eo2.determinant())}};
    } else if (fn == "cycles") {
      doc.result = {{"full_cycles", to_decimal(eval.full_cycle_count(a))}};
    } else if (fn == "stirling") {
      doc.result = {{"indexing", "1..n"}, {"counts", counts_json(eval.stirling_function(a).counts)}};
    } else if (fn == "indicator") {
      doc.result = indicator_json(eval.cycle_indicator(a));
    } else {
      throw detail::parse_error("unknown subcommand '" + fn + "'");
    }
    if (opt.check_oracle) {
      if (a.order() <= default_oracle_limit) {
        detail::oracle_check_matrix(fn, a, doc, modulus);
        doc.oracle_check = "passed";
      } else {
        doc.oracle_check = "skipped";
      }
    }
  }

  if (!opt.no_timing)
    doc.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

/// Full command-line entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration of permutations with restricted positions"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--strategy", opt.strategy, "Evaluation strategy")->check(CLI::IsMember({"naive", "memo"}));
    sub->add_flag("--check-oracle", opt.check_oracle, "Cross-check against brute force when small enough");
    sub->add_option("--max-n", opt.max_n, "Override the order guard");
    sub->add_option("--threads", opt.threads, "Worker threads for first-row branches")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timing", opt.no_timing, "Omit elapsed_ms from the output");
  };

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry matrix_commands[] = {
      {"permanent", "Permanent (weighted count of B(A))"},
      {"determinant", "Determinant as even minus odd count"},
      {"classes", "Counts by decrement class modulo m"},
      {"evenodd", "Even and odd counts and the determinant"},
      {"cycles", "Weighted count of full cycles"},
      {"stirling", "Counts by number of cycles"},
      {"indicator", "Cycle indicator polynomial"},
  };
  for (const auto& e : matrix_commands) {
    auto* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--input", opt.input, "Matrix file, or - for stdin");
    if (std::string(e.name) == "classes") sub->add_option("--mod", opt.modulus, "Modulus m")->required();
    add_common(sub);
  }
  auto* divseq = app.add_subcommand("divseq", "Divisor orderings of n given as p1^e1,p2^e2,...");
  divseq->add_option("--factors", opt.factors, "Factorization, e.g. 2^2,3")->required();
  add_common(divseq);
  auto* cube = app.add_subcommand("hypercube", "Divisor instance of the product of the first k primes");
  cube->add_option("--dim", opt.dim, "Dimension k")->required();
  add_common(cube);

  auto report = [&](ErrorCategory c, const std::string& message) {
    if (opt.format == "structured")
      err << Json{{"error", {{"category", category_name(c)}, {"message", message}}}}.dump() << '\n';
    else
      err << "error: " << category_name(c) << ": " << message << '\n';
    return exit_code_for(c);
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report(ErrorCategory::parse, e.what());
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    const auto doc = execute(opt, in);
    out << (opt.format == "structured" ? to_json(doc).dump(2) + "\n" : render_text(doc));
    return exit_ok;
  } catch (const Error& e) {
    return report(e.category(), e.what());
  } catch (const std::exception& e) {
    return report(ErrorCategory::invariant_violation, e.what());
  }
}

}  // namespace cminor
