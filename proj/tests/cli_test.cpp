#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "cminor/cli.hpp"
#include "test_support.hpp"

#ifndef CMINOR_GOLDEN_DIR
#error "CMINOR_GOLDEN_DIR must point at data/golden"
#endif

namespace cminor {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return std::string(CMINOR_GOLDEN_DIR) + "/" + name; }

TEST(MatrixDocument, ParsesCommentsAndBlankLines) {
  auto a = parse_matrix("# header\n\n2\n  1 2\n# mid\n3 4\n");
  EXPECT_EQ(a, SquareMatrix::from_rows({{1, 2}, {3, 4}}));
  EXPECT_EQ(parse_matrix(format_matrix(a)), a);
  auto big = parse_matrix("1\n123456789012345678901234567890\n");
  EXPECT_EQ(big.at(1, 1), Count("123456789012345678901234567890"));
}

TEST(MatrixDocument, RejectsMalformed) {
  for (const char* bad : {"", "2\n1 2\n", "2\n1 2\n3\n", "2\n1 2\n3 -4\n", "2 2\n1 2\n3 4\n", "x\n",
                          "0\n", "1\n1.5\n", "2\n1 2\n3 4\n5 6\n"}) {
    try {
      parse_matrix(std::string(bad));
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.category(), ErrorCategory::parse) << bad;
    }
  }
}

TEST(Factors, Parse) {
  auto f = parse_factors("2^2,3");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].prime, 2u);
  EXPECT_EQ(f[0].exponent, 2u);
  EXPECT_EQ(f[1].exponent, 1u);
  EXPECT_THROW(parse_factors("a,3"), Error);
  EXPECT_THROW(parse_factors("2^x"), Error);
}

TEST(Cli, GoldenClasses) {
  auto r = invoke({"classes", "--mod", "3", "--input", golden("fig5.mat")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classes mod 3 (k = 0..2): 13 9 10"), std::string::npos) << r.out;

  auto s = invoke({"classes", "--mod", "3", "--input", golden("fig5.mat"), "--format", "structured"});
  ASSERT_EQ(s.code, 0);
  auto j = Json::parse(s.out);
  EXPECT_EQ(j["function"], "classes");
  EXPECT_EQ(j["params"]["modulus"], 3);
  EXPECT_EQ(j["result"]["counts"], Json::array({"13", "9", "10"}));
  EXPECT_EQ(j["strategy"], "memo");
  EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(Cli, GoldenEvenOdd) {
  auto r = invoke({"evenodd", "--input", golden("ex1.mat")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("even = 2\nodd = 2\ndeterminant = 0\n"), std::string::npos) << r.out;
}

TEST(Cli, DivseqAndCycles) {
  auto d = invoke({"divseq", "--factors", "2,3", "--format", "structured"});
  ASSERT_EQ(d.code, 0) << d.err;
  auto j = Json::parse(d.out);
  EXPECT_EQ(j["result"]["path_count"], "2");
  EXPECT_EQ(j["result"]["cycle_count"], "2");
  EXPECT_EQ(j["result"]["divisors"], Json::array({"6", "3", "2", "1"}));

  auto c = invoke({"cycles", "--input", golden("j3.mat")});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("full cycles = 2"), std::string::npos);

  auto h = invoke({"hypercube", "--dim", "3", "--check-oracle"});
  EXPECT_EQ(h.code, 0) << h.err;
  EXPECT_NE(h.out.find("oracle passed"), std::string::npos);
}

TEST(Cli, ReadsStdin) {
  auto r = invoke({"permanent"}, "3\n0 1 1\n1 1 1\n1 1 1\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("permanent = 4"), std::string::npos);
  auto i = invoke({"indicator", "--input", "-"}, "2\n1 1\n1 1\n");
  EXPECT_NE(i.out.find("indicator = t2 + t1^2"), std::string::npos);
}

TEST(Cli, ErrorsAndExitCodes) {
  auto unknown = invoke({"frobnicate"});
  EXPECT_EQ(unknown.code, exit_usage);
  EXPECT_TRUE(unknown.out.empty());

  auto no_mod = invoke({"classes", "--input", golden("ex1.mat")});
  EXPECT_EQ(no_mod.code, exit_usage);

  auto zero_mod = invoke({"classes", "--mod", "0", "--input", golden("ex1.mat")});
  EXPECT_EQ(zero_mod.code, exit_usage);
  EXPECT_NE(zero_mod.err.find("precondition_violation"), std::string::npos);

  auto malformed = invoke({"permanent", "--format", "structured"}, "2\n1 2\n");
  EXPECT_EQ(malformed.code, exit_usage);
  EXPECT_TRUE(malformed.out.empty());
  EXPECT_EQ(Json::parse(malformed.err)["error"]["category"], "parse_error");

  auto missing = invoke({"permanent", "--input", "/nonexistent/file.mat"});
  EXPECT_EQ(missing.code, exit_usage);
  EXPECT_TRUE(missing.out.empty());

  auto guarded = invoke({"indicator", "--max-n", "2", "--input", golden("j3.mat")});
  EXPECT_EQ(guarded.code, exit_guard);
  EXPECT_TRUE(guarded.out.empty());
  EXPECT_NE(guarded.err.find("guard_refusal"), std::string::npos);

  auto bad_prime = invoke({"divseq", "--factors", "4,3"});
  EXPECT_EQ(bad_prime.code, exit_usage);
  auto big_cube = invoke({"hypercube", "--dim", "9"});
  EXPECT_EQ(big_cube.code, exit_guard);
}

TEST(Cli, OracleMismatchHasDistinctExitCode) {
  CliOptions opt;
  opt.command = "permanent";
  opt.input = golden("ex1.mat");
  std::istringstream in;
  auto doc = execute(opt, in);
  doc.result["permanent"] = "5";
  try {
    detail::oracle_check_matrix("permanent", parse_matrix(std::string("3\n0 1 1\n1 1 1\n1 1 1\n")), doc, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::oracle_mismatch);
    EXPECT_EQ(exit_code_for(e.category()), exit_oracle_mismatch);
  }
}

TEST(Cli, ResultDocumentRoundTrips) {
  auto r = invoke({"indicator", "--input", golden("derange4.mat"), "--format", "structured"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  const auto doc = result_from_json(j);
  EXPECT_EQ(to_json(doc), j);
  EXPECT_EQ(result_from_json(to_json(doc)), doc);
}

// Values after the last "= " or ": " on every result line of the text form.
std::vector<std::string> text_integers(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream lines(text);
  std::regex num("-?[0-9]+");
  for (std::string line; std::getline(lines, line);) {
    if (line.starts_with("#") || line.starts_with("indicator")) continue;
    std::size_t cut = 0;
    for (const char* sep : {"= ", ": "})
      if (auto at = line.rfind(sep); at != std::string::npos) cut = std::max(cut, at + 2);
    const auto tail = line.substr(cut);
    for (auto it = std::sregex_iterator(tail.begin(), tail.end(), num); it != std::sregex_iterator(); ++it)
      out.push_back(it->str());
  }
  return out;
}

std::vector<std::string> structured_integers(const ResultDocument& doc) {
  std::vector<std::string> out;
  const auto& r = doc.result;
  auto scalar = [&](const char* key) { out.push_back(r.at(key).get<std::string>()); };
  auto list = [&](const char* key) {
    for (const auto& v : r.at(key)) out.push_back(v.get<std::string>());
  };
  const auto& f = doc.function;
  if (f == "permanent") scalar("permanent");
  if (f == "determinant") scalar("determinant");
  if (f == "classes" || f == "stirling") list("counts");
  if (f == "evenodd") {
    scalar("even");
    scalar("odd");
    scalar("determinant");
  }
  if (f == "cycles") scalar("full_cycles");
  if (f == "indicator")
    for (const auto& t : r.at("terms")) out.push_back(t.at("coefficient").get<std::string>());
  if (f == "divseq" || f == "hypercube") {
    scalar("n");
    list("divisors");
    scalar("path_count");
    scalar("cycle_count");
  }
  return out;
}

const std::vector<std::vector<std::string>>& corpus_commands() {
  static const std::vector<std::vector<std::string>> cmds = [] {
    std::vector<std::vector<std::string>> c;
    for (const char* file : {"ex1.mat", "fig5.mat", "j3.mat", "derange4.mat", "weighted2.mat", "identity1.mat",
                             "sparse6.mat"}) {
      for (const char* fn : {"permanent", "determinant", "evenodd", "cycles", "stirling", "indicator"})
        c.push_back({fn, "--input", golden(file)});
      for (const char* m : {"1", "2", "3", "4", "5"}) c.push_back({"classes", "--mod", m, "--input", golden(file)});
    }
    c.push_back({"divseq", "--factors", "2,3"});
    c.push_back({"divseq", "--factors", "2^2,3^2"});
    c.push_back({"hypercube", "--dim", "3"});
    return c;
  }();
  return cmds;
}

TEST(Cli, TextAndStructuredCarrySameIntegers) {
  for (auto cmd : corpus_commands()) {
    cmd.push_back("--no-timing");
    auto text = invoke(cmd);
    ASSERT_EQ(text.code, 0) << text.err;
    cmd.insert(cmd.end(), {"--format", "structured"});
    auto structured = invoke(cmd);
    ASSERT_EQ(structured.code, 0);
    const auto doc = result_from_json(Json::parse(structured.out));
    EXPECT_FALSE(doc.elapsed_ms.has_value());
    EXPECT_EQ(text_integers(text.out), structured_integers(doc)) << cmd[0] << " " << cmd[2];
  }
}

TEST(Cli, OracleCheckPassesOnCorpus) {
  for (auto cmd : corpus_commands()) {
    cmd.push_back("--check-oracle");
    auto r = invoke(cmd);
    EXPECT_EQ(r.code, 0) << cmd[0] << ": " << r.err;
    EXPECT_NE(r.out.find("oracle passed"), std::string::npos) << cmd[0];
  }
}

TEST(Cli, StructuredPayloadIndependentOfStrategyAndThreads) {
  for (const auto& cmd : corpus_commands()) {
    std::string reference;
    for (std::vector<std::string> extra : {std::vector<std::string>{"--strategy", "memo"},
                                           {"--strategy", "naive"},
                                           {"--strategy", "memo", "--threads", "4"},
                                           {"--strategy", "naive", "--threads", "3"}}) {
      auto c = cmd;
      c.insert(c.end(), extra.begin(), extra.end());
      c.insert(c.end(), {"--format", "structured"});
      auto r = invoke(c);
      ASSERT_EQ(r.code, 0);
      auto payload = canonical_payload(result_from_json(Json::parse(r.out)));
      if (reference.empty()) reference = payload;
      EXPECT_EQ(payload, reference) << cmd[0];
    }
  }
}

}  // namespace
}  // namespace cminor
