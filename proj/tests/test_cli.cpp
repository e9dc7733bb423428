#include <gtest/gtest.h>

#include <sstream>

#include <cli.hpp>

using namespace braidnt;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, NormalForm) {
  Result r = run({"nf", "-n", "3", "s1 s2 s1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "D\n");
  Result j = run({"nf", "-n", "3", "s1 s2 s1", "--json"});
  auto parsed = cli::json::parse(j.out);
  EXPECT_EQ(parsed["inf"], 1);
  EXPECT_EQ(parsed["length"], 0);
  // words may also come as separate tokens
  EXPECT_EQ(run({"nf", "-n", "3", "s1", "s2", "s1"}).out, "D\n");
}

TEST(Cli, NormalFormRoundTrip) {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + draw(rng, 5);
    GeneratorWord w = random_word(n, draw(rng, 15), rng);
    Result r = run({"nf", "-n", std::to_string(n), to_string(w)});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string printed = r.out.substr(0, r.out.size() - 1);
    EXPECT_EQ(normal_form(parse_word(printed, n)), normal_form(w)) << printed;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"classify", "-n", "3", "s9"}).code, 2);
  EXPECT_EQ(run({"classify", "-n", "3", "x1"}).code, 2);
  EXPECT_EQ(run({"classify", "s1"}).code, 2);       // missing n
  EXPECT_EQ(run({"classify", "-n", "1", "s1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"classify", "-n", "3", "s1", "--bogus"}).code, 2);
  EXPECT_EQ(run({"classify", "-n", "3", "s1", "--cap", "0"}).code, 2);
  EXPECT_EQ(run({"random", "-n", "4"}).code, 2);  // seed required
  EXPECT_EQ(run({"reduce", "-n", "3", "s1 s2 s2 D^-2"}).code, 2);  // neither positive nor rigid
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ClassifyOutputs) {
  Result r = run({"classify", "-n", "3", "D^2", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = cli::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "periodic");
  EXPECT_EQ(j["witness"]["k"], 2);
  EXPECT_EQ(j["witness"]["d"], 4);
  for (const char* key : {"input", "n", "verdict", "witness", "stats"}) EXPECT_TRUE(j.contains(key)) << key;

  auto red = cli::json::parse(run({"classify", "-n", "3", "s1", "--json"}).out);
  EXPECT_EQ(red["verdict"], "reducible");
  EXPECT_EQ(red["witness"]["kind"], "round-family");
  EXPECT_EQ(red["witness"]["orbits"], cli::json::parse("[[[1,2]]]"));

  auto alm = cli::json::parse(run({"classify", "-n", "4", "s2 s2 s1 s1 s2 s3 s3 s2", "--json"}).out);
  EXPECT_EQ(alm["witness"]["kind"], "almost-round");
  EXPECT_EQ(alm["witness"]["pair"].size(), 2u);
  EXPECT_TRUE(alm["witness"].contains("enclosed"));
  EXPECT_TRUE(alm["witness"]["labelling"].is_array());

  Result pa = run({"classify", "-n", "3", "s1 s2^-1"});
  EXPECT_EQ(pa.out.rfind("pseudo-anosov", 0), 0u);
  Result capped = run({"classify", "-n", "4", "s1 s2^-1 s3 s1", "--cap", "1", "--json"});
  EXPECT_EQ(capped.code, 0);
  EXPECT_EQ(cli::json::parse(capped.out)["witness"].value("cap", 0), 1);
}

TEST(Cli, RandomIsDeterministic) {
  Result a = run({"random", "-n", "4", "-l", "10", "--seed", "7"});
  Result b = run({"random", "-n", "4", "-l", "10", "--seed", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"random", "-n", "4", "-l", "10", "--seed", "8"}).out);
  Result p = run({"random", "-n", "5", "-l", "12", "--seed", "3", "--count", "4", "--positive"});
  std::istringstream lines(p.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(parse_word(line, 5).is_positive());
    ++count;
  }
  EXPECT_EQ(count, 4);
}

TEST(Cli, BatchKeepsOrder) {
  std::string input = "n=4\n# comment\n";
  Rng rng(52);
  for (int i = 0; i < 40; ++i) input += to_string(random_word(4, 1 + draw(rng, 6), rng)) + "\n";
  Result one = run({"batch", "--jobs", "1", "--json"}, input);
  Result many = run({"batch", "--jobs", "4", "--json"}, input);
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
  std::istringstream lines(one.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    auto j = cli::json::parse(line);
    EXPECT_EQ(j["n"], 4);
    ++count;
  }
  EXPECT_EQ(count, 40);

  Result bad = run({"batch"}, "n=3\ns1\ns7\n");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("s1\treducible"), std::string::npos);
  EXPECT_EQ(run({"batch"}, "s1\n").code, 2);  // no header
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"slide", "-n", "3", "s1 s2 s2"}).out, "D\nprefix: s1 s2\n");
  Result c = run({"circuit", "-n", "3", "s1 s2 s2", "--json"});
  auto j = cli::json::parse(c.out);
  EXPECT_EQ(j["t"], 2);
  EXPECT_EQ(j["circuit"], cli::json::parse("[\"D\"]"));
  auto rg = cli::json::parse(run({"rigidity", "-n", "3", "s1 s2^-1", "--json"}).out);
  EXPECT_EQ(rg["rigid"], true);
  EXPECT_EQ(rg["rigidity"], cli::json::parse("[2,2]"));
  auto cv = cli::json::parse(run({"curves", "-n", "4", "s1 s3", "--json"}).out);
  EXPECT_EQ(cv["families"].size(), 1u);
  auto rd = cli::json::parse(run({"reduce", "-n", "4", "s3 s3", "--json"}).out);
  EXPECT_EQ(rd["witness"]["pair"], cli::json::parse("[1,2]"));
  EXPECT_EQ(run({"reduce", "-n", "3", "s2 s2"}).out, "no witness\n");
}
