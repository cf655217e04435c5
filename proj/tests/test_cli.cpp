#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qaslopes/certifier.hpp"
#include "qaslopes/cli.hpp"
#include "qaslopes/formal_lspace.hpp"

using namespace qaslopes;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qaslopes_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string data(const std::string& file) { return std::string(QASLOPES_DATA_DIR) + "/" + file; }

std::string k13_pd(const std::string& name) {
  std::istringstream in(slurp(data("k13_knots.csv")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(name + ",", 0) == 0) {
      const auto a = line.find('"'), b = line.rfind('"');
      return line.substr(a + 1, b - a - 1);
    }
  }
  return "";
}

}  // namespace

TEST(Cli, TorusQA) {
  const Outcome o = call({"torus-qa", "5", "3"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("25/2"), std::string::npos);
  EXPECT_NE(o.out.find("m=2, n=2"), std::string::npos);
  EXPECT_EQ(call({"torus-qa", "5", "3", "25/2"}).code, 2);
  EXPECT_EQ(call({"torus-qa", "5", "3", "13"}).code, 0);
  EXPECT_EQ(call({"torus-qa", "5", "3", "(13,1)"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"torus-qa", "4", "2"}).code, 1);
  EXPECT_EQ(call({"torus-qa", "5"}).code, 1);
  EXPECT_EQ(call({"moser", "5", "3", "1/0"}).code, 1);
  EXPECT_EQ(call({"sweep", "nonsense"}).code, 1);
  EXPECT_EQ(call({"short-slopes", "--mu", "1,0", "--lambda", "2,0", "--bound", "3"}).code, 1);
  EXPECT_EQ(call({"short-slopes", "--mu", "1,0", "--lambda", "0,1"}).code, 1);
  EXPECT_EQ(call({"certify-qa", "--pd", "PD[X(1,2,3)]"}).code, 1);
  const Outcome o = call({"montesinos-qa", "SFS[S2:(2,1"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("error"), std::string::npos);
}

TEST(Cli, Moser) {
  const Outcome o = call({"moser", "5", "3", "13"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("T(5,3)(13/1) = SFS[S2:(5,3)(3,-2)(2,1)]"), std::string::npos);
}

TEST(Cli, MontesinosNonQASpace) {
  const Outcome o = call({"montesinos-qa", "SFS[S2:(2,1)(5,2)(7,-4)]"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.out.find("not quasi-alternating"), std::string::npos);
}

TEST(Cli, FormalPropagateRoundTrip) {
  const auto path = scratch("d.json");
  std::filesystem::remove(path);
  EXPECT_EQ(call({"formal-propagate", "--seed", "2", "--query", "5/3", "--emit-derivation", path.string()}).code, 2);
  EXPECT_EQ(call({"formal-propagate", "--seed", "2", "--query", "7/3", "--emit-derivation", path.string()}).code, 0);
  const Derivation d = derivation_from_json(nlohmann::json::parse(slurp(path)));
  EXPECT_TRUE(verify_derivation(d, PositiveIntegerSeed{BigInt(2)}, Slope(7, 3)));
  EXPECT_EQ(call({"verify-derivation", "--seed", "2", "--query", "7/3", path.string()}).code, 0);
  EXPECT_EQ(call({"verify-derivation", "--seed", "3", "--query", "7/3", path.string()}).code, 2);
}

TEST(Cli, FormalPropagateFromSlopeSeed) {
  EXPECT_EQ(call({"formal-propagate", "--seed", "5/2", "--query", "9/2"}).code, 0);
  EXPECT_EQ(call({"formal-propagate", "--seed", "5/2", "--query", "3"}).code, 2);
}

TEST(Cli, CertifyAndVerifyRoundTrip) {
  const auto cert = scratch("cert.json");
  const std::string pd = k13_pd("K13n3009");
  ASSERT_FALSE(pd.empty());
  const Outcome o = call({"certify-qa", "--pd", pd, "--db", data("qa_database.csv"), "--emit-certificate",
                          cert.string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("K12n666"), std::string::npos);
  EXPECT_EQ(call({"verify-certificate", cert.string(), "--db", data("qa_database.csv")}).code, 0);

  const auto empty = scratch("empty.csv");
  std::ofstream(empty) << "name,verdict,det,pd,source\n";
  EXPECT_EQ(call({"verify-certificate", cert.string(), "--db", empty.string()}).code, 2);

  nlohmann::json j = nlohmann::json::parse(slurp(cert));
  j["det"] = 88;
  const auto forged = scratch("forged.json");
  std::ofstream(forged) << j.dump();
  EXPECT_EQ(call({"verify-certificate", forged.string(), "--db", data("qa_database.csv")}).code, 2);
}

TEST(Cli, CertifyUnknownAndLimits) {
  const std::string pd = k13_pd("K13n2028");
  const auto empty = scratch("empty2.csv");
  std::ofstream(empty) << "name,verdict,det,pd,source\n";
  const Outcome o = call({"certify-qa", "--pd", pd, "--db", empty.string(), "--max-nodes", "2"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.out.find("unknown"), std::string::npos);
  EXPECT_EQ(call({"certify-qa", "--pd", pd, "--max-depth", "-1"}).code, 1);
  EXPECT_EQ(call({"certify-qa", "--pd", pd, "--db", "/nonexistent/db.csv"}).code, 1);
}

TEST(Cli, CertifyWithAssumptions) {
  const QADatabase db = load_database(data("qa_database.csv"));
  const auto assume = scratch("assume.csv");
  std::ofstream(assume) << "name,pd\nmine,\"" << db.qa_by_name("K12n598")->pd.str() << "\"\n";
  const auto empty = scratch("empty3.csv");
  std::ofstream(empty) << "name,verdict,det,pd,source\n";
  const Outcome o = call({"--json", "--no-timing", "certify-qa", "--pd", k13_pd("K13n2028"), "--db",
                          empty.string(), "--assume", assume.string()});
  EXPECT_EQ(o.code, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["verdict"], "QA");
  EXPECT_EQ(j["assumptions_used"], nlohmann::json::array({"mine"}));
}

TEST(Cli, DeterministicJson) {
  const std::vector<std::string> args{"--json", "--no-timing", "certify-qa", "--pd", k13_pd("K13n3009"),
                                      "--db", data("qa_database.csv")};
  const Outcome a = call(args), b = call(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("elapsed"), std::string::npos);
  const Outcome timed = call({"--json", "certify-qa", "--pd", k13_pd("K13n3009"), "--db", data("qa_database.csv")});
  EXPECT_NE(timed.out.find("elapsed_ms"), std::string::npos);
  const Outcome t1 = call({"--json", "torus-qa", "7", "4"}), t2 = call({"--json", "torus-qa", "7", "4"});
  EXPECT_EQ(t1.out, t2.out);
  EXPECT_NO_THROW(nlohmann::json::parse(t1.out));
}

TEST(Cli, ShortSlopes) {
  const Outcome o = call({"--json", "short-slopes", "--mu", "1,0", "--lambda", "0,1", "--bound", "1"});
  EXPECT_EQ(o.code, 0);
  const auto j = nlohmann::json::parse(o.out);
  ASSERT_EQ(j["slopes"].size(), 2u);
  EXPECT_EQ(j["slopes"][0]["length"], 1.0);
  const Outcome six = call({"short-slopes", "--mu", "6.1,0", "--lambda", "0,7", "--six-theorem"});
  EXPECT_EQ(six.code, 0);
  EXPECT_EQ(six.out.find(" 1/0 "), std::string::npos);
  EXPECT_EQ(call({"short-slopes", "--mu", "1,0", "--lambda", "0,1", "--systole", "0.5"}).code, 0);
  EXPECT_EQ(call({"short-slopes", "--mu", "1,0", "--lambda", "0,1", "--systole", "-1"}).code, 1);
}

TEST(Cli, Sweeps) {
  const auto out = scratch("table8.csv");
  const Outcome o = call({"sweep", "table8", "--out", out.string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("8 cases, 0 mismatches"), std::string::npos);
  EXPECT_NE(slurp(out).find("SFS[S2:(2,1)(5,2)(7,-4)]"), std::string::npos);
  const auto det = scratch("det.csv");
  EXPECT_EQ(call({"sweep", "det-oracle", "--max-crossings", "6", "--out", det.string()}).code, 0);
  const auto s1 = scratch("s1.csv"), s2 = scratch("s2.csv");
  EXPECT_EQ(call({"sweep", "short-slopes-bruteforce", "--cusps", "3", "--out", s1.string()}).code, 0);
  EXPECT_EQ(call({"sweep", "short-slopes-bruteforce", "--cusps", "3", "--out", s2.string()}).code, 0);
  EXPECT_EQ(slurp(s1), slurp(s2));
}
