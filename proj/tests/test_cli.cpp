#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  std::string out;
  int status = -1;
};

Run flatlab(const std::string& args) {
  Run r;
  const std::string cmd = std::string(FLATLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

using Json = nlohmann::ordered_json;

}  // namespace

TEST(Cli, SingerJson) {
  const auto r = flatlab("singer --p 7 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["p"], 7);
  EXPECT_EQ(j["q"], 57);
  EXPECT_EQ(j["residues"].size(), 8u);
  EXPECT_EQ(j["perfect_difference"], true);
}

TEST(Cli, JsonRoundTripsByteEqual) {
  for (const char* args : {"singer --p 7 --format json", "mahler --format json", "riesz --levels 3 --format json",
                           "mz --p 3 --levels 3 --format json"}) {
    const auto r = flatlab(args);
    ASSERT_EQ(r.status, 0) << args;
    EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out) << args;
  }
}

TEST(Cli, FlatnessCsv) {
  const auto r = flatlab("flatness --primes 5,13,31 --alpha 1 --format csv");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# flatlab flatness csv schema_version=1", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("p,q,l1_norm,defect,discrete_mean,closed_form", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string p, q, l1, defect, dm, cf;
    std::getline(cells, p, ',');
    std::getline(cells, q, ',');
    std::getline(cells, l1, ',');
    std::getline(cells, defect, ',');
    std::getline(cells, dm, ',');
    std::getline(cells, cf, ',');
    EXPECT_NEAR(std::stod(dm), std::stod(cf), 1e-12);
    EXPECT_NEAR(std::stod(defect), 1.0 - std::stod(l1), 1e-15);
  }
  EXPECT_EQ(rows, 3);
}

TEST(Cli, RieszDyadic) {
  const auto r = flatlab("riesz --preset dyadic --levels 8 --grid 4096 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["l2_check"], "1");
  EXPECT_EQ(j["l2_check_exact"], true);
  EXPECT_NEAR(j["mahler_product"].get<double>(), 1.0 / 256.0, 1e-9);
  EXPECT_EQ(j["coefficients"].size(), 511u);
  EXPECT_EQ(j["dilations"].back(), 128);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const auto a = flatlab("flatness --primes 31,61 --format csv --threads 1");
  const auto b = flatlab("flatness --primes 31,61 --format csv --threads 4");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = flatlab("mz --p 5 --seed 9 --format json --threads 1");
  const auto d = flatlab("mz --p 5 --seed 9 --format json --threads 3");
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, ValidationFailuresExitTwo) {
  EXPECT_EQ(flatlab("singer --p 4").status, 2);
  EXPECT_EQ(flatlab("singer").status, 2);
  EXPECT_EQ(flatlab("singer --p 7 --bogus 1").status, 2);
  EXPECT_EQ(flatlab("singer --p 7 --format xml").status, 2);
  EXPECT_EQ(flatlab("nonsense").status, 2);
  EXPECT_EQ(flatlab("").status, 2);
  EXPECT_EQ(flatlab("riesz --preset unknown").status, 2);
  EXPECT_EQ(flatlab("mahler --alpha 1.5").status, 2);
}

TEST(Cli, OutFileAndTextFormat) {
  const std::string path = ::testing::TempDir() + "flatlab_cli_out.txt";
  ASSERT_EQ(flatlab("sidon --primes 2,3 --format text --out " + path).status, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NE(ss.str().find("is_sidon"), std::string::npos);
  EXPECT_EQ(ss.str().find('\r'), std::string::npos);
}
