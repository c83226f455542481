#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "test_util.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string &args) {
  const auto err_path = std::filesystem::temp_directory_path() /
                        ("knotscatter_err_" + std::to_string(::getpid()));
  const std::string cmd =
      std::string(KNOTSCATTER_CLI) + " " + args + " 2>" + err_path.string();
  FILE *pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  std::ifstream ef(err_path);
  std::string err((std::istreambuf_iterator<char>(ef)), std::istreambuf_iterator<char>());
  std::filesystem::remove(err_path);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, err};
}

std::string temp_file(const std::string &name, const std::string &content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p.string();
}

} // namespace

TEST(Cli, MomentsTorusAndUnknot) {
  auto r = run("moments --knot torus:2,3");
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["K"][2].get<double>(), -9 * kst::pi, 1e-10);
  r = run("moments --knot unknot-xy");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["K"][2].get<double>(), -9 * kst::pi, 1e-10);
  r = run("moments --knot unknot-yz --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("tensor,i,j,k,l,value\n", 0), 0u);
}

TEST(Cli, MomentsFromFile) {
  const auto three = temp_file("ks_three.json", R"({"points": [[0,0,0],[1,0,0],[0,1,0]]})");
  auto r = run("moments --knot file:" + three);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("too few samples"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  json pts = json::array();
  for (const auto &cp : kst::sample_curve(kst::KnotSpec::unknot_xy(), 16))
    pts.push_back({cp.position.x, cp.position.y, cp.position.z});
  const auto good = temp_file("ks_circle.json", json{{"points", pts}}.dump());
  r = run("moments --samples 64 --knot file:" + good);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["K"][2].get<double>(), -9 * kst::pi, 1e-10);
}

TEST(Cli, BadConfigurations) {
  EXPECT_EQ(run("moments --knot torus:2,4").code, 2);
  EXPECT_EQ(run("moments --knot trefoil").code, 2);
  EXPECT_EQ(run("moments --samples 4").code, 2);
  EXPECT_EQ(run("amplitude --format xml").code, 2);
  EXPECT_EQ(run("amplitude --k -1").code, 2);
  EXPECT_EQ(run("amplitude --coupling 0").code, 2);
  EXPECT_EQ(run("amplitude --k notanumber").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, NoPartialOutputOnInvalidInput) {
  const auto out = std::filesystem::temp_directory_path() / "ks_should_not_exist.json";
  std::filesystem::remove(out);
  EXPECT_EQ(run("amplitude --lambda0 -2 --out " + out.string()).code, 2);
  EXPECT_FALSE(std::filesystem::exists(out));
}

TEST(Cli, AmplitudeCases) {
  auto r = run("amplitude --knot torus:2,3 --ki-theta 0.7 --ki-phi 0.2 --kn-theta 0.7 --kn-phi 0.2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("forward"), std::string::npos);
  r = run("amplitude --knot torus:2,3 --ki-theta 0 --kn-theta 3.141592653589793");
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_LT(std::hypot(doc["total"][0].get<double>(), doc["total"][1].get<double>()), 1e-12);
  r = run("amplitude --knot torus:3,4 --k 0.9 --ki-theta 0.3 --ki-phi 1 --kn-theta 2 --kn-phi 4");
  ASSERT_EQ(r.code, 0) << r.err;
  doc = json::parse(r.out);
  std::complex<double> s = 0;
  for (const char *k : {"v1", "v2", "v3", "v4"})
    s += std::complex<double>(doc["v"][k][0].get<double>(), doc["v"][k][1].get<double>());
  EXPECT_EQ(s.real(), doc["total"][0].get<double>());
  EXPECT_EQ(s.imag(), doc["total"][1].get<double>());
}

TEST(Cli, Factorize) {
  auto r = run("factorize --p 2 --q 3 --n 20 --seed 42");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_LT(json::parse(r.out)["residual"].get<double>(), 1e-9);
  EXPECT_EQ(run("factorize --p 2 --q 4").code, 2);
  EXPECT_EQ(run("factorize --p 3 --q 4").code, 0);
  // resonant pair: reported, exits non-zero
  r = run("factorize --p 3 --q 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, Selfcheck) {
  auto r = run("selfcheck");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = json::parse(r.out);
  EXPECT_TRUE(doc["all_pass"].get<bool>());
  EXPECT_EQ(doc["discrepancies"].size(), 1u);
  EXPECT_NE(r.err.find("notice"), std::string::npos);
  EXPECT_NE(run("selfcheck --strict-paper-tables").code, 0);
  EXPECT_EQ(run("selfcheck --lambda0 0").code, 2);
  EXPECT_EQ(run("selfcheck --lambda0 -3.5").code, 2);
}

TEST(Cli, DeterministicOutput) {
  const auto a = run("sweep --knot torus:2,5 --n 6 --seed 7 --format csv");
  const auto b = run("sweep --knot torus:2,5 --n 6 --seed 7 --format csv");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 7);
  EXPECT_EQ(a.out.rfind("index,k,", 0), 0u);
  EXPECT_NE(a.out.find(",abs2\n"), std::string::npos);
  EXPECT_NE(run("sweep --knot torus:2,5 --n 6 --seed 8 --format csv").out, a.out);
  EXPECT_EQ(run("sweep --n 3 --seed 7").out, run("sweep --n 3 --seed 7").out);
}

TEST(Cli, PotentialCsv) {
  const auto r = run("potential --knot torus:2,3 --radii 30,100 --directions 3 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("r,theta,phi,Ax,Ay,Az,method\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 3 * 2 * 2);
  EXPECT_NE(r.out.find(",multipole\n"), std::string::npos);
  EXPECT_NE(r.out.find(",biot-savart\n"), std::string::npos);
  EXPECT_EQ(run("potential --radii 0,10").code, 2);
}
