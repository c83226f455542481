#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "knotscatter/io.hpp"
#include "test_util.hpp"

using namespace kst;
using nlohmann::json;

TEST(Io, SampledCurveRoundTrip) {
  std::vector<Vec3> pts;
  for (const auto &cp : sample_curve(KnotSpec::torus(2, 3), 32))
    pts.push_back(cp.position);
  const json doc = io::curve_to_json(pts);
  const auto path = std::filesystem::temp_directory_path() / "knotscatter_curve.json";
  std::ofstream(path) << doc.dump();
  const auto spec = io::load_sampled_curve(path.string());
  EXPECT_EQ(spec.label(), "sampled:32");
  const auto a = compute_moments(spec, 64), b = compute_moments(KnotSpec::torus(2, 3), 64);
  EXPECT_NEAR(a.quadrupole.K.z, b.quadrupole.K.z, 1e-10);
  std::filesystem::remove(path);
}

TEST(Io, MalformedCurveDocuments) {
  EXPECT_THROW(io::sampled_curve_from_json(json::parse("[1,2,3]")), InvalidArgument);
  EXPECT_THROW(io::sampled_curve_from_json(json::parse(R"({"points": [[1,2]]})")),
               InvalidArgument);
  EXPECT_THROW(io::sampled_curve_from_json(json::parse(R"({"points": [[1,2,"x"]]})")),
               InvalidArgument);
  EXPECT_THROW(io::load_sampled_curve("/nonexistent/curve.json"), InvalidArgument);
  const auto path = std::filesystem::temp_directory_path() / "knotscatter_bad.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(io::load_sampled_curve(path.string()), InvalidArgument);
  std::filesystem::remove(path);
}

TEST(Io, MomentDocument) {
  const auto m = compute_moments(KnotSpec::unknot_xz());
  const json doc = io::to_json(m);
  for (const char *key : {"K", "Q", "Q_trace", "O", "O_contracted"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["Q"].size(), 3u);
  EXPECT_EQ(doc["Q"][0][0].size(), 3u);
  EXPECT_EQ(doc["O"][0][0][0].size(), 3u);
  EXPECT_DOUBLE_EQ(doc["O_contracted"][1][0].get<double>(), m.octopole.O_contracted[1][0]);
}

TEST(Io, AmplitudeDocument) {
  const auto kin = ScatteringKinematics::make({0.6, 0, 0.8}, {0, 0.6, 0.8});
  const auto a = born_amplitude(KnotSpec::torus(2, 3), kin);
  const json doc = io::to_json(kin, a);
  ASSERT_TRUE(doc.contains("kin"));
  ASSERT_TRUE(doc.contains("v"));
  std::complex<double> sum = 0;
  for (const char *key : {"v1", "v2", "v3", "v4"}) {
    const auto &v = doc["v"][key];
    ASSERT_EQ(v.size(), 2u);
    sum += std::complex<double>(v[0].get<double>(), v[1].get<double>());
  }
  EXPECT_EQ(sum, std::complex<double>(doc["total"][0].get<double>(), doc["total"][1].get<double>()));
  EXPECT_EQ(doc["kin"]["lambda0"].get<double>(), 3.5);
}

TEST(Io, DiscrepancyDocument) {
  const json doc = io::to_json(discrepancy_report());
  ASSERT_EQ(doc.size(), 1u);
  for (const char *key : {"monomial", "l", "m", "paper_value", "computed_value", "source"})
    EXPECT_TRUE(doc[0].contains(key)) << key;
}
