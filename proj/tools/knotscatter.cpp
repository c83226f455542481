// knotscatter: moments, potentials, Born amplitudes and self-checks for
// knotted dipole lines.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotscatter/knotscatter.hpp"
#include "knotscatter/io.hpp"

namespace ks = knotscatter;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;

struct RunConfig {
  std::string knot = "torus:2,3";
  double k = 0.5;
  double ki_theta = 0.0;
  double ki_phi = 0.0;
  double kn_theta = std::numbers::pi / 3.0;
  double kn_phi = 0.0;
  double lambda0 = ks::kDefaultLambda0;
  double coupling = 1.0;
  int samples = ks::kDefaultCurveSamples;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
  bool strict_paper_tables = false;

  // factorize / sweep
  int p = 2;
  int q = 3;
  int count = 20;
  double k_min = 0.2;
  double k_max = 2.0;
  double threshold = 1e-8;

  // potential
  std::vector<double> radii{30.0, 50.0, 100.0, 200.0, 300.0};
  int directions = 8;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ks::InvalidArgument(msg);
}

int parse_int(const std::string &s, const std::string &what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), "bad integer in " + what + ": '" + s + "'");
  return v;
}

ks::KnotSpec parse_knot(const std::string &s) {
  if (s == "unknot-xy")
    return ks::KnotSpec::unknot_xy();
  if (s == "unknot-xz")
    return ks::KnotSpec::unknot_xz();
  if (s == "unknot-yz")
    return ks::KnotSpec::unknot_yz();
  if (s.rfind("torus:", 0) == 0) {
    const std::string body = s.substr(6);
    const auto comma = body.find(',');
    require(comma != std::string::npos, "--knot torus:p,q expects two integers");
    return ks::KnotSpec::torus(parse_int(body.substr(0, comma), "--knot"),
                               parse_int(body.substr(comma + 1), "--knot"));
  }
  if (s.rfind("file:", 0) == 0)
    return ks::io::load_sampled_curve(s.substr(5));
  throw ks::InvalidArgument("unknown --knot '" + s +
                            "' (torus:p,q | unknot-xy | unknot-xz | unknot-yz | file:PATH)");
}

void validate_common(const RunConfig &c) {
  require(std::isfinite(c.lambda0) && c.lambda0 > 0.0, "--lambda0 must be positive");
  require(std::isfinite(c.coupling) && c.coupling != 0.0,
          "--coupling must be finite and non-zero");
  require(c.samples >= ks::kMinSampledPoints,
          "--samples must be >= " + std::to_string(ks::kMinSampledPoints));
  require(c.format == "json" || c.format == "csv", "--format must be json or csv");
}

ks::ScatteringKinematics kinematics_of(const RunConfig &c) {
  require(std::isfinite(c.k) && c.k > 0.0, "--k must be positive");
  return ks::ScatteringKinematics::from_angles(c.k, c.ki_theta, c.ki_phi, c.kn_theta,
                                               c.kn_phi, c.lambda0);
}

void emit(const RunConfig &c, const std::string &text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f)
    throw ks::InvalidArgument("cannot write --out " + c.out);
  f << text;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

const char *kAmplitudeHeader =
    "index,k,ki_x,ki_y,ki_z,kn_x,kn_y,kn_z,lambda0,v1_re,v1_im,v2_re,v2_im,"
    "v3_re,v3_im,v4_re,v4_im,total_re,total_im,abs2\n";

std::string amplitude_row(std::size_t idx, const ks::ScatteringKinematics &kin,
                          const ks::BornAmplitude &a) {
  std::string row = std::to_string(idx) + "," + num(ks::norm(kin.k_i));
  for (const auto *v : {&kin.k_i, &kin.k_n})
    for (int c = 0; c < 3; ++c)
      row += "," + num((*v)[c]);
  row += "," + num(kin.lambda0);
  for (const auto &z : a.parts())
    row += "," + num(z.real()) + "," + num(z.imag());
  return row + "," + num(std::norm(a.total)) + "\n";
}

// ---- subcommands ---------------------------------------------------------

int cmd_moments(const RunConfig &c) {
  validate_common(c);
  const auto knot = parse_knot(c.knot);
  const auto m = ks::compute_moments(knot, c.samples);
  if (c.format == "json") {
    json doc = ks::io::to_json(m);
    doc["knot"] = knot.label();
    doc["samples"] = c.samples;
    emit(c, dump(doc));
    return kExitOk;
  }
  std::string csv = "tensor,i,j,k,l,value\n";
  for (int i = 0; i < 3; ++i)
    csv += "K," + std::to_string(i) + ",,,," + num(m.quadrupole.K[i]) + "\n";
  for (int i = 0; i < 3; ++i)
    csv += "Q_trace," + std::to_string(i) + ",,,," + num(m.quadrupole.Q_trace[i]) + "\n";
  for (int i = 0; i < 3; ++i)
    for (const auto &jk : ks::kSortedPairs)
      csv += "Q," + std::to_string(i) + "," + std::to_string(jk[0]) + "," +
             std::to_string(jk[1]) + ",," + num(m.quadrupole.Q[i][jk[0]][jk[1]]) + "\n";
  for (int i = 0; i < 3; ++i)
    for (const auto &t : ks::kSortedTriples)
      csv += "O," + std::to_string(i) + "," + std::to_string(t[0]) + "," +
             std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
             num(m.octopole.O[i][t[0]][t[1]][t[2]]) + "\n";
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 3; ++p)
      csv += "O_contracted," + std::to_string(i) + "," + std::to_string(p) + ",,," +
             num(m.octopole.O_contracted[i][p]) + "\n";
  emit(c, csv);
  return kExitOk;
}

int cmd_potential(const RunConfig &c) {
  validate_common(c);
  require(!c.radii.empty(), "--radii must not be empty");
  for (double r : c.radii)
    require(std::isfinite(r) && r > 0.0, "--radii must be positive");
  require(c.directions >= 1, "--directions must be >= 1");
  const auto knot = parse_knot(c.knot);
  const auto m = ks::compute_moments(knot, c.samples);

  std::mt19937_64 rng(c.seed);
  std::vector<std::pair<double, double>> dirs;
  for (int d = 0; d < c.directions; ++d) {
    const double th = std::acos(2.0 * ks::uniform01(rng) - 1.0);
    dirs.emplace_back(th, 2.0 * std::numbers::pi * ks::uniform01(rng));
  }
  std::string csv = "r,theta,phi,Ax,Ay,Az,method\n";
  json rows = json::array();
  for (const auto &[th, ph] : dirs)
    for (double r : c.radii) {
      const auto fp = ks::FieldPoint::spherical(r, th, ph);
      const std::pair<const char *, ks::Vec3> vals[] = {
          {"multipole", ks::multipole_potential(m, fp)},
          {"biot-savart", ks::biot_savart_dipole_line(knot, fp, c.samples)}};
      for (const auto &[method, A] : vals) {
        csv += num(r) + "," + num(th) + "," + num(ph) + "," + num(A.x) + "," +
               num(A.y) + "," + num(A.z) + "," + method + "\n";
        rows.push_back({{"r", r}, {"theta", th}, {"phi", ph},
                        {"A", ks::io::to_json(A)}, {"method", method}});
      }
    }
  emit(c, c.format == "csv" ? csv : dump(rows));
  return kExitOk;
}

int cmd_amplitude(const RunConfig &c) {
  validate_common(c);
  const auto knot = parse_knot(c.knot);
  const auto kin = kinematics_of(c);
  const auto a = ks::born_amplitude(knot, kin, {c.coupling}, c.samples);
  if (c.format == "csv") {
    emit(c, std::string(kAmplitudeHeader) + amplitude_row(0, kin, a));
    return kExitOk;
  }
  json doc = ks::io::to_json(kin, a);
  doc["knot"] = knot.label();
  doc["coupling"] = c.coupling;
  emit(c, dump(doc));
  return kExitOk;
}

int cmd_sweep(const RunConfig &c) {
  validate_common(c);
  require(c.count >= 1, "--n must be >= 1");
  require(c.k_min > 0.0 && c.k_max >= c.k_min, "need 0 < --k-min <= --k-max");
  const auto knot = parse_knot(c.knot);
  const auto kins = ks::random_kinematics(c.seed, c.count, c.k_min, c.k_max, c.lambda0);
  std::string csv = kAmplitudeHeader;
  json rows = json::array();
  for (std::size_t i = 0; i < kins.size(); ++i) {
    const auto a = ks::born_amplitude(knot, kins[i], {c.coupling}, c.samples);
    csv += amplitude_row(i, kins[i], a);
    json doc = ks::io::to_json(kins[i], a);
    doc["index"] = i;
    rows.push_back(doc);
  }
  emit(c, c.format == "csv" ? csv : dump(rows));
  return kExitOk;
}

int cmd_factorize(const RunConfig &c) {
  validate_common(c);
  require(c.p > 0 && c.q > 0, "--p and --q must be positive");
  require(std::gcd(c.p, c.q) == 1, "--p and --q must be coprime (got " +
                                        std::to_string(c.p) + "," +
                                        std::to_string(c.q) + ")");
  require(c.count >= 1, "--n must be >= 1");
  require(c.k_min > 0.0 && c.k_max >= c.k_min, "need 0 < --k-min <= --k-max");
  require(c.threshold > 0.0, "--threshold must be positive");
  const auto kins = ks::random_kinematics(c.seed, c.count, c.k_min, c.k_max, c.lambda0);
  const double res = ks::factorization_residual(c.p, c.q, kins, {c.coupling}, c.samples);
  const bool pass = res < c.threshold;
  json doc{{"p", c.p},           {"q", c.q},         {"n", c.count},
           {"seed", c.seed},     {"k_min", c.k_min}, {"k_max", c.k_max},
           {"lambda0", c.lambda0}, {"residual", res}, {"threshold", c.threshold},
           {"pass", pass}};
  emit(c, dump(doc));
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_selfcheck(const RunConfig &c) {
  validate_common(c);
  require(c.format == "json", "selfcheck only writes json");
  const auto rep = ks::diagnostics::run_selfcheck(c.lambda0, c.seed, c.samples);
  json checks = json::array();
  for (const auto &ch : rep.checks)
    checks.push_back({{"name", ch.name},
                      {"pass", ch.pass},
                      {"value", ch.value},
                      {"tolerance", ch.tolerance},
                      {"detail", ch.detail}});
  const bool strict_fail = c.strict_paper_tables && !rep.discrepancies.empty();
  json doc{{"checks", checks},
           {"discrepancies", ks::io::to_json(rep.discrepancies)},
           {"all_pass", rep.all_pass()},
           {"strict_paper_tables", c.strict_paper_tables}};
  emit(c, dump(doc));
  for (const auto &d : rep.discrepancies)
    std::cerr << "notice: published coefficient differs from the Gaunt construction: "
              << d.monomial << " (l,m)=(" << d.l << "," << d.m << ") printed "
              << num(d.paper_value.real()) << " computed " << num(d.computed_value.real())
              << " [" << d.source << "]\n";
  return rep.all_pass() && !strict_fail ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App *sub, RunConfig &c) {
  sub->add_option("--knot", c.knot,
                  "torus:p,q | unknot-xy | unknot-xz | unknot-yz | file:PATH")
      ->capture_default_str();
  sub->add_option("--lambda0", c.lambda0, "cutoff radius")->capture_default_str();
  sub->add_option("--coupling", c.coupling, "coupling g")->capture_default_str();
  sub->add_option("--samples", c.samples, "curve quadrature nodes")->capture_default_str();
  sub->add_option("--seed", c.seed, "mt19937_64 seed")->capture_default_str();
  sub->add_option("--format", c.format, "json | csv")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
}

void add_kinematics(CLI::App *sub, RunConfig &c) {
  sub->add_option("--k", c.k, "|k_i| = |k_n|")->capture_default_str();
  sub->add_option("--ki-theta", c.ki_theta, "incident polar angle (rad)")->capture_default_str();
  sub->add_option("--ki-phi", c.ki_phi, "incident azimuth (rad)")->capture_default_str();
  sub->add_option("--kn-theta", c.kn_theta, "outgoing polar angle (rad)")->capture_default_str();
  sub->add_option("--kn-phi", c.kn_phi, "outgoing azimuth (rad)")->capture_default_str();
}

void add_sampling(CLI::App *sub, RunConfig &c) {
  sub->add_option("--n", c.count, "number of random kinematics")->capture_default_str();
  sub->add_option("--k-min", c.k_min)->capture_default_str();
  sub->add_option("--k-max", c.k_max)->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"knotscatter: Born scattering off knotted dipole lines"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto *moments = app.add_subcommand("moments", "quadrupole and octopole moments");
  add_common(moments, cfg);

  auto *potential = app.add_subcommand("potential", "multipole vs Biot-Savart potential");
  add_common(potential, cfg);
  potential->add_option("--radii", cfg.radii, "field radii")->delimiter(',');
  potential->add_option("--directions", cfg.directions, "random directions")
      ->capture_default_str();

  auto *amplitude = app.add_subcommand("amplitude", "Born amplitude V_ni");
  add_common(amplitude, cfg);
  add_kinematics(amplitude, cfg);

  auto *sweep = app.add_subcommand("sweep", "amplitudes over random kinematics");
  add_common(sweep, cfg);
  add_sampling(sweep, cfg);

  auto *factorize = app.add_subcommand("factorize", "torus knot vs unknot triad");
  add_common(factorize, cfg);
  add_sampling(factorize, cfg);
  factorize->add_option("--p", cfg.p)->capture_default_str();
  factorize->add_option("--q", cfg.q)->capture_default_str();
  factorize->add_option("--threshold", cfg.threshold)->capture_default_str();

  auto *selfcheck = app.add_subcommand("selfcheck", "numerical oracle suite");
  add_common(selfcheck, cfg);
  selfcheck->add_flag("--strict-paper-tables", cfg.strict_paper_tables,
                      "fail when a published table entry disagrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (moments->parsed())
      return cmd_moments(cfg);
    if (potential->parsed())
      return cmd_potential(cfg);
    if (amplitude->parsed())
      return cmd_amplitude(cfg);
    if (sweep->parsed())
      return cmd_sweep(cfg);
    if (factorize->parsed())
      return cmd_factorize(cfg);
    return cmd_selfcheck(cfg);
  } catch (const ks::InvalidArgument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ks::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}
