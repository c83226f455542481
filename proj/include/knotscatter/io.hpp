#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotscatter/angular.hpp"
#include "knotscatter/born.hpp"
#include "knotscatter/curves.hpp"
#include "knotscatter/error.hpp"
#include "knotscatter/kinematics.hpp"
#include "knotscatter/multipole.hpp"

namespace knotscatter::io {

using nlohmann::json;

inline json to_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }
inline json to_json(std::complex<double> z) {
  return json::array({z.real(), z.imag()});
}

/// {"points": [[x, y, z], ...]}, implicitly closed.
inline KnotSpec sampled_curve_from_json(const json &doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw InvalidArgument("curve document: expected {\"points\": [[x,y,z], ...]}");
  std::vector<Vec3> pts;
  for (const auto &p : doc["points"]) {
    if (!p.is_array() || p.size() != 3)
      throw InvalidArgument("curve document: every point needs three coordinates");
    for (const auto &c : p)
      if (!c.is_number())
        throw InvalidArgument("curve document: non-numeric coordinate");
    pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  return KnotSpec::sampled(std::move(pts));
}

inline KnotSpec load_sampled_curve(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot open curve file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error &e) {
    throw InvalidArgument("curve file " + path + ": " + e.what());
  }
  return sampled_curve_from_json(doc);
}

inline json curve_to_json(const std::vector<Vec3> &pts) {
  json arr = json::array();
  for (const auto &p : pts)
    arr.push_back(to_json(p));
  return {{"points", arr}};
}

inline json to_json(const MomentSet &m) {
  json Q = json::array(), O = json::array(), Oc = json::array();
  for (int i = 0; i < 3; ++i) {
    json qi = json::array(), oi = json::array(), oci = json::array();
    for (int j = 0; j < 3; ++j) {
      json qij = json::array(), oij = json::array();
      for (int k = 0; k < 3; ++k) {
        qij.push_back(m.quadrupole.Q[i][j][k]);
        json oijk = json::array();
        for (int l = 0; l < 3; ++l)
          oijk.push_back(m.octopole.O[i][j][k][l]);
        oij.push_back(oijk);
      }
      qi.push_back(qij);
      oi.push_back(oij);
      oci.push_back(m.octopole.O_contracted[i][j]);
    }
    Q.push_back(qi);
    O.push_back(oi);
    Oc.push_back(oci);
  }
  return {{"K", to_json(m.quadrupole.K)},
          {"Q", Q},
          {"Q_trace", to_json(m.quadrupole.Q_trace)},
          {"O", O},
          {"O_contracted", Oc}};
}

inline json to_json(const ScatteringKinematics &kin) {
  return {{"k_i", to_json(kin.k_i)},     {"k_n", to_json(kin.k_n)},
          {"lambda0", kin.lambda0},      {"q", to_json(kin.q_vec)},
          {"q_mag", kin.q_mag},          {"K", to_json(kin.K_vec)}};
}

inline json to_json(const ScatteringKinematics &kin, const BornAmplitude &a) {
  return {{"kin", to_json(kin)},
          {"v",
           {{"v1", to_json(a.v1)},
            {"v2", to_json(a.v2)},
            {"v3", to_json(a.v3)},
            {"v4", to_json(a.v4)}}},
          {"total", to_json(a.total)},
          {"abs2", std::norm(a.total)}};
}

inline json to_json(const std::vector<Discrepancy> &report) {
  json arr = json::array();
  for (const auto &d : report)
    arr.push_back({{"monomial", d.monomial},
                   {"l", d.l},
                   {"m", d.m},
                   {"paper_value", to_json(d.paper_value)},
                   {"computed_value", to_json(d.computed_value)},
                   {"source", d.source}});
  return arr;
}

} // namespace knotscatter::io
