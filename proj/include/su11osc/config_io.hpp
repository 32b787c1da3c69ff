#pragma once

// Config file parsing, run manifests and deterministic table output.
// Config schema (JSON object, exactly these keys):
//   m0, omega, omega_ac, phi_ac, mu_moment, b_field, s, ml_numerator, eta,
//   spacetime ("Minkowski" | "CosmicString")
// Floating-point columns are printed with %.17g so runs are file-diffable.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "su11osc/params.hpp"

namespace su11osc {

inline constexpr const char* kToolVersion = "su11osc 0.1.0";

using ordered_json = nlohmann::ordered_json;

inline OscillatorConfig config_from_json(const ordered_json& j) {
  OscillatorConfig cfg;
  try {
    cfg.m0 = j.at("m0").get<double>();
    cfg.omega = j.at("omega").get<double>();
    cfg.omega_ac = j.at("omega_ac").get<double>();
    cfg.phi_ac = j.at("phi_ac").get<double>();
    cfg.mu_moment = j.at("mu_moment").get<double>();
    cfg.b_field = j.at("b_field").get<double>();
    cfg.s = j.at("s").get<int>();
    cfg.ml_numerator = j.at("ml_numerator").get<int>();
    cfg.eta = j.at("eta").get<double>();
    const std::string st = j.at("spacetime").get<std::string>();
    if (st == "Minkowski")
      cfg.spacetime = Spacetime::Minkowski;
    else if (st == "CosmicString")
      cfg.spacetime = Spacetime::CosmicString;
    else
      throw config_error("spacetime must be \"Minkowski\" or \"CosmicString\"");
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("bad config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline ordered_json config_to_json(const OscillatorConfig& cfg) {
  ordered_json j;
  j["m0"] = cfg.m0;
  j["omega"] = cfg.omega;
  j["omega_ac"] = cfg.omega_ac;
  j["phi_ac"] = cfg.phi_ac;
  j["mu_moment"] = cfg.mu_moment;
  j["b_field"] = cfg.b_field;
  j["s"] = cfg.s;
  j["ml_numerator"] = cfg.ml_numerator;
  j["eta"] = cfg.eta;
  j["spacetime"] = to_string(cfg.spacetime);
  return j;
}

inline OscillatorConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// FNV-1a 64-bit, hex string; used as the output checksum in manifests.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Column-oriented table; serializes to CSV or to a JSON record array with
/// identical numeric content.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // pre-formatted cells
  std::string json_header_comment;             // optional '#'-prefixed first line

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

  std::string to_csv() const {
    std::ostringstream os;
    if (!json_header_comment.empty()) os << "# " << json_header_comment << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << columns[i] << (i + 1 < columns.size() ? "," : "");
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i)
        os << r[i] << (i + 1 < r.size() ? "," : "");
      os << "\n";
    }
    return os.str();
  }

  std::string to_json() const {
    ordered_json out;
    if (!json_header_comment.empty())
      out["header"] = ordered_json::parse(json_header_comment);
    ordered_json records = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json rec;
      for (std::size_t i = 0; i < r.size(); ++i) {
        // cells are either %.17g numbers or plain strings
        try {
          std::size_t pos = 0;
          const double v = std::stod(r[i], &pos);
          if (pos == r[i].size()) {
            rec[columns[i]] = v;
            continue;
          }
        } catch (...) {
        }
        rec[columns[i]] = r[i];
      }
      records.push_back(std::move(rec));
    }
    out["records"] = std::move(records);
    return out.dump(2) + "\n";
  }
};

struct RunManifest {
  std::string command;
  ordered_json config;
  std::string tool_version = kToolVersion;
  ordered_json grid;  // points, nmax_basis, rmax_scale where applicable
  double wall_ms = 0.0;
  std::string output_checksum;

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["tool_version"] = tool_version;
    j["config"] = config;
    j["grid"] = grid;
    j["wall_ms"] = wall_ms;  // informational; not part of the determinism contract
    j["output_checksum"] = output_checksum;
    return j;
  }
};

}  // namespace su11osc
