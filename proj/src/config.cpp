#include "gatesim/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace gatesim {
namespace {

using Setter = std::function<void(const YAML::Node&, Scenario&)>;

double as_double(const YAML::Node& n) { return n.as<double>(); }

Vec2 as_vec2(const YAML::Node& n) {
  if (!n.IsSequence() || n.size() != 2) throw ConfigError("expected a [x, y] pair");
  return {n[0].as<double>(), n[1].as<double>()};
}

InteractionMatrix as_matrix(const YAML::Node& n) {
  if (!n.IsSequence() || n.size() != kStatusCount) throw ConfigError("C_R must have 4 rows");
  InteractionMatrix m{};
  for (std::size_t i = 0; i < kStatusCount; ++i) {
    const auto row = n[i];
    if (!row.IsSequence() || row.size() != kStatusCount)
      throw ConfigError("each C_R row must have 4 entries");
    for (std::size_t j = 0; j < kStatusCount; ++j) m[i][j] = row[j].as<double>();
  }
  return m;
}

std::vector<double> as_list(const YAML::Node& n) {
  if (n.IsNull()) return {};
  if (!n.IsSequence()) throw ConfigError("expected a list of numbers");
  std::vector<double> out;
  for (const auto& item : n) out.push_back(item.as<double>());
  return out;
}

std::vector<Cip> as_cips(const YAML::Node& n) {
  if (n.IsNull()) return {};
  if (!n.IsSequence()) throw ConfigError("cips must be a list of [x, t] pairs");
  std::vector<Cip> out;
  for (const auto& item : n) {
    const Vec2 v = as_vec2(item);
    out.push_back({v.x, v.y});
  }
  return out;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"N", [](auto& n, auto& s) { s.n_agents = n.template as<std::size_t>(); }},
      {"seed", [](auto& n, auto& s) { s.seed = n.template as<std::uint64_t>(); }},
      {"T_end", [](auto& n, auto& s) { s.t_end = as_double(n); }},
      {"L", [](auto& n, auto& s) { s.geometry.length = as_double(n); }},
      {"H", [](auto& n, auto& s) { s.geometry.height = as_double(n); }},
      {"R", [](auto& n, auto& s) { s.region_side = as_double(n); }},
      {"region_x", [](auto& n, auto& s) { s.region_x = as_list(n); }},
      {"gate_closed", [](auto& n, auto& s) { s.geometry.gate_closed = n.template as<bool>(); }},
      {"dt", [](auto& n, auto& s) { s.params.dt = as_double(n); }},
      {"delta_t", [](auto& n, auto& s) { s.params.delta_t = as_double(n); }},
      {"delta_ell_bar", [](auto& n, auto& s) { s.params.delta_ell_bar = as_double(n); }},
      {"D", [](auto& n, auto& s) { s.params.doubt_duration = as_double(n); }},
      {"p", [](auto& n, auto& s) { s.params.p_go_back = as_double(n); }},
      {"v_desired_1", [](auto& n, auto& s) { s.params.desired_velocity[0] = as_vec2(n); }},
      {"v_desired_2", [](auto& n, auto& s) { s.params.desired_velocity[1] = as_vec2(n); }},
      {"v_desired_3", [](auto& n, auto& s) { s.params.desired_velocity[2] = as_vec2(n); }},
      {"v_desired_4", [](auto& n, auto& s) { s.params.desired_velocity[3] = as_vec2(n); }},
      {"C_r", [](auto& n, auto& s) { s.params.c_r = as_double(n); }},
      {"C_a", [](auto& n, auto& s) { s.params.c_a = as_double(n); }},
      {"C_R", [](auto& n, auto& s) { s.params.c_R = as_matrix(n); }},
      {"C_o", [](auto& n, auto& s) { s.params.c_o = as_double(n); }},
      {"d_min", [](auto& n, auto& s) { s.params.d_min = as_double(n); }},
      {"d_wall", [](auto& n, auto& s) { s.params.d_wall = as_double(n); }},
      {"cips", [](auto& n, auto& s) { s.cips = as_cips(n); }},
      {"cip_sweep", [](auto& n, auto& s) { s.cip_sweep = n.template as<bool>(); }},
      {"initial_density", [](auto& n, auto& s) { s.initial_density = as_double(n); }},
      {"front_gap", [](auto& n, auto& s) { s.front_gap = as_double(n); }},
      {"staging_margin", [](auto& n, auto& s) { s.staging_margin = as_double(n); }},
      {"group_size_min", [](auto& n, auto& s) { s.group_size_min = n.template as<int>(); }},
      {"group_size_max", [](auto& n, auto& s) { s.group_size_max = n.template as<int>(); }},
      {"member_spread", [](auto& n, auto& s) { s.member_spread = as_double(n); }},
      {"cell_size", [](auto& n, auto& s) { s.cell_size = as_double(n); }},
      {"history_stride", [](auto& n, auto& s) { s.history_stride = as_double(n); }},
      {"sample_interval", [](auto& n, auto& s) { s.sample_interval = as_double(n); }},
      {"smoothing_width", [](auto& n, auto& s) { s.smoothing_width = n.template as<int>(); }},
      {"stop_speed", [](auto& n, auto& s) { s.stop_speed = as_double(n); }},
      {"stop_hold", [](auto& n, auto& s) { s.stop_hold = as_double(n); }},
  };
  return table;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? ".inf" : "-.inf";
  if (std::isnan(v)) return ".nan";
  return fmt::format("{}", v);
}

std::string pair(Vec2 v) { return fmt::format("[{}, {}]", num(v.x), num(v.y)); }

}  // namespace

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("malformed config: {}", e.what()));
  }
  Scenario s = default_scenario();
  if (root.IsNull()) return s;
  if (!root.IsMap()) throw ConfigError("config must be a key-value map");

  const auto& table = setters();
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
    try {
      it->second(kv.second, s);
    } catch (const YAML::Exception& e) {
      throw ConfigError(fmt::format("bad value for '{}': {}", key, e.what()));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("bad value for '{}': {}", key, e.what()));
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string to_config_string(const Scenario& s) {
  const auto& g = s.geometry;
  const auto& p = s.params;
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{}: {}\n", key, value);
  };

  out += "# geometry\n";
  line("L", num(g.length));
  line("H", num(g.height));
  line("R", num(s.region_side));
  if (!s.region_x.empty()) {
    std::string xs;
    for (std::size_t i = 0; i < s.region_x.size(); ++i)
      xs += fmt::format("{}{}", i == 0 ? "" : ", ", num(s.region_x[i]));
    line("region_x", "[" + xs + "]");
  }
  line("gate_closed", g.gate_closed ? "true" : "false");
  out += "# population\n";
  line("N", fmt::format("{}", s.n_agents));
  line("seed", fmt::format("{}", s.seed));
  line("initial_density", num(s.initial_density));
  line("front_gap", num(s.front_gap));
  line("staging_margin", num(s.staging_margin));
  line("group_size_min", fmt::format("{}", s.group_size_min));
  line("group_size_max", fmt::format("{}", s.group_size_max));
  line("member_spread", num(s.member_spread));
  out += "# behavior\n";
  line("dt", num(p.dt));
  line("delta_t", num(p.delta_t));
  line("delta_ell_bar", num(p.delta_ell_bar));
  line("D", num(p.doubt_duration));
  line("p", num(p.p_go_back));
  for (std::size_t i = 0; i < kStatusCount; ++i)
    line(fmt::format("v_desired_{}", i + 1), pair(p.desired_velocity[i]));
  out += "# interaction gains\n";
  std::string rows;
  for (std::size_t i = 0; i < kStatusCount; ++i) {
    const auto& r = p.c_R[i];
    rows += fmt::format("{}[{}, {}, {}, {}]", i == 0 ? "" : ", ", num(r[0]), num(r[1]), num(r[2]),
                        num(r[3]));
  }
  line("C_R", "[" + rows + "]");
  out += "# calibrated, not from paper\n";
  line("C_r", num(p.c_r));
  line("C_a", num(p.c_a));
  line("C_o", num(p.c_o));
  line("d_min", num(p.d_min));
  line("d_wall", num(p.d_wall));
  out += "# control points, [x, activation time] each\n";
  std::string cips;
  for (std::size_t i = 0; i < s.cips.size(); ++i)
    cips += fmt::format("{}{}", i == 0 ? "" : ", ",
                        pair({s.cips[i].x_pos, s.cips[i].activation_time}));
  line("cips", "[" + cips + "]");
  line("cip_sweep", s.cip_sweep ? "true" : "false");
  out += "# numerics and output\n";
  line("T_end", num(s.t_end));
  line("cell_size", num(s.cell_size));
  line("history_stride", num(s.history_stride));
  line("sample_interval", num(s.sample_interval));
  line("smoothing_width", fmt::format("{}", s.smoothing_width));
  line("stop_speed", num(s.stop_speed));
  line("stop_hold", num(s.stop_hold));
  return out;
}

}  // namespace gatesim
