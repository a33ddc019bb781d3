#include "gatesim/output.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "gatesim/config.hpp"

namespace gatesim {

std::string densities_csv(const DensitySeries& series) {
  std::string out = "t,rho1,rho2,rho3,rho4,n_active,n_s1,n_s2,n_s3,n_s4\n";
  for (const auto& s : series.samples) {
    out += fmt::format("{:.2f},{:.6f},{:.6f},{:.6f},{:.6f},{},{},{},{},{}\n", s.t, s.rho[0],
                       s.rho[1], s.rho[2], s.rho[3], s.n_active, s.n_status[0], s.n_status[1],
                       s.n_status[2], s.n_status[3]);
  }
  return out;
}

std::string events_csv(std::span<const Transition> events) {
  std::string out = "t,group_id,old,new,cause\n";
  for (const auto& e : events) {
    out += fmt::format("{:.2f},{},{},{},{}\n", e.t, e.group, status_number(e.from),
                       status_number(e.to), cause_name(e.cause));
  }
  return out;
}

std::string frame_csv(const Population& population) {
  std::string out = "id,group,status,x,y,is_leader\n";
  for (const Agent& a : population.agents) {
    if (!a.active) continue;
    out += fmt::format("{},{},{},{:.4f},{:.4f},{}\n", a.id, a.group,
                       status_number(population.groups[a.group].status), a.position.x,
                       a.position.y, a.is_leader ? 1 : 0);
  }
  return out;
}

std::string run_meta(const Scenario& scenario, const RunResult& result) {
  std::string out = to_config_string(scenario);
  out += "# --- run facts (derived, ignored when re-read) ---\n";
  out += fmt::format("# x_min: {}\n", result.geometry.x_min);
  out += fmt::format("# steps: {}\n", result.steps);
  out += fmt::format("# t_final: {}\n", result.t_final);
  out += fmt::format("# stopped_early: {}\n", result.stopped_early);
  out += fmt::format("# n_removed: {}\n", result.n_removed);
  out += fmt::format("# transitions: {}\n", result.events.size());
  out += fmt::format("# wall_seconds: {:.3f}\n", result.wall_seconds);
  return out;
}

std::string frame_file_name(std::size_t step) { return fmt::format("frame_{:06d}.csv", step); }

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace gatesim
