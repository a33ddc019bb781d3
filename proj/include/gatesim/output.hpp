#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "gatesim/engine.hpp"

namespace gatesim {

// CSV layouts:
//   densities.csv  t,rho1,rho2,rho3,rho4,n_active,n_s1,n_s2,n_s3,n_s4
//   events.csv     t,group_id,old,new,cause
//   frame_XXXXXX   id,group,status,x,y,is_leader   (active agents only)

std::string densities_csv(const DensitySeries& series);
std::string events_csv(std::span<const Transition> events);
std::string frame_csv(const Population& population);

/// Resolved scenario in config syntax followed by commented run facts.
std::string run_meta(const Scenario& scenario, const RunResult& result);

std::string frame_file_name(std::size_t step);

/// Writes `content` to `path`, throwing std::runtime_error on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace gatesim
