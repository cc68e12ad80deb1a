#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smap/evolution.hpp"

/// Run configuration files: INI-style sections of key = value pairs.
///
///   [grid]     dim, n, length
///   [time]     dt, steps, integrator (rk4-projected | strang-msm)
///   [initial]  kind (geodesic-bump | band-limited-random |
///              stereographic-pullback), profile (bump | cosine), amplitude,
///              width, mode_cutoff, seed, base, transverse  (vectors as "x,y,z")
///   [output]   cadence, snapshot_every, dir
///
/// Unknown sections or keys are rejected before anything is computed.
namespace smap::config {

evolution::SimConfig parse(const std::string& text);
evolution::SimConfig load(const std::filesystem::path& path);

/// Applies one "section.key=value" override.
void apply_override(evolution::SimConfig& config, const std::string& assignment);

/// Serializes a configuration in the same format (round-trips through parse).
std::string to_text(const evolution::SimConfig& config);

}  // namespace smap::config
