#pragma once

#include <string>
#include <string_view>

#include "singshock/fvoracle.hpp"
#include "singshock/riemann.hpp"
#include "singshock/scenario.hpp"
#include "singshock/timeline.hpp"

namespace singshock {

/// {"states": [[u,v],...], "breakpoints": [x,...], "deltas": [z,...], "t_max": T}.
/// Throws InvalidInput on malformed or inconsistent documents.
Scenario parse_scenario(std::string_view json_text);
std::string emit_scenario(const Scenario& s);

std::string emit_timeline(const Timeline& tl);
/// Inverse of emit_timeline. Rejects events that reference unknown trajectories.
Timeline parse_timeline(std::string_view json_text);

/// Descriptor of a self-similar solution: waves with speeds, and for singular
/// shocks the growth rate and split.
std::string emit_wave_fan(const WaveFan& fan);

/// Columns trajectory_id,t,x,beta.
std::string trajectories_csv(const Timeline& tl);
/// Columns x,u,v, one row per cell.
std::string snapshot_csv(const FieldSnapshot& snap);

struct SvgOptions {
  int width = 800;
  int height = 500;
  int margin = 50;
};

/// x-t diagram: time upwards, singular shocks drawn with width growing with
/// strength, fan edges dashed, events as markers.
std::string render_svg(const Timeline& tl, const SvgOptions& opts = {});

}  // namespace singshock
