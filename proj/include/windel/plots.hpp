#pragma once

#include <string>
#include <vector>

#include "windel/trace.hpp"

namespace windel {

// Three SVG panels per run: wind + rotor speed, generator + stack power,
// AC voltage + frequency.  Mode switches and trips appear as labelled
// vertical markers.  Returns the written file names in order.
std::vector<std::string> emit_plots(const Trace& trace, const std::string& out_dir,
                                    const std::string& scenario_name);

}  // namespace windel
