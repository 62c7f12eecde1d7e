#pragma once

// Minimal self-contained log-log scatter plot with the fitted growth curve.

#include <string>
#include <vector>

#include "mapgrowth/growth_count.hpp"

namespace mapgrowth {

std::string render_loglog_svg(const std::vector<GrowthSample>& samples, const FitResult& fit,
                              const std::string& title);

}  // namespace mapgrowth
