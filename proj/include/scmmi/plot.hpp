#pragma once

// Static SVG figures: time series and harmonic bar charts. Output only.

#include "scmmi/analysis.hpp"

#include <string>
#include <vector>

namespace scmmi {

/// One panel with every listed channel; long channels are reduced to a
/// min/max envelope per horizontal pixel so switching edges survive.
std::string time_series_svg(const WaveformRecord& rec, const std::vector<std::string>& channels,
                            const std::string& title);

/// Bars for orders 1..max_order, magnitude relative to the fundamental.
std::string spectrum_svg(const HarmonicSpectrum& spec, int max_order, const std::string& title);

}  // namespace scmmi
