#pragma once

// CSV waveform format: header `time_s,<name>_<unit>,...`, one row per
// sample, shortest round-trip decimal numbers, LF line endings.

#include "scmmi/analysis.hpp"
#include "scmmi/simulation.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace scmmi {

void write_csv(const WaveformRecord& rec, std::ostream& out);
void write_csv(const WaveformRecord& rec, const std::string& path);

/// Throws AnalysisError naming the 1-based row (header = row 1) of a
/// malformed line, a ragged row or a non-uniform time column.
WaveformRecord read_csv(std::istream& in);
WaveformRecord read_csv(const std::string& path);

/// Run summary sidecar (`<csv>.summary.txt`): `key = value unit` lines.
std::string summary_text(const RunSummary& summary, const std::string& config_digest);
/// Energy residual in percent from a sidecar, empty when the file or key
/// is missing.
std::optional<double> read_summary_residual(const std::string& path);

}  // namespace scmmi
