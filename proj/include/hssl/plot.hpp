#pragma once

// Error-rate-versus-epoch figure as plain SVG markup.

#include <iosfwd>
#include <string>
#include <vector>

namespace hssl {

struct Curve {
    std::string label;
    std::vector<double> epoch;
    std::vector<double> error_rate;
};

/// Parses a metrics JSONL stream; the label is taken from the "mode" field.
/// Throws IoError on malformed lines.
Curve read_metrics_curve(std::istream& in, const std::string& fallback_label);

/// One polyline per curve, shared axes, legend in the top-right corner.
std::string error_curve_svg(const std::vector<Curve>& curves, const std::string& title = "Validation error rate");

} // namespace hssl
