#pragma once

#include <string>
#include <vector>

#include "runner/summary.h"

namespace qsc::runner {

struct AxesSpec {
    bool x_log = true;
    bool y_log = true;
    std::string title = "mean rounds";
    int width = 640;
    int height = 480;
};

struct SvgDocument {
    std::string text;
    /// One message per value clamped to a log-axis minimum.
    std::vector<std::string> warnings;
};

/// Line plot of mean rounds against n, one series per (d, lambda, alpha).
/// Throws std::invalid_argument on an empty summary.
SvgDocument emit_svg(const std::vector<SummaryRow>& rows, const AxesSpec& axes);

}  // namespace qsc::runner
