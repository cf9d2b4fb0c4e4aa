#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsc/prs.h"

namespace qsc::runner {

struct SummaryRow {
    int n = 0;
    int d = 0;
    double lambda = 1.0;
    std::optional<double> alpha;
    /// Over trials that halted before the cap; absent when every trial was censored.
    std::optional<double> mean_rounds;
    std::optional<double> median_rounds;
    int censored_count = 0;
    int trials = 0;
};

/// Groups by (n, d, lambda, alpha), ordered by (d, lambda, alpha, n).
std::vector<SummaryRow> summarize(const std::vector<RuntimeRecord>& records);

/// Shortest decimal text that round-trips, so CSV bytes depend only on values.
std::string format_number(double x);

void write_runs_csv(std::ostream& out, const std::vector<RuntimeRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
/// Parses a summary CSV written by write_summary_csv.
std::vector<SummaryRow> read_summary_csv(std::istream& in);

}  // namespace qsc::runner
