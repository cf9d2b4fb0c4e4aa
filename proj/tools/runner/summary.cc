#include "runner/summary.h"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "qsc/stats.h"
#include "runner/config.h"

namespace qsc::runner {

std::string format_number(double x) {
    char buf[64];
    for (int precision = 6; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) {
            break;
        }
    }
    return buf;
}

std::vector<SummaryRow> summarize(const std::vector<RuntimeRecord>& records) {
    // alpha sorts with "none" first.
    using Key = std::tuple<int, double, bool, double, int>;
    std::map<Key, std::vector<const RuntimeRecord*>> groups;
    for (const auto& r : records) {
        groups[{r.d, r.lambda, r.alpha.has_value(), r.alpha.value_or(0.0), r.n}].push_back(&r);
    }
    std::vector<SummaryRow> rows;
    for (const auto& [key, group] : groups) {
        SummaryRow row;
        row.d = std::get<0>(key);
        row.lambda = std::get<1>(key);
        if (std::get<2>(key)) {
            row.alpha = std::get<3>(key);
        }
        row.n = std::get<4>(key);
        row.trials = static_cast<int>(group.size());
        std::vector<double> halted;
        for (const RuntimeRecord* r : group) {
            if (r->halted_by == HaltReason::kMaxRounds) {
                ++row.censored_count;
            } else {
                halted.push_back(static_cast<double>(r->rounds));
            }
        }
        if (!halted.empty()) {
            row.mean_rounds = mean(halted);
            row.median_rounds = median(halted);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_runs_csv(std::ostream& out, const std::vector<RuntimeRecord>& records) {
    out << "graph_class,n,d,lambda,alpha,seed,trial,rounds,halted_by\n";
    for (const auto& r : records) {
        out << r.graph_class << ',' << r.n << ',' << r.d << ',' << format_number(r.lambda) << ','
            << (r.alpha ? format_number(*r.alpha) : "") << ',' << r.seed << ',' << r.trial << ',' << r.rounds << ','
            << to_string(r.halted_by) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "n,d,lambda,alpha,mean_rounds,median_rounds,censored_count,trials\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.d << ',' << format_number(r.lambda) << ','
            << (r.alpha ? format_number(*r.alpha) : "") << ','
            << (r.mean_rounds ? format_number(*r.mean_rounds) : "") << ','
            << (r.median_rounds ? format_number(*r.median_rounds) : "") << ',' << r.censored_count << ','
            << r.trials << '\n';
    }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::vector<SummaryRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            f.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            f.emplace_back();
        }
        if (f.size() != 8) {
            throw ConfigError("summary line " + std::to_string(line_no) + ": expected 8 fields");
        }
        try {
            SummaryRow r;
            r.n = std::stoi(f[0]);
            r.d = std::stoi(f[1]);
            r.lambda = std::stod(f[2]);
            if (!f[3].empty()) {
                r.alpha = std::stod(f[3]);
            }
            if (!f[4].empty()) {
                r.mean_rounds = std::stod(f[4]);
            }
            if (!f[5].empty()) {
                r.median_rounds = std::stod(f[5]);
            }
            r.censored_count = std::stoi(f[6]);
            r.trials = std::stoi(f[7]);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw ConfigError("summary line " + std::to_string(line_no) + ": malformed number");
        }
    }
    return rows;
}

}  // namespace qsc::runner
