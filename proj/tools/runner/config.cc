#include "runner/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qsc::runner {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

template <class T>
bool parse_number(const std::string& s, T& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_real(const std::string& s, double& out) {
    if (s.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool is_unset(const std::string& v) { return v.empty() || v == "none"; }

const std::vector<KeySpec> kGlobal = {
    {"seed", ValueType::kUInt, "1", "base seed for all derived random streams"},
    {"out-dir", ValueType::kString, ".", "directory for output files"},
    {"threads", ValueType::kInt, "1", "worker threads (output does not depend on it)"},
};

const std::vector<KeySpec> kSample = {
    {"graph-class", ValueType::kChoice, "regular", "graph family", {"regular", "planar", "star", "file"}},
    {"graph", ValueType::kString, "", "graph file, for graph-class = file"},
    {"n", ValueType::kIntList, "8:80:8", "vertex counts, list or a:b:step range"},
    {"d", ValueType::kInt, "3", "degree (regular) or degree bound (planar)"},
    {"lambda", ValueType::kDoubleList, "1", "fugacities"},
    {"alpha", ValueType::kDoubleList, "none", "violating-edge fractions for early halting", {}, true},
    {"cap", ValueType::kInt, "0", "round cap; 0 means no cap"},
    {"trials", ValueType::kInt, "100", "trials per point"},
    {"svg", ValueType::kString, "", "SVG file name in out-dir; empty skips the plot"},
    {"x-scale", ValueType::kChoice, "log", "plot x axis", {"log", "linear"}},
    {"y-scale", ValueType::kChoice, "log", "plot y axis", {"log", "linear"}},
};

const std::vector<KeySpec> kQsim = {
    {"graph", ValueType::kString, "path:3", "graph file or family:size (path, cycle, complete, star, empty), petersen"},
    {"lambda", ValueType::kDouble, "1", "fugacity"},
    {"alpha", ValueType::kDouble, "none", "violating-edge fraction for early halting", {}, true},
    {"cap", ValueType::kInt, "0", "round cap; 0 means no cap"},
    {"trials", ValueType::kInt, "1000", "quantum preparations"},
    {"ancilla", ValueType::kChoice, "implicit", "syndrome extraction mode", {"implicit", "explicit"}},
    {"report", ValueType::kString, "qsim.json", "JSON report file name in out-dir"},
};

const std::vector<KeySpec> kStabilizer = {
    {"constraint", ValueType::kString, "is-edge", "is-edge, one-hot-K, at-most-one-K or always-true-K"},
    {"truth-table", ValueType::kString, "", "file with 2^k lines of 0/1; overrides constraint"},
    {"matrix", ValueType::kChoice, "both", "which matrix to print", {"stabilizer", "syndrome", "both"}},
    {"output", ValueType::kString, "", "file name in out-dir; empty prints to stdout"},
};

const std::vector<KeySpec> kAdiabatic = {
    {"graph", ValueType::kString, "star:4", "graph file or family:size (path, cycle, complete, star, empty), petersen"},
    {"nt", ValueType::kIntList, "10,20,40,80,160", "Trotter step counts"},
    {"total-time", ValueType::kDouble, "0", "total time T; 0 means n^2"},
    {"delta", ValueType::kDouble, "1", "constraint energy scale"},
    {"qsc", ValueType::kChoice, "both", "subspace correction", {"on", "off", "both"}},
    {"qsc-interval", ValueType::kInt, "0", "steps between correction rounds; 0 means min(10, nt/4)"},
    {"theta-convention", ValueType::kChoice, "linear", "theta(t) = pi t/T, or theta' = pi t/T",
     {"linear", "literal-rate"}},
    {"trials", ValueType::kInt, "100", "stochastic runs averaged per point with qsc on"},
    {"output", ValueType::kString, "adiabatic.csv", "CSV file name in out-dir"},
};

const std::vector<KeySpec> kPlot = {
    {"input", ValueType::kString, "summary.csv", "summary CSV to plot"},
    {"output", ValueType::kString, "summary.svg", "SVG file name in out-dir"},
    {"x-scale", ValueType::kChoice, "log", "plot x axis", {"log", "linear"}},
    {"y-scale", ValueType::kChoice, "log", "plot y axis", {"log", "linear"}},
    {"title", ValueType::kString, "mean rounds", "plot title"},
};

void validate(const KeySpec& k, const std::string& v, const std::string& where) {
    auto fail = [&](const std::string& what) {
        throw ConfigError(where + "key '" + k.name + "': " + what + ", got '" + v + "'");
    };
    if (k.optional && is_unset(v)) {
        return;
    }
    switch (k.type) {
        case ValueType::kInt: {
            long long x = 0;
            if (!parse_number(v, x)) {
                fail("expected an integer");
            }
            break;
        }
        case ValueType::kUInt: {
            unsigned long long x = 0;
            if (!parse_number(v, x)) {
                fail("expected a non-negative integer");
            }
            break;
        }
        case ValueType::kDouble: {
            double x = 0;
            if (!parse_real(v, x)) {
                fail("expected a number");
            }
            break;
        }
        case ValueType::kIntList:
            try {
                parse_int_list(v);
            } catch (const ConfigError& e) {
                fail(e.what());
            }
            break;
        case ValueType::kDoubleList:
            try {
                parse_double_list(v);
            } catch (const ConfigError& e) {
                fail(e.what());
            }
            break;
        case ValueType::kChoice:
            if (std::find(k.choices.begin(), k.choices.end(), v) == k.choices.end()) {
                std::string all;
                for (const auto& c : k.choices) {
                    all += (all.empty() ? "" : ", ") + c;
                }
                fail("expected one of " + all);
            }
            break;
        case ValueType::kString:
            break;
    }
}

}  // namespace

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const std::string& item : split(text, ',')) {
        auto parts = split(item, ':');
        if (parts.size() == 1) {
            long long x = 0;
            if (!parse_number(parts[0], x)) {
                throw ConfigError("bad integer '" + item + "'");
            }
            out.push_back(x);
        } else if (parts.size() == 3) {
            long long a = 0;
            long long b = 0;
            long long step = 0;
            if (!parse_number(parts[0], a) || !parse_number(parts[1], b) || !parse_number(parts[2], step) ||
                step <= 0) {
                throw ConfigError("bad range '" + item + "' (expected start:stop:step, step > 0)");
            }
            for (long long x = a; x <= b; x += step) {
                out.push_back(x);
            }
        } else {
            throw ConfigError("bad list item '" + item + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const std::string& item : split(text, ',')) {
        auto parts = split(item, ':');
        if (parts.size() == 1) {
            double x = 0;
            if (!parse_real(parts[0], x)) {
                throw ConfigError("bad number '" + item + "'");
            }
            out.push_back(x);
        } else if (parts.size() == 3) {
            double a = 0;
            double b = 0;
            double step = 0;
            if (!parse_real(parts[0], a) || !parse_real(parts[1], b) || !parse_real(parts[2], step) || step <= 0) {
                throw ConfigError("bad range '" + item + "' (expected start:stop:step, step > 0)");
            }
            // Index-based so accumulated rounding never drops the endpoint.
            const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
            for (long k = 0; k < count; ++k) {
                // Round to 12 significant digits so 0.1:1:0.1 yields 0.3, not 0.30000000000000004.
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.12g", a + static_cast<double>(k) * step);
                out.push_back(std::strtod(buf, nullptr));
            }
        } else {
            throw ConfigError("bad list item '" + item + "'");
        }
    }
    return out;
}

const std::vector<KeySpec>& global_keys() { return kGlobal; }

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"sample", "qsim", "stabilizer", "adiabatic", "plot"};
    return names;
}

const std::vector<KeySpec>& command_keys(const std::string& command) {
    if (command == "sample") {
        return kSample;
    }
    if (command == "qsim") {
        return kQsim;
    }
    if (command == "stabilizer") {
        return kStabilizer;
    }
    if (command == "adiabatic") {
        return kAdiabatic;
    }
    if (command == "plot") {
        return kPlot;
    }
    throw ConfigError("unknown command '" + command + "'");
}

std::vector<KeySpec> schema_for(const std::string& command) {
    std::vector<KeySpec> all = global_keys();
    const auto& own = command_keys(command);
    all.insert(all.end(), own.begin(), own.end());
    return all;
}

Config::Config(std::string command) : command_(std::move(command)), schema_(schema_for(command_)) {
    for (const auto& k : schema_) {
        values_[k.name] = k.default_value;
    }
}

const KeySpec& Config::spec(const std::string& key, const std::string& where) const {
    for (const auto& k : schema_) {
        if (k.name == key) {
            return k;
        }
    }
    throw ConfigError(where + "unknown key '" + key + "' for command '" + command_ + "'");
}

void Config::set(const std::string& key, const std::string& value, const std::string& origin) {
    const std::string where = origin.empty() ? "" : origin + ": ";
    const KeySpec& k = spec(key, where);
    validate(k, value, where);
    values_[key] = value;
}

void Config::merge_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = origin + ":" + std::to_string(line_no);
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "command") {
            if (value != command_) {
                throw ConfigError(where + ": config is for command '" + value + "', not '" + command_ + "'");
            }
            continue;
        }
        set(key, value, where);
    }
}

void Config::merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    merge_text(buf.str(), path);
}

bool Config::has(const std::string& key) const {
    auto it = values_.find(key);
    return it != values_.end() && !is_unset(it->second);
}

std::string Config::raw(const std::string& key) const {
    spec(key, "");
    return values_.at(key);
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

long long Config::get_int(const std::string& key) const {
    long long x = 0;
    if (!parse_number(raw(key), x)) {
        throw ConfigError("key '" + key + "' is not an integer");
    }
    return x;
}

unsigned long long Config::get_uint(const std::string& key) const {
    unsigned long long x = 0;
    if (!parse_number(raw(key), x)) {
        throw ConfigError("key '" + key + "' is not a non-negative integer");
    }
    return x;
}

double Config::get_double(const std::string& key) const {
    double x = 0;
    if (!parse_real(raw(key), x)) {
        throw ConfigError("key '" + key + "' is not a number");
    }
    return x;
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
    if (!has(key)) {
        return std::nullopt;
    }
    return get_double(key);
}

std::vector<long long> Config::get_int_list(const std::string& key) const { return parse_int_list(raw(key)); }

std::vector<double> Config::get_double_list(const std::string& key) const {
    if (!has(key)) {
        return {};
    }
    return parse_double_list(raw(key));
}

}  // namespace qsc::runner
