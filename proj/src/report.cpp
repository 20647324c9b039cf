#include "phqm/report.hpp"

#include <algorithm>
#include <charconv>

#include "phqm/error.hpp"

namespace phqm {

Json complex_to_json(Complex z) {
    Json j = Json::object();
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

void ExperimentReport::column(const std::string& name, std::vector<double> values) {
    if (!series_.empty() && values.size() != rows()) {
        throw Error(ErrorKind::dimension_mismatch, "series column '" + name + "' has " +
                                                       std::to_string(values.size()) + " rows, expected " +
                                                       std::to_string(rows()));
    }
    series_.emplace_back(name, std::move(values));
}

void ExperimentReport::flag(const std::string& name, bool pass) {
    auto it = std::find_if(flags_.begin(), flags_.end(), [&](const auto& f) { return f.first == name; });
    if (it != flags_.end()) {
        it->second = it->second && pass;
    } else {
        flags_.emplace_back(name, pass);
    }
}

bool ExperimentReport::all_pass() const {
    return std::all_of(flags_.begin(), flags_.end(), [](const auto& f) { return f.second; });
}

std::vector<std::string> ExperimentReport::failures() const {
    std::vector<std::string> out;
    for (const auto& [name, pass] : flags_)
        if (!pass) out.push_back(name);
    return out;
}

Json ExperimentReport::to_json() const {
    Json j = Json::object();
    j["command"] = command_;
    j["config"] = config_;
    j["scalars"] = scalars_;
    Json series = Json::object();
    for (const auto& [name, values] : series_) series[name] = values;
    j["series"] = std::move(series);
    Json flags = Json::object();
    for (const auto& [name, pass] : flags_) flags[name] = pass;
    j["flags"] = std::move(flags);
    j["version"] = kVersion;
    return j;
}

std::string emit_json(const ExperimentReport& report) { return report.to_json().dump(2) + "\n"; }

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string emit_csv(const ExperimentReport& report) {
    std::string out;
    const auto& series = report.series();
    for (std::size_t c = 0; c < series.size(); ++c) {
        if (c) out += ',';
        out += series[c].first;
    }
    out += '\n';
    for (std::size_t r = 0; r < report.rows(); ++r) {
        for (std::size_t c = 0; c < series.size(); ++c) {
            if (c) out += ',';
            out += format_double(series[c].second[r]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace phqm
