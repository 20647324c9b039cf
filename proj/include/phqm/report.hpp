#pragma once
// Machine-readable experiment records and their JSON / CSV encodings.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "phqm/matrix.hpp"

namespace phqm {

inline constexpr std::string_view kVersion = "phqm 0.1.0";

using Json = nlohmann::ordered_json;

/// Complex numbers are encoded as {"re": .., "im": ..}.
Json complex_to_json(Complex z);

class ExperimentReport {
public:
    explicit ExperimentReport(std::string command) : command_(std::move(command)) {}

    const std::string& command() const noexcept { return command_; }

    Json& config() noexcept { return config_; }
    const Json& config() const noexcept { return config_; }

    void scalar(const std::string& name, double value) { scalars_[name] = value; }
    void scalar(const std::string& name, Complex value) { scalars_[name] = complex_to_json(value); }
    void scalar(const std::string& name, Json value) { scalars_[name] = std::move(value); }
    const Json& scalars() const noexcept { return scalars_; }

    /// Appends a series column. Throws if its length differs from existing columns.
    void column(const std::string& name, std::vector<double> values);
    const std::vector<std::pair<std::string, std::vector<double>>>& series() const noexcept { return series_; }
    std::size_t rows() const noexcept { return series_.empty() ? 0 : series_.front().second.size(); }

    void flag(const std::string& name, bool pass);
    const std::vector<std::pair<std::string, bool>>& flags() const noexcept { return flags_; }
    bool all_pass() const;
    /// Names of failing flags, in insertion order.
    std::vector<std::string> failures() const;

    Json to_json() const;

private:
    std::string command_;
    Json config_ = Json::object();
    Json scalars_ = Json::object();
    std::vector<std::pair<std::string, std::vector<double>>> series_;
    std::vector<std::pair<std::string, bool>> flags_;
};

/// Pretty-printed JSON with a trailing newline.
std::string emit_json(const ExperimentReport& report);

/// Header row, then one row per series sample. Values use 17 significant
/// digits via std::to_chars, so the output is locale-independent.
std::string emit_csv(const ExperimentReport& report);

/// Shortest-form decimal text for a double, 17 significant digits.
std::string format_double(double x);

}  // namespace phqm
