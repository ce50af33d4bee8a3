#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "confdist/calibration.hpp"
#include "confdist/inference.hpp"

namespace confdist::cli {

/// Column headers of the machine-readable outputs. JSON records use the same names.
inline const std::vector<std::string> kCurveColumns = {"delta", "B", "C", "cc", "cred"};
inline const std::vector<std::string> kSweepColumns = {
    "sigma",           "mean_bayes",       "mean_cd",           "freq_bayes",
    "freq_cd",         "mean_bayes_exact", "mean_cd_exact",     "freq_bayes_exact",
    "freq_cd_exact",   "stderr_mean_bayes", "stderr_mean_cd"};

/// Everything `analyze` reports for one observation.
struct AnalyzeReport {
    double norm = 0.0;
    double sigma = 0.0;
    double radius = 0.0;
    double level = 0.0;
    double bayes_cdf_at_radius = 0.0;
    double collision_confidence = 0.0;
    double noncollision_pvalue = 0.0;
    inference::Median median_cd;
    inference::Median median_bayes;
    inference::Interval interval_cd;
    inference::Interval interval_bayes;
};

AnalyzeReport analyze(const inference::Observation& obs, inference::CollisionRadius radius, double level);

/// Ten significant digits, shortest form ("%.10g").
std::string format_number(double value);

std::string curve_to_csv(const inference::CurveTable& table);
nlohmann::json curve_to_json(const inference::CurveTable& table);
inference::CurveTable curve_from_csv(std::string_view text);
inference::CurveTable curve_from_json(const nlohmann::json& doc);

std::string sweep_to_csv(std::span<const calibration::CalibrationRow> rows);
nlohmann::json sweep_to_json(std::span<const calibration::CalibrationRow> rows);
std::vector<calibration::CalibrationRow> sweep_from_csv(std::string_view text);
std::vector<calibration::CalibrationRow> sweep_from_json(const nlohmann::json& doc);

std::string analyze_to_text(const AnalyzeReport& report);
std::string analyze_to_csv(const AnalyzeReport& report);
nlohmann::json analyze_to_json(const AnalyzeReport& report);

std::string pit_to_text(const calibration::PitSummary& pit);
/// Histogram as `bin_lo,bin_hi,count`.
std::string pit_to_csv(const calibration::PitSummary& pit);
nlohmann::json pit_to_json(const calibration::PitSummary& pit);

}  // namespace confdist::cli
