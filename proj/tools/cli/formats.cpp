#include "formats.hpp"

#include <cstdlib>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "confdist/errors.hpp"

namespace confdist::cli {
namespace {

using Table = std::vector<std::vector<double>>;

// Round-trips through the printed form so JSON carries exactly the CSV values.
double rounded(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::string write_csv(const std::vector<std::string>& columns, const Table& rows) {
    std::string out = fmt::format("{}\n", fmt::join(columns, ","));
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json write_json(const std::vector<std::string>& columns, const Table& rows) {
    auto records = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json record = nlohmann::json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) record[columns[i]] = rounded(row[i]);
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        fields.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) {
        throw InputError("not a number: '" + field + "'");
    }
    return v;
}

Table read_csv(std::string_view text, const std::vector<std::string>& columns) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != columns) {
        throw InputError("unexpected CSV header: '" + line + "'");
    }
    Table rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != columns.size()) throw InputError("CSV row has wrong field count: '" + line + "'");
        auto& row = rows.emplace_back();
        for (const auto& f : fields) row.push_back(parse_double(f));
    }
    return rows;
}

Table read_json(const nlohmann::json& doc, const std::vector<std::string>& columns) {
    if (!doc.is_array()) throw InputError("expected a JSON array of records");
    Table rows;
    for (const auto& record : doc) {
        auto& row = rows.emplace_back();
        for (const auto& c : columns) row.push_back(record.at(c).get<double>());
    }
    return rows;
}

Table curve_rows(const inference::CurveTable& t) {
    Table rows;
    for (std::size_t i = 0; i < t.size(); ++i) rows.push_back({t.grid[i], t.b[i], t.c[i], t.cc[i], t.cred[i]});
    return rows;
}

inference::CurveTable curve_from_rows(const Table& rows) {
    inference::CurveTable t;
    for (const auto& r : rows) {
        t.grid.push_back(r[0]);
        t.b.push_back(r[1]);
        t.c.push_back(r[2]);
        t.cc.push_back(r[3]);
        t.cred.push_back(r[4]);
    }
    return t;
}

Table sweep_rows(std::span<const calibration::CalibrationRow> rows) {
    Table out;
    for (const auto& r : rows) {
        out.push_back({r.sigma, r.mc.mean_bayes, r.mc.mean_cd, r.mc.freq_bayes, r.mc.freq_cd, r.exact.mean_bayes,
                       r.exact.mean_cd, r.exact.freq_bayes, r.exact.freq_cd, r.stderr_mean_bayes, r.stderr_mean_cd});
    }
    return out;
}

std::vector<calibration::CalibrationRow> sweep_from_rows(const Table& rows) {
    std::vector<calibration::CalibrationRow> out;
    for (const auto& r : rows) {
        calibration::CalibrationRow row;
        row.sigma = r[0];
        row.mc = {r[1], r[2], r[3], r[4]};
        row.exact = {r[5], r[6], r[7], r[8]};
        row.stderr_mean_bayes = r[9];
        row.stderr_mean_cd = r[10];
        out.push_back(row);
    }
    return out;
}

const std::vector<std::string> kAnalyzeColumns = {
    "norm",           "sigma",           "radius",
    "level",          "bayes_cdf_at_radius", "collision_confidence",
    "noncollision_pvalue", "median_cd",  "median_cd_at_boundary",
    "median_bayes",   "interval_cd_lo",  "interval_cd_hi",
    "interval_cd_lo_clipped", "interval_cd_hi_clipped", "interval_bayes_lo",
    "interval_bayes_hi", "interval_bayes_lo_clipped", "interval_bayes_hi_clipped"};

std::vector<double> analyze_values(const AnalyzeReport& r) {
    const auto flag = [](bool b) { return b ? 1.0 : 0.0; };
    return {r.norm,
            r.sigma,
            r.radius,
            r.level,
            r.bayes_cdf_at_radius,
            r.collision_confidence,
            r.noncollision_pvalue,
            r.median_cd.value.value(),
            flag(r.median_cd.at_boundary),
            r.median_bayes.value.value(),
            r.interval_cd.lo.value(),
            r.interval_cd.hi.value(),
            flag(r.interval_cd.lo_clipped),
            flag(r.interval_cd.hi_clipped),
            r.interval_bayes.lo.value(),
            r.interval_bayes.hi.value(),
            flag(r.interval_bayes.lo_clipped),
            flag(r.interval_bayes.hi_clipped)};
}

std::string interval_text(const inference::Interval& iv) {
    std::string s = fmt::format("[{:.3f}, {:.3f}]", iv.lo.value(), iv.hi.value());
    if (iv.lo_clipped) s += "  (lower end clipped at 0)";
    if (iv.hi_clipped) s += "  (upper end clipped at 0)";
    return s;
}

}  // namespace

AnalyzeReport analyze(const inference::Observation& obs, inference::CollisionRadius radius, double level) {
    using inference::Method;
    AnalyzeReport r;
    r.norm = obs.norm();
    r.sigma = obs.sigma();
    r.radius = radius.value();
    r.level = level;
    r.bayes_cdf_at_radius = inference::bayes_cdf(obs, inference::Distance(radius.value()));
    r.collision_confidence = inference::collision_confidence(obs, radius);
    r.noncollision_pvalue = inference::noncollision_pvalue(obs, radius);
    r.median_cd = inference::median(obs, Method::cd);
    r.median_bayes = inference::median(obs, Method::bayes);
    r.interval_cd = inference::level_interval(obs, Method::cd, level);
    r.interval_bayes = inference::level_interval(obs, Method::bayes, level);
    return r;
}

std::string format_number(double value) { return fmt::format("{:.10g}", value); }

std::string curve_to_csv(const inference::CurveTable& table) { return write_csv(kCurveColumns, curve_rows(table)); }

nlohmann::json curve_to_json(const inference::CurveTable& table) {
    return write_json(kCurveColumns, curve_rows(table));
}

inference::CurveTable curve_from_csv(std::string_view text) {
    return curve_from_rows(read_csv(text, kCurveColumns));
}

inference::CurveTable curve_from_json(const nlohmann::json& doc) {
    return curve_from_rows(read_json(doc, kCurveColumns));
}

std::string sweep_to_csv(std::span<const calibration::CalibrationRow> rows) {
    return write_csv(kSweepColumns, sweep_rows(rows));
}

nlohmann::json sweep_to_json(std::span<const calibration::CalibrationRow> rows) {
    return write_json(kSweepColumns, sweep_rows(rows));
}

std::vector<calibration::CalibrationRow> sweep_from_csv(std::string_view text) {
    return sweep_from_rows(read_csv(text, kSweepColumns));
}

std::vector<calibration::CalibrationRow> sweep_from_json(const nlohmann::json& doc) {
    return sweep_from_rows(read_json(doc, kSweepColumns));
}

std::string analyze_to_text(const AnalyzeReport& r) {
    std::string out;
    out += fmt::format("observed norm ||y||          {:.3f}\n", r.norm);
    out += fmt::format("noise sigma                  {:.3f}\n", r.sigma);
    out += fmt::format("collision radius R           {:.3f}\n", r.radius);
    out += fmt::format("Bayes posterior B(R|y)       {:.3f}\n", r.bayes_cdf_at_radius);
    out += fmt::format("collision confidence C(R|y)  {:.3f}\n", r.collision_confidence);
    out += fmt::format("non-collision p-value        {:.3f}\n", r.noncollision_pvalue);
    out += fmt::format("median (CD)                  {:.3f}{}\n", r.median_cd.value.value(),
                       r.median_cd.at_boundary ? "  (at boundary 0)" : "");
    out += fmt::format("median (Bayes)               {:.3f}\n", r.median_bayes.value.value());
    out += fmt::format("{:.0f}% interval (CD)           {}\n", 100.0 * r.level, interval_text(r.interval_cd));
    out += fmt::format("{:.0f}% interval (Bayes)        {}\n", 100.0 * r.level, interval_text(r.interval_bayes));
    return out;
}

std::string analyze_to_csv(const AnalyzeReport& report) {
    return write_csv(kAnalyzeColumns, {analyze_values(report)});
}

nlohmann::json analyze_to_json(const AnalyzeReport& report) {
    return write_json(kAnalyzeColumns, {analyze_values(report)}).at(0);
}

std::string pit_to_text(const calibration::PitSummary& pit) {
    std::string out;
    out += fmt::format("n            {}\n", pit.n);
    out += fmt::format("ks_stat      {:.5f}\n", pit.ks_stat);
    out += fmt::format("ks_critical  {:.5f}  (1% level)\n", pit.ks_critical_1pct());
    out += fmt::format("uniformity   {}\n", pit.passes_1pct() ? "pass" : "fail");
    out += fmt::format("mean         {:.3f}\n", pit.mean);
    out += "histogram\n";
    for (std::size_t i = 0; i < pit.histogram.size(); ++i) {
        const double lo = static_cast<double>(i) / calibration::kPitBins;
        out += fmt::format("  [{:.2f}, {:.2f})  {}\n", lo, lo + 1.0 / calibration::kPitBins, pit.histogram[i]);
    }
    return out;
}

std::string pit_to_csv(const calibration::PitSummary& pit) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < pit.histogram.size(); ++i) {
        const double lo = static_cast<double>(i) / calibration::kPitBins;
        out += fmt::format("{},{},{}\n", format_number(lo), format_number(lo + 1.0 / calibration::kPitBins),
                           pit.histogram[i]);
    }
    return out;
}

nlohmann::json pit_to_json(const calibration::PitSummary& pit) {
    return {{"n", pit.n},
            {"ks_stat", rounded(pit.ks_stat)},
            {"ks_critical", rounded(pit.ks_critical_1pct())},
            {"pass", pit.passes_1pct()},
            {"mean", rounded(pit.mean)},
            {"histogram", pit.histogram}};
}

}  // namespace confdist::cli
