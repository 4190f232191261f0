#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bushdx/defuzz.hpp"
#include "bushdx/fuzzifier.hpp"
#include "json.hpp"

namespace bushdx {

// Required DGA input columns, in order. A trailing "tdcg_ppm" column is optional.
inline constexpr std::array<std::string_view, 10> kDgaColumns = {
    "bushing_id", "h2_ppm",  "ch4_ppm", "c2h6_ppm", "c2h4_ppm",
    "c2h2_ppm",   "co_ppm",  "co2_ppm", "n2_pct",   "o2_pct",
};
inline constexpr std::string_view kTdcgColumn = "tdcg_ppm";

struct IngestDiagnostic {
  enum class Severity { warning, error };

  std::size_t line = 0;  // 1-based, header is line 1
  Severity severity = Severity::error;
  std::string message;
};

std::string_view to_string(IngestDiagnostic::Severity s);

struct IngestResult {
  std::vector<GasReading> readings;
  std::vector<IngestDiagnostic> diagnostics;
  std::size_t data_rows = 0;
  std::size_t error_rows = 0;

  bool has_errors() const { return error_rows > 0; }
};

// Throws FormatError when the header is missing or wrong. Every other problem
// is a per-row diagnostic.
IngestResult parse_dga_csv(std::string_view source);

// Writes the header and rows in the input dialect (empty tdcg cell when absent).
std::string write_dga_csv(std::span<const GasReading> readings);

enum class ReportFormat { json, csv };

std::optional<ReportFormat> parse_report_format(std::string_view s);

struct ReportRow {
  RiskAssessment assessment;
  std::optional<Decision> neuro_fuzzy;
  std::optional<Decision> nn;
};

struct Report {
  std::string ruleset;
  std::vector<ReportRow> rows;
};

// Percentages of rows whose binary decision matches the fuzzy one.
struct ReportSummary {
  std::size_t count = 0;
  std::size_t accept = 0;
  std::size_t monitor = 0;
  std::size_t reject = 0;
  double fuzzy_agreement = 100.0;
  std::optional<double> neuro_fuzzy_agreement;
  std::optional<double> nn_agreement;
};

ReportSummary summarize(const Report& report);

// Throws PreconditionError for an empty report.
std::string write_report(const Report& report, ReportFormat format);
std::string write_report(std::span<const RiskAssessment> assessments, ReportFormat format,
                         std::string ruleset = "default");

// Reads a document produced by write_report(..., json).
Report read_report_json(std::string_view document);

nlohmann::ordered_json to_json(const RiskAssessment& a);

// Per-bushing membership tables, one row per bushing.
std::string write_membership_tables(std::span<const GasReading> readings, ReportFormat format);

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

}  // namespace bushdx
