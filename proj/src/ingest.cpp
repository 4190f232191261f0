#include "bushdx/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "bushdx/error.hpp"
#include "bushdx/mlp.hpp"

namespace bushdx {

std::string_view to_string(IngestDiagnostic::Severity s) {
  return s == IngestDiagnostic::Severity::warning ? "warning" : "error";
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

std::string printable(std::string_view s) {
  std::string out;
  for (char c : s.substr(0, 40)) {
    const auto u = static_cast<unsigned char>(c);
    out += (u >= 0x20 && u < 0x7f) ? c : '?';
  }
  if (s.size() > 40) out += "...";
  return out;
}

// Parses a whole cell as a finite, non-negative number.
std::optional<double> parse_concentration(std::string_view cell, std::string& why) {
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, v);
  if (cell.empty()) {
    why = "empty";
  } else if (res.ec != std::errc() || res.ptr != last) {
    why = "not a number: '" + printable(cell) + "'";
  } else if (!std::isfinite(v)) {
    why = "not finite: '" + printable(cell) + "'";
  } else if (v < 0.0) {
    why = "negative: '" + printable(cell) + "'";
  } else {
    return v;
  }
  return std::nullopt;
}

std::string expected_header(bool with_tdcg) {
  std::string h;
  for (std::size_t i = 0; i < kDgaColumns.size(); ++i) {
    if (i > 0) h += ',';
    h += kDgaColumns[i];
  }
  if (with_tdcg) {
    h += ',';
    h += kTdcgColumn;
  }
  return h;
}

}  // namespace

IngestResult parse_dga_csv(std::string_view source) {
  if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
  const auto lines = split_lines(source);
  if (lines.empty() || lines.front().empty()) {
    throw FormatError("missing header row; expected: " + expected_header(false) + "[," +
                      std::string(kTdcgColumn) + "]");
  }
  const auto header = split_cells(lines.front());
  bool with_tdcg = false;
  bool header_ok = header.size() == kDgaColumns.size() || header.size() == kDgaColumns.size() + 1;
  for (std::size_t i = 0; header_ok && i < kDgaColumns.size(); ++i) {
    header_ok = header[i] == kDgaColumns[i];
  }
  if (header_ok && header.size() == kDgaColumns.size() + 1) {
    header_ok = header.back() == kTdcgColumn;
    with_tdcg = true;
  }
  if (!header_ok) {
    throw FormatError("bad header '" + printable(lines.front()) + "'; expected: " +
                      expected_header(false) + "[," + std::string(kTdcgColumn) + "]");
  }

  IngestResult result;
  std::set<std::string> seen_ids;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string_view line = lines[k];
    if (line.empty()) continue;
    const std::size_t line_no = k + 1;
    ++result.data_rows;

    auto row_error = [&](std::string msg) {
      result.diagnostics.push_back({line_no, IngestDiagnostic::Severity::error, std::move(msg)});
      ++result.error_rows;
    };

    const auto cells = split_cells(line);
    if (cells.size() != header.size()) {
      row_error("expected " + std::to_string(header.size()) + " cells, found " +
                std::to_string(cells.size()));
      continue;
    }
    GasReading r;
    r.bushing_id = std::string(cells[0]);
    if (r.bushing_id.empty()) {
      row_error("empty bushing_id");
      continue;
    }
    double* fields[] = {&r.h2, &r.ch4, &r.c2h6, &r.c2h4, &r.c2h2, &r.co, &r.co2, &r.n2, &r.o2};
    std::string problem;
    for (std::size_t c = 1; c < kDgaColumns.size() && problem.empty(); ++c) {
      std::string why;
      if (auto v = parse_concentration(cells[c], why)) {
        *fields[c - 1] = *v;
      } else {
        problem = std::string(kDgaColumns[c]) + " " + why;
      }
    }
    if (problem.empty() && with_tdcg && !cells.back().empty()) {
      std::string why;
      if (auto v = parse_concentration(cells.back(), why)) {
        r.tdcg = *v;
      } else {
        problem = std::string(kTdcgColumn) + " " + why;
      }
    }
    if (problem.empty()) {
      try {
        compute_tdcg(r);
      } catch (const Error& e) {
        problem = e.what();
      }
    }
    if (!problem.empty()) {
      row_error(std::move(problem));
      continue;
    }
    if (!seen_ids.insert(r.bushing_id).second) {
      result.diagnostics.push_back({line_no, IngestDiagnostic::Severity::warning,
                                    "duplicate bushing_id '" + printable(r.bushing_id) + "'"});
    }
    result.readings.push_back(std::move(r));
  }
  return result;
}

std::string write_dga_csv(std::span<const GasReading> readings) {
  std::string out = expected_header(true) + "\n";
  for (const auto& r : readings) {
    out += r.bushing_id;
    for (double v : {r.h2, r.ch4, r.c2h6, r.c2h4, r.c2h2, r.co, r.co2, r.n2, r.o2}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    if (r.tdcg) out += format_number(*r.tdcg);
    out += '\n';
  }
  return out;
}

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  return std::nullopt;
}

ReportSummary summarize(const Report& report) {
  ReportSummary s;
  s.count = report.rows.size();
  std::size_t nf_total = 0, nf_agree = 0, nn_total = 0, nn_agree = 0;
  for (const auto& row : report.rows) {
    const Decision d = row.assessment.decision;
    if (d == Decision::accept) ++s.accept;
    if (d == Decision::monitor) ++s.monitor;
    if (d == Decision::reject) ++s.reject;
    const Decision truth = binary_decision(d);
    if (row.neuro_fuzzy) {
      ++nf_total;
      nf_agree += binary_decision(*row.neuro_fuzzy) == truth;
    }
    if (row.nn) {
      ++nn_total;
      nn_agree += binary_decision(*row.nn) == truth;
    }
  }
  auto pct = [](std::size_t agree, std::size_t total) {
    return 100.0 * static_cast<double>(agree) / static_cast<double>(total);
  };
  if (nf_total > 0) s.neuro_fuzzy_agreement = pct(nf_agree, nf_total);
  if (nn_total > 0) s.nn_agreement = pct(nn_agree, nn_total);
  return s;
}

namespace {

nlohmann::ordered_json gases_json(const GasReading& r, double tdcg) {
  nlohmann::ordered_json g;
  for (GasId gas : kAllGases) {
    g[std::string(to_string(gas))] = gas == GasId::tdcg ? tdcg : concentration(r, gas);
  }
  return g;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string percent_cell(const std::optional<double>& v) {
  return v ? fixed(*v, 1) + "%" : std::string();
}

}  // namespace

nlohmann::ordered_json to_json(const RiskAssessment& a) {
  nlohmann::ordered_json j;
  j["bushing_id"] = a.reading.bushing_id;
  j["gases"] = gases_json(a.reading, a.tdcg);
  j["reported_tdcg"] = a.reading.tdcg ? nlohmann::ordered_json(*a.reading.tdcg) : nullptr;
  j["memberships"] = to_json(a.memberships);
  j["aggregated"] = {{"low", a.aggregated.low},
                     {"medium", a.aggregated.medium},
                     {"high", a.aggregated.high}};
  j["rank"] = a.rank;
  j["decision"] = to_string(a.decision);
  return j;
}

std::string write_report(const Report& report, ReportFormat format) {
  if (report.rows.empty()) throw PreconditionError("cannot write a report with no assessments");
  const auto summary = summarize(report);

  if (format == ReportFormat::csv) {
    std::string out = "bushing_id,rank,fuzzy,neuro_fuzzy,nn\n";
    for (const auto& row : report.rows) {
      const auto& a = row.assessment;
      out += a.reading.bushing_id + "," + fixed(a.rank, 6) + "," + std::string(to_string(a.decision)) +
             "," + (row.neuro_fuzzy ? std::string(to_string(*row.neuro_fuzzy)) : "") + "," +
             (row.nn ? std::string(to_string(*row.nn)) : "") + "\n";
    }
    out += "accuracy,," + percent_cell(summary.fuzzy_agreement) + "," +
           percent_cell(summary.neuro_fuzzy_agreement) + "," + percent_cell(summary.nn_agreement) +
           "\n";
    return out;
  }

  nlohmann::ordered_json doc;
  doc["report"] = "bushdx-assessment";
  doc["version"] = 1;
  doc["ruleset"] = report.ruleset;
  auto& rows = doc["bushings"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    auto j = to_json(row.assessment);
    j["neuro_fuzzy"] = row.neuro_fuzzy ? nlohmann::ordered_json(to_string(*row.neuro_fuzzy)) : nullptr;
    j["nn"] = row.nn ? nlohmann::ordered_json(to_string(*row.nn)) : nullptr;
    rows.push_back(std::move(j));
  }
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  doc["summary"] = {{"count", summary.count},
                    {"accept", summary.accept},
                    {"monitor", summary.monitor},
                    {"reject", summary.reject},
                    {"agreement",
                     {{"fuzzy", summary.fuzzy_agreement},
                      {"neuro_fuzzy", opt(summary.neuro_fuzzy_agreement)},
                      {"nn", opt(summary.nn_agreement)}}}};
  return doc.dump(2) + "\n";
}

std::string write_report(std::span<const RiskAssessment> assessments, ReportFormat format,
                         std::string ruleset) {
  Report report{std::move(ruleset), {}};
  for (const auto& a : assessments) report.rows.push_back({a, std::nullopt, std::nullopt});
  return write_report(report, format);
}

Report read_report_json(std::string_view document) {
  try {
    const auto doc = nlohmann::ordered_json::parse(document);
    if (doc.value("report", std::string()) != "bushdx-assessment") {
      throw FormatError("not a bushdx assessment report");
    }
    Report report;
    report.ruleset = doc.at("ruleset").get<std::string>();
    for (const auto& j : doc.at("bushings")) {
      RiskAssessment a;
      a.reading.bushing_id = j.at("bushing_id").get<std::string>();
      const auto& g = j.at("gases");
      a.reading.h2 = g.at("hydrogen").get<double>();
      a.reading.ch4 = g.at("methane").get<double>();
      a.reading.c2h6 = g.at("ethane").get<double>();
      a.reading.c2h4 = g.at("ethylene").get<double>();
      a.reading.c2h2 = g.at("acetylene").get<double>();
      a.reading.co = g.at("carbon_monoxide").get<double>();
      a.reading.n2 = g.at("nitrogen").get<double>();
      a.reading.o2 = g.at("oxygen").get<double>();
      a.reading.co2 = g.at("carbon_dioxide").get<double>();
      a.tdcg = g.at("tdcg").get<double>();
      if (!j.at("reported_tdcg").is_null()) a.reading.tdcg = j.at("reported_tdcg").get<double>();
      a.memberships = membership_table_from_json(j.at("memberships"));
      const auto& agg = j.at("aggregated");
      a.aggregated = {agg.at("low").get<double>(), agg.at("medium").get<double>(),
                      agg.at("high").get<double>()};
      a.rank = j.at("rank").get<double>();
      a.decision = parse_decision(j.at("decision").get<std::string>());
      ReportRow row{a, std::nullopt, std::nullopt};
      if (!j.at("neuro_fuzzy").is_null()) row.neuro_fuzzy = parse_decision(j.at("neuro_fuzzy").get<std::string>());
      if (!j.at("nn").is_null()) row.nn = parse_decision(j.at("nn").get<std::string>());
      report.rows.push_back(std::move(row));
    }
    if (doc.at("summary").at("count").get<std::size_t>() != report.rows.size()) {
      throw FormatError("report summary count does not match its rows");
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  } catch (const StructuralError& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

std::string write_membership_tables(std::span<const GasReading> readings, ReportFormat format) {
  if (readings.empty()) throw PreconditionError("no readings to fuzzify");
  if (format == ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["report"] = "bushdx-memberships";
    doc["version"] = 1;
    auto& rows = doc["bushings"] = nlohmann::ordered_json::array();
    for (const auto& r : readings) {
      const double tdcg = compute_tdcg(r);
      rows.push_back({{"bushing_id", r.bushing_id},
                      {"gases", gases_json(r, tdcg)},
                      {"memberships", to_json(fuzzify_bushing(r))}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "bushing_id";
  for (GasId gas : kAllGases) {
    for (Level level : kAllLevels) {
      out += ',';
      out += to_string(gas);
      out += '_';
      out += to_string(level);
    }
  }
  out += '\n';
  for (const auto& r : readings) {
    const auto table = fuzzify_bushing(r);
    out += r.bushing_id;
    for (GasId gas : kAllGases) {
      for (Level level : kAllLevels) {
        out += ',';
        out += format_number(table.at(gas, level));
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace bushdx
