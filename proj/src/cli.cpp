#include "bushdx/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bushdx/defuzz.hpp"
#include "bushdx/error.hpp"
#include "bushdx/ingest.hpp"
#include "bushdx/membership.hpp"
#include "bushdx/mlp.hpp"
#include "bushdx/rules.hpp"

namespace bushdx::cli {

namespace {

// Data problem already reported to the user; unwinds to exit code 2.
struct DataFailure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFailure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataFailure{"cannot write '" + path + "'"};
  out << content;
  if (!out) throw DataFailure{"failed writing '" + path + "'"};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

struct OutputOptions {
  std::string path;
  std::string format;

  ReportFormat resolved() const {
    const auto f = parse_report_format(format.empty() ? "json" : format);
    return *f;
  }
  bool machine() const { return !path.empty() || !format.empty(); }
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("-o,--output", o.path, "Write a machine-readable document to this path");
  cmd->add_option("-f,--format", o.format, "Document format (json or csv; default json)")
      ->check(CLI::IsMember({"json", "csv"}));
}

// Emits a machine document to --output, or to stdout when only --format is given.
void emit(const OutputOptions& o, const std::string& doc, std::ostream& out) {
  if (!o.path.empty()) {
    write_file(o.path, doc);
  } else {
    out << doc;
  }
}

struct InputOptions {
  std::string path;
  bool strict = false;
};

std::vector<GasReading> load_readings(const InputOptions& in, std::ostream& err) {
  const auto text = read_file(in.path);
  IngestResult parsed;
  try {
    parsed = parse_dga_csv(text);
  } catch (const FormatError& e) {
    throw DataFailure{in.path + ": " + e.what()};
  }
  for (const auto& d : parsed.diagnostics) {
    err << in.path << ":" << d.line << ": " << to_string(d.severity) << ": " << d.message << "\n";
  }
  if (in.strict && parsed.has_errors()) {
    throw DataFailure{in.path + ": " + std::to_string(parsed.error_rows) + " invalid row(s)"};
  }
  if (parsed.readings.empty()) throw DataFailure{in.path + ": no valid readings"};
  return parsed.readings;
}

RuleSet load_ruleset(const std::string& path, std::ostream& err) {
  if (path.empty()) return default_ruleset();
  const auto text = read_file(path);
  RuleSet rules;
  try {
    rules = parse_rules(text, std::filesystem::path(path).stem().string());
  } catch (const ParseError& e) {
    throw DataFailure{path + ":" + e.what()};
  }
  if (rules.rules.empty()) throw DataFailure{path + ": ruleset has no rules"};
  for (RiskGroup g : rules.uncovered_groups()) {
    err << path << ": warning: no rule concludes '" << to_string(g) << "' risk\n";
  }
  return rules;
}

std::vector<RiskAssessment> assess_all(const std::vector<GasReading>& readings, const RuleSet& rules) {
  std::vector<RiskAssessment> out;
  out.reserve(readings.size());
  for (const auto& r : readings) out.push_back(assess(r, rules));
  return out;
}

std::map<std::string, Decision> load_labels(const std::string& path) {
  const auto text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::map<std::string, Decision> labels;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "bushing_id,label") {
        throw DataFailure{path + ": expected header 'bushing_id,label'"};
      }
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DataFailure{path + ":" + std::to_string(line_no) + ": expected two cells"};
    try {
      labels[line.substr(0, comma)] = parse_decision(line.substr(comma + 1));
    } catch (const FormatError& e) {
      throw DataFailure{path + ":" + std::to_string(line_no) + ": " + e.what()};
    }
  }
  return labels;
}

struct TrainFlags {
  std::uint64_t seed = 42;
  std::size_t epochs = TrainOptions{}.epochs;
  double learning_rate = TrainOptions{}.learning_rate;
};

void add_train_flags(CLI::App* cmd, TrainFlags& t) {
  cmd->add_option("--seed", t.seed, "Weight initialization seed")->capture_default_str();
  cmd->add_option("--epochs", t.epochs, "Full-batch gradient descent epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--learning-rate", t.learning_rate, "Gradient descent step size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

TrainResult fit(const std::vector<GasReading>& readings, const std::vector<Decision>& labels,
                const TrainFlags& t) {
  const auto data = make_dataset(readings, labels);
  return train(init_model(t.seed), data, {t.epochs, t.learning_rate});
}

void print_assessments(const std::vector<RiskAssessment>& all, std::ostream& out) {
  out << std::left << std::setw(14) << "bushing" << std::right << std::setw(10) << "tdcg"
      << std::setw(8) << "low" << std::setw(8) << "medium" << std::setw(8) << "high"
      << std::setw(12) << "rank" << "  decision\n";
  for (const auto& a : all) {
    out << std::left << std::setw(14) << a.reading.bushing_id << std::right << std::setw(10)
        << format_number(a.tdcg) << std::setw(8) << fixed(a.aggregated.low, 3) << std::setw(8)
        << fixed(a.aggregated.medium, 3) << std::setw(8) << fixed(a.aggregated.high, 3)
        << std::setw(12) << fixed(a.rank, 6) << "  " << to_string(a.decision) << "\n";
  }
}

void print_memberships(const std::vector<GasReading>& readings, std::ostream& out) {
  for (const auto& r : readings) {
    const auto table = fuzzify_bushing(r);
    out << "bushing " << r.bushing_id << "\n";
    out << "  " << std::left << std::setw(16) << "gas" << std::right << std::setw(12) << "value"
        << std::setw(10) << "normal" << std::setw(10) << "elevated" << std::setw(10) << "dangerous"
        << "\n";
    for (GasId gas : kAllGases) {
      const auto& d = table[gas];
      out << "  " << std::left << std::setw(16) << to_string(gas) << std::right << std::setw(12)
          << format_number(concentration(r, gas)) << std::setw(10) << fixed(d.normal, 4)
          << std::setw(10) << fixed(d.elevated, 4) << std::setw(10) << fixed(d.dangerous, 4)
          << "\n";
    }
  }
}

void print_comparison(const Report& report, std::ostream& out) {
  out << std::left << std::setw(14) << "bushing" << std::right << std::setw(12) << "rank"
      << std::setw(10) << "fuzzy" << std::setw(12) << "neurofuzzy" << std::setw(10) << "nn" << "\n";
  for (const auto& row : report.rows) {
    const auto& a = row.assessment;
    out << std::left << std::setw(14) << a.reading.bushing_id << std::right << std::setw(12)
        << fixed(a.rank, 6) << std::setw(10) << to_string(a.decision) << std::setw(12)
        << (row.neuro_fuzzy ? to_string(*row.neuro_fuzzy) : "-") << std::setw(10)
        << (row.nn ? to_string(*row.nn) : "-") << "\n";
  }
  const auto s = summarize(report);
  auto pct = [](const std::optional<double>& v) { return v ? fixed(*v, 1) + "%" : std::string("-"); };
  out << std::left << std::setw(14) << "accuracy" << std::right << std::setw(12) << "" << std::setw(10)
      << pct(s.fuzzy_agreement) << std::setw(12) << pct(s.neuro_fuzzy_agreement) << std::setw(10)
      << pct(s.nn_agreement) << "\n";
}

std::string classification_document(const std::vector<GasReading>& readings, const MlpModel& model,
                                    ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string doc = "bushing_id,score,decision\n";
    for (const auto& r : readings) {
      doc += r.bushing_id + "," + format_number(forward(model, normalize_features(r, model.divisors))) +
             "," + std::string(to_string(classify(model, r))) + "\n";
    }
    return doc;
  }
  nlohmann::ordered_json j;
  j["report"] = "bushdx-classification";
  j["version"] = 1;
  auto& rows = j["bushings"] = nlohmann::ordered_json::array();
  for (const auto& r : readings) {
    rows.push_back({{"bushing_id", r.bushing_id},
                    {"score", forward(model, normalize_features(r, model.divisors))},
                    {"decision", to_string(classify(model, r))}});
  }
  return j.dump(2) + "\n";
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bushdx: fuzzy DGA condition assessment for HV bushings"};
  app.name("bushdx");
  app.require_subcommand(1);
  app.fallthrough(false);

  InputOptions input;
  OutputOptions output;
  std::string rules_path;
  std::string model_path;
  std::string labels_path;
  TrainFlags train_flags;
  std::uint64_t categories = 0;
  std::uint64_t criteria = 0;
  std::string check_path;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("-i,--input", input.path, "DGA readings CSV")->required();
    cmd->add_flag("--strict", input.strict, "Fail when any row is invalid");
  };

  auto* fuzzify_cmd = app.add_subcommand("fuzzify", "Print per-gas membership degrees");
  add_input(fuzzify_cmd);
  add_output_options(fuzzify_cmd, output);

  auto* diagnose_cmd = app.add_subcommand("diagnose", "Rank each bushing and decide maintenance");
  add_input(diagnose_cmd);
  diagnose_cmd->add_option("-r,--rules", rules_path, "Rule file (default: shipped ruleset)");
  add_output_options(diagnose_cmd, output);

  auto* rules_cmd = app.add_subcommand("rules", "Rule file utilities");
  rules_cmd->require_subcommand(1);
  auto* check_cmd = rules_cmd->add_subcommand("check", "Parse and validate a rule file");
  check_cmd->add_option("file", check_path, "Rule file")->required();

  auto* count_cmd = app.add_subcommand("rulecount", "Size of the full rule cross product");
  count_cmd->add_option("--categories", categories, "Fuzzy categories per criterion")
      ->required()
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--criteria", criteria, "Number of criteria")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* catalog_cmd = app.add_subcommand("catalog", "Export the membership-function catalog as JSON");
  catalog_cmd->add_option("-o,--output", output.path, "Destination path (default stdout)");

  auto* train_cmd = app.add_subcommand("train", "Train the 10-7-1 network");
  add_input(train_cmd);
  train_cmd->add_option("--labels", labels_path,
                        "CSV 'bushing_id,label' (default: fuzzy decisions)");
  train_cmd->add_option("-r,--rules", rules_path, "Rule file used to derive default labels");
  train_cmd->add_option("-m,--model", model_path, "Model file to write")->required();
  add_train_flags(train_cmd, train_flags);

  auto* classify_cmd = app.add_subcommand("classify", "Classify readings with a trained model");
  add_input(classify_cmd);
  classify_cmd->add_option("-m,--model", model_path, "Model file")->required();
  add_output_options(classify_cmd, output);

  auto* compare_cmd =
      app.add_subcommand("compare", "Fuzzy, neuro-fuzzy and network decisions side by side");
  add_input(compare_cmd);
  compare_cmd->add_option("-r,--rules", rules_path, "Rule file (default: shipped ruleset)");
  compare_cmd->add_option("-m,--model", model_path, "Model file (default: train on the input)");
  add_train_flags(compare_cmd, train_flags);
  add_output_options(compare_cmd, output);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (*count_cmd) {
      out << rule_count(categories, criteria) << "\n";
      return kExitOk;
    }

    if (*catalog_cmd) {
      const auto& cat = gas_catalog();
      emit(output, catalog_to_json(cat).dump(2) + "\n", out);
      return kExitOk;
    }

    if (*check_cmd) {
      const auto text = read_file(check_path);
      RuleSet rules;
      try {
        rules = parse_rules(text, std::filesystem::path(check_path).stem().string());
      } catch (const ParseError& e) {
        err << check_path << ":" << e.what() << "\n";
        return kExitData;
      }
      const auto uncovered = rules.uncovered_groups();
      out << check_path << ": " << rules.rules.size() << " rule(s)";
      for (RiskGroup g : kAllGroups) {
        const auto n = std::count_if(rules.rules.begin(), rules.rules.end(),
                                     [g](const Rule& r) { return r.consequent == g; });
        out << ", " << to_string(g) << "=" << n;
      }
      out << "\n";
      if (rules.rules.empty()) {
        err << check_path << ": error: no rules\n";
        return kExitData;
      }
      for (RiskGroup g : uncovered) {
        err << check_path << ": error: no rule concludes '" << to_string(g) << "' risk\n";
      }
      return uncovered.empty() ? kExitOk : kExitData;
    }

    if (*fuzzify_cmd) {
      const auto readings = load_readings(input, err);
      if (output.machine()) {
        emit(output, write_membership_tables(readings, output.resolved()), out);
      } else {
        print_memberships(readings, out);
      }
      return kExitOk;
    }

    if (*diagnose_cmd) {
      const auto readings = load_readings(input, err);
      const auto rules = load_ruleset(rules_path, err);
      const auto all = assess_all(readings, rules);
      if (output.machine()) {
        emit(output, write_report(all, output.resolved(), rules.name), out);
      } else {
        print_assessments(all, out);
      }
      return kExitOk;
    }

    if (*train_cmd) {
      const auto readings = load_readings(input, err);
      std::vector<Decision> labels;
      if (!labels_path.empty()) {
        const auto by_id = load_labels(labels_path);
        for (const auto& r : readings) {
          const auto it = by_id.find(r.bushing_id);
          if (it == by_id.end()) throw DataFailure{labels_path + ": no label for '" + r.bushing_id + "'"};
          labels.push_back(it->second);
        }
      } else {
        const auto rules = load_ruleset(rules_path, err);
        for (const auto& a : assess_all(readings, rules)) labels.push_back(a.decision);
      }
      const auto result = fit(readings, labels, train_flags);
      write_file(model_path, model_to_json(result.model).dump(2) + "\n");
      std::size_t agree = 0;
      for (std::size_t k = 0; k < readings.size(); ++k) {
        agree += classify(result.model, readings[k]) == binary_decision(labels[k]);
      }
      out << "trained on " << readings.size() << " bushing(s), " << train_flags.epochs
          << " epochs, final loss " << format_number(result.model.training->final_loss)
          << ", training agreement " << agree << "/" << readings.size() << "\n";
      return kExitOk;
    }

    if (*classify_cmd) {
      const auto readings = load_readings(input, err);
      MlpModel model;
      try {
        model = model_from_json(nlohmann::ordered_json::parse(read_file(model_path)));
      } catch (const nlohmann::json::exception& e) {
        throw DataFailure{model_path + ": " + e.what()};
      }
      if (output.machine()) {
        emit(output, classification_document(readings, model, output.resolved()), out);
      } else {
        for (const auto& r : readings) {
          out << std::left << std::setw(14) << r.bushing_id << std::right << std::setw(12)
              << fixed(forward(model, normalize_features(r, model.divisors)), 6) << "  "
              << to_string(classify(model, r)) << "\n";
        }
      }
      return kExitOk;
    }

    if (*compare_cmd) {
      const auto readings = load_readings(input, err);
      const auto rules = load_ruleset(rules_path, err);
      const auto all = assess_all(readings, rules);
      MlpModel model;
      if (!model_path.empty()) {
        try {
          model = model_from_json(nlohmann::ordered_json::parse(read_file(model_path)));
        } catch (const nlohmann::json::exception& e) {
          throw DataFailure{model_path + ": " + e.what()};
        }
      } else {
        std::vector<Decision> labels;
        for (const auto& a : all) labels.push_back(a.decision);
        model = fit(readings, labels, train_flags).model;
      }
      Report report{rules.name, {}};
      for (const auto& a : all) {
        report.rows.push_back({a, neuro_fuzzy_classify(a.rank), classify(model, a.reading)});
      }
      if (output.machine()) {
        emit(output, write_report(report, output.resolved()), out);
      } else {
        print_comparison(report, out);
      }
      return kExitOk;
    }
  } catch (const DataFailure& e) {
    err << "bushdx: " << e.message << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "bushdx: " << e.what() << "\n";
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace bushdx::cli
