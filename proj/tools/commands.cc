#include "commands.h"

#include <charconv>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "georeg/error.h"
#include "georeg/summary.h"
#include "io.h"
#include "report.h"

namespace georeg::cli {

namespace {

struct OutputFlags {
  std::string format = "text";
  int precision = kDefaultPrecision;
};

void AddOutputFlags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--precision", flags.precision, "Significant digits in numeric output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

// `--subsets` may be given bare (all sizes) or with a maximum size.
CLI::Option* AddSubsetsFlag(CLI::App* cmd, std::vector<std::string>& value) {
  return cmd
      ->add_option("--subsets", value,
                   "Tabulate R^2 for every subset of regressors, optionally up to a size")
      ->expected(0, 1);
}

std::optional<std::size_t> SubsetLimit(const CLI::Option* opt,
                                       const std::vector<std::string>& value) {
  if (opt->count() == 0) return std::nullopt;
  if (value.empty() || value.front().empty()) return static_cast<std::size_t>(-1);
  std::size_t parsed = 0;
  const std::string& s = value.front();
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
  if (ec != std::errc() || ptr != s.data() + s.size() || parsed == 0) {
    throw Error(ErrorCode::kParse, "--subsets expects a positive integer, got '" + s + "'");
  }
  return parsed;
}

void Emit(const AnalysisReport& report, const OutputFlags& flags, std::ostream& out) {
  out << (flags.format == "json" ? ToJson(report, flags.precision)
                                 : ToText(report, flags.precision));
}

void EmitSubsets(const AnalysisReport& report, const OutputFlags& flags, std::ostream& out) {
  if (flags.format == "json") {
    // Same serializer as full reports, trimmed to the input echo and table.
    nlohmann::ordered_json full =
        nlohmann::ordered_json::parse(ToJson(report, flags.precision));
    nlohmann::ordered_json trimmed;
    trimmed["input"] = full["input"];
    trimmed["subsets"] = full["subsets"];
    out << trimmed.dump(2) << "\n";
    return;
  }
  const std::string text = ToText(report, flags.precision);
  const std::size_t start = text.find("Subsets (sorted by R^2)");
  const std::size_t end = text.find("\nPath equivalence", start);
  out << text.substr(start, end == std::string::npos ? std::string::npos : end - start);
  if (end != std::string::npos) out << "\n";
}

// Prints an invalid-correlation diagnosis listing every violated property.
int ReportInvalid(const ValidationReport& validation, std::ostream& err) {
  err << "error: invalid correlation structure\n";
  for (const Violation& v : validation.violations) {
    err << "  " << ViolationKindName(v.kind) << ": " << v.message << "\n";
  }
  return kExitFailure;
}

bool LooksLikeCsv(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple linear regression from lengths and angles", "georeg"};
  app.require_subcommand(1);

  // fit
  std::string fit_path;
  DatasetRequest fit_request;
  bool fit_no_intercept = false;
  bool fit_check = false;
  std::vector<std::string> fit_subsets;
  OutputFlags fit_output;
  CLI::App* fit = app.add_subcommand("fit", "Fit a CSV dataset by both paths and compare");
  fit->add_option("data", fit_path, "CSV file with a header row")->required();
  fit->add_option("--response", fit_request.response,
                  "Response column (default: first column)");
  fit->add_option("--regressors", fit_request.regressors,
                  "Comma-separated regressor columns (default: all others)")
      ->delimiter(',');
  fit->add_flag("--no-intercept", fit_no_intercept, "Regress through the origin");
  fit->add_flag("--check-equivalence", fit_check,
                "Exit nonzero when the two fit paths disagree");
  CLI::Option* fit_subsets_opt = AddSubsetsFlag(fit, fit_subsets);
  AddOutputFlags(fit, fit_output);

  // from-correlation
  std::string corr_path;
  CorrelationRequest corr_request;
  bool corr_no_intercept = false;
  std::vector<std::string> corr_subsets;
  OutputFlags corr_output;
  CLI::App* corr = app.add_subcommand(
      "from-correlation", "Analyse a correlation matrix (text or JSON) without raw data");
  corr->add_option("input", corr_path, "Correlation file")->required();
  corr->add_option("--n", corr_request.n, "Sample size (overrides the file)")
      ->check(CLI::PositiveNumber);
  corr->add_flag("--no-intercept", corr_no_intercept, "Regression through the origin");
  CLI::Option* corr_subsets_opt = AddSubsetsFlag(corr, corr_subsets);
  AddOutputFlags(corr, corr_output);

  // subsets
  std::string sub_path;
  std::optional<std::size_t> sub_max;
  std::optional<std::string> sub_response;
  std::vector<std::string> sub_regressors;
  std::optional<std::size_t> sub_n;
  bool sub_no_intercept = false;
  OutputFlags sub_output;
  CLI::App* sub = app.add_subcommand(
      "subsets", "Tabulate R^2 over regressor subsets (CSV or correlation input)");
  sub->add_option("input", sub_path, "CSV dataset (*.csv) or correlation file")->required();
  sub->add_option("--max-size", sub_max, "Largest subset size (default: all)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--response", sub_response, "Response column for CSV input");
  sub->add_option("--regressors", sub_regressors, "Regressor columns for CSV input")
      ->delimiter(',');
  sub->add_option("--n", sub_n, "Sample size for correlation input")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--no-intercept", sub_no_intercept, "Regression through the origin");
  AddOutputFlags(sub, sub_output);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("georeg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (fit->parsed()) {
      fit_request.intercept = !fit_no_intercept;
      fit_request.subset_max_size = SubsetLimit(fit_subsets_opt, fit_subsets);
      const AnalysisReport report = BuildDatasetReport(ReadCsvFile(fit_path), fit_request);
      Emit(report, fit_output, out);
      if (fit_check && report.equivalence && !report.equivalence->passed) {
        err << "error: least-squares and geometric paths disagree (max relative "
            << FormatNumber(report.equivalence->max_relative, 6) << ")\n";
        return kExitFailure;
      }
      return kExitOk;
    }

    if (corr->parsed()) {
      corr_request.intercept = !corr_no_intercept;
      corr_request.subset_max_size = SubsetLimit(corr_subsets_opt, corr_subsets);
      const CorrelationInput input = ReadCorrelationFile(corr_path);
      const ValidationReport validation = ValidateCorrelationInput(input);
      if (!validation.valid()) return ReportInvalid(validation, err);
      Emit(BuildCorrelationReport(input, corr_request), corr_output, out);
      return kExitOk;
    }

    if (sub->parsed()) {
      const std::size_t max_size = sub_max.value_or(static_cast<std::size_t>(-1));
      AnalysisReport report;
      if (LooksLikeCsv(sub_path) || sub_response) {
        DatasetRequest request;
        request.response = sub_response;
        request.regressors = sub_regressors;
        request.intercept = !sub_no_intercept;
        request.subset_max_size = max_size;
        report = BuildDatasetReport(ReadCsvFile(sub_path), request);
      } else {
        const CorrelationInput input = ReadCorrelationFile(sub_path);
        const ValidationReport validation = ValidateCorrelationInput(input);
        if (!validation.valid()) return ReportInvalid(validation, err);
        CorrelationRequest request;
        request.n = sub_n;
        request.intercept = !sub_no_intercept;
        request.subset_max_size = max_size;
        report = BuildCorrelationReport(input, request);
      }
      EmitSubsets(report, sub_output, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace georeg::cli
