#ifndef GEOREG_TOOLS_REPORT_H_
#define GEOREG_TOOLS_REPORT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "georeg/geometric.h"
#include "georeg/ols.h"
#include "georeg/summary.h"
#include "io.h"

namespace georeg::cli {

inline constexpr int kDefaultPrecision = 6;

struct InputEcho {
  std::string mode;  // "dataset" or "correlation"
  std::size_t n = 0;
  std::size_t m = 0;
  std::string response;
  std::vector<std::string> regressors;
  bool intercept = true;

  bool operator==(const InputEcho&) const = default;
};

struct SummarySection {
  std::vector<std::vector<double>> phi;
  std::optional<double> y_norm;
  std::optional<std::vector<double>> x_norms;
  std::optional<double> y_mean;
  std::optional<std::vector<double>> x_means;

  bool operator==(const SummarySection&) const = default;
};

struct OlsSection {
  std::vector<double> beta_hat;
  double beta0_hat = 0.0;
  AnovaTable anova;

  bool operator==(const OlsSection&) const = default;
};

struct GeometricSection {
  double r_squared = 0.0;
  double f_stat = 0.0;  // +inf for a perfect fit
  double p_value = 1.0;
  std::size_t df_tot = 0;
  std::size_t df_reg = 0;
  std::size_t df_res = 0;
  bool scale_free_only = true;
  std::vector<double> standardized_coefficients;
  std::optional<std::vector<double>> beta_hat;
  std::optional<double> beta0_hat;
  std::optional<AnovaTable> anova;
  std::vector<std::string> warnings;

  bool operator==(const GeometricSection&) const = default;
};

struct SpectralSection {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // one entry per eigenvector
  std::vector<double> s_values;
  std::vector<double> contributions;
  double r_squared = 0.0;
  double sum_squared_correlations = 0.0;
  std::vector<double> enhancement_terms;
  double enhancement_difference = 0.0;
  double direct_difference = 0.0;
  bool enhancement = false;

  bool operator==(const SpectralSection&) const = default;
};

struct SubsetRow {
  std::vector<std::size_t> indices;  // 0-based
  std::vector<std::string> variables;
  double r_squared = 0.0;
  // R² of the subset minus the sum of its squared pairwise correlations.
  double enhancement_difference = 0.0;

  bool operator==(const SubsetRow&) const = default;
};

struct EquivalenceSection {
  std::vector<FieldComparison> fields;
  double max_relative = 0.0;
  double tolerance = EquivalenceReport::kTolerance;
  bool passed = true;

  bool operator==(const EquivalenceSection&) const = default;
};

struct AnalysisReport {
  InputEcho input;
  SummarySection summary;
  std::optional<OlsSection> ols;
  GeometricSection geometric;
  SpectralSection spectral;
  std::optional<std::vector<SubsetRow>> subsets;
  std::optional<EquivalenceSection> equivalence;

  bool operator==(const AnalysisReport&) const = default;
};

struct DatasetRequest {
  std::optional<std::string> response;  // defaults to the first column
  std::vector<std::string> regressors;  // defaults to every other column
  bool intercept = true;
  std::optional<std::size_t> subset_max_size;
};

struct CorrelationRequest {
  std::optional<std::size_t> n;  // overrides the file
  bool intercept = true;
  std::optional<std::size_t> subset_max_size;
};

// Runs summarize, both fit paths, the spectral analysis and the path
// comparison on a dataset.
AnalysisReport BuildDatasetReport(const Dataset& data, const DatasetRequest& request);

// Validation problems in correlation input; empty when the input is usable.
ValidationReport ValidateCorrelationInput(const CorrelationInput& input);

// Scale-free analysis from correlations (plus scale-dependent outputs when
// the input carries lengths).
AnalysisReport BuildCorrelationReport(const CorrelationInput& input,
                                      const CorrelationRequest& request);

// Every nonempty subset of at most `max_size` regressors, sorted by R²
// descending (ties: smaller subsets first, then lexicographic indices).
std::vector<SubsetRow> SubsetTable(const GeometricSummary& summary,
                                   const std::vector<std::string>& names,
                                   std::size_t max_size);

// Numbers are rounded to `precision` significant digits (Φ to at least 4);
// infinity is written as the string "inf".
std::string ToJson(const AnalysisReport& report, int precision = kDefaultPrecision);
std::string ToText(const AnalysisReport& report, int precision = kDefaultPrecision);
AnalysisReport ReportFromJson(const std::string& text);

std::string FormatNumber(double value, int precision);

}  // namespace georeg::cli

#endif  // GEOREG_TOOLS_REPORT_H_
