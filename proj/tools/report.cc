#include "report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "georeg/error.h"
#include "georeg/spectral.h"

namespace georeg::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxSubsetRows = std::size_t{1} << 20;
constexpr int kMinPhiDigits = 4;

std::vector<double> ToStd(const Vector& v) { return {v.begin(), v.end()}; }

std::vector<std::vector<double>> RowsOf(const Matrix& a) {
  std::vector<std::vector<double>> rows(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) rows[r] = ToStd(a.Row(r));
  return rows;
}

std::vector<std::vector<double>> ColumnsOf(const Matrix& a) {
  std::vector<std::vector<double>> cols(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) cols[c] = ToStd(a.Column(c));
  return cols;
}

// Rethrows summary/fit errors with variable names in place of positions.
[[noreturn]] void RethrowNamed(const Error& e, const std::string& response,
                               const std::vector<std::string>& regressors,
                               const std::vector<Vector>& xs, const Vector& y,
                               bool intercept) {
  if (e.code() == ErrorCode::kDegenerateVariable && e.index()) {
    const std::size_t idx = *e.index();
    const std::string& name = idx == 0 ? response : regressors.at(idx - 1);
    throw Error(e.code(),
                "variable '" + name + "' is constant (zero length after centering)", idx);
  }
  if (e.code() == ErrorCode::kCollinearity) {
    // The first prefix that turns singular names a dependent variable.
    for (std::size_t k = 2; k <= xs.size(); ++k) {
      try {
        Summarize(y, std::span<const Vector>(xs.data(), k), {.intercept = intercept});
      } catch (const Error& inner) {
        if (inner.code() != ErrorCode::kCollinearity) break;
        std::string earlier;
        for (std::size_t i = 0; i + 1 < k; ++i) {
          earlier += (i ? ", " : "") + ("'" + regressors[i] + "'");
        }
        throw Error(ErrorCode::kCollinearity,
                    "explanatory variable '" + regressors[k - 1] +
                        "' is linearly dependent on " + earlier,
                    k);
      }
    }
  }
  throw e;
}

GeometricSection MakeGeometricSection(const GeometricFit& fit) {
  GeometricSection g;
  g.r_squared = fit.r_squared();
  g.f_stat = fit.f_stat();
  g.p_value = fit.p_value();
  g.df_tot = fit.df_tot();
  g.df_reg = fit.df_reg();
  g.df_res = fit.df_res();
  g.scale_free_only = fit.scale_free_only();
  g.standardized_coefficients = ToStd(fit.standardized_coefficients());
  if (!fit.scale_free_only()) {
    g.beta_hat = ToStd(fit.beta_hat());
    g.anova = fit.anova();
    if (fit.has_intercept_estimate()) g.beta0_hat = fit.beta0_hat();
  }
  g.warnings = fit.warnings();
  return g;
}

SpectralSection MakeSpectralSection(const SpectralReport& s) {
  SpectralSection out;
  out.eigenvalues = ToStd(s.eigenvalues);
  out.eigenvectors = ColumnsOf(s.eigenvectors);
  out.s_values = ToStd(s.s_values);
  out.contributions = ToStd(s.contributions);
  out.r_squared = s.r_squared;
  out.sum_squared_correlations = s.sum_squared_correlations;
  out.enhancement_terms = ToStd(s.enhancement_terms);
  out.enhancement_difference = s.enhancement_difference;
  out.direct_difference = s.direct_difference;
  out.enhancement = s.enhancement;
  return out;
}

SummarySection MakeSummarySection(const GeometricSummary& s) {
  SummarySection out;
  out.phi = RowsOf(s.Phi());
  if (s.has_norms()) {
    out.y_norm = s.y_norm();
    out.x_norms = ToStd(s.x_norms());
  }
  if (s.has_means()) {
    out.y_mean = s.y_mean();
    out.x_means = ToStd(s.x_means());
  }
  return out;
}

// ---- serialization -------------------------------------------------------

double Round(double v, int digits) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

Json Num(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return Round(v, digits);
}

double NumFrom(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::kParse, "unexpected string '" + s + "' for a number");
  }
  return j.get<double>();
}

Json Nums(const std::vector<double>& v, int digits) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(Num(x, digits));
  return arr;
}

std::vector<double> NumsFrom(const Json& j) {
  std::vector<double> v;
  for (const Json& x : j) v.push_back(NumFrom(x));
  return v;
}

Json Rows(const std::vector<std::vector<double>>& rows, int digits) {
  Json arr = Json::array();
  for (const auto& row : rows) arr.push_back(Nums(row, digits));
  return arr;
}

std::vector<std::vector<double>> RowsFrom(const Json& j) {
  std::vector<std::vector<double>> rows;
  for (const Json& row : j) rows.push_back(NumsFrom(row));
  return rows;
}

template <typename T, typename F>
Json Optional(const std::optional<T>& v, F&& to_json) {
  return v ? to_json(*v) : Json(nullptr);
}

template <typename T, typename F>
std::optional<T> OptionalFrom(const Json& j, const char* key, F&& from_json) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return from_json(j.at(key));
}

Json AnovaJson(const AnovaTable& t, int d) {
  Json j;
  j["ss_tot"] = Num(t.ss_tot, d);
  j["ss_reg"] = Num(t.ss_reg, d);
  j["ss_res"] = Num(t.ss_res, d);
  j["df_tot"] = t.df_tot;
  j["df_reg"] = t.df_reg;
  j["df_res"] = t.df_res;
  j["ms_tot"] = Num(t.ms_tot, d);
  j["ms_reg"] = Num(t.ms_reg, d);
  j["ms_res"] = Num(t.ms_res, d);
  j["sigma2_y_hat"] = Num(t.sigma2_y_hat, d);
  j["sigma2_hat"] = Num(t.sigma2_hat, d);
  j["r_squared"] = Num(t.r_squared, d);
  j["f_stat"] = Num(t.f_stat, d);
  j["p_value"] = Num(t.p_value, d);
  return j;
}

AnovaTable AnovaFrom(const Json& j) {
  AnovaTable t;
  t.ss_tot = NumFrom(j.at("ss_tot"));
  t.ss_reg = NumFrom(j.at("ss_reg"));
  t.ss_res = NumFrom(j.at("ss_res"));
  t.df_tot = j.at("df_tot").get<std::size_t>();
  t.df_reg = j.at("df_reg").get<std::size_t>();
  t.df_res = j.at("df_res").get<std::size_t>();
  t.ms_tot = NumFrom(j.at("ms_tot"));
  t.ms_reg = NumFrom(j.at("ms_reg"));
  t.ms_res = NumFrom(j.at("ms_res"));
  t.sigma2_y_hat = NumFrom(j.at("sigma2_y_hat"));
  t.sigma2_hat = NumFrom(j.at("sigma2_hat"));
  t.r_squared = NumFrom(j.at("r_squared"));
  t.f_stat = NumFrom(j.at("f_stat"));
  t.p_value = NumFrom(j.at("p_value"));
  return t;
}

Json ReportJson(const AnalysisReport& r, int d) {
  const int phi_digits = std::max(d, kMinPhiDigits);
  Json j;
  j["input"] = {{"mode", r.input.mode},
                {"n", r.input.n},
                {"m", r.input.m},
                {"response", r.input.response},
                {"regressors", r.input.regressors},
                {"intercept", r.input.intercept}};

  Json s;
  s["phi"] = Rows(r.summary.phi, phi_digits);
  s["y_norm"] = Optional(r.summary.y_norm, [d](double v) { return Num(v, d); });
  s["x_norms"] =
      Optional(r.summary.x_norms, [d](const std::vector<double>& v) { return Nums(v, d); });
  s["y_mean"] = Optional(r.summary.y_mean, [d](double v) { return Num(v, d); });
  s["x_means"] =
      Optional(r.summary.x_means, [d](const std::vector<double>& v) { return Nums(v, d); });
  j["summary"] = s;

  j["ols"] = Optional(r.ols, [d](const OlsSection& o) {
    Json oj;
    oj["beta_hat"] = Nums(o.beta_hat, d);
    oj["beta0_hat"] = Num(o.beta0_hat, d);
    oj["anova"] = AnovaJson(o.anova, d);
    return oj;
  });

  const GeometricSection& g = r.geometric;
  Json gj;
  gj["r_squared"] = Num(g.r_squared, d);
  gj["f_stat"] = Num(g.f_stat, d);
  gj["p_value"] = Num(g.p_value, d);
  gj["df_tot"] = g.df_tot;
  gj["df_reg"] = g.df_reg;
  gj["df_res"] = g.df_res;
  gj["scale_free_only"] = g.scale_free_only;
  gj["standardized_coefficients"] = Nums(g.standardized_coefficients, d);
  gj["beta_hat"] =
      Optional(g.beta_hat, [d](const std::vector<double>& v) { return Nums(v, d); });
  gj["beta0_hat"] = Optional(g.beta0_hat, [d](double v) { return Num(v, d); });
  gj["anova"] = Optional(g.anova, [d](const AnovaTable& t) { return AnovaJson(t, d); });
  gj["warnings"] = g.warnings;
  j["geometric"] = gj;

  const SpectralSection& sp = r.spectral;
  Json sj;
  sj["eigenvalues"] = Nums(sp.eigenvalues, d);
  sj["eigenvectors"] = Rows(sp.eigenvectors, d);
  sj["s_values"] = Nums(sp.s_values, d);
  sj["contributions"] = Nums(sp.contributions, d);
  sj["r_squared"] = Num(sp.r_squared, d);
  sj["sum_squared_correlations"] = Num(sp.sum_squared_correlations, d);
  sj["enhancement_terms"] = Nums(sp.enhancement_terms, d);
  sj["enhancement_difference"] = Num(sp.enhancement_difference, d);
  sj["direct_difference"] = Num(sp.direct_difference, d);
  sj["enhancement"] = sp.enhancement;
  j["spectral"] = sj;

  j["subsets"] = Optional(r.subsets, [d](const std::vector<SubsetRow>& rows) {
    Json arr = Json::array();
    for (const SubsetRow& row : rows) {
      arr.push_back({{"indices", row.indices},
                     {"variables", row.variables},
                     {"r_squared", Num(row.r_squared, d)},
                     {"enhancement_difference", Num(row.enhancement_difference, d)}});
    }
    return arr;
  });

  j["equivalence"] = Optional(r.equivalence, [d](const EquivalenceSection& e) {
    Json ej;
    ej["passed"] = e.passed;
    ej["tolerance"] = Num(e.tolerance, d);
    ej["max_relative"] = Num(e.max_relative, d);
    Json fields = Json::array();
    for (const FieldComparison& f : e.fields) {
      fields.push_back({{"field", f.field},
                        {"ols", Num(f.ols, d)},
                        {"geometric", Num(f.geometric, d)},
                        {"relative", Num(f.relative, d)}});
    }
    ej["fields"] = fields;
    return ej;
  });
  return j;
}

// ---- text rendering -------------------------------------------------------

std::string JoinNumbers(const std::vector<double>& v, int d) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "  ";
    out += FormatNumber(v[i], d);
  }
  return out;
}

void WriteAnova(std::ostream& out, const AnovaTable& t, int d) {
  char line[256];
  std::snprintf(line, sizeof(line), "    %-10s %16s %8s %16s\n", "source", "SS", "df", "MS");
  out << line;
  auto row = [&](const char* name, double ss, std::size_t df, double ms) {
    std::snprintf(line, sizeof(line), "    %-10s %16s %8zu %16s\n", name,
                  FormatNumber(ss, d).c_str(), df, FormatNumber(ms, d).c_str());
    out << line;
  };
  row("regression", t.ss_reg, t.df_reg, t.ms_reg);
  row("residual", t.ss_res, t.df_res, t.ms_res);
  row("total", t.ss_tot, t.df_tot, t.ms_tot);
  out << "    sigma2_y_hat = " << FormatNumber(t.sigma2_y_hat, d)
      << "  sigma2_hat = " << FormatNumber(t.sigma2_hat, d) << "\n";
  out << "    R^2 = " << FormatNumber(t.r_squared, d) << "  F = " << FormatNumber(t.f_stat, d)
      << "  p = " << FormatNumber(t.p_value, d) << "\n";
}

}  // namespace

std::string FormatNumber(double value, int precision) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, Round(value, precision));
  return buf;
}

AnalysisReport BuildDatasetReport(const Dataset& data, const DatasetRequest& request) {
  if (data.names.size() < 2) {
    throw Error(ErrorCode::kNoExplanatory, "dataset needs a response and at least one regressor");
  }
  const std::string response = request.response.value_or(data.names.front());
  const std::size_t response_index = data.IndexOf(response);

  std::vector<std::string> regressors = request.regressors;
  if (regressors.empty()) {
    for (const std::string& name : data.names) {
      if (name != response) regressors.push_back(name);
    }
  }
  std::set<std::string> seen;
  std::vector<Vector> xs;
  for (const std::string& name : regressors) {
    if (name == response) {
      throw Error(ErrorCode::kParse, "response '" + name + "' cannot also be a regressor");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kParse, "regressor '" + name + "' listed twice");
    }
    xs.push_back(data.columns[data.IndexOf(name)]);
  }
  const Vector& y = data.columns[response_index];
  const SummaryOptions options{.intercept = request.intercept};

  AnalysisReport report;
  report.input = {"dataset", y.size(), xs.size(), response, regressors, request.intercept};

  try {
    const GeometricSummary summary = Summarize(y, xs, options);
    const RegressionFit ols = FitOls(y, xs, options);
    const GeometricFit geo = FitGeometric(summary);
    const SpectralReport spectral = AnalyzeSpectrum(summary);
    const EquivalenceReport equivalence = ComparePaths(y, xs, options);

    report.summary = MakeSummarySection(summary);
    report.ols = OlsSection{ToStd(ols.beta_hat), ols.beta0_hat, ols.anova};
    report.geometric = MakeGeometricSection(geo);
    report.spectral = MakeSpectralSection(spectral);
    report.equivalence =
        EquivalenceSection{equivalence.fields, equivalence.max_relative,
                           EquivalenceReport::kTolerance, equivalence.passed()};
    if (request.subset_max_size) {
      report.subsets = SubsetTable(summary, regressors, *request.subset_max_size);
    }
  } catch (const Error& e) {
    RethrowNamed(e, response, regressors, xs, y, request.intercept);
  }
  return report;
}

ValidationReport ValidateCorrelationInput(const CorrelationInput& input) {
  return ValidateCorrelationMatrix(input.phi);
}

AnalysisReport BuildCorrelationReport(const CorrelationInput& input,
                                      const CorrelationRequest& request) {
  const std::optional<std::size_t> n = request.n ? request.n : input.n;
  if (!n) {
    throw Error(ErrorCode::kMissingData, "sample size is required (file 'n' line or --n)");
  }
  const ValidationReport validation = ValidateCorrelationInput(input);
  if (!validation.valid()) {
    throw Error(ErrorCode::kInvalidCorrelation,
                "invalid correlation structure: " + validation.Describe());
  }
  const Partition parts = PartitionCorrelation(input.phi);
  std::optional<Vector> x_norms;
  if (input.x_norms) x_norms = Vector(*input.x_norms);
  const GeometricSummary summary =
      FromCorrelations(parts.theta, parts.omega, *n, input.y_norm, x_norms,
                       {.intercept = request.intercept});

  std::vector<std::string> names = input.names;
  if (names.empty()) {
    names.push_back("y");
    for (std::size_t i = 0; i < summary.m(); ++i) names.push_back("x" + std::to_string(i + 1));
  }
  const std::vector<std::string> regressors(names.begin() + 1, names.end());

  AnalysisReport report;
  report.input = {"correlation", *n, summary.m(), names.front(), regressors,
                  request.intercept};
  report.summary = MakeSummarySection(summary);
  report.geometric = MakeGeometricSection(FitGeometric(summary));
  report.spectral = MakeSpectralSection(AnalyzeSpectrum(summary));
  if (request.subset_max_size) {
    report.subsets = SubsetTable(summary, regressors, *request.subset_max_size);
  }
  return report;
}

std::vector<SubsetRow> SubsetTable(const GeometricSummary& summary,
                                   const std::vector<std::string>& names,
                                   std::size_t max_size) {
  const std::size_t m = summary.m();
  if (names.size() != m) throw Error(ErrorCode::kDimension, "one name per regressor required");
  if (max_size == 0) throw Error(ErrorCode::kEmptySubset, "subset size must be at least 1");
  max_size = std::min(max_size, m);

  // Count rows before enumerating: Σ_{k<=max} C(m, k).
  double total = 0.0;
  double binom = 1.0;
  for (std::size_t k = 1; k <= max_size; ++k) {
    binom = binom * static_cast<double>(m - k + 1) / static_cast<double>(k);
    total += binom;
  }
  if (total > static_cast<double>(kMaxSubsetRows)) {
    throw Error(ErrorCode::kDomain, "too many subsets; lower the maximum subset size");
  }

  std::vector<SubsetRow> rows;
  std::vector<std::size_t> current;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (!current.empty()) {
      SubsetRow row;
      row.indices = current;
      double marginal = 0.0;
      for (std::size_t idx : current) {
        row.variables.push_back(names[idx]);
        marginal += summary.omega()[idx] * summary.omega()[idx];
      }
      row.r_squared = RSquaredSubset(summary, current);
      row.enhancement_difference = row.r_squared - marginal;
      rows.push_back(std::move(row));
    }
    if (current.size() == max_size) return;
    for (std::size_t i = start; i < m; ++i) {
      current.push_back(i);
      extend(i + 1);
      current.pop_back();
    }
  };
  extend(0);

  std::stable_sort(rows.begin(), rows.end(), [](const SubsetRow& a, const SubsetRow& b) {
    if (a.r_squared != b.r_squared) return a.r_squared > b.r_squared;
    if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
    return a.indices < b.indices;
  });
  return rows;
}

std::string ToJson(const AnalysisReport& report, int precision) {
  return ReportJson(report, precision).dump(2) + "\n";
}

AnalysisReport ReportFromJson(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid report JSON: ") + e.what());
  }
  try {
    AnalysisReport r;
    const Json& in = j.at("input");
    r.input.mode = in.at("mode").get<std::string>();
    r.input.n = in.at("n").get<std::size_t>();
    r.input.m = in.at("m").get<std::size_t>();
    r.input.response = in.at("response").get<std::string>();
    r.input.regressors = in.at("regressors").get<std::vector<std::string>>();
    r.input.intercept = in.at("intercept").get<bool>();

    const Json& s = j.at("summary");
    r.summary.phi = RowsFrom(s.at("phi"));
    r.summary.y_norm = OptionalFrom<double>(s, "y_norm", NumFrom);
    r.summary.x_norms = OptionalFrom<std::vector<double>>(s, "x_norms", NumsFrom);
    r.summary.y_mean = OptionalFrom<double>(s, "y_mean", NumFrom);
    r.summary.x_means = OptionalFrom<std::vector<double>>(s, "x_means", NumsFrom);

    r.ols = OptionalFrom<OlsSection>(j, "ols", [](const Json& o) {
      return OlsSection{NumsFrom(o.at("beta_hat")), NumFrom(o.at("beta0_hat")),
                        AnovaFrom(o.at("anova"))};
    });

    const Json& g = j.at("geometric");
    r.geometric.r_squared = NumFrom(g.at("r_squared"));
    r.geometric.f_stat = NumFrom(g.at("f_stat"));
    r.geometric.p_value = NumFrom(g.at("p_value"));
    r.geometric.df_tot = g.at("df_tot").get<std::size_t>();
    r.geometric.df_reg = g.at("df_reg").get<std::size_t>();
    r.geometric.df_res = g.at("df_res").get<std::size_t>();
    r.geometric.scale_free_only = g.at("scale_free_only").get<bool>();
    r.geometric.standardized_coefficients = NumsFrom(g.at("standardized_coefficients"));
    r.geometric.beta_hat = OptionalFrom<std::vector<double>>(g, "beta_hat", NumsFrom);
    r.geometric.beta0_hat = OptionalFrom<double>(g, "beta0_hat", NumFrom);
    r.geometric.anova = OptionalFrom<AnovaTable>(g, "anova", AnovaFrom);
    r.geometric.warnings = g.at("warnings").get<std::vector<std::string>>();

    const Json& sp = j.at("spectral");
    r.spectral.eigenvalues = NumsFrom(sp.at("eigenvalues"));
    r.spectral.eigenvectors = RowsFrom(sp.at("eigenvectors"));
    r.spectral.s_values = NumsFrom(sp.at("s_values"));
    r.spectral.contributions = NumsFrom(sp.at("contributions"));
    r.spectral.r_squared = NumFrom(sp.at("r_squared"));
    r.spectral.sum_squared_correlations = NumFrom(sp.at("sum_squared_correlations"));
    r.spectral.enhancement_terms = NumsFrom(sp.at("enhancement_terms"));
    r.spectral.enhancement_difference = NumFrom(sp.at("enhancement_difference"));
    r.spectral.direct_difference = NumFrom(sp.at("direct_difference"));
    r.spectral.enhancement = sp.at("enhancement").get<bool>();

    r.subsets = OptionalFrom<std::vector<SubsetRow>>(j, "subsets", [](const Json& arr) {
      std::vector<SubsetRow> rows;
      for (const Json& row : arr) {
        rows.push_back({row.at("indices").get<std::vector<std::size_t>>(),
                        row.at("variables").get<std::vector<std::string>>(),
                        NumFrom(row.at("r_squared")),
                        NumFrom(row.at("enhancement_difference"))});
      }
      return rows;
    });

    r.equivalence = OptionalFrom<EquivalenceSection>(j, "equivalence", [](const Json& e) {
      EquivalenceSection out;
      out.passed = e.at("passed").get<bool>();
      out.tolerance = NumFrom(e.at("tolerance"));
      out.max_relative = NumFrom(e.at("max_relative"));
      for (const Json& f : e.at("fields")) {
        out.fields.push_back({f.at("field").get<std::string>(), NumFrom(f.at("ols")),
                              NumFrom(f.at("geometric")), NumFrom(f.at("relative"))});
      }
      return out;
    });
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed report JSON: ") + e.what());
  }
}

std::string ToText(const AnalysisReport& r, int d) {
  const int phi_digits = std::max(d, kMinPhiDigits);
  std::ostringstream out;
  out << "Input\n";
  out << "  mode: " << r.input.mode << "  n = " << r.input.n << "  m = " << r.input.m
      << "  intercept: " << (r.input.intercept ? "yes" : "no") << "\n";
  out << "  response: " << r.input.response << "\n  regressors:";
  for (const std::string& name : r.input.regressors) out << ' ' << name;
  out << "\n\n";

  out << "Correlation matrix (response first)\n";
  for (const auto& row : r.summary.phi) {
    out << "  ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      char cell[48];
      std::snprintf(cell, sizeof(cell), "%12s", FormatNumber(row[c], phi_digits).c_str());
      out << cell;
    }
    out << "\n";
  }
  if (r.summary.y_norm) {
    out << "  |y| = " << FormatNumber(*r.summary.y_norm, d)
        << "  |x| = " << JoinNumbers(*r.summary.x_norms, d) << "\n";
  } else {
    out << "  vector lengths: unavailable (correlation-only input)\n";
  }
  if (r.summary.y_mean) {
    out << "  mean(y) = " << FormatNumber(*r.summary.y_mean, d)
        << "  mean(x) = " << JoinNumbers(*r.summary.x_means, d) << "\n";
  }
  out << "\n";

  if (r.ols) {
    out << "Least squares on the raw vectors\n";
    out << "  beta_hat = " << JoinNumbers(r.ols->beta_hat, d)
        << "\n  beta0_hat = " << FormatNumber(r.ols->beta0_hat, d) << "\n";
    WriteAnova(out, r.ols->anova, d);
    out << "\n";
  }

  const GeometricSection& g = r.geometric;
  out << "Geometric fit (lengths and angles only)\n";
  out << "  R^2 = " << FormatNumber(g.r_squared, d) << "  F = " << FormatNumber(g.f_stat, d)
      << "  p = " << FormatNumber(g.p_value, d) << "  df = (" << g.df_reg << ", "
      << g.df_res << ")\n";
  out << "  standardized coefficients = " << JoinNumbers(g.standardized_coefficients, d)
      << "\n";
  if (g.beta_hat) {
    out << "  beta_hat = " << JoinNumbers(*g.beta_hat, d) << "\n";
    if (g.beta0_hat) out << "  beta0_hat = " << FormatNumber(*g.beta0_hat, d) << "\n";
    WriteAnova(out, *g.anova, d);
  } else {
    out << "  beta_hat, sums of squares: unavailable (correlation-only input)\n";
  }
  for (const std::string& w : g.warnings) out << "  warning: " << w << "\n";
  out << "\n";

  const SpectralSection& sp = r.spectral;
  out << "Principal components of the design correlation matrix\n";
  char line[256];
  std::snprintf(line, sizeof(line), "  %3s %14s %14s %14s %14s\n", "k", "lambda", "S_k",
                "S_k^2", "(1-lambda)S^2");
  out << line;
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    std::snprintf(line, sizeof(line), "  %3zu %14s %14s %14s %14s\n", k + 1,
                  FormatNumber(sp.eigenvalues[k], d).c_str(),
                  FormatNumber(sp.s_values[k], d).c_str(),
                  FormatNumber(sp.contributions[k], d).c_str(),
                  FormatNumber(sp.enhancement_terms[k], d).c_str());
    out << line;
  }
  for (std::size_t k = 0; k < sp.eigenvectors.size(); ++k) {
    out << "  v" << k + 1 << " = " << JoinNumbers(sp.eigenvectors[k], d) << "\n";
  }
  out << "  sum S_k^2 = " << FormatNumber(sp.r_squared, d)
      << "  sum R_i^2 = " << FormatNumber(sp.sum_squared_correlations, d) << "\n";
  out << "  enhancement difference = " << FormatNumber(sp.enhancement_difference, d)
      << " (direct " << FormatNumber(sp.direct_difference, d) << ")  enhancement: "
      << (sp.enhancement ? "yes" : "no") << "\n";

  if (r.subsets) {
    out << "\nSubsets (sorted by R^2)\n";
    std::snprintf(line, sizeof(line), "  %-40s %14s %14s\n", "variables", "R^2", "difference");
    out << line;
    for (const SubsetRow& row : *r.subsets) {
      std::string vars;
      for (std::size_t i = 0; i < row.variables.size(); ++i) {
        vars += (i ? "," : "") + row.variables[i];
      }
      std::snprintf(line, sizeof(line), "  %-40s %14s %14s\n", vars.c_str(),
                    FormatNumber(row.r_squared, d).c_str(),
                    FormatNumber(row.enhancement_difference, d).c_str());
      out << line;
    }
  }

  if (r.equivalence) {
    const EquivalenceSection& e = *r.equivalence;
    out << "\nPath equivalence (least squares vs geometric)\n";
    out << "  max relative discrepancy = " << FormatNumber(e.max_relative, d)
        << "  tolerance = " << FormatNumber(e.tolerance, d) << "  "
        << (e.passed ? "PASS" : "FAIL") << "\n";
    for (const FieldComparison& f : e.fields) {
      std::snprintf(line, sizeof(line), "  %-14s %16s %16s %12s\n", f.field.c_str(),
                    FormatNumber(f.ols, d).c_str(), FormatNumber(f.geometric, d).c_str(),
                    FormatNumber(f.relative, d).c_str());
      out << line;
    }
  }
  return out.str();
}

}  // namespace georeg::cli
