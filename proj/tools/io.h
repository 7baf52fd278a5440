#ifndef GEOREG_TOOLS_IO_H_
#define GEOREG_TOOLS_IO_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "georeg/linalg.h"

namespace georeg::cli {

// Numeric table read from CSV: one named column per header field.
struct Dataset {
  std::vector<std::string> names;
  std::vector<Vector> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  // Column index for `name`; kParse error naming the column when absent.
  std::size_t IndexOf(const std::string& name) const;
};

// Comma-separated, '.' decimal, header row first, '#' lines and blank lines
// ignored. Empty or non-numeric fields are errors carrying the line number.
Dataset ReadCsv(std::istream& in);
Dataset ReadCsvFile(const std::string& path);

// Θ and Ω (response first) with sample size and optional lengths.
struct CorrelationInput {
  std::optional<std::size_t> n;
  std::optional<double> y_norm;
  std::optional<std::vector<double>> x_norms;
  std::vector<std::string> names;  // response first; may be empty
  // Response-first bordered matrix, not yet validated.
  Matrix phi;

  std::size_t m() const { return phi.rows() == 0 ? 0 : phi.rows() - 1; }
};

// Text layout:
//   n <count>
//   norms <|y|> <|x1|> ... <|xm|>      (optional)
//   names <y> <x1> ... <xm>            (optional)
//   then either the Ω row followed by the m rows of Θ, or the m+1 rows of Φ.
// Entries are separated by whitespace and/or commas.
CorrelationInput ParseCorrelationText(std::istream& in);

// {"n": 53, "omega": [...], "theta": [[...]], "y_norm": ..., "x_norms": [...],
//  "names": [...]}  or  {"n": 53, "phi": [[...]]}.
CorrelationInput ParseCorrelationJson(const std::string& text);

// Dispatches on the first non-blank character ('{' means JSON).
CorrelationInput ReadCorrelationFile(const std::string& path);

}  // namespace georeg::cli

#endif  // GEOREG_TOOLS_IO_H_
