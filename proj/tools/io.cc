#include "io.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "georeg/error.h"
#include "georeg/summary.h"

namespace georeg::cli {

namespace {

using nlohmann::json;

std::string Trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::string Unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(Trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(Trim(current));
  return fields;
}

std::optional<double> ParseNumber(const std::string& token) {
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

Error ParseError(std::size_t line, const std::string& message) {
  return Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message, line);
}

bool SkippableLine(const std::string& trimmed) {
  return trimmed.empty() || trimmed.front() == '#';
}

std::string StripBom(std::string line) {
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
      static_cast<unsigned char>(line[1]) == 0xBB &&
      static_cast<unsigned char>(line[2]) == 0xBF) {
    return line.substr(3);
  }
  return line;
}

std::vector<std::string> SplitTokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::size_t ParseCount(const std::string& token, std::size_t line) {
  const std::optional<double> v = ParseNumber(token);
  if (!v || *v < 1.0 || std::floor(*v) != *v) {
    throw ParseError(line, "sample size must be a positive integer, got '" + token + "'");
  }
  return static_cast<std::size_t>(*v);
}

CorrelationInput FromRows(std::vector<std::vector<double>> rows,
                          const std::vector<std::size_t>& row_lines,
                          CorrelationInput input) {
  if (rows.empty()) throw Error(ErrorCode::kParse, "no correlation rows found");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw ParseError(row_lines.empty() ? r + 1 : row_lines[r],
                       "expected " + std::to_string(width) + " entries, found " +
                           std::to_string(rows[r].size()));
    }
  }
  if (rows.size() == width) {
    if (width < 2) throw Error(ErrorCode::kNoExplanatory, "correlation matrix is 1x1");
    input.phi = Matrix::FromRows(rows);
  } else if (rows.size() == width + 1) {
    const Vector omega(rows.front());
    rows.erase(rows.begin());
    input.phi = AssembleCorrelation(omega, Matrix::FromRows(rows));
  } else {
    throw Error(ErrorCode::kParse,
                "expected either m+1 rows of m+1 entries (full matrix) or one row of m "
                "followed by m rows of m; found " +
                    std::to_string(rows.size()) + " rows of " + std::to_string(width));
  }
  if (input.x_norms && input.x_norms->size() != input.m()) {
    throw Error(ErrorCode::kDimension, "norms line lists " +
                                           std::to_string(input.x_norms->size()) +
                                           " explanatory lengths for " +
                                           std::to_string(input.m()) + " variables");
  }
  if (!input.names.empty() && input.names.size() != input.m() + 1) {
    throw Error(ErrorCode::kDimension, "names must list the response and each of the " +
                                           std::to_string(input.m()) +
                                           " explanatory variables");
  }
  return input;
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::size_t Dataset::IndexOf(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw Error(ErrorCode::kParse, "no column named '" + name + "'");
}

Dataset ReadCsv(std::istream& in) {
  Dataset data;
  std::vector<std::vector<double>> values;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) line = StripBom(line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (SkippableLine(Trim(line))) continue;
    std::vector<std::string> fields = SplitCsv(line);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string name = Unquote(fields[i]);
        if (name.empty()) {
          throw ParseError(line_no, "header field " + std::to_string(i + 1) + " is empty");
        }
        for (const std::string& existing : data.names) {
          if (existing == name) throw ParseError(line_no, "duplicate column '" + name + "'");
        }
        data.names.push_back(std::move(name));
      }
      values.resize(data.names.size());
      have_header = true;
      continue;
    }
    if (fields.size() != data.names.size()) {
      throw ParseError(line_no, "expected " + std::to_string(data.names.size()) +
                                    " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        throw ParseError(line_no, "missing value in column '" + data.names[i] + "'");
      }
      const std::optional<double> v = ParseNumber(fields[i]);
      if (!v) {
        throw ParseError(line_no, "non-numeric value '" + fields[i] + "' in column '" +
                                      data.names[i] + "'");
      }
      values[i].push_back(*v);
    }
  }
  if (!have_header) throw Error(ErrorCode::kParse, "input has no header row");
  if (values.empty() || values.front().empty()) {
    throw Error(ErrorCode::kParse, "input has no data rows");
  }
  for (auto& column : values) data.columns.emplace_back(std::move(column));
  return data;
}

Dataset ReadCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  return ReadCsv(in);
}

CorrelationInput ParseCorrelationText(std::istream& in) {
  CorrelationInput input;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (SkippableLine(trimmed)) continue;
    std::vector<std::string> tokens = SplitTokens(trimmed);
    const std::string& head = tokens.front();
    if (head == "n") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'n <count>'");
      input.n = ParseCount(tokens[1], line_no);
    } else if (head == "norms") {
      if (tokens.size() < 3) {
        throw ParseError(line_no, "expected 'norms <response> <x1> ... <xm>'");
      }
      std::vector<double> norms;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::optional<double> v = ParseNumber(tokens[i]);
        if (!v) throw ParseError(line_no, "non-numeric length '" + tokens[i] + "'");
        norms.push_back(*v);
      }
      input.y_norm = norms.front();
      input.x_norms = std::vector<double>(norms.begin() + 1, norms.end());
    } else if (head == "names") {
      input.names.assign(tokens.begin() + 1, tokens.end());
    } else {
      std::vector<double> row;
      for (const std::string& token : tokens) {
        const std::optional<double> v = ParseNumber(token);
        if (!v) throw ParseError(line_no, "non-numeric entry '" + token + "'");
        row.push_back(*v);
      }
      rows.push_back(std::move(row));
      row_lines.push_back(line_no);
    }
  }
  return FromRows(std::move(rows), row_lines, std::move(input));
}

CorrelationInput ParseCorrelationJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "correlation JSON must be an object");

  try {
    CorrelationInput input;
    if (doc.contains("n")) {
      const json& n = doc.at("n");
      if (!n.is_number_integer() || n.get<long long>() < 1) {
        throw Error(ErrorCode::kParse, "\"n\" must be a positive integer");
      }
      input.n = n.get<std::size_t>();
    }
    if (doc.contains("y_norm") != doc.contains("x_norms")) {
      throw Error(ErrorCode::kParse, "\"y_norm\" and \"x_norms\" must be given together");
    }
    if (doc.contains("y_norm")) {
      input.y_norm = doc.at("y_norm").get<double>();
      input.x_norms = doc.at("x_norms").get<std::vector<double>>();
    }
    if (doc.contains("names")) input.names = doc.at("names").get<std::vector<std::string>>();

    std::vector<std::vector<double>> rows;
    if (doc.contains("phi")) {
      if (doc.contains("omega") || doc.contains("theta")) {
        throw Error(ErrorCode::kParse, "give either \"phi\" or \"omega\"/\"theta\", not both");
      }
      rows = doc.at("phi").get<std::vector<std::vector<double>>>();
    } else {
      if (!doc.contains("omega") || !doc.contains("theta")) {
        throw Error(ErrorCode::kParse, "missing \"omega\" and \"theta\" (or \"phi\")");
      }
      rows.push_back(doc.at("omega").get<std::vector<double>>());
      for (auto& row : doc.at("theta").get<std::vector<std::vector<double>>>()) {
        rows.push_back(std::move(row));
      }
      if (rows.size() != rows.front().size() + 1) {
        throw Error(ErrorCode::kShape, "\"theta\" must have one row per \"omega\" entry");
      }
    }
    return FromRows(std::move(rows), {}, std::move(input));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed correlation JSON: ") + e.what());
  }
}

CorrelationInput ReadCorrelationFile(const std::string& path) {
  const std::string text = ReadAll(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return ParseCorrelationJson(text);
  std::istringstream in(text);
  return ParseCorrelationText(in);
}

}  // namespace georeg::cli
