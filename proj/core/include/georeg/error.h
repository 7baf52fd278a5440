#ifndef GEOREG_ERROR_H_
#define GEOREG_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace georeg {

enum class ErrorCode {
  kDimension,
  kDegenerateVector,
  kSingularMatrix,
  kDegenerateVariable,
  kCollinearity,
  kInsufficientData,
  kInvalidCorrelation,
  kShape,
  kMissingNorms,
  kMissingData,
  kNoExplanatory,
  kEmptySubset,
  kDomain,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as georeg::Error. `index()` carries the
// offending pivot / column / line when one is meaningful for the code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(message), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace georeg

#endif  // GEOREG_ERROR_H_
