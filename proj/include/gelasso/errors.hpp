#pragma once

#include <stdexcept>
#include <string>

namespace gelasso {

// Base for everything thrown by the library. CLI maps InputError -> exit 1
// and NumericalError -> exit 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

struct TooFewRows : InputError {
  using InputError::InputError;
};

struct ZeroVariance : InputError {
  explicit ZeroVariance(int col)
      : InputError("column " + std::to_string(col) + " has zero variance"),
        column(col) {}
  int column;
};

struct RhoOutOfRange : InputError {
  using InputError::InputError;
};

struct DegenerateTable : NumericalError {
  explicit DegenerateTable(int i = -1, int j = -1)
      : NumericalError(
            i < 0 ? std::string("degenerate contingency table: a variable is "
                                "constant, correlation undefined")
                  : "degenerate contingency table for columns (" +
                        std::to_string(i) + ", " + std::to_string(j) +
                        "): a variable is constant"),
        col_i(i),
        col_j(j) {}
  int col_i;
  int col_j;
};

struct NonPDInput : NumericalError {
  using NumericalError::NumericalError;
};

struct NonPositiveDiagonal : NumericalError {
  using NumericalError::NumericalError;
};

struct NotPD : NumericalError {
  explicit NotPD(double min_eig)
      : NumericalError("matrix is not positive definite (min eigenvalue " +
                       std::to_string(min_eig) + ")"),
        min_eigenvalue(min_eig) {}
  double min_eigenvalue;
};

struct AllZeroCorrelations : NumericalError {
  AllZeroCorrelations()
      : NumericalError("all off-diagonal correlations are zero; the empty "
                       "network is the only candidate") {}
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

struct NoTrueEdges : NumericalError {
  NoTrueEdges() : NumericalError("true network has no edges; sensitivity undefined") {}
};

struct NoTrueNonEdges : NumericalError {
  NoTrueNonEdges()
      : NumericalError("true network is fully connected; specificity undefined") {}
};

struct NotRepairable : NumericalError {
  using NumericalError::NumericalError;
};

struct GenerationFailed : NumericalError {
  using NumericalError::NumericalError;
};

struct EmptyInput : InputError {
  using InputError::InputError;
};

}  // namespace gelasso
