#pragma once

#include <stdexcept>
#include <string>

namespace kstar {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// lie ------------------------------------------------------------------

/// Structure constant table contradicts antisymmetry (c_ij^k != -c_ji^k,
/// or a nonzero diagonal entry). Indices are 1-based as in the input.
class AntisymmetryViolation : public Error {
public:
  int i, j, k;
  AntisymmetryViolation(int i_, int j_, int k_, const std::string& what)
      : Error(what), i(i_), j(j_), k(k_) {}
};

/// Jacobi identity fails for the triple (i,j,l) in output coordinate m.
class JacobiViolation : public Error {
public:
  int i, j, l, m;
  std::string residual;
  JacobiViolation(int i_, int j_, int l_, int m_, std::string residual_,
                  const std::string& what)
      : Error(what), i(i_), j(j_), l(l_), m(m_), residual(std::move(residual_)) {}
};

// exactalg -------------------------------------------------------------

class NonzeroConstantTerm : public Error {
public:
  using Error::Error;
};

class NonUnipotentConstantTerm : public Error {
public:
  using Error::Error;
};

class InsufficientTruncationOrder : public Error {
public:
  using Error::Error;
};

class SeriesInversionFailure : public Error {
public:
  using Error::Error;
};

// graphs ----------------------------------------------------------------

class SizeLimitExceeded : public Error {
public:
  using Error::Error;
};

// envelope ---------------------------------------------------------------

class SingularTriangularSystem : public Error {
public:
  using Error::Error;
};

// star --------------------------------------------------------------------

class NotInvariant : public Error {
public:
  using Error::Error;
};

class InconsistentSystem : public Error {
public:
  using Error::Error;
};

// io ------------------------------------------------------------------

/// Malformed input text (algebra file, polynomial, cone literal, record line).
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace kstar
