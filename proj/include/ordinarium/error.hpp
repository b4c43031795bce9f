#pragma once

#include <stdexcept>
#include <string>

namespace ordinarium {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected before any work is done.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Enumeration or point-count budget exceeded; the message names the bound.
class BudgetError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Supplied or computed data is internally inconsistent (non-integral
// Newton recursion, non-integral Eichler-Shimura expansion, Ramanujan
// violation on ingest, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Two independent routes to the same answer disagree.  Always a bug.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace ordinarium
