#pragma once

#include <stdexcept>
#include <string>

namespace gts {

// Base class for all library errors. Every failure mode a caller may want to
// distinguish gets its own subclass; payload fields carry the offending
// location where one exists.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (CSV, labels, JSON). `line` is 1-based within the file,
// counting a header row if present; 0 means "not line-addressable".
class ParseError : public Error {
public:
  ParseError(const std::string& msg, long line = 0) : Error(msg), line(line) {}
  long line;
};

class TooFewObservations : public Error {
public:
  using Error::Error;
};

class LabelCardinalityError : public Error {
public:
  using Error::Error;
};

class LengthMismatch : public Error {
public:
  using Error::Error;
};

class AsymmetryError : public Error {
public:
  AsymmetryError(const std::string& msg, int i, int j) : Error(msg), i(i), j(j) {}
  int i, j;
};

class NegativeDistance : public Error {
public:
  NegativeDistance(const std::string& msg, int i, int j) : Error(msg), i(i), j(j) {}
  int i, j;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

// Graph construction round `round` (1-based) could not be completed.
class InfeasibleK : public Error {
public:
  InfeasibleK(const std::string& msg, int round) : Error(msg), round(round) {}
  int round;
};

class SingularCovariance : public Error {
public:
  using Error::Error;
};

class DegenerateGraph : public Error {
public:
  using Error::Error;
};

// A permutation replicate could not be scored (e.g. a group covariance became
// singular under a permuted labeling).
class CalibrationError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace gts
