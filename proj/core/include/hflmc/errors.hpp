#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hflmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class KindError : public Error {
 public:
  using Error::Error;
};

/// A semantic domain whose analytic size exceeds the configured cap.
class DomainTooLarge : public Error {
 public:
  DomainTooLarge(double count, const std::string& what)
      : Error("domain too large (" + what + ", ~" + std::to_string(static_cast<long double>(count)) + " elements)"),
        count_(count) {}
  [[nodiscard]] double count() const { return count_; }

 private:
  double count_;
};

class TooManyTypes : public Error {
 public:
  TooManyTypes(double count, const std::string& what)
      : Error("too many refinement types (" + what + ", ~" + std::to_string(static_cast<long double>(count)) + ")"),
        count_(count) {}
  [[nodiscard]] double count() const { return count_; }

 private:
  double count_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace hflmc
