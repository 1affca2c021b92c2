#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace compdof {

// All user, transmitter and receiver indices are 1-based.
using Index = int;

// Sorted, duplicate-free list of indices.
using IndexSet = std::vector<Index>;

using Complex = std::complex<double>;

inline IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const IndexSet& s, Index x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const IndexSet& sub, const IndexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// {lo, ..., hi}; empty when lo > hi.
inline IndexSet index_range(Index lo, Index hi) {
  IndexSet out;
  for (Index i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimensions : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, std::string field = {})
      : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& what, int line, const std::string& field) {
    std::string msg = "parse error";
    if (line > 0) msg += " at line " + std::to_string(line);
    if (!field.empty()) msg += " in field '" + field + "'";
    return msg + ": " + what;
  }

  int line_;
  std::string field_;
};

// Zero-forcing beam cannot satisfy its cancellation constraints with a
// usable gain at the intended receiver.
class Infeasible : public Error {
 public:
  Infeasible(Index message, const std::string& why)
      : Error("message " + std::to_string(message) + " infeasible: " + why), message_(message) {}

  Index message() const { return message_; }

 private:
  Index message_;
};

// Intended receiver hears none of the transmitters in the transmit set.
class Disconnected : public Error {
 public:
  explicit Disconnected(Index message)
      : Error("receiver " + std::to_string(message) + " is not connected to its transmit set"),
        message_(message) {}

  Index message() const { return message_; }

 private:
  Index message_;
};

}  // namespace compdof
