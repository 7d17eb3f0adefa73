#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mapf {

// Root of every exception thrown by the library. Solvers never throw for
// search outcomes (timeouts, unsolvable instances); those are status values.
class MapfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundsError : public MapfError {
 public:
  using MapfError::MapfError;
};

class DomainError : public MapfError {
 public:
  using MapfError::MapfError;
};

class InstanceError : public MapfError {
 public:
  using MapfError::MapfError;
};

class GridMismatchError : public MapfError {
 public:
  using MapfError::MapfError;
};

class ShapeError : public MapfError {
 public:
  using MapfError::MapfError;
};

class CapacityError : public MapfError {
 public:
  using MapfError::MapfError;
};

class IoError : public MapfError {
 public:
  using MapfError::MapfError;
};

class ParseError : public MapfError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : MapfError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mapf
