#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vem {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coordinates or other unusable geometry.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// A mesh failed validation; carries the offending element when known.
class MeshError : public Error {
public:
  static constexpr std::size_t no_element = static_cast<std::size_t>(-1);

  explicit MeshError(const std::string& what, std::size_t element = no_element)
      : Error(what), element_(element) {}

  std::size_t element() const noexcept { return element_; }

private:
  std::size_t element_;
};

/// Local matrices could not be built for an element.
class AssemblyError : public Error {
public:
  AssemblyError(const std::string& what, std::size_t element)
      : Error("element " + std::to_string(element) + ": " + what), element_(element) {}

  std::size_t element() const noexcept { return element_; }

private:
  std::size_t element_;
};

/// Singular system, breakdown or non-convergence of the linear solver.
class SolverError : public Error {
public:
  using Error::Error;
};

/// Malformed mesh file; line is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Error measurement requested on a problem that cannot support it.
class AnalysisError : public Error {
public:
  using Error::Error;
};

}  // namespace vem
