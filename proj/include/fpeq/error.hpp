#ifndef FPEQ_ERROR_HPP
#define FPEQ_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fpeq {

/** Base class for all toolkit errors. */
class Error : public std::runtime_error
{
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Violated operand/value precondition (e.g. non-normalized input). */
class DomainError : public Error
{
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/** Invalid configuration (format bounds, mode ceilings, flag conflicts). */
class ConfigError : public Error
{
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/** Syntax or elaboration error in a property file, with source position. */
class ParseError : public Error
{
 public:
  ParseError(uint32_t line, uint32_t col, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col)
              + ": " + msg),
        d_line(line),
        d_col(col)
  {
  }

  uint32_t line() const { return d_line; }
  uint32_t col() const { return d_col; }

 private:
  uint32_t d_line;
  uint32_t d_col;
};

}  // namespace fpeq

#endif
