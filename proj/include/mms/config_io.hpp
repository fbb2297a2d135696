#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mms/numerics.hpp"

namespace mms {

// Raised for malformed configuration text; carries the offending line.
class ConfigParseError : public ParseError {
 public:
  ConfigParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// One rational per line ("p" or "p/q"); blank lines and '#' comments are
// ignored; order does not matter.
Configuration read_configuration(std::istream& in);
Configuration read_configuration(const std::filesystem::path& path);

void write_configuration(std::ostream& out, const Configuration& config);
void write_configuration(const std::filesystem::path& path, const Configuration& config);

}  // namespace mms
