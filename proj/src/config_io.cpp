#include "mms/config_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace mms {

ConfigParseError::ConfigParseError(int line, const std::string& message)
    : ParseError("line " + std::to_string(line) + ": " + message), line_(line) {}

Configuration read_configuration(std::istream& in) {
  std::vector<Rational> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      values.push_back(parse_rational(line));
    } catch (const ParseError& e) {
      throw ConfigParseError(line_no, e.what());
    }
  }
  if (values.empty()) throw ConfigParseError(line_no, "configuration has no values");
  return Configuration(std::move(values));
}

Configuration read_configuration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError(0, "cannot open " + path.string());
  return read_configuration(in);
}

void write_configuration(std::ostream& out, const Configuration& config) {
  for (const auto& v : config.values()) out << to_string(v) << '\n';
}

void write_configuration(const std::filesystem::path& path, const Configuration& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_configuration(out, config);
}

}  // namespace mms
