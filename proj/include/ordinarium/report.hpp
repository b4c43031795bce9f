#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordinarium/error.hpp"

#ifndef ORDINARIUM_VERSION
#define ORDINARIUM_VERSION "0.0.0"
#endif

namespace ordinarium {

inline constexpr const char* kVersion = ORDINARIUM_VERSION;

/// Comma-separated table with a header row and LF line endings.  Cells with
/// a comma, quote or newline are quoted; everything else is written as is.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) {
    require(row.size() == header_.size(), "CSV row width does not match the header");
    rows_.push_back(std::move(row));
  }
  std::size_t size() const { return rows_.size(); }

  /// Table followed by a "# {json}" footer line.
  std::string str(const nlohmann::json& footer) const {
    std::ostringstream os;
    write_row(os, header_);
    for (const auto& r : rows_) write_row(os, r);
    os << "# " << footer.dump() << '\n';
    return os.str();
  }

 private:
  static void write_row(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        os << c;
        continue;
      }
      os << '"';
      for (char ch : c) {
        if (ch == '"') os << '"';
        os << ch;
      }
      os << '"';
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Footer object: toolkit version, command and the effective configuration.
inline nlohmann::json report_footer(const std::string& command, const nlohmann::json& config) {
  return {{"tool", "ordinarium"}, {"version", kVersion}, {"command", command}, {"config", config}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write " + path);
  out << content;
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace ordinarium
