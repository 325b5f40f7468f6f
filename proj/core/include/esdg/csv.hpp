#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "esdg/error.hpp"

namespace esdg {

/// Minimal CSV emitter: header row on open, one row per call, reals printed
/// with a fixed number of significant digits (17 for 64-bit runs).
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& header,
            int digits = 17)
      : out_(path), digits_(digits) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
    out_ << header << "\n";
  }

  template <class... Ts>
  void row(const Ts&... fields) {
    std::ostringstream line;
    line.precision(digits_);
    bool first = true;
    ((line << (first ? (first = false, "") : ",") << fields), ...);
    out_ << line.str() << "\n";
    if (!out_) throw IoError("write failure on CSV output");
  }

private:
  std::ofstream out_;
  int digits_;
};

} // namespace esdg
