// Minimal CSV emission shared by the report writers.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fock::csv {

/// Shortest round-trip representation ("%.17g"); "nan"/"inf" for non-finite values.
std::string num(double v);
std::string num(int v);

/// Writes one row, quoting fields that contain a comma, quote or newline.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace fock::csv
