// Command-line front end: parses arguments, runs one subcommand and writes
// its artifact (CSV, JSON or SVG) to --out or the given stream.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qnr/qmatrix.hpp"

namespace qnr::cli {

/// Exit codes: 0 success, 1 a verified property failed, 2 malformed input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// {"n": int, "entries": [[[a0,a1,a2,a3], ...], ...]}, row-major. Throws
/// std::invalid_argument on any schema violation.
QMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const QMatrix& a);

}  // namespace qnr::cli
