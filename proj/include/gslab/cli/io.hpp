#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gslab/cli/config.hpp"
#include "gslab/profile.hpp"

namespace gslab::cli {

inline constexpr const char* kSchema = "gslab/1";

// Shortest decimal that reads back to the same double.
std::string format_number(double x);

// Profile CSV: "# key=value" metadata lines (schema, N, gamma, alpha, omega,
// p, phi0, tail_rate, tail_amp and omega0 when known), a column header, then
// rows r,phi,dphi.
std::string profile_csv(const RadialProfile& profile);
void save_profile(const std::string& path, const RadialProfile& profile);

// Throws SchemaMismatch for missing or malformed metadata and
// InvariantViolation when the samples do not form a ground state.
RadialProfile parse_profile_csv(std::istream& in);
RadialProfile load_profile(const std::string& path);

// Plain CSV table with a header row.
std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

std::string dump_json(const Json& j);

// Creates parent directories; throws IoFailure.
void write_text(const std::string& path, const std::string& content);

}  // namespace gslab::cli
