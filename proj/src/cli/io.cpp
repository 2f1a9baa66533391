#include "gslab/cli/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab::cli {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw Error(Errc::SchemaMismatch, "malformed number for " + what + ": '" + text + "'");
  return v;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string profile_csv(const RadialProfile& profile) {
  const Params& P = profile.params();
  std::ostringstream os;
  os << "# schema=" << kSchema << '\n';
  os << "# N=" << P.dim << '\n';
  os << "# gamma=" << format_number(P.gamma) << '\n';
  os << "# alpha=" << format_number(P.alpha) << '\n';
  os << "# omega=" << format_number(P.omega) << '\n';
  os << "# p=" << format_number(P.p) << '\n';
  if (P.omega0) os << "# omega0=" << format_number(*P.omega0) << '\n';
  os << "# phi0=" << format_number(profile.phi0()) << '\n';
  const auto& tail = profile.tail();
  os << "# tail_rate=" << (tail ? format_number(tail->rate) : "none") << '\n';
  os << "# tail_amp=" << (tail ? format_number(tail->amplitude) : "none") << '\n';
  os << "r,phi,dphi\n";
  const auto r = profile.grid(), v = profile.values(), d = profile.derivs();
  for (std::size_t i = 0; i < r.size(); ++i)
    os << format_number(r[i]) << ',' << format_number(v[i]) << ',' << format_number(d[i]) << '\n';
  return os.str();
}

void save_profile(const std::string& path, const RadialProfile& profile) { write_text(path, profile_csv(profile)); }

RadialProfile parse_profile_csv(std::istream& in) {
  std::map<std::string, std::string> meta;
  std::vector<double> r, v, d;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(Errc::SchemaMismatch, "metadata line without '=': " + line);
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      meta[key] = line.substr(eq + 1);
      continue;
    }
    if (!header_seen) {
      if (line != "r,phi,dphi") throw Error(Errc::SchemaMismatch, "expected column header r,phi,dphi");
      header_seen = true;
      continue;
    }
    std::stringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      throw Error(Errc::SchemaMismatch, "row needs three columns: " + line);
    r.push_back(parse_number(a, "r"));
    v.push_back(parse_number(b, "phi"));
    d.push_back(parse_number(c, "dphi"));
  }
  if (!header_seen) throw Error(Errc::SchemaMismatch, "missing column header");

  for (const char* key : {"N", "gamma", "alpha", "omega", "p", "phi0", "tail_rate", "tail_amp"})
    if (!meta.count(key)) throw Error(Errc::SchemaMismatch, std::string("missing metadata key ") + key);
  if (meta.count("schema") && meta["schema"] != kSchema)
    throw Error(Errc::SchemaMismatch, "unsupported schema " + meta["schema"]);

  const double dim = parse_number(meta["N"], "N");
  if (dim != std::floor(dim) || dim < 1) throw Error(Errc::SchemaMismatch, "N must be a positive integer");
  Params P = Params::unchecked(static_cast<int>(dim), parse_number(meta["gamma"], "gamma"),
                               parse_number(meta["alpha"], "alpha"), parse_number(meta["omega"], "omega"),
                               parse_number(meta["p"], "p"));
  if (meta.count("omega0")) P.omega0 = parse_number(meta["omega0"], "omega0");
  std::optional<ExpTail> tail;
  if (meta["tail_rate"] != "none" || meta["tail_amp"] != "none")
    tail = ExpTail{parse_number(meta["tail_amp"], "tail_amp"), parse_number(meta["tail_rate"], "tail_rate")};
  const double phi0 = parse_number(meta["phi0"], "phi0");

  if (r.size() < 2) throw Error(Errc::InvariantViolation, "profile needs at least two samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) throw Error(Errc::InvariantViolation, "grid must be positive");
    if (i > 0 && !(r[i] > r[i - 1])) throw Error(Errc::InvariantViolation, "grid must be strictly increasing");
  }
  RadialProfile profile(P, std::move(r), std::move(v), std::move(d), phi0, tail);
  profile.check_ground_state();
  return profile;
}

RadialProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot open profile " + path);
  return parse_profile_csv(in);
}

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(Errc::IoFailure, "cannot write " + path);
  out << content;
  if (!out) throw Error(Errc::IoFailure, "write failed for " + path);
}

}  // namespace gslab::cli
