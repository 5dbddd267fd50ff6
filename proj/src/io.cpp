#include "dcflow/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dcflow::io {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) {
    // Not reachable for binary64 with a 64-byte buffer; keep a lossless fallback.
    std::snprintf(buf.data(), buf.size(), "%.17g", value);
    return buf.data();
  }
  return {buf.data(), ptr};
}

void write_profile_csv(std::ostream& out, const MeshProfile& profile) {
  out << "u,h\n";
  for (int k = 0; k <= profile.n(); ++k) {
    out << format_double(profile.grid().node(k)) << ',' << format_double(profile[k]) << '\n';
  }
}

void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots) {
  out << "t,u,h\n";
  for (const auto& snap : snapshots) {
    const std::string t = format_double(snap.t);
    for (int k = 0; k <= snap.profile.n(); ++k) {
      out << t << ',' << format_double(snap.profile.grid().node(k)) << ','
          << format_double(snap.profile[k]) << '\n';
    }
  }
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "t,sup_h,sup_dplus,length,area\n";
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.sup_h) << ','
        << format_double(r.sup_dplus) << ',' << format_double(r.length) << ','
        << format_double(r.area) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "level,n,delta_u,log2_linf_error,rate\n";
  for (const auto& row : report.rows) {
    out << row.level << ',' << row.n << ',' << format_double(row.delta_u) << ',';
    if (row.log2_linf_error) out << format_double(*row.log2_linf_error);
    out << ',';
    if (row.rate) out << format_double(*row.rate);
    out << '\n';
  }
}

void write_stability_report(std::ostream& out, const StabilityReport& report) {
  for (const Condition* c : report.all()) {
    out << c->name << ',';
    if (!c->evaluated) {
      out << "NOT-EVALUATED,\n";
      continue;
    }
    out << (c->ok ? "PASS" : "FAIL") << ',' << format_double(c->margin) << '\n';
  }
}

std::string format_convergence_table(const ConvergenceReport& report) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%6s %8s %16s %14s %10s\n", "level", "n", "delta_u",
                "log2 L-inf err", "rate");
  out << line;
  for (const auto& row : report.rows) {
    char err[32] = "";
    char rate[32] = "";
    if (row.log2_linf_error) std::snprintf(err, sizeof err, "%.6f", *row.log2_linf_error);
    if (row.rate) std::snprintf(rate, sizeof rate, "%.4f", *row.rate);
    std::snprintf(line, sizeof line, "%6d %8d %16.12g %14s %10s\n", row.level, row.n, row.delta_u,
                  row.log2_linf_error ? err : "(reference)", rate);
    out << line;
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace dcflow::io
