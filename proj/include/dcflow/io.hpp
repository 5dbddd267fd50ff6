#pragma once

// CSV / text serialisation. Floats are written as the shortest decimal
// string that reads back to the same binary64 value.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "dcflow/convergence.hpp"
#include "dcflow/solver.hpp"

namespace dcflow::io {

std::string format_double(double value);

void write_profile_csv(std::ostream& out, const MeshProfile& profile);
void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots);
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);
void write_stability_report(std::ostream& out, const StabilityReport& report);

/// Fixed-width table (delta_u, log2 error, rate) for terminals.
std::string format_convergence_table(const ConvergenceReport& report);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dcflow::io
