#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surgery/obstruction.hpp"

namespace surgery::report {

/// FNV-1a 64-bit digest as a 16-hex-digit string.
std::string fnv1a64_hex(const std::string& bytes);

/// One report as a single JSON line (no trailing newline). Deterministic:
/// fixed key order, rationals as "n/d" strings.
std::string to_json_line(const obstruction::ObstructionReport& rep);

/// Inverse of to_json_line (tolerates exactly its output). Domain error on
/// malformed input.
obstruction::ObstructionReport from_json_line(const std::string& line);

inline constexpr const char* kCsvHeader = "p,q,m,k,N0,N1,N2,N3,verdict,reason";

/// CSV rows for one report. Surviving/refuted N-stage candidates produce one
/// row per distinct integral (N0..N3) profile across the odd-j branches;
/// everything else produces a single row with empty N columns.
std::vector<std::string> to_csv_rows(const obstruction::ObstructionReport& rep);

/// Human-oriented multi-line rendering of one report.
std::string to_text(const obstruction::ObstructionReport& rep);

/// Run manifest: command, parameters, tool version and output digest.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version;
  std::string output_digest;
};
std::string manifest_json(const RunManifest& m);

}  // namespace surgery::report
