#pragma once

#include <map>
#include <string>
#include <vector>

#include "muskat/diagnostics.hpp"
#include "muskat/evolve.hpp"
#include "muskat/turnover.hpp"

namespace muskat {

// 17-significant-digit decimal form; round-trips IEEE doubles exactly.
std::string format_double(double x);

// ---- snapshot files ----
// Header "# t=<t> problem=<kind> n=<nodes>", one row per node:
// "alpha value1 [value2]".
struct SnapshotData {
  double t = 0.0;
  std::string problem;
  std::vector<double> alpha;
  std::vector<double> col1;
  std::vector<double> col2;  // empty when the problem has one column
};
void write_snapshot(const std::string& path, const SnapshotData& snap);
SnapshotData read_snapshot(const std::string& path);

SnapshotData snapshot_of(double t, const TwoPhaseState& s);
SnapshotData snapshot_of(double t, const GraphInterface& s);
SnapshotData snapshot_of(double t, const RealLineGraph& s);
SnapshotData snapshot_of(double t, const Curve& s);  // columns z1, z2

Curve curve_from_snapshot(const SnapshotData& snap, double delta_rho = 4.0 * kPi);

// ---- telemetry ----
void write_telemetry(const std::string& path, const std::vector<StepRecord>& records);
std::vector<StepRecord> read_telemetry(const std::string& path);

// ---- structured text documents (key: value, nested by indentation) ----
struct DocNode {
  std::string key;
  std::string value;  // empty for section headers
  std::vector<DocNode> children;
};
struct Document {
  std::vector<DocNode> nodes;
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long value);
  DocNode& section(const std::string& key);
  const DocNode* find(const std::string& key) const;
};
void write_document(const std::string& path, const Document& doc);
Document read_document(const std::string& path);

Document certificate_document(const TurnoverCertificate& cert);
TurnoverCertificate certificate_from_document(const Document& doc);
Document report_document(const std::vector<DiagnosticReport>& reports);

// ---- key = value config files ----
// '#' starts a comment; keys and values are trimmed. Parse errors carry the
// line number and offending text.
std::map<std::string, std::string> read_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin);

// ---- digests ----
std::string fnv1a_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace muskat
