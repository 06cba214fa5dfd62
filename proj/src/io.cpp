#include "muskat/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "muskat/errors.hpp"

namespace muskat {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("cannot parse number '" + s + "' in " + context);
  }
}

}  // namespace

void write_snapshot(const std::string& path, const SnapshotData& snap) {
  std::ostringstream os;
  os << "# t=" << format_double(snap.t) << " problem=" << snap.problem
     << " n=" << snap.alpha.size() << "\n";
  const bool two = !snap.col2.empty();
  for (std::size_t i = 0; i < snap.alpha.size(); ++i) {
    os << format_double(snap.alpha[i]) << ' ' << format_double(snap.col1[i]);
    if (two) os << ' ' << format_double(snap.col2[i]);
    os << '\n';
  }
  write_text_file(path, os.str());
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open snapshot file " + path);
  SnapshotData snap;
  std::string header;
  if (!std::getline(in, header) || header.rfind("# ", 0) != 0) {
    throw IoError("snapshot " + path + " is missing its header line");
  }
  std::istringstream hs(header.substr(2));
  std::string token;
  std::size_t n_declared = 0;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "t") {
      snap.t = parse_double(value, path);
    } else if (key == "problem") {
      snap.problem = value;
    } else if (key == "n") {
      n_declared = static_cast<std::size_t>(std::stoul(value));
    }
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string cell;
    while (ls >> cell) row.push_back(parse_double(cell, path));
    if (row.size() < 2 || row.size() > 3) {
      throw IoError("snapshot " + path + ": row with " + std::to_string(row.size()) +
                    " columns");
    }
    snap.alpha.push_back(row[0]);
    snap.col1.push_back(row[1]);
    if (row.size() == 3) snap.col2.push_back(row[2]);
  }
  if (!snap.col2.empty() && snap.col2.size() != snap.alpha.size()) {
    throw IoError("snapshot " + path + ": inconsistent column counts");
  }
  if (n_declared != 0 && n_declared != snap.alpha.size()) {
    throw IoError("snapshot " + path + ": header n does not match row count");
  }
  return snap;
}

SnapshotData snapshot_of(double t, const TwoPhaseState& s) {
  SnapshotData snap;
  snap.t = t;
  snap.problem = "two-phase";
  snap.alpha = s.grid().alphas();
  snap.col1 = s.f.f.values();
  snap.col2 = s.g.f.values();
  return snap;
}

SnapshotData snapshot_of(double t, const GraphInterface& s) {
  SnapshotData snap;
  snap.t = t;
  snap.problem = "periodic-graph";
  snap.alpha = s.grid().alphas();
  snap.col1 = s.f.values();
  return snap;
}

SnapshotData snapshot_of(double t, const RealLineGraph& s) {
  SnapshotData snap;
  snap.t = t;
  snap.problem = "graph-realline";
  snap.alpha = s.x;
  snap.col1 = s.f;
  return snap;
}

SnapshotData snapshot_of(double t, const Curve& s) {
  SnapshotData snap;
  snap.t = t;
  snap.problem = "contour";
  snap.alpha = s.grid().alphas();
  snap.col1.resize(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i) snap.col1[static_cast<std::size_t>(i)] = s.z1_at(i);
  snap.col2 = s.z2.values();
  return snap;
}

Curve curve_from_snapshot(const SnapshotData& snap, double delta_rho) {
  if (snap.col2.empty()) throw IoError("curve snapshot needs z1 and z2 columns");
  PeriodicGrid grid(snap.alpha);
  std::vector<double> z1ma(snap.col1.size());
  for (std::size_t i = 0; i < z1ma.size(); ++i) z1ma[i] = snap.col1[i] - snap.alpha[i];
  return Curve(PeriodicField(grid, std::move(z1ma)), PeriodicField(grid, snap.col2),
               delta_rho);
}

void write_telemetry(const std::string& path, const std::vector<StepRecord>& records) {
  std::ostringstream os;
  os << "# t dt err_est accepted n_nodes min_slope\n";
  for (const auto& r : records) {
    os << format_double(r.t) << ' ' << format_double(r.dt) << ' '
       << format_double(r.err_est) << ' ' << (r.accepted ? 1 : 0) << ' ' << r.n_nodes
       << ' ' << format_double(r.min_slope) << '\n';
  }
  write_text_file(path, os.str());
}

std::vector<StepRecord> read_telemetry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open telemetry file " + path);
  std::vector<StepRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    StepRecord r;
    int accepted = 0;
    if (!(ls >> r.t >> r.dt >> r.err_est >> accepted >> r.n_nodes >> r.min_slope)) {
      throw IoError("telemetry " + path + ": malformed row '" + line + "'");
    }
    r.accepted = accepted != 0;
    out.push_back(r);
  }
  return out;
}

void Document::add(const std::string& key, const std::string& value) {
  nodes.push_back(DocNode{key, value, {}});
}
void Document::add(const std::string& key, double value) {
  add(key, format_double(value));
}
void Document::add(const std::string& key, long value) {
  add(key, std::to_string(value));
}
DocNode& Document::section(const std::string& key) {
  nodes.push_back(DocNode{key, "", {}});
  return nodes.back();
}
const DocNode* Document::find(const std::string& key) const {
  for (const auto& n : nodes) {
    if (n.key == key) return &n;
  }
  return nullptr;
}

namespace {

void write_node(std::ostringstream& os, const DocNode& node, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << node.key << ':';
  if (!node.value.empty()) os << ' ' << node.value;
  os << '\n';
  for (const auto& c : node.children) write_node(os, c, depth + 1);
}

}  // namespace

void write_document(const std::string& path, const Document& doc) {
  std::ostringstream os;
  for (const auto& n : doc.nodes) write_node(os, n, 0);
  write_text_file(path, os.str());
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open document " + path);
  Document doc;
  std::vector<std::pair<int, DocNode*>> stack;  // (indent, node)
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    int indent = 0;
    while (indent < static_cast<int>(line.size()) && line[static_cast<std::size_t>(indent)] == ' ')
      ++indent;
    const std::string body = line.substr(static_cast<std::size_t>(indent));
    const auto colon = body.find(':');
    if (colon == std::string::npos) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 'key: value'");
    }
    DocNode node;
    node.key = body.substr(0, colon);
    std::string value = body.substr(colon + 1);
    if (!value.empty() && value[0] == ' ') value.erase(0, 1);
    node.value = value;
    while (!stack.empty() && stack.back().first >= indent) stack.pop_back();
    if (stack.empty()) {
      doc.nodes.push_back(node);
      stack.emplace_back(indent, &doc.nodes.back());
    } else {
      stack.back().second->children.push_back(node);
      stack.emplace_back(indent, &stack.back().second->children.back());
    }
  }
  return doc;
}

Document certificate_document(const TurnoverCertificate& cert) {
  Document doc;
  doc.add("format_version", 1L);
  doc.add("kind", "turnover_certificate");
  doc.add("beta1", cert.beta1);
  doc.add("beta2", cert.beta2);
  doc.add("b", cert.b);
  doc.add("n_modes", static_cast<long>(cert.n_modes));
  doc.add("integral_value", cert.integral_value);
  doc.add("integral_error", cert.integral_error);
  doc.add("dz2_at_0", cert.dz2_at_0);
  DocNode& sec = doc.section("conditions");
  for (const auto& [name, ok] : cert.conditions) {
    sec.children.push_back(DocNode{name, ok ? "pass" : "fail", {}});
  }
  doc.add("pass", cert.passed() ? "true" : "false");
  return doc;
}

TurnoverCertificate certificate_from_document(const Document& doc) {
  TurnoverCertificate cert;
  const auto need = [&](const std::string& key) -> std::string {
    const DocNode* n = doc.find(key);
    if (!n) throw IoError("certificate document missing key '" + key + "'");
    return n->value;
  };
  cert.beta1 = parse_double(need("beta1"), "certificate");
  cert.beta2 = parse_double(need("beta2"), "certificate");
  cert.b = parse_double(need("b"), "certificate");
  cert.n_modes = static_cast<int>(std::stol(need("n_modes")));
  cert.integral_value = parse_double(need("integral_value"), "certificate");
  cert.integral_error = parse_double(need("integral_error"), "certificate");
  cert.dz2_at_0 = parse_double(need("dz2_at_0"), "certificate");
  if (const DocNode* sec = doc.find("conditions")) {
    for (const auto& c : sec->children) cert.conditions[c.key] = (c.value == "pass");
  }
  return cert;
}

Document report_document(const std::vector<DiagnosticReport>& reports) {
  Document doc;
  doc.add("format_version", 1L);
  doc.add("kind", "diagnostic_report");
  bool all = true;
  for (const auto& r : reports) all = all && r.passed;
  doc.add("all_passed", all ? "true" : "false");
  for (const auto& r : reports) {
    DocNode& sec = doc.section(r.name);
    sec.children.push_back(DocNode{"passed", r.passed ? "true" : "false", {}});
    sec.children.push_back(DocNode{"observed", format_double(r.observed), {}});
    sec.children.push_back(DocNode{"expected", r.expected, {}});
    sec.children.push_back(DocNode{"tolerance", format_double(r.tolerance), {}});
    if (!r.detail.empty()) sec.children.push_back(DocNode{"detail", r.detail, {}});
  }
  return doc;
}

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path), path);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string digest_file(const std::string& path) {
  return std::string("fnv1a:") + fnv1a_hex(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace muskat
