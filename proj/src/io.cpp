#include "locc/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace locc {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{n, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  SeparableMeasurement run() {
    const Line& d = next("dims");
    if (d.tokens.size() != 3 || d.tokens[0] != "dims")
      throw error(d, "expected \"dims <dA> <dB>\"");
    SeparableMeasurement m;
    m.dA = dimension(d, d.tokens[1]);
    m.dB = dimension(d, d.tokens[2]);
    while (pos_ < lines_.size()) {
      const Line& o = next("outcome");
      if (o.tokens.size() != 1 || o.tokens[0] != "outcome") throw error(o, "expected \"outcome\"");
      std::size_t j = m.outcomes.size() + 1;
      HermitianOp a = matrix("A", m.dA, j);
      HermitianOp b = matrix("B", m.dB, j);
      m.outcomes.push_back({std::move(a), std::move(b)});
    }
    if (m.outcomes.empty()) throw ParseError("no outcomes");
    return m;
  }

 private:
  static ParseError error(const Line& l, const std::string& what) {
    return ParseError("line " + std::to_string(l.number) + ": " + what);
  }

  const Line& next(const std::string& expected) {
    if (pos_ >= lines_.size()) throw ParseError("unexpected end of input, expected " + expected);
    return lines_[pos_++];
  }

  static std::size_t dimension(const Line& l, const std::string& tok) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v == 0 || v > 64) throw error(l, "bad dimension \"" + tok + "\"");
    return v;
  }

  HermitianOp matrix(const std::string& party, std::size_t d, std::size_t j) {
    std::string where = "outcome " + std::to_string(j) + " " + party;
    const Line& head = next(party);
    if (head.tokens.size() != 1 || head.tokens[0] != party) throw error(head, "expected \"" + party + "\"");
    std::vector<ExactComplex> entries;
    std::vector<std::size_t> line_of_row;
    for (std::size_t i = 0; i < d; ++i) {
      const Line& row = next("a row of " + where);
      line_of_row.push_back(row.number);
      if (row.tokens.size() != 2 * d)
        throw error(row, where + " row " + std::to_string(i + 1) + ": expected " + std::to_string(2 * d) +
                             " numbers (re im per entry), got " + std::to_string(row.tokens.size()));
      for (std::size_t c = 0; c < d; ++c) {
        ExactComplex z;
        for (int part = 0; part < 2; ++part) {
          const std::string& tok = row.tokens[2 * c + part];
          try {
            (part == 0 ? z.re : z.im) = parse_scalar(tok);
          } catch (const std::invalid_argument& e) {
            throw error(row, where + " entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) + ") " +
                                 (part == 0 ? "real" : "imaginary") + " part: " + e.what());
          }
        }
        entries.push_back(std::move(z));
      }
    }
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = r; c < d; ++c)
        if (entries[r * d + c] != entries[c * d + r].conj())
          throw ParseError("line " + std::to_string(line_of_row[r]) + ": " + where + " is not Hermitian at entry (" +
                           std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
    HermitianOp op(d, std::move(entries));
    if (op.is_zero()) throw ParseError("lines " + std::to_string(line_of_row.front()) + "-" +
                                       std::to_string(line_of_row.back()) + ": " + where + " is the zero operator");
    if (!is_psd(op))
      throw ParseError("lines " + std::to_string(line_of_row.front()) + "-" + std::to_string(line_of_row.back()) +
                       ": " + where + " is not positive semidefinite (is_psd failed)");
    return op;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void write_matrix(std::ostream& os, const HermitianOp& op) {
  for (std::size_t i = 0; i < op.dim(); ++i) {
    for (std::size_t j = 0; j < op.dim(); ++j) {
      if (j) os << "   ";
      os << to_string(op(i, j).re) << " " << to_string(op(i, j).im);
    }
    os << "\n";
  }
}

}  // namespace

SeparableMeasurement parse_measurement_text(std::string_view text) {
  SeparableMeasurement m = Parser(text).run();
  try {
    check_measurement(m);
  } catch (const InvalidMeasurement& e) {
    throw ParseError(e.what());
  }
  return m;
}

SeparableMeasurement parse_measurement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_measurement_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_measurement(const SeparableMeasurement& m) {
  std::ostringstream os;
  os << "dims " << m.dA << " " << m.dB << "\n";
  for (std::size_t j = 1; j <= m.size(); ++j) {
    os << "\noutcome  # " << j << "\nA\n";
    write_matrix(os, m.outcome(j).A);
    os << "B\n";
    write_matrix(os, m.outcome(j).B);
  }
  return os.str();
}

std::string to_dot(const Tree& t) {
  std::ostringstream os;
  os << "digraph protocol {\n  rankdir=LR;\n  node [shape=box, fontname=\"Helvetica\"];\n";
  std::size_t next_id = 0;
  auto label_text = [](const TreeNode& n) {
    std::string s;
    for (std::size_t i = 0; i < n.label.terms.size(); ++i) {
      const LeafRef& r = n.label.terms[i];
      if (i) s += " + ";
      s += std::string(1, side_char(n.side)) + std::to_string(r.j) + "." + std::to_string(r.k);
    }
    return s;
  };
  auto emit = [&](auto&& self, const TreeNode& n, std::size_t depth) -> std::size_t {
    std::size_t id = next_id++;
    std::string text = depth < 2 ? std::string("I_") + side_char(n.side) : label_text(n);
    if (n.is_leaf()) text += "\\n(outcome " + std::to_string(n.leaf->j) + ")";
    os << "  n" << id << " [label=\"" << text << "\"" << (n.is_leaf() ? ", shape=ellipse" : "") << "];\n";
    for (const auto& c : n.children) {
      std::size_t cid = self(self, c, depth + 1);
      os << "  n" << id << " -> n" << cid << ";\n";
    }
    return id;
  };
  emit(emit, t.root, 0);
  os << "}\n";
  return os.str();
}

nlohmann::ordered_json run_report(const RunInfo& info, const SeparableMeasurement& m, const SynthesisOutcome& out,
                                  const std::optional<InstrumentReport>& instrument) {
  using nlohmann::ordered_json;
  ordered_json r;
  r["format"] = "locc-run-report/1";
  r["input"] = {{"path", info.input}, {"dA", m.dA}, {"dB", m.dB}, {"outcomes", m.size()}};
  r["config"] = {{"max_rounds", info.config.max_rounds},
                 {"family_cap", info.config.family_size_cap},
                 {"max_trees", info.config.max_trees},
                 {"exhaustive", info.config.exhaustive},
                 {"proper_subsets", info.config.proper_subsets},
                 {"rank_tol", info.rank_tol}};
  r["verdict"] = to_string(out.verdict);
  r["rounds_used"] = out.stats.rounds_used;
  ordered_json rounds = ordered_json::array();
  for (const auto& s : out.stats.rounds) {
    ordered_json merges = ordered_json::array();
    for (const auto& mm : s.merges) merges.push_back(mm);
    rounds.push_back({{"round", s.round},
                      {"side", std::string(1, side_char(s.side))},
                      {"frontier", s.frontier},
                      {"families", s.families},
                      {"new_families", s.new_families},
                      {"subsets", s.subsets},
                      {"singletons", s.singletons},
                      {"trees_built", s.trees_built},
                      {"duplicates", s.duplicates},
                      {"congruent_skipped", s.congruent_skipped},
                      {"complete_checked", s.complete_checked},
                      {"lp_calls", s.lp_calls},
                      {"merges", merges}});
  }
  r["rounds"] = rounds;
  r["totals"] = {{"lp_calls", out.stats.lp_calls}, {"trees", out.stats.trees_total}};
  r["capped"] = out.stats.capped;
  r["cap_events"] = out.stats.cap_events;
  if (out.protocol) {
    const LOCCProtocol& p = *out.protocol;
    ordered_json ledger = ordered_json::array();
    for (const auto& c : p.tree.ledger) ledger.push_back(to_string(c));
    ordered_json coeffs = ordered_json::array();
    for (const auto& [ref, q] : p.q)
      coeffs.push_back({{"leaf", to_string(ref)},
                        {"q", to_string(q)},
                        {"p", to_string(p.p.at(ref))},
                        {"r", to_string(p.r.at(ref))}});
    r["protocol"] = {{"rounds", p.rounds},
                     {"depth", node_depth(p.tree.root)},
                     {"tree", canonical_form(p.tree.root, true)},
                     {"ledger", ledger},
                     {"coefficients", coeffs}};
  } else {
    r["protocol"] = nullptr;
  }
  if (instrument) {
    r["instrument"] = {{"ok", instrument->ok},
                       {"closure_residual", instrument->closure},
                       {"leaf_residual", instrument->leaf},
                       {"total_residual", instrument->total},
                       {"completion_norm", instrument->completion},
                       {"failures", instrument->failures}};
  } else {
    r["instrument"] = nullptr;
  }
  return r;
}

void add_run_info(nlohmann::ordered_json& report, double wall_seconds) {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream ts;
  ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  report["run_info"] = {{"timestamp", ts.str()}, {"wall_seconds", wall_seconds}};
}

}  // namespace locc
