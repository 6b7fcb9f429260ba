#include "locc/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>

#include "locc/io.hpp"

namespace locc {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::LOCC_FOUND: return 0;
    case Verdict::NO_LOCC_WITHIN_L:
    case Verdict::NO_LOCC_ANY_ROUNDS: return 2;
    case Verdict::INCONCLUSIVE_CAPPED: return 3;
  }
  return 1;
}

void print_rounds(std::ostream& out, const SearchStats& s) {
  for (const auto& r : s.rounds) {
    out << "round " << r.round << " (" << side_char(r.side) << "): frontier " << r.frontier << ", families "
        << r.families << " (" << r.new_families << " new), merged " << r.subsets << ", new trees " << r.trees_built
        << ", lp " << r.lp_calls;
    for (const auto& mm : r.merges) {
      out << (&mm == &r.merges.front() ? "  {" : " {");
      for (std::size_t i = 0; i < mm.size(); ++i) out << (i ? "," : "") << mm[i];
      out << "}";
    }
    out << "\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search for an LOCC protocol implementing a separable measurement"};
  app.require_subcommand(1);

  std::string input;
  SearchConfig cfg;
  double rank_tol = 1e-10;
  std::string dot_path, report_path, protocol_path;

  CLI::App* run = app.add_subcommand("run", "search for a protocol");
  run->add_option("measurement", input, "measurement file")->required();
  run->add_option("--max-rounds,-L", cfg.max_rounds, "maximum number of merge rounds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_flag("--exhaustive", cfg.exhaustive, "lift the family size cap");
  run->add_option("--family-cap", cfg.family_size_cap, "largest family searched exhaustively")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--max-trees", cfg.max_trees, "stop after this many distinct trees")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--dot", dot_path, "write the protocol tree as Graphviz DOT");
  run->add_option("--report", report_path, "write the JSON run report");
  run->add_option("--protocol", protocol_path, "write the protocol tree and ledger as text");
  run->add_option("--rank-tol", rank_tol, "relative eigenvalue cutoff for support inverses")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App* validate = app.add_subcommand("validate", "check a measurement file");
  validate->add_option("measurement", input, "measurement file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  auto t0 = std::chrono::steady_clock::now();
  SeparableMeasurement m;
  try {
    m = parse_measurement(input);
    validate_measurement(m);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (validate->parsed()) {
    out << input << ": valid separable measurement, " << m.size() << " outcomes, dims " << m.dA << "x" << m.dB
        << "\n";
    return 0;
  }

  try {
    SynthesisOutcome res = synthesize(m, cfg);
    std::optional<InstrumentReport> instrument;
    if (res.protocol) {
      KrausProtocol kp = realize(*res.protocol, m, rank_tol);
      instrument = verify_instrument(kp, m, 1e-9);
    }
    out << "verdict: " << to_string(res.verdict) << " (rounds used " << res.stats.rounds_used << ")\n";
    print_rounds(out, res.stats);
    for (const auto& e : res.stats.cap_events) out << "cap: " << e << "\n";
    if (res.protocol) {
      out << serialize_tree(res.protocol->tree);
      out << "instrument: " << (instrument->ok ? "ok" : "FAILED") << " (closure " << instrument->closure
          << ", leaf " << instrument->leaf << ", total " << instrument->total << ")\n";
      if (!dot_path.empty()) write_file(dot_path, to_dot(res.protocol->tree));
      if (!protocol_path.empty()) write_file(protocol_path, serialize_tree(res.protocol->tree));
    }
    if (!report_path.empty()) {
      auto report = run_report({input, cfg, rank_tol}, m, res, instrument);
      add_run_info(report, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      write_file(report_path, report.dump(2) + "\n");
    }
    if (instrument && !instrument->ok) {
      for (const auto& f : instrument->failures) err << "instrument: " << f << "\n";
      return 1;
    }
    return exit_code(res.verdict);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace locc
