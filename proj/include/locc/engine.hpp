#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locc/measurement.hpp"
#include "locc/tree.hpp"

namespace locc {

struct SearchConfig {
  std::size_t max_rounds = 10;
  std::size_t family_size_cap = 12;
  std::size_t max_trees = 100000;
  bool exhaustive = false;
  // false: merge whole families only (no proper sub-subsets).
  bool proper_subsets = true;
};

enum class Verdict { LOCC_FOUND, NO_LOCC_WITHIN_L, NO_LOCC_ANY_ROUNDS, INCONCLUSIVE_CAPPED };

std::string to_string(Verdict v);

using Coefficients = std::map<LeafRef, ExactScalar>;

struct LOCCProtocol {
  Tree tree;  // padded to uniform leaf depth
  Coefficients q;
  Coefficients p;
  Coefficients r;  // q * p
  std::size_t rounds = 0;
};

struct RoundStats {
  std::size_t round = 0;
  Side side = Side::B;
  std::size_t frontier = 0;       // trees presented to the family search
  std::size_t families = 0;       // maximal families with >= 2 members
  std::size_t new_families = 0;   // member sets not processed before
  std::size_t subsets = 0;        // multi-member subsets merged
  std::size_t singletons = 0;     // one-tree subsets (extension only)
  std::size_t trees_built = 0;    // new signatures
  std::size_t duplicates = 0;
  std::size_t congruent_skipped = 0;
  std::size_t complete_checked = 0;
  std::size_t lp_calls = 0;
  // Members of each subset that produced a new tree; seeds print as their
  // outcome index, other trees as "T<id>".
  std::vector<std::vector<std::string>> merges;
};

struct SearchStats {
  std::size_t rounds_used = 0;
  std::vector<RoundStats> rounds;
  std::size_t lp_calls = 0;
  std::size_t trees_total = 0;
  bool capped = false;
  std::vector<std::string> cap_events;
};

struct NoLoccCertificate {
  Verdict verdict = Verdict::NO_LOCC_WITHIN_L;
  SearchStats stats;
};

struct SynthesisOutcome {
  Verdict verdict = Verdict::NO_LOCC_WITHIN_L;
  std::optional<LOCCProtocol> protocol;
  SearchStats stats;

  NoLoccCertificate certificate() const { return {verdict, stats}; }
};

SynthesisOutcome synthesize(const SeparableMeasurement& m, const SearchConfig& cfg);

struct FeasibleAssignment {
  Tree tree;  // the input tree, or the pruned tree when the fallback applied
  Coefficients q;
  Coefficients p;
  bool pruned = false;
};

std::optional<FeasibleAssignment> check_tree_feasibility(const Tree& t, const SeparableMeasurement& m,
                                                         std::size_t* lp_calls = nullptr);

// Concrete operator of a symbolic label under solved coefficients.
HermitianOp evaluate(const SymbolicLabel& l, const Coefficients& q, const Coefficients& p,
                     const SeparableMeasurement& m);

struct ExactCheck {
  bool ok = true;
  std::string failure;
};

// Sum rule at every node, root pair equal to the identities, ledger equalities,
// positive leaf coefficients and completeness, all in exact arithmetic.
ExactCheck verify_protocol_exact(const Tree& t, const Coefficients& q, const Coefficients& p,
                                 const SeparableMeasurement& m);

}  // namespace locc
