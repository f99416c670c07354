#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toric/integer.hpp"

namespace toric {

using Table = IntMatrix;

struct Margins {
  IntVector row;
  IntVector col;

  bool operator==(const Margins& o) const { return row == o.row && col == o.col; }
};

Margins margins_of(const Table& t);

enum class TableClass { proper, improper, collision, invalid };
std::string to_string(TableClass c);

TableClass classify(const Table& t, const Margins& m);

struct Cell {
  Index row = 0;
  Index col = 0;
};

struct TableMultiset {
  Margins margins;
  std::vector<Table> members;

  std::size_t size() const { return members.size(); }
  IntMatrix edge_sums() const;
  bool is_proper() const;
  // Member index and cell of the unique -1 entry when the multiset is improper.
  std::optional<std::pair<std::size_t, Cell>> improper_member() const;
  bool is_improper() const { return improper_member().has_value(); }
};

// Tables compared as a multiset.
bool same_multiset(const std::vector<Table>& a, const std::vector<Table>& b);

// Member `first` gives row `from` and receives row `to` in column `col`; member `second` the opposite.
struct ElementarySwap {
  Index from = 0;
  Index to = 0;
  Index col = 0;
};

struct SwapOperation {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<ElementarySwap> swaps;

  void add(Index from, Index to, Index col) { swaps.push_back({from, to, col}); }
  // Same swap written from the other member's point of view.
  void add_reversed(Index from, Index to, Index col) { swaps.push_back({to, from, col}); }
  void append(const SwapOperation& other);
  bool empty() const { return swaps.empty(); }
  // Correction matrix added to member `first`; member `second` gets its negation.
  IntMatrix correction(Index rows, Index cols) const;
  void apply(TableMultiset& m) const;
};

// Unordered pair containing the improper member and a member positive at its -1 cell.
struct ResolvablePair {
  std::size_t improper = 0;
  std::size_t partner = 0;
};

bool is_resolvable(const TableMultiset& m, const ResolvablePair& p);

// Resolves the row collisions of two members with complementary row excesses.
SwapOperation resolve_collisions_pair(const TableMultiset& m, std::size_t k, std::size_t kp);

// Turns an improper multiset proper with one swap operation on the given pair.
SwapOperation resolve_improper(const TableMultiset& m, const ResolvablePair& pair);
// Pair chosen as the improper member and the lowest-index member positive at its -1 cell.
SwapOperation resolve_improper(const TableMultiset& m);

struct StepOutcome {
  enum class Kind { no_op, proper, improper } kind = Kind::no_op;
  ResolvablePair pair;  // valid when improper
};

struct StepResult {
  std::vector<SwapOperation> ops;
  StepOutcome outcome;
  std::string rule;
};

// Members allowed to donate entries; empty means every member.
using Eligibility = std::vector<char>;

// Moves member k toward target by one exchange with a donor.
StepResult reduce_toward_target(const TableMultiset& p, std::size_t k, const Table& target,
                                const Eligibility& eligible = {});

// One repair step of an improper multiset whose pair partner is being driven to target.
StepResult improper_step(const TableMultiset& m, const ResolvablePair& pair, const Table& target,
                         const Eligibility& eligible = {});

// Sum of |g(ij) - target(ij)| over cells.
Int table_distance(const Table& g, const Table& target);

struct ScriptStep {
  std::vector<std::size_t> members;  // 0-based indices into the working multiset
  std::vector<Table> before;
  std::vector<Table> after;
  Int degree = 0;
};

struct MoveScript {
  Margins margins;
  std::vector<ScriptStep> steps;

  Int max_degree() const;
  std::string to_text() const;
};

std::string table_to_text(const Table& t);

// Degree-<=3 path from p to target through proper multisets.
MoveScript connect(const TableMultiset& p, const TableMultiset& target);

// Replays the script from p; checks every step and that the end state equals target as a multiset.
// Returns an empty string when valid, otherwise the first violation.
std::string verify_script(const TableMultiset& p, const TableMultiset& target, const MoveScript& script);

// Random multisets in one fiber: members share margins bounded by max_margin, and the second
// multiset arises from the first by edge-sum preserving exchanges and a shuffle.
std::pair<TableMultiset, TableMultiset> random_same_fiber_pair(int rows, int cols, int members, Int max_margin,
                                                               std::mt19937_64& rng);

}  // namespace toric
