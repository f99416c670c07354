#pragma once

#include <map>
#include <string>
#include <vector>

#include "toric/graver.hpp"

namespace toric {

using DegreeHistogram = std::map<Int, std::size_t>;

enum class MarkovStrategy {
  automatic,      // Graver fibers; the degree sweep when Graver exceeds its budget or the column limit
  graver_fibers,  // candidate fibers {A g+ : g in G(A)}
  degree_sweep    // every fiber of degree <= max_degree
};

struct MarkovOptions {
  std::size_t fiber_cap = kDefaultFiberCap;
  GraverOptions graver;
  MarkovStrategy strategy = MarkovStrategy::automatic;
  Int max_degree = 0;  // degree sweep limit; 0 disables the automatic fallback
  Index graver_column_limit = 18;  // automatic: wider configurations go straight to the sweep
  bool reverse_fiber_order = false;
  bool reverse_representatives = false;
};

struct MinimalMarkovResult {
  MoveSet basis;
  DegreeHistogram histogram;
  bool complete = true;    // false when only fibers up to complete_through were examined
  Int complete_through = 0;
  std::string strategy;
  std::size_t fibers_examined = 0;
};

bool is_markov_basis(const Configuration& cfg, const MoveSet& moves, const MoveSet& graver,
                     std::size_t cap = kDefaultFiberCap);

// Least m such that every Graver fiber is connected by steps of degree <= m.
Int markov_degree(const Configuration& cfg, const MarkovOptions& opts = {});
Int markov_degree(const Configuration& cfg, const MoveSet& graver, const MarkovOptions& opts = {});

MinimalMarkovResult minimal_markov_basis(const Configuration& cfg, const MarkovOptions& opts = {});

// Least m such that every Graver fiber of the N-th Lawrence lifting is connected by steps of type <= m.
Int markov_complexity_at(const Configuration& cfg, int copies, const MarkovOptions& opts = {});

enum class CertifyMode { exact, forcing, automatic };

struct ForcingStep {
  Index coordinate = 0;
  Int partial = 0;                  // partial sum at the coordinate before forcing
  std::vector<std::size_t> added;   // 0-based slice indices
};

struct IndispensabilityCertificate {
  enum class Verdict { certified, refuted, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  CertifyMode mode = CertifyMode::exact;  // exact or forcing, never automatic
  std::vector<std::size_t> witness;       // zero-sum proper subset when refuted (0-based)
  std::vector<ForcingStep> trace;         // forcing mode
  std::size_t nodes = 0;                  // exact mode search nodes
};

std::string to_string(IndispensabilityCertificate::Verdict v);
std::string to_string(CertifyMode m);

inline constexpr std::size_t kExactCertifyLimit = 24;

IndispensabilityCertificate certify_indispensable_lift(const Configuration& cfg, const LiftedMove& m,
                                                       CertifyMode mode = CertifyMode::automatic);

}  // namespace toric
