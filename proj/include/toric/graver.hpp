#pragma once

#include "toric/fiber.hpp"
#include "toric/lattice.hpp"

namespace toric {

struct GraverOptions {
  std::size_t max_vectors = 1'000'000;  // intermediate set size limit
  std::size_t max_pairs = 0;            // combination limit, 0 for none
  bool allow_wide = true;               // retry in 128-bit arithmetic on 64-bit overflow
};

struct GraverStats {
  std::size_t pairs_examined = 0;
  std::size_t intermediate_vectors = 0;
  bool used_wide = false;
};

// Conformally minimal nonzero elements of the integer kernel of an arbitrary integer matrix.
MoveSet graver_basis(const IntMatrix& matrix, const GraverOptions& opts = {}, GraverStats* stats = nullptr);
inline MoveSet graver_basis(const Configuration& cfg, const GraverOptions& opts = {},
                            GraverStats* stats = nullptr) {
  return graver_basis(cfg.matrix(), opts, stats);
}

// Columns are the canonical Graver elements, in MoveSet order.
IntMatrix graver_matrix(const MoveSet& graver, Index n);

// Maximum 1-norm over the Graver basis of the Graver-element matrix; 0 for injective A.
// On budget breach throws ResourceBudgetExceeded whose best_bound is a certified lower bound.
Int graver_complexity(const Configuration& cfg, const GraverOptions& opts = {});

// No nonzero h != z with h conformally below z lies in ker(matrix); node_limit bounds the search.
// Returns 1 if primitive, 0 if not, -1 if the limit was hit.
int is_primitive(const IntMatrix& matrix, const IntVector& z, std::size_t node_limit);

// True iff the fiber through z+ is exactly {z+, z-}.
bool is_indispensable(const Configuration& cfg, const IntVector& z);

}  // namespace toric
