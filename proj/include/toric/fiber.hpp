#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

inline constexpr std::size_t kDefaultFiberCap = 1'000'000;

struct Fiber {
  IntVector b;
  Int total_degree = 0;
  std::vector<IntVector> elements;  // descending lexicographic

  std::size_t size() const { return elements.size(); }
};

// Visits fiber elements in descending lexicographic order until fn returns false.
// Returns false if the visit was stopped early.
bool for_each_fiber_element(const Configuration& cfg, const IntVector& b,
                            const std::function<bool(const IntVector&)>& fn);

Fiber enumerate_fiber(const Configuration& cfg, const IntVector& b, std::size_t cap = kDefaultFiberCap);

struct FiberConfiguration {
  Configuration base;
  IntVector b;
  Configuration config;  // columns are the fiber elements
  std::vector<IntVector> elements;
  std::unordered_map<IntVector, Index, VectorHash, VectorEqual> column_index;

  Index columns() const { return static_cast<Index>(elements.size()); }
  // -1 when x is not in the fiber.
  Index column_of(const IntVector& x) const;
};

FiberConfiguration fiber_configuration(const Configuration& cfg, const IntVector& b,
                                       std::size_t cap = kDefaultFiberCap);

struct LiftedPoint {
  std::vector<IntVector> slices;
};

IntVector project_fb(const LiftedPoint& lp, const FiberConfiguration& fc);
LiftedPoint embed_fb(const IntVector& y, const FiberConfiguration& fc);

}  // namespace toric
