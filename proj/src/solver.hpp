#pragma once

#include <optional>
#include <vector>

#include "common.hpp"

namespace tk1 {

/* Membership (with coefficient extraction) in the span of fixed generator
   vectors over Z/p^M.  The reduced basis keeps, per pivot row, a column whose
   leading entry is exactly p^v; adding the p^(M-v) tail columns back into the
   pool makes reduction against the basis decide membership outright. */
class SpanSolver {
 public:
  SpanSolver(unsigned p, unsigned mexp, size_t dim);

  void add_generator(const std::vector<u64>& col);
  void finish();  /* no-op marker; generators may also be added lazily */

  size_t generators() const { return ngens_; }
  /* coefficients w.r.t. the generators in insertion order, or nullopt */
  std::optional<std::vector<u64>> solve(const std::vector<u64>& target) const;
  bool contains(const std::vector<u64>& target) const;

 private:
  struct Pivot {
    unsigned val;            /* leading entry is p^val exactly */
    std::vector<u64> col;
    std::vector<u64> tf;     /* col = sum tf[i] * generator_i */
  };

  void absorb(std::vector<u64> col, std::vector<u64> tf);

  unsigned p_;
  unsigned mexp_;
  u64 mod_;
  size_t dim_;
  size_t ngens_ = 0;
  std::vector<std::optional<Pivot>> basis_;  /* indexed by pivot row */
};

}  // namespace tk1
