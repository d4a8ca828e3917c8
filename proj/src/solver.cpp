#include "solver.hpp"

#include <utility>

namespace tk1 {

namespace {

void axpy_neg(std::vector<u64>& y, u64 q, const std::vector<u64>& x, u64 mod) {
  if (y.size() < x.size()) y.resize(x.size(), 0);
  for (size_t i = 0; i < x.size(); ++i)
    y[i] = submod(y[i], mulmod(q, x[i], mod), mod);
}

void scale(std::vector<u64>& y, u64 s, u64 mod) {
  for (u64& v : y) v = mulmod(v, s, mod);
}

}  // namespace

SpanSolver::SpanSolver(unsigned p, unsigned mexp, size_t dim)
    : p_(p), mexp_(mexp), mod_(ipow(p, mexp)), dim_(dim), basis_(dim) {}

void SpanSolver::add_generator(const std::vector<u64>& col) {
  if (col.size() != dim_) fail(Err::invalid_arg, "generator dimension mismatch");
  std::vector<u64> c(col);
  for (u64& v : c) v %= mod_;
  std::vector<u64> tf(ngens_ + 1, 0);
  tf[ngens_] = 1;
  ++ngens_;
  absorb(std::move(c), std::move(tf));
}

void SpanSolver::finish() {}

void SpanSolver::absorb(std::vector<u64> col0, std::vector<u64> tf0) {
  std::vector<std::pair<std::vector<u64>, std::vector<u64>>> work;
  work.emplace_back(std::move(col0), std::move(tf0));
  while (!work.empty()) {
    auto [c, t] = std::move(work.back());
    work.pop_back();
    size_t r = 0;
    while (r < dim_ && c[r] == 0) ++r;
    if (r == dim_) continue;
    unsigned v = p_valuation(c[r], p_);
    if (!basis_[r] || v < basis_[r]->val) {
      u64 unit = c[r] / ipow(p_, v);
      u64 ui = unit_inv_mod(unit, p_, mod_);
      scale(c, ui, mod_);
      scale(t, ui, mod_);
      std::optional<Pivot> old = std::move(basis_[r]);
      if (v > 0) {
        u64 tail = ipow(p_, mexp_ - v);
        auto tc = c;
        auto tt = t;
        scale(tc, tail, mod_);
        scale(tt, tail, mod_);
        work.emplace_back(std::move(tc), std::move(tt));
      }
      basis_[r] = Pivot{v, std::move(c), std::move(t)};
      if (old) work.emplace_back(std::move(old->col), std::move(old->tf));
    } else {
      const Pivot& piv = *basis_[r];
      u64 q = c[r] / ipow(p_, piv.val);
      axpy_neg(c, q, piv.col, mod_);
      axpy_neg(t, q, piv.tf, mod_);
      work.emplace_back(std::move(c), std::move(t));
    }
  }
}

std::optional<std::vector<u64>> SpanSolver::solve(const std::vector<u64>& target) const {
  if (target.size() != dim_) fail(Err::invalid_arg, "target dimension mismatch");
  std::vector<u64> y(target);
  for (u64& v : y) v %= mod_;
  std::vector<u64> coeffs(ngens_, 0);
  for (size_t r = 0; r < dim_; ++r) {
    if (y[r] == 0) continue;
    if (!basis_[r]) return std::nullopt;
    const Pivot& piv = *basis_[r];
    unsigned v = p_valuation(y[r], p_);
    if (v < piv.val) return std::nullopt;
    u64 q = y[r] / ipow(p_, piv.val);
    axpy_neg(y, q, piv.col, mod_);
    if (coeffs.size() < piv.tf.size()) fail(Err::math, "transform length drift");
    for (size_t i = 0; i < piv.tf.size(); ++i)
      coeffs[i] = addmod(coeffs[i], mulmod(q, piv.tf[i], mod_), mod_);
  }
  return coeffs;
}

bool SpanSolver::contains(const std::vector<u64>& target) const {
  return solve(target).has_value();
}

}  // namespace tk1
