#include "kanlim/palgebra/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "kanlim/palgebra/errors.hpp"
#include "kanlim/palgebra/snf.hpp"

namespace kanlim::linalg {

SparseVec to_sparse(const PVector& v) {
  SparseVec out;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) out.emplace_back(static_cast<int>(i), v(i));
  return out;
}

SparseVec column(const PMatrix& m, Eigen::Index j) {
  SparseVec out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (!m(i, j).is_zero()) out.emplace_back(static_cast<int>(i), m(i, j));
  return out;
}

std::vector<SparseVec> columns(const PMatrix& m) {
  std::vector<SparseVec> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(column(m, j));
  return out;
}

PVector to_dense(const SparseVec& v, int size) {
  PVector out = PVector::Constant(size, PScalar(0));
  for (const auto& [i, x] : v) out(i) = x;
  return out;
}

PMatrix to_dense(const std::vector<SparseVec>& cols, int rows) {
  PMatrix out = zero_matrix(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, x] : cols[j]) out(i, static_cast<Eigen::Index>(j)) = x;
  return out;
}

void axpy(SparseVec& v, const PScalar& c, const SparseVec& w) {
  if (c.is_zero() || w.empty()) return;
  SparseVec out;
  out.reserve(v.size() + w.size());
  auto a = v.begin();
  auto b = w.begin();
  while (a != v.end() || b != w.end()) {
    if (b == w.end() || (a != v.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == v.end() || b->first < a->first) {
      out.emplace_back(b->first, -(c * b->second));
      ++b;
    } else {
      PScalar x = a->second - c * b->second;
      if (!x.is_zero()) out.emplace_back(a->first, std::move(x));
      ++a;
      ++b;
    }
  }
  v = std::move(out);
}

const PScalar* find(const SparseVec& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, int i) { return e.first < i; });
  if (it == v.end() || it->first != index) return nullptr;
  return &it->second;
}

SparseVec scaled(const SparseVec& v, const PScalar& c) {
  if (c.is_zero()) return {};
  SparseVec out = v;
  for (auto& e : out) e.second *= c;
  return out;
}

ColumnEchelon::ColumnEchelon(std::vector<SparseVec> cols, int rows, int p, bool track)
    : rows_(rows), p_(p) {
  const int n = static_cast<int>(cols.size());
  std::vector<SparseVec> transforms;
  if (track) {
    transforms.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) transforms[j] = {{j, PScalar(1)}};
  }
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(rows));
  for (int j = 0; j < n; ++j) {
    if (cols[j].empty()) {
      if (track) kernel_.push_back(transforms[j]);
      continue;
    }
    if (cols[j].front().first >= rows) throw ShapeMismatch("column entry outside row range");
    buckets[cols[j].front().first].push_back(j);
  }

  for (int r = 0; r < rows; ++r) {
    auto& bucket = buckets[r];
    if (bucket.empty()) continue;
    int best = -1;
    int best_val = PScalar::kInfiniteValuation;
    std::size_t best_nnz = 0;
    for (int j : bucket) {
      int v = cols[j].front().second.valuation(p);
      std::size_t nnz = cols[j].size();
      if (best < 0 || v < best_val || (v == best_val && (nnz < best_nnz || (nnz == best_nnz && j < best)))) {
        best = j;
        best_val = v;
        best_nnz = nnz;
      }
    }
    const SparseVec& piv = cols[best];
    const PScalar lead = piv.front().second;
    for (int j : bucket) {
      if (j == best) continue;
      PScalar c = cols[j].front().second / lead;
      axpy(cols[j], c, piv);
      if (track) axpy(transforms[j], c, transforms[best]);
      if (cols[j].empty()) {
        if (track) kernel_.push_back(std::move(transforms[j]));
      } else {
        buckets[cols[j].front().first].push_back(j);
      }
    }
    basis_.push_back(std::move(cols[best]));
    if (track) basis_transforms_.push_back(std::move(transforms[best]));
    pivot_rows_.push_back(r);
    bucket.clear();
    bucket.shrink_to_fit();
  }
}

std::optional<SparseVec> ColumnEchelon::solve(SparseVec x) const {
  SparseVec coeffs;
  std::size_t k = 0;
  while (!x.empty()) {
    const int lead = x.front().first;
    while (k < pivot_rows_.size() && pivot_rows_[k] < lead) ++k;
    if (k == pivot_rows_.size() || pivot_rows_[k] != lead) return std::nullopt;
    PScalar c = x.front().second / basis_[k].front().second;
    if (!c.is_plocal(p_)) return std::nullopt;
    axpy(x, c, basis_[k]);
    coeffs.emplace_back(static_cast<int>(k), std::move(c));
  }
  return coeffs;
}

std::optional<SparseVec> ColumnEchelon::solve_columns(SparseVec x) const {
  if (basis_transforms_.size() != basis_.size()) throw Unsupported("echelon built without transforms");
  auto coeffs = solve(std::move(x));
  if (!coeffs) return std::nullopt;
  SparseVec out;
  for (const auto& [k, c] : *coeffs) axpy(out, -c, basis_transforms_[k]);
  return out;
}

CokernelStructure::CokernelStructure(std::vector<SparseVec> relations, int generators, int p)
    : generators_(generators), p_(p) {
  std::vector<char> eliminated(static_cast<std::size_t>(generators), 0);

  // Phase 1: remove every relation that has a unit entry, together with one
  // generator it expresses in terms of the others.
  std::vector<std::pair<SparseVec, std::size_t>> pending;
  for (auto& rel : relations) {
    SparseVec c = reduce(std::move(rel));
    if (c.empty()) continue;
    int pick = -1;
    for (const auto& [i, x] : c) {
      if (x.is_unit(p)) {
        pick = i;
        break;
      }
    }
    if (pick < 0) {
      pending.emplace_back(std::move(c), steps_.size());
      continue;
    }
    PScalar inv = PScalar(1) / *find(c, pick);
    steps_.push_back({pick, scaled(c, inv)});
    eliminated[pick] = 1;
  }

  std::vector<SparseVec> rest;
  for (auto& [c, from] : pending) {
    SparseVec r = reduce(std::move(c), from);
    if (!r.empty()) rest.push_back(std::move(r));
  }

  // Phase 2: Smith form of the remaining relations on the rows they touch.
  block_slot_.assign(static_cast<std::size_t>(generators), -1);
  for (const auto& c : rest)
    for (const auto& e : c) block_slot_[e.first] = 0;
  for (int i = 0; i < generators; ++i)
    if (block_slot_[i] == 0) {
      block_slot_[i] = static_cast<int>(block_rows_.size());
      block_rows_.push_back(i);
    }
  const int block = static_cast<int>(block_rows_.size());
  for (auto& c : rest)
    for (auto& e : c) e.first = block_slot_[e.first];
  ColumnEchelon echelon(std::move(rest), block, p, false);
  SmithForm snf = plocal_snf(to_dense(echelon.basis(), block), p, true);
  transform_ = std::move(snf.P);
  transform_inv_ = std::move(snf.P_inv);

  std::vector<std::pair<int, Gen>> torsion;
  for (int k = 0; k < snf.rank; ++k) {
    int e = snf.D(k, k).valuation(p);
    if (e > 0) torsion.push_back({e, Gen{true, k}});
  }
  std::stable_sort(torsion.begin(), torsion.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [e, g] : torsion) {
    gens_.push_back(g);
    exponents_.push_back(e);
  }
  for (int k = snf.rank; k < block; ++k) {
    gens_.push_back(Gen{true, k});
    exponents_.push_back(-1);
  }
  for (int i = 0; i < generators; ++i) {
    if (eliminated[i] || block_slot_[i] >= 0) continue;
    gens_.push_back(Gen{false, i});
    exponents_.push_back(-1);
  }
}

SparseVec CokernelStructure::reduce(SparseVec v, std::size_t first_step) const {
  for (std::size_t k = first_step; k < steps_.size() && !v.empty(); ++k) {
    const PScalar* x = find(v, steps_[k].row);
    if (x) {
      PScalar c = *x;
      axpy(v, c, steps_[k].column);
    }
  }
  return v;
}

int CokernelStructure::free_rank() const {
  return static_cast<int>(std::count(exponents_.begin(), exponents_.end(), -1));
}

std::vector<int> CokernelStructure::torsion() const {
  std::vector<int> out;
  for (int e : exponents_)
    if (e >= 0) out.push_back(e);
  return out;
}

PVector CokernelStructure::project(const SparseVec& ambient) const {
  SparseVec y = reduce(ambient);
  const Eigen::Index block = static_cast<Eigen::Index>(block_rows_.size());
  PVector yb = PVector::Constant(block, PScalar(0));
  for (const auto& [i, x] : y) {
    if (i < 0 || i >= generators_) throw ShapeMismatch("vector entry outside ambient range");
    if (block_slot_[i] >= 0) yb(block_slot_[i]) = x;
  }
  PVector out = PVector::Constant(static_cast<Eigen::Index>(gens_.size()), PScalar(0));
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    PScalar v;
    if (gens_[g].in_block) {
      const int k = gens_[g].index;
      for (Eigen::Index j = 0; j < block; ++j)
        if (!yb(j).is_zero() && !transform_(k, j).is_zero()) v += transform_(k, j) * yb(j);
    } else {
      const PScalar* x = find(y, gens_[g].index);
      if (x) v = *x;
    }
    if (exponents_[g] >= 0) v = v.mod_prime_power(p_, exponents_[g]);
    out(static_cast<Eigen::Index>(g)) = v;
  }
  return out;
}

SparseVec CokernelStructure::lift(int i) const {
  const Gen& g = gens_.at(static_cast<std::size_t>(i));
  if (!g.in_block) return {{g.index, PScalar(1)}};
  SparseVec out;
  for (std::size_t j = 0; j < block_rows_.size(); ++j) {
    const PScalar& x = transform_inv_(static_cast<Eigen::Index>(j), g.index);
    if (!x.is_zero()) out.emplace_back(block_rows_[j], x);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace kanlim::linalg
