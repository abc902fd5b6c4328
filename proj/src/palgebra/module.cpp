#include "kanlim/palgebra/module.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "kanlim/palgebra/errors.hpp"
#include "kanlim/palgebra/snf.hpp"

namespace kanlim {

using linalg::SparseVec;

FpModule::FpModule(int p, int free_rank, std::vector<int> torsion)
    : p_(p), free_rank_(free_rank), torsion_(std::move(torsion)) {
  if (free_rank < 0) throw InvalidScalar("negative free rank");
  for (int e : torsion_)
    if (e <= 0) throw InvalidScalar("torsion exponents must be positive");
  std::sort(torsion_.begin(), torsion_.end());
}

int FpModule::exponent(int i) const {
  if (i < 0 || i >= num_generators()) throw ShapeMismatch("generator index out of range");
  return i < static_cast<int>(torsion_.size()) ? torsion_[i] : -1;
}

std::vector<SparseVec> FpModule::relations() const {
  std::vector<SparseVec> out;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    out.push_back({{static_cast<int>(i), prime_power(p_, torsion_[i])}});
  return out;
}

PVector FpModule::normalize(PVector v) const {
  check_element(v);
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto k = static_cast<Eigen::Index>(i);
    v(k) = v(k).mod_prime_power(p_, torsion_[i]);
  }
  return v;
}

void FpModule::check_element(const PVector& v) const {
  if (v.size() != num_generators()) throw ShapeMismatch("element has wrong length for " + to_string());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_plocal(p_)) throw InvalidScalar(v(i).to_string() + " is not p-local");
}

std::string FpModule::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e : torsion_) {
    os << (first ? "" : " + ") << "Z/" << p_;
    if (e > 1) os << "^" << e;
    first = false;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " + ") << "Z_(" << p_ << ")";
    if (free_rank_ > 1) os << "^" << free_rank_;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FpModule& m) { return os << m.to_string(); }

ModuleMap::ModuleMap(FpModule source, FpModule target, PMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (source_.p() != target_.p()) throw PrimeMismatch("source and target use different primes");
  if (matrix_.rows() != target_.num_generators() || matrix_.cols() != source_.num_generators())
    throw ShapeMismatch("matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                        " for a map " + source_.to_string() + " -> " + target_.to_string());
  const int p = source_.p();
  for (Eigen::Index s = 0; s < matrix_.cols(); ++s) {
    const int es = source_.exponent(static_cast<int>(s));
    for (Eigen::Index t = 0; t < matrix_.rows(); ++t) {
      PScalar& x = matrix_(t, s);
      if (x.is_zero()) continue;
      if (!x.is_plocal(p)) throw InvalidScalar(x.to_string() + " is not p-local");
      const int et = target_.exponent(static_cast<int>(t));
      if (et < 0) {
        if (es >= 0) throw MapNotWellDefined("torsion generator sent to a free generator");
        continue;
      }
      if (es >= 0 && x.valuation(p) < et - es)
        throw MapNotWellDefined("entry " + x.to_string() + " does not respect the order of generator " +
                                std::to_string(s));
      x = x.mod_prime_power(p, et);
    }
  }
}

ModuleMap ModuleMap::zero(const FpModule& source, const FpModule& target) {
  return ModuleMap(source, target, zero_matrix(target.num_generators(), source.num_generators()));
}

ModuleMap ModuleMap::identity(const FpModule& m) { return ModuleMap(m, m, identity_matrix(m.num_generators())); }

ModuleMap ModuleMap::scalar(const FpModule& m, const PScalar& c) {
  PMatrix a = identity_matrix(m.num_generators());
  for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, i) = c;
  return ModuleMap(m, m, std::move(a));
}

PVector ModuleMap::apply(const PVector& x) const {
  source_.check_element(x);
  PVector y = PVector::Constant(target_.num_generators(), PScalar(0));
  for (Eigen::Index s = 0; s < x.size(); ++s) {
    if (x(s).is_zero()) continue;
    for (Eigen::Index t = 0; t < y.size(); ++t)
      if (!matrix_(t, s).is_zero()) y(t) += matrix_(t, s) * x(s);
  }
  return target_.normalize(std::move(y));
}

ModuleMap ModuleMap::compose(const ModuleMap& g) const {
  if (g.target_ != source_)
    throw CompositionError("cannot compose " + g.source_.to_string() + " -> " + g.target_.to_string() +
                           " with " + source_.to_string() + " -> " + target_.to_string());
  return ModuleMap(g.source_, target_, multiply(matrix_, g.matrix_));
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
  if (o.source_ != source_ || o.target_ != target_) throw CompositionError("adding maps that are not parallel");
  return ModuleMap(source_, target_, matrix_ + o.matrix_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const { return *this + (-o); }

ModuleMap ModuleMap::operator-() const { return scaled(PScalar(-1)); }

ModuleMap ModuleMap::scaled(const PScalar& c) const {
  PMatrix m = matrix_;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) m(i, j) *= c;
  return ModuleMap(source_, target_, std::move(m));
}

bool operator==(const ModuleMap& a, const ModuleMap& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) throw CompositionError("comparing maps that are not parallel");
  return a.matrix_ == b.matrix_;
}

bool ModuleMap::is_mono() const { return subquotients(*this).kernel.is_zero(); }
bool ModuleMap::is_epi() const { return subquotients(*this).cokernel.is_zero(); }

FpModule canonical_form(int generators, const PMatrix& relations, int p) {
  require_plocal(relations, p);
  if (relations.cols() > 0 && relations.rows() != generators)
    throw ShapeMismatch("relation matrix rows must match generator count");
  linalg::CokernelStructure c(linalg::columns(relations), generators, p);
  return FpModule(p, c.free_rank(), c.torsion());
}

namespace {

linalg::CokernelStructure quotient_of(const linalg::ColumnEchelon& span, const std::vector<SparseVec>& rels,
                                      int p) {
  std::vector<SparseVec> coords;
  coords.reserve(rels.size());
  for (const auto& r : rels) {
    auto c = span.solve(r);
    if (!c) throw MapNotWellDefined("relation does not lie in the generated submodule");
    coords.push_back(std::move(*c));
  }
  return linalg::CokernelStructure(std::move(coords), span.rank(), p);
}

SparseVec unit(int i) { return {{i, PScalar(1)}}; }

std::vector<SparseVec> units(int n) {
  std::vector<SparseVec> out;
  for (int i = 0; i < n; ++i) out.push_back(unit(i));
  return out;
}

SparseVec apply_sparse(const PMatrix& m, const SparseVec& x) {
  PVector y = PVector::Constant(m.rows(), PScalar(0));
  for (const auto& [j, c] : x)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) y(i) += m(i, j) * c;
  return linalg::to_sparse(y);
}

}  // namespace

Subquotient::Subquotient(std::vector<SparseVec> gens, const std::vector<SparseVec>& rels, int ambient, int p)
    : ambient_(ambient),
      p_(p),
      span_(std::move(gens), ambient, p, false),
      quotient_(quotient_of(span_, rels, p)) {
  module_ = FpModule(p, quotient_.free_rank(), quotient_.torsion());
  const int n = module_.num_generators();
  embedding_ = zero_matrix(ambient, n);
  for (int i = 0; i < n; ++i) {
    SparseVec v;
    for (const auto& [k, c] : quotient_.lift(i)) linalg::axpy(v, -c, span_.basis()[k]);
    for (const auto& [r, x] : v) embedding_(r, i) = x;
  }
}

SparseVec Subquotient::representative(int i) const { return linalg::column(embedding_, i); }

PVector Subquotient::coordinates(const SparseVec& x) const {
  auto c = span_.solve(x);
  if (!c) throw MapNotWellDefined("vector does not lie in the generated submodule");
  return quotient_.project(*c);
}

bool Subquotient::contains(const SparseVec& x) const { return span_.solve(x).has_value(); }

ModuleMap induced_map(const Subquotient& source, const Subquotient& target, const PMatrix& ambient_map) {
  if (ambient_map.cols() != source.ambient() || ambient_map.rows() != target.ambient())
    throw CompositionError("ambient map has the wrong shape");
  const int n = source.module().num_generators();
  PMatrix m = zero_matrix(target.module().num_generators(), n);
  for (int i = 0; i < n; ++i) m.col(i) = target.coordinates(apply_sparse(ambient_map, source.representative(i)));
  return ModuleMap(source.module(), target.module(), std::move(m));
}

std::vector<SparseVec> with_relations(const PMatrix& m, const FpModule& target) {
  auto cols = linalg::columns(m);
  for (auto& r : target.relations()) cols.push_back(std::move(r));
  return cols;
}

std::vector<SparseVec> kernel_top(const std::vector<SparseVec>& cols, int total_rows, int top, int p) {
  linalg::ColumnEchelon e(cols, total_rows, p, true);
  std::vector<SparseVec> out;
  for (const auto& k : e.kernel()) {
    SparseVec v;
    for (const auto& entry : k)
      if (entry.first < top) v.push_back(entry);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

Subquotients subquotients(const ModuleMap& f) {
  const FpModule& m = f.source();
  const FpModule& n = f.target();
  const int p = f.p();
  const int sm = m.num_generators();
  const int sn = n.num_generators();
  Subquotients out;

  Subquotient ker(kernel_top(with_relations(f.matrix(), n), sn, sm, p), m.relations(), sm, p);
  out.kernel = ker.module();
  out.kernel_inclusion = ModuleMap(ker.module(), m, ker.embedding());

  Subquotient im(with_relations(f.matrix(), n), n.relations(), sn, p);
  out.image = im.module();
  out.image_inclusion = ModuleMap(im.module(), n, im.embedding());
  PMatrix co = zero_matrix(im.module().num_generators(), sm);
  for (int j = 0; j < sm; ++j) co.col(j) = im.coordinates(linalg::column(f.matrix(), j));
  out.corestriction = ModuleMap(m, im.module(), std::move(co));

  Subquotient cok(units(sn), with_relations(f.matrix(), n), sn, p);
  out.cokernel = cok.module();
  PMatrix pr = zero_matrix(cok.module().num_generators(), sn);
  for (int j = 0; j < sn; ++j) pr.col(j) = cok.coordinates(unit(j));
  out.cokernel_projection = ModuleMap(n, cok.module(), std::move(pr));
  return out;
}

ModuleMap kernel_inclusion(const ModuleMap& f) {
  const int sm = f.source().num_generators();
  Subquotient ker(kernel_top(with_relations(f.matrix(), f.target()), f.target().num_generators(), sm, f.p()),
                  f.source().relations(), sm, f.p());
  return ModuleMap(ker.module(), f.source(), ker.embedding());
}

ModuleMap cokernel_projection(const ModuleMap& f) {
  const int sn = f.target().num_generators();
  Subquotient cok(units(sn), with_relations(f.matrix(), f.target()), sn, f.p());
  PMatrix pr = zero_matrix(cok.module().num_generators(), sn);
  for (int j = 0; j < sn; ++j) pr.col(j) = cok.coordinates(unit(j));
  return ModuleMap(f.target(), cok.module(), std::move(pr));
}

ModuleMap lift_through(const ModuleMap& f, const ModuleMap& g) {
  if (f.target() != g.target()) throw CompositionError("lift_through needs a common target");
  const int sa = f.source().num_generators();
  const int sb = g.source().num_generators();
  linalg::ColumnEchelon e(with_relations(g.matrix(), g.target()), g.target().num_generators(), f.p(), true);
  PMatrix h = zero_matrix(sb, sa);
  for (int a = 0; a < sa; ++a) {
    auto c = e.solve_columns(linalg::column(f.matrix(), a));
    if (!c) throw MapNotWellDefined("map does not factor through the given map");
    for (const auto& [k, x] : *c)
      if (k < sb) h(k, a) = x;
  }
  return ModuleMap(f.source(), g.source(), std::move(h));
}

ModuleMap descend_through(const ModuleMap& f, const ModuleMap& q) {
  if (f.source() != q.source()) throw CompositionError("descend_through needs a common source");
  const int sb = q.source().num_generators();
  const int sd = q.target().num_generators();
  linalg::ColumnEchelon e(with_relations(q.matrix(), q.target()), sd, f.p(), true);
  PMatrix h = zero_matrix(f.target().num_generators(), sd);
  for (int d = 0; d < sd; ++d) {
    auto c = e.solve_columns(unit(d));
    if (!c) throw MapNotWellDefined("map to descend through is not onto");
    SparseVec b;
    for (const auto& entry : *c)
      if (entry.first < sb) b.push_back(entry);
    h.col(d) = linalg::to_dense(apply_sparse(f.matrix(), b), f.target().num_generators());
  }
  return ModuleMap(q.target(), f.target(), std::move(h));
}

namespace {

struct Slot {
  int exponent;
  std::size_t group;
  int local;
};

/// Canonical ordering of tagged generators: torsion ascending, then free,
/// stable otherwise. Returns the module and the position of every slot.
FpModule arrange(std::vector<Slot>& slots, std::vector<int>& position, int p) {
  std::vector<std::size_t> order(slots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    int e = slots[i].exponent;
    return e < 0 ? std::numeric_limits<int>::max() : e;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  position.assign(slots.size(), -1);
  std::vector<int> torsion;
  int free_rank = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    position[order[k]] = static_cast<int>(k);
    if (slots[order[k]].exponent < 0)
      ++free_rank;
    else
      torsion.push_back(slots[order[k]].exponent);
  }
  return FpModule(p, free_rank, std::move(torsion));
}

}  // namespace

DirectSum direct_sum(const std::vector<FpModule>& ms, int p) {
  DirectSum out;
  out.summands = ms;
  std::vector<Slot> slots;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].p() != p) throw PrimeMismatch("summand over a different prime");
    for (int j = 0; j < ms[k].num_generators(); ++j) slots.push_back({ms[k].exponent(j), k, j});
  }
  std::vector<int> position;
  out.module = arrange(slots, position, p);
  out.index.resize(ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) out.index[k].assign(static_cast<std::size_t>(ms[k].num_generators()), -1);
  for (std::size_t i = 0; i < slots.size(); ++i) out.index[slots[i].group][slots[i].local] = position[i];
  return out;
}

ModuleMap DirectSum::injection(std::size_t k) const {
  PMatrix m = zero_matrix(module.num_generators(), summands.at(k).num_generators());
  for (std::size_t j = 0; j < index[k].size(); ++j) m(index[k][j], static_cast<Eigen::Index>(j)) = PScalar(1);
  return ModuleMap(summands[k], module, std::move(m));
}

ModuleMap DirectSum::projection(std::size_t k) const {
  PMatrix m = zero_matrix(summands.at(k).num_generators(), module.num_generators());
  for (std::size_t j = 0; j < index[k].size(); ++j) m(static_cast<Eigen::Index>(j), index[k][j]) = PScalar(1);
  return ModuleMap(module, summands[k], std::move(m));
}

ModuleMap block_map(const DirectSum& src, const DirectSum& tgt, const std::vector<std::vector<ModuleMap>>& blocks) {
  PMatrix m = zero_matrix(tgt.module.num_generators(), src.module.num_generators());
  for (std::size_t i = 0; i < blocks.size() && i < tgt.summands.size(); ++i) {
    for (std::size_t j = 0; j < blocks[i].size() && j < src.summands.size(); ++j) {
      const PMatrix& b = blocks[i][j].matrix();
      if (b.size() == 0) continue;
      if (blocks[i][j].source() != src.summands[j] || blocks[i][j].target() != tgt.summands[i])
        throw CompositionError("block does not match the summands");
      for (Eigen::Index c = 0; c < b.cols(); ++c)
        for (Eigen::Index r = 0; r < b.rows(); ++r)
          if (!b(r, c).is_zero()) m(tgt.index[i][r], src.index[j][c]) = b(r, c);
    }
  }
  return ModuleMap(src.module, tgt.module, std::move(m));
}

TensorProduct tensor(const FpModule& m, const FpModule& n) {
  if (m.p() != n.p()) throw PrimeMismatch("tensor of modules over different primes");
  TensorProduct out;
  out.left = m;
  out.right = n;
  std::vector<Slot> slots;
  for (int i = 0; i < m.num_generators(); ++i) {
    for (int j = 0; j < n.num_generators(); ++j) {
      int a = m.exponent(i);
      int b = n.exponent(j);
      int e = a < 0 ? b : (b < 0 ? a : std::min(a, b));
      slots.push_back({e, static_cast<std::size_t>(i), j});
    }
  }
  std::vector<int> position;
  out.module = arrange(slots, position, m.p());
  out.index.assign(static_cast<std::size_t>(m.num_generators()),
                   std::vector<int>(static_cast<std::size_t>(n.num_generators()), -1));
  for (std::size_t s = 0; s < slots.size(); ++s) out.index[slots[s].group][slots[s].local] = position[s];
  return out;
}

FpModule tor(const FpModule& m, const FpModule& n) {
  if (m.p() != n.p()) throw PrimeMismatch("Tor of modules over different primes");
  std::vector<int> torsion;
  for (int a : m.torsion())
    for (int b : n.torsion()) torsion.push_back(std::min(a, b));
  return FpModule(m.p(), 0, std::move(torsion));
}

TensorAndTor tensor_and_tor(const FpModule& m, const FpModule& n) { return {tensor(m, n).module, tor(m, n)}; }

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g, const TensorProduct& src, const TensorProduct& tgt) {
  if (src.left != f.source() || src.right != g.source() || tgt.left != f.target() || tgt.right != g.target())
    throw CompositionError("tensor layouts do not match the maps");
  PMatrix m = zero_matrix(tgt.module.num_generators(), src.module.num_generators());
  const PMatrix& a = f.matrix();
  const PMatrix& b = g.matrix();
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index i2 = 0; i2 < a.rows(); ++i2) {
      if (a(i2, i).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index j2 = 0; j2 < b.rows(); ++j2) {
          if (b(j2, j).is_zero()) continue;
          m(tgt.index[i2][j2], src.index[i][j]) += a(i2, i) * b(j2, j);
        }
    }
  return ModuleMap(src.module, tgt.module, std::move(m));
}

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g) {
  return tensor_maps(f, g, tensor(f.source(), g.source()), tensor(f.target(), g.target()));
}

}  // namespace kanlim
