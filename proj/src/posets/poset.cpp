#include "kanlim/posets/poset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

FinPoset::FinPoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& relations)
    : names_(std::move(names)) {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (!lookup_.emplace(names_[i], i).second) throw NotAPoset("duplicate element '" + names_[i] + "'");
  }
  leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (auto [a, b] : relations) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ElementNotFound("relation refers to an unknown element");
    leq_[a * n + b] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (int j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq_[i * n + j] && leq_[j * n + i])
        throw NotAPoset("relations force " + names_[i] + " = " + names_[j]);

  lower_.assign(n, {});
  upper_.assign(n, {});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!less(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (less(a, c) && less(c, b)) cover = false;
      if (cover) {
        hasse_.emplace_back(a, b);
        lower_[b].push_back(a);
        upper_[a].push_back(b);
      }
    }
  }

  // Rank = longest chain below; sorting by rank gives a linear extension.
  std::vector<int> rank(n, -1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> below(n, 0);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      if (less(a, b)) ++below[b];
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
  for (int x : order) {
    int r = 0;
    for (int a : lower_[x]) r = std::max(r, rank[a] + 1);
    rank[x] = r;
    height_ = std::max(height_, r);
  }
  linear_ = order;
  std::stable_sort(linear_.begin(), linear_.end(), [&](int a, int b) { return rank[a] < rank[b]; });
}

FinPoset FinPoset::from_names(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& relations) {
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) idx[names[i]] = i;
  std::vector<std::pair<int, int>> rel;
  for (const auto& [a, b] : relations) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw ElementNotFound("unknown element '" + a + "'");
    if (ib == idx.end()) throw ElementNotFound("unknown element '" + b + "'");
    rel.emplace_back(ia->second, ib->second);
  }
  return FinPoset(std::move(names), rel);
}

int FinPoset::index(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) throw ElementNotFound("no element named '" + name + "'");
  return it->second;
}

std::vector<int> FinPoset::down_set(int x) const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a)
    if (leq(a, x)) out.push_back(a);
  return out;
}

std::vector<int> FinPoset::up_set(int x) const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a)
    if (leq(x, a)) out.push_back(a);
  return out;
}

std::vector<int> FinPoset::minimal_elements() const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a)
    if (lower_[a].empty()) out.push_back(a);
  return out;
}

bool is_monotone(const FinPoset& source, const FinPoset& target, const std::vector<int>& images) {
  if (static_cast<int>(images.size()) != source.size()) return false;
  for (int x : images)
    if (x < 0 || x >= target.size()) return false;
  for (auto [a, b] : source.hasse())
    if (!target.leq(images[a], images[b])) return false;
  return true;
}

PosetMap::PosetMap(FinPoset source, FinPoset target, std::vector<int> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.size()) throw NotMonotone("map does not cover every element");
  for (int x : images_)
    if (x < 0 || x >= target_.size()) throw ElementNotFound("image outside the target poset");
  for (auto [a, b] : source_.hasse())
    if (!target_.leq(images_[a], images_[b]))
      throw NotMonotone(source_.name(a) + " <= " + source_.name(b) + " is sent to " + target_.name(images_[a]) +
                        ", " + target_.name(images_[b]));
}

PosetMap PosetMap::from_names(const FinPoset& source, const FinPoset& target,
                              const std::vector<std::pair<std::string, std::string>>& assignment) {
  std::vector<int> images(static_cast<std::size_t>(source.size()), -1);
  for (const auto& [a, b] : assignment) images[source.index(a)] = target.index(b);
  return PosetMap(source, target, std::move(images));
}

PosetMap PosetMap::identity(const FinPoset& p) {
  std::vector<int> images(static_cast<std::size_t>(p.size()));
  std::iota(images.begin(), images.end(), 0);
  return PosetMap(p, p, std::move(images));
}

PosetMap PosetMap::constant(const FinPoset& source, const FinPoset& target, int value) {
  return PosetMap(source, target, std::vector<int>(static_cast<std::size_t>(source.size()), value));
}

PosetMap PosetMap::compose(const PosetMap& g) const {
  if (!(g.target_ == source_)) throw ShapeMismatch("poset maps do not compose");
  std::vector<int> images;
  for (int x : g.images_) images.push_back(images_[x]);
  return PosetMap(g.source_, target_, std::move(images));
}

SubPoset subposet(const FinPoset& p, const std::vector<int>& elements) {
  std::vector<std::string> names;
  for (int e : elements) names.push_back(p.name(e));
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i)
    for (int j = 0; j < static_cast<int>(elements.size()); ++j)
      if (i != j && p.leq(elements[i], elements[j])) rel.emplace_back(i, j);
  return {FinPoset(std::move(names), rel), elements};
}

PosetMap SubPoset::inclusion(const FinPoset& ambient) const { return PosetMap(poset, ambient, elements); }

FinPoset product(const FinPoset& p, const FinPoset& q) {
  std::vector<std::string> names;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < q.size(); ++b) names.push_back(posets::pair_name(p.name(a), q.name(b)));
  std::vector<std::pair<int, int>> rel;
  const int m = q.size();
  for (auto [a, a2] : p.hasse())
    for (int b = 0; b < m; ++b) rel.emplace_back(a * m + b, a2 * m + b);
  for (int a = 0; a < p.size(); ++a)
    for (auto [b, b2] : q.hasse()) rel.emplace_back(a * m + b, a * m + b2);
  return FinPoset(std::move(names), rel);
}

SubPoset slice_to(const PosetMap& f, int d) {
  if (d < 0 || d >= f.target().size()) throw ElementNotFound("slice point outside the target poset");
  std::vector<int> el;
  for (int c = 0; c < f.source().size(); ++c)
    if (f.target().leq(f(c), d)) el.push_back(c);
  return subposet(f.source(), el);
}

SubPoset slice_from(const PosetMap& f, int d) {
  if (d < 0 || d >= f.target().size()) throw ElementNotFound("slice point outside the target poset");
  std::vector<int> el;
  for (int c = 0; c < f.source().size(); ++c)
    if (f.target().leq(d, f(c))) el.push_back(c);
  return subposet(f.source(), el);
}

bool is_connected(const FinPoset& p) {
  if (p.size() == 0) return false;
  std::vector<int> comp(p.size());
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> root = [&](int x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
  for (auto [a, b] : p.hasse()) comp[root(a)] = root(b);
  for (int x = 0; x < p.size(); ++x)
    if (root(x) != root(0)) return false;
  return true;
}

bool is_cofinal(const PosetMap& f) {
  for (int d = 0; d < f.target().size(); ++d)
    if (!is_connected(slice_from(f, d).poset)) return false;
  return true;
}

std::string export_dot(const FinPoset& p, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << graph_name << "\" {\n  rankdir=BT;\n";
  for (const auto& n : p.names()) os << "  \"" << n << "\";\n";
  for (auto [a, b] : p.hasse()) os << "  \"" << p.name(a) << "\" -> \"" << p.name(b) << "\";\n";
  os << "}\n";
  return os.str();
}

namespace posets {

std::string beta(int n, int N) { return "beta_" + std::to_string(((n % N) + N) % N); }
std::string gamma(int n, int N) { return "gamma_" + std::to_string(((n % N) + N) % N); }
std::string zeta(int n, int N) { return "zeta_" + std::to_string(((n % N) + N) % N); }
std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

FinPoset interval() { return FinPoset::from_names({"0", "1"}, {{"0", "1"}}); }

FinPoset vee() {
  return FinPoset::from_names({"(1,0)", "(0,0)", "(0,1)"}, {{"(0,0)", "(1,0)"}, {"(0,0)", "(0,1)"}});
}

namespace {

void require_period(int N) {
  if (N < 2 || N % 2 != 0) throw InvalidComplex("period must be even and positive, got " + std::to_string(N));
}

}  // namespace

FinPoset crown(int N) {
  require_period(N);
  std::vector<std::string> names;
  for (int n = 0; n < N; ++n) names.push_back(beta(n, N));
  for (int n = 0; n < N; ++n) names.push_back(zeta(n, N));
  std::vector<std::pair<std::string, std::string>> rel;
  for (int n = 0; n < N; ++n) {
    rel.emplace_back(beta(n, N), zeta(n, N));
    rel.emplace_back(beta(n + 1, N), zeta(n, N));
  }
  return FinPoset::from_names(std::move(names), rel);
}

namespace {

FinPoset d_with(int N, bool literal) {
  require_period(N);
  std::vector<std::string> names;
  for (int n = 0; n < N; ++n) names.push_back(beta(n, N));
  for (int n = 0; n < N; ++n) names.push_back(gamma(n, N));
  for (int n = 0; n < N; ++n) names.push_back(zeta(n, N));
  std::vector<std::pair<std::string, std::string>> rel;
  for (int n = 0; n < N; ++n) {
    rel.emplace_back(beta(n, N), gamma(n, N));
    rel.emplace_back(beta(n + 1, N), gamma(n, N));
    rel.emplace_back(gamma(n, N), zeta(n, N));
    if (literal)
      rel.emplace_back(gamma(n + 1, N), beta(n, N));
    else
      rel.emplace_back(gamma(n + 1, N), zeta(n, N));
  }
  return FinPoset::from_names(std::move(names), rel);
}

}  // namespace

FinPoset d_poset(int N) { return d_with(N, false); }
FinPoset d_poset_literal(int N) { return d_with(N, true); }

PosetMap pr(int N) {
  FinPoset c = crown(N);
  FinPoset cc = product(c, c);
  FinPoset d = d_poset(N);
  std::vector<int> images;
  for (int a = 0; a < c.size(); ++a) {
    for (int b = 0; b < c.size(); ++b) {
      const bool za = a >= N, zb = b >= N;
      const int s = a % N, t = b % N;
      std::string img = (za && zb) ? zeta(s + t, N) : (!za && !zb) ? beta(s + t, N) : gamma(s + t, N);
      images.push_back(d.index(img));
    }
  }
  return PosetMap(cc, d, std::move(images));
}

PosetMap i_map(int N) {
  FinPoset c = crown(N);
  FinPoset d = d_poset(N);
  std::vector<int> images;
  for (int n = 0; n < N; ++n) images.push_back(d.index(gamma(n, N)));
  for (int n = 0; n < N; ++n) images.push_back(d.index(zeta(n, N)));
  return PosetMap(c, d, std::move(images));
}

PosetMap p_edge(const PosetMap& f, int d, int d_prime) {
  if (!f.target().leq(d, d_prime)) throw NotMonotone("p_edge needs d <= d'");
  SubPoset upper = slice_to(f, d_prime);
  FinPoset i = interval();
  std::vector<int> images;
  for (int c : upper.elements) images.push_back(f.target().leq(f(c), d) ? 0 : 1);
  return PosetMap(upper.poset, i, std::move(images));
}

PosetMap p_v() {
  FinPoset i = interval();
  FinPoset ii = product(i, i);
  std::vector<int> images(4, 0);
  images[3] = 1;
  return PosetMap(ii, i, std::move(images));
}

BPoset b_poset(const PosetMap& f, int d, int d_prime) {
  if (!f.target().leq(d, d_prime)) throw NotMonotone("B needs d <= d'");
  SubPoset lower = slice_to(f, d);
  SubPoset upper = slice_to(f, d_prime);
  const int nl = lower.poset.size();
  const int nu = upper.poset.size();
  std::vector<std::string> names;
  for (int c = 0; c < nl; ++c) names.push_back(pair_name(lower.poset.name(c), "0"));
  for (int c = 0; c < nu; ++c) names.push_back(upper.poset.name(c));
  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nl; ++b)
      if (a != b && lower.poset.leq(a, b)) rel.emplace_back(a, b);
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nu; ++b)
      if (a != b && upper.poset.leq(a, b)) rel.emplace_back(nl + a, nl + b);
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nu; ++b)
      if (f.source().leq(lower.elements[a], upper.elements[b])) rel.emplace_back(a, nl + b);
  FinPoset bp(std::move(names), rel);

  std::vector<int> pb, rb, jb;
  for (int a = 0; a < nl; ++a) {
    pb.push_back(0);
    const int amb = lower.elements[a];
    const int up = static_cast<int>(std::find(upper.elements.begin(), upper.elements.end(), amb) -
                                    upper.elements.begin());
    rb.push_back(up);
    jb.push_back(amb);
  }
  for (int b = 0; b < nu; ++b) {
    pb.push_back(1);
    rb.push_back(b);
    jb.push_back(upper.elements[b]);
  }
  PosetMap p_b(bp, interval(), pb);
  PosetMap r_b(bp, upper.poset, rb);
  PosetMap j_b(bp, f.source(), jb);
  return {bp, lower, upper, p_b, r_b, j_b};
}

namespace {

int cc_index(int N, bool za, int s, bool zb, int t) {
  const int a = (za ? N : 0) + ((s % N) + N) % N;
  const int b = (zb ? N : 0) + ((t % N) + N) % N;
  return a * 2 * N + b;
}

SubPoset zeta_slice(int N, int n) {
  PosetMap p = pr(N);
  return slice_to(p, p.target().index(zeta(n, N)));
}

SubPoset select_in_slice(int N, int n, const std::vector<int>& ambient) {
  SubPoset slice = zeta_slice(N, n);
  std::vector<int> local;
  for (int a : ambient) {
    auto it = std::find(slice.elements.begin(), slice.elements.end(), a);
    if (it == slice.elements.end()) throw ElementNotFound("element outside the slice over zeta_n");
    local.push_back(static_cast<int>(it - slice.elements.begin()));
  }
  SubPoset sub = subposet(slice.poset, local);
  return sub;
}

}  // namespace

SubPoset vo(int N, int n) {
  std::vector<int> amb;
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, true, s, true, n - s));
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, true, s, false, n - s));
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, false, s, true, n - s));
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, false, s, false, n - s));
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, false, s + 1, false, n - s));
  return select_in_slice(N, n, amb);
}

SubPoset w(int N, int n) {
  std::vector<int> amb;
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, true, s, true, n - s));
  for (int s = 0; s < N; ++s) amb.push_back(cc_index(N, false, s + 1, false, n - s));
  return select_in_slice(N, n, amb);
}

namespace {

std::string alpha(int s, int t, int N) {
  return "alpha_(" + std::to_string(((s % N) + N) % N) + "," + std::to_string(((t % N) + N) % N) + ")";
}

}  // namespace

FinPoset vy(int N, int n) {
  require_period(N);
  std::vector<std::string> names;
  for (int s = 0; s < N; ++s) names.push_back(alpha(s, n - s, N));
  for (int s = 0; s < N; ++s) names.push_back(pair_name(zeta(s, N), zeta(n - s, N)));
  for (int s = 0; s < N; ++s) names.push_back(pair_name(beta(s + 1, N), beta(n - s, N)));
  std::vector<std::pair<std::string, std::string>> rel;
  for (int s = 0; s < N; ++s) {
    const int t = n - s;
    rel.emplace_back(pair_name(beta(s + 1, N), beta(t, N)), alpha(s, t, N));
    rel.emplace_back(pair_name(beta(s, N), beta(t + 1, N)), alpha(s, t, N));
    rel.emplace_back(alpha(s, t, N), pair_name(zeta(s, N), zeta(t, N)));
  }
  return FinPoset::from_names(std::move(names), rel);
}

PosetMap g_map(int N, int n) {
  SubPoset src = vo(N, n);
  FinPoset tgt = vy(N, n);
  std::vector<int> images;
  for (int s = 0; s < N; ++s) images.push_back(tgt.index(pair_name(zeta(s, N), zeta(n - s, N))));
  for (int k = 0; k < 3; ++k)
    for (int s = 0; s < N; ++s) images.push_back(tgt.index(alpha(s, n - s, N)));
  for (int s = 0; s < N; ++s) images.push_back(tgt.index(pair_name(beta(s + 1, N), beta(n - s, N))));
  return PosetMap(src.poset, tgt, std::move(images));
}

PosetMap p_vy(int N, int n) {
  FinPoset src = vy(N, n);
  std::vector<int> images;
  for (int x = 0; x < src.size(); ++x) images.push_back(src.name(x).rfind("(zeta", 0) == 0 ? 1 : 0);
  return PosetMap(src, interval(), std::move(images));
}

PosetMap p_vo(int N, int n) {
  PosetMap p = pr(N);
  PosetMap edge = p_edge(p, p.target().index(gamma(n, N)), p.target().index(zeta(n, N)));
  SubPoset sub = vo(N, n);
  return edge.compose(sub.inclusion(edge.source()));
}

}  // namespace posets
}  // namespace kanlim
