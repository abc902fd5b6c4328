#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kanlim {

/// Finite poset on named elements, stored with its full order relation and
/// its Hasse diagram (covering relations).
class FinPoset {
 public:
  FinPoset() = default;
  /// Order generated by `relations` (pairs a <= b); throws NotAPoset on cycles.
  FinPoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& relations);
  static FinPoset from_names(std::vector<std::string> names,
                             const std::vector<std::pair<std::string, std::string>>& relations);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  /// Throws ElementNotFound.
  int index(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup_.count(name) > 0; }

  bool leq(int a, int b) const { return leq_[a * size() + b]; }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  /// Covering relations (a, b): a < b with nothing strictly between.
  const std::vector<std::pair<int, int>>& hasse() const { return hasse_; }
  /// Hasse edges ending in b / starting in a.
  const std::vector<int>& lower_covers(int b) const { return lower_[b]; }
  const std::vector<int>& upper_covers(int a) const { return upper_[a]; }
  /// Longest chain, counted in edges.
  int height() const { return height_; }
  /// Elements ordered so that a < b implies a comes first.
  const std::vector<int>& linear_extension() const { return linear_; }

  std::vector<int> down_set(int x) const;
  std::vector<int> up_set(int x) const;
  std::vector<int> minimal_elements() const;

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> lookup_;
  std::vector<char> leq_;
  std::vector<std::pair<int, int>> hasse_;
  std::vector<std::vector<int>> lower_, upper_;
  std::vector<int> linear_;
  int height_ = 0;
};

/// Monotone map of finite posets.
class PosetMap {
 public:
  PosetMap() = default;
  /// Throws NotMonotone.
  PosetMap(FinPoset source, FinPoset target, std::vector<int> images);
  static PosetMap from_names(const FinPoset& source, const FinPoset& target,
                             const std::vector<std::pair<std::string, std::string>>& assignment);
  static PosetMap identity(const FinPoset& p);
  static PosetMap constant(const FinPoset& source, const FinPoset& target, int value);

  const FinPoset& source() const { return source_; }
  const FinPoset& target() const { return target_; }
  int operator()(int c) const { return images_.at(c); }
  const std::vector<int>& images() const { return images_; }

  PosetMap compose(const PosetMap& g) const;  // this after g

 private:
  FinPoset source_;
  FinPoset target_;
  std::vector<int> images_;
};

bool is_monotone(const FinPoset& source, const FinPoset& target, const std::vector<int>& images);

/// Sub-poset on the given elements (in the given order) with the induced order.
struct SubPoset {
  FinPoset poset;
  std::vector<int> elements;  // position in the ambient poset
  PosetMap inclusion(const FinPoset& ambient) const;
};
SubPoset subposet(const FinPoset& p, const std::vector<int>& elements);

/// Product order; element (a, b) is named "(name_a,name_b)" and sits at
/// a * |Q| + b.
FinPoset product(const FinPoset& p, const FinPoset& q);
/// The slice C -> d = {c | f(c) <= d}.
SubPoset slice_to(const PosetMap& f, int d);
/// The slice d -> C = {c | d <= f(c)}.
SubPoset slice_from(const PosetMap& f, int d);
bool is_connected(const FinPoset& p);
/// For every d the set {c | d <= f(c)} is nonempty and connected.
bool is_cofinal(const PosetMap& f);

std::string export_dot(const FinPoset& p, const std::string& graph_name = "P");

namespace posets {

/// I = {0 < 1}.
FinPoset interval();
/// V = {(1,0), (0,0), (0,1)} with (0,0) minimal.
FinPoset vee();
/// Crown C_N: beta_n <= zeta_n, beta_{n+1} <= zeta_n (indices mod N).
FinPoset crown(int N);
/// D_N: beta_n <= gamma_n, beta_{n+1} <= gamma_n, gamma_n <= zeta_n, gamma_{n+1} <= zeta_n.
FinPoset d_poset(int N);
/// D_N with the relation set gamma_{n+1} <= beta_n in place of gamma_{n+1} <= zeta_n;
/// constructing it throws NotAPoset.
FinPoset d_poset_literal(int N);

std::string beta(int n, int N);
std::string gamma(int n, int N);
std::string zeta(int n, int N);
std::string pair_name(const std::string& a, const std::string& b);

/// Subposets of (C_N x C_N -> zeta_n) along pr.
SubPoset vo(int N, int n);
SubPoset w(int N, int n);
FinPoset vy(int N, int n);

/// B = (C -> d) x I glued along (C -> d) x {1} with (C -> d').
struct BPoset {
  FinPoset poset;
  SubPoset lower;  // C -> d
  SubPoset upper;  // C -> d'
  PosetMap p_b;    // B -> I
  PosetMap r_b;    // B -> (C -> d')
  PosetMap j_b;    // B -> C
};
BPoset b_poset(const PosetMap& f, int d, int d_prime);

PosetMap pr(int N);
PosetMap i_map(int N);
/// (C -> d') -> I sending c to 0 iff f(c) <= d.
PosetMap p_edge(const PosetMap& f, int d, int d_prime);
/// I x I -> I, (1,1) -> 1, everything else -> 0.
PosetMap p_v();
PosetMap g_map(int N, int n);
PosetMap p_vy(int N, int n);
/// p_{gamma_n}^{zeta_n} restricted to VO_n.
PosetMap p_vo(int N, int n);

}  // namespace posets
}  // namespace kanlim
