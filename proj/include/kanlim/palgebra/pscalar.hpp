#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>

#include <Eigen/Core>

namespace kanlim {

/// Exact rational number, used as an element of the p-local integers Z_(p).
///
/// Values that fit into a pair of 64-bit integers are kept inline; anything
/// larger spills into a shared, immutable GMP rational. The fraction is always
/// fully reduced with a positive denominator. Membership in Z_(p) depends on
/// the prime, so it is checked by `is_plocal(p)` rather than stored.
class PScalar {
 public:
  static constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

  PScalar() = default;
  PScalar(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  PScalar(long long numerator, long long denominator);
  explicit PScalar(const mpq_class& value);

  static PScalar parse(const std::string& text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  int sign() const;
  bool is_integer() const;

  /// p-adic valuation of the value; kInfiniteValuation for zero.
  int valuation(int p) const;
  bool is_plocal(int p) const;
  /// True when the value is a unit of Z_(p) (valuation zero).
  bool is_unit(int p) const { return valuation(p) == 0; }

  /// Representative in [0, p^e) of the class modulo p^e. Requires is_plocal(p).
  PScalar mod_prime_power(int p, int e) const;

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  std::string to_string() const;

  PScalar operator-() const;
  friend PScalar operator+(const PScalar& a, const PScalar& b);
  friend PScalar operator-(const PScalar& a, const PScalar& b);
  friend PScalar operator*(const PScalar& a, const PScalar& b);
  friend PScalar operator/(const PScalar& a, const PScalar& b);
  PScalar& operator+=(const PScalar& o) { return *this = *this + o; }
  PScalar& operator-=(const PScalar& o) { return *this = *this - o; }
  PScalar& operator*=(const PScalar& o) { return *this = *this * o; }
  PScalar& operator/=(const PScalar& o) { return *this = *this / o; }

  friend bool operator==(const PScalar& a, const PScalar& b);
  friend bool operator!=(const PScalar& a, const PScalar& b) { return !(a == b); }
  friend bool operator<(const PScalar& a, const PScalar& b);

 private:
  static PScalar from_wide(__int128 num, __int128 den);
  static PScalar normalize_big(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const PScalar& x);

/// p^e as an exact scalar.
PScalar prime_power(int p, int e);

/// Throws InvalidScalar unless `p` is an odd prime.
void require_odd_prime(int p);

}  // namespace kanlim

namespace Eigen {

template <>
struct NumTraits<kanlim::PScalar> : GenericNumTraits<kanlim::PScalar> {
  using Real = kanlim::PScalar;
  using NonInteger = kanlim::PScalar;
  using Nested = kanlim::PScalar;
  using Literal = kanlim::PScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline Real highest() { return Real(std::numeric_limits<long long>::max()); }
  static inline Real lowest() { return Real(std::numeric_limits<long long>::min() + 1); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace kanlim {

using PMatrix = Eigen::Matrix<PScalar, Eigen::Dynamic, Eigen::Dynamic>;
using PVector = Eigen::Matrix<PScalar, Eigen::Dynamic, 1>;

inline PMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return PMatrix::Constant(rows, cols, PScalar(0));
}
inline PMatrix identity_matrix(Eigen::Index n) {
  PMatrix m = zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = PScalar(1);
  return m;
}

/// Product that skips zero entries; exact, and much faster than the generic
/// kernel on the sparse matrices that dominate this library.
PMatrix multiply(const PMatrix& a, const PMatrix& b);
bool is_zero(const PMatrix& m);

}  // namespace kanlim
