#include "kanlim/palgebra/pscalar.hpp"

#include <numeric>
#include <ostream>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

}  // namespace

PScalar::PScalar(long long numerator, long long denominator) {
  if (denominator == 0) throw InvalidScalar("zero denominator");
  *this = from_wide(numerator, denominator);
}

PScalar::PScalar(const mpq_class& value) { *this = normalize_big(value); }

PScalar PScalar::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw InvalidScalar("cannot parse scalar '" + text + "'");
  if (q.get_den() == 0) throw InvalidScalar("zero denominator");
  q.canonicalize();
  return PScalar(q);
}

PScalar PScalar::from_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  PScalar r;
  if (fits(num) && fits(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  // Rebuild through GMP from the two 128-bit halves.
  auto to_big = [](i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi, lo;
    mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
    mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & ~std::uint64_t{0}));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
  };
  mpq_class q(to_big(num), to_big(den));
  q.canonicalize();
  return normalize_big(q);
}

PScalar PScalar::normalize_big(mpq_class value) {
  value.canonicalize();
  PScalar r;
  if (mpz_fits_slong_p(value.get_num_mpz_t()) && mpz_fits_slong_p(value.get_den_mpz_t())) {
    long n = mpz_get_si(value.get_num_mpz_t());
    long d = mpz_get_si(value.get_den_mpz_t());
    if (n > -kMax - 1 && d > -kMax - 1) {
      r.num_ = n;
      r.den_ = d;
      return r;
    }
  }
  r.big_ = std::make_shared<const mpq_class>(std::move(value));
  return r;
}

mpq_class PScalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

mpz_class PScalar::numerator() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(num_); }
mpz_class PScalar::denominator() const { return big_ ? mpz_class(big_->get_den()) : to_mpz(den_); }

int PScalar::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool PScalar::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int PScalar::valuation(int p) const {
  if (is_zero()) return kInfiniteValuation;
  int v = 0;
  if (!big_) {
    std::int64_t n = num_;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    std::int64_t d = den_;
    while (d % p == 0) {
      d /= p;
      --v;
    }
    return v;
  }
  mpz_class n = big_->get_num();
  mpz_class d = big_->get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
    d /= p;
    --v;
  }
  return v;
}

bool PScalar::is_plocal(int p) const {
  if (big_) return !mpz_divisible_ui_p(big_->get_den_mpz_t(), static_cast<unsigned long>(p));
  return den_ % p != 0;
}

PScalar PScalar::mod_prime_power(int p, int e) const {
  if (!is_plocal(p)) throw InvalidScalar(to_string() + " is not " + std::to_string(p) + "-local");
  if (e <= 0) return PScalar(0);
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  if (!big_ && den_ == 1 && m.fits_slong_p()) {
    long mm = m.get_si();
    long r = static_cast<long>(num_ % mm);
    if (r < 0) r += mm;
    return PScalar(r);
  }
  mpz_class inv;
  mpz_class d = denominator();
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (numerator() * inv) % m;
  if (r < 0) r += m;
  return PScalar(mpq_class(r));
}

std::string PScalar::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

PScalar PScalar::operator-() const {
  if (big_) return PScalar(mpq_class(-*big_));
  PScalar r = *this;
  r.num_ = -num_;
  return r;
}

PScalar operator+(const PScalar& a, const PScalar& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      i128 s = static_cast<i128>(a.num_) + b.num_;
      if (fits(s)) return PScalar(static_cast<long long>(s));
    }
    i128 g = std::gcd(a.den_, b.den_);
    i128 num = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
    i128 den = static_cast<i128>(a.den_ / g) * b.den_;
    return PScalar::from_wide(num, den);
  }
  return PScalar::normalize_big(a.to_mpq() + b.to_mpq());
}

PScalar operator-(const PScalar& a, const PScalar& b) { return a + (-b); }

PScalar operator*(const PScalar& a, const PScalar& b) {
  if (a.is_zero() || b.is_zero()) return PScalar(0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (!a.big_ && !b.big_) {
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    i128 num = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
    i128 den = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
    if (fits(num) && fits(den)) {
      PScalar r;
      r.num_ = static_cast<std::int64_t>(num);
      r.den_ = static_cast<std::int64_t>(den);
      return r;
    }
    return PScalar::from_wide(num, den);
  }
  return PScalar::normalize_big(a.to_mpq() * b.to_mpq());
}

PScalar operator/(const PScalar& a, const PScalar& b) {
  if (b.is_zero()) throw InvalidScalar("division by zero");
  if (!b.big_) {
    PScalar inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  return PScalar::normalize_big(a.to_mpq() / b.to_mpq());
}

bool operator==(const PScalar& a, const PScalar& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.to_mpq() == b.to_mpq();
}

bool operator<(const PScalar& a, const PScalar& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const PScalar& x) { return os << x.to_string(); }

PScalar prime_power(int p, int e) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return PScalar(mpq_class(m));
}

void require_odd_prime(int p) {
  bool prime = p > 2;
  for (int d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
  if (!prime) throw InvalidScalar("p must be an odd prime, got " + std::to_string(p));
}

PMatrix multiply(const PMatrix& a, const PMatrix& b) {
  if (a.cols() != b.rows()) throw CompositionError("matrix shapes do not compose");
  PMatrix out = zero_matrix(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const PScalar& bkj = b(k, j);
      if (bkj.is_zero()) continue;
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const PScalar& aik = a(i, k);
        if (!aik.is_zero()) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

bool is_zero(const PMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

}  // namespace kanlim
