#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// A CycNum stores a numerator polynomial in zeta_m with integer coefficients
// and one positive common denominator. The polynomial is always reduced
// modulo the m-th cyclotomic polynomial, so its support lies in
// [0, phi(m)) and the representation for a fixed conductor is unique.
// Conductors congruent to 2 mod 4 are folded onto m/2 (Q(zeta_2k) = Q(zeta_k)
// for odd k) and rational values always carry conductor 1. Values that live
// in a proper subfield of Q(zeta_m) for other reasons keep conductor m;
// equality and ordering lift both operands to the lcm conductor.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cliffcode/errors.hpp"

namespace cliffcode {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::atomic<long long>& conductor_cap_storage() {
  static std::atomic<long long> cap{1LL << 20};
  return cap;
}

struct CyclotomicField {
  int conductor = 1;
  int degree = 1;                 // phi(conductor)
  std::vector<long long> minpoly;  // monic, minpoly[degree] == 1
};

inline std::vector<long long> divide_monic(std::vector<long long> num,
                                           const std::vector<long long>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<long long> quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    const long long c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  return quot;
}

inline const CyclotomicField& field(int m);

inline std::unique_ptr<CyclotomicField> build_field(int m) {
  auto f = std::make_unique<CyclotomicField>();
  f->conductor = m;
  std::vector<long long> poly(static_cast<std::size_t>(m) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) poly = divide_monic(std::move(poly), field(d).minpoly);
  }
  f->degree = static_cast<int>(poly.size()) - 1;
  f->minpoly = std::move(poly);
  return f;
}

/// Cached cyclotomic data per conductor. Entries are never evicted, so the
/// returned reference stays valid for the program lifetime.
inline const CyclotomicField& field(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
  }
  // Built outside the lock: construction recurses into field(d) for d | m.
  auto built = build_field(m);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(m, std::move(built));
  return *it->second;
}

inline int normalized_conductor(int m) {
  if (m % 4 == 2) return m / 2;
  return m;
}

}  // namespace detail

/// Largest conductor any arithmetic result may take. Default 2^20.
inline long long conductor_cap() { return detail::conductor_cap_storage().load(); }
inline void set_conductor_cap(long long cap) { detail::conductor_cap_storage().store(cap); }

inline int lcm_conductor(int a, int b) {
  const long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > conductor_cap()) {
    throw CapExceeded("conductor overflow: lcm of conductors " + std::to_string(a) + " and " +
                      std::to_string(b) + " is " + std::to_string(l) + ", above cap " +
                      std::to_string(conductor_cap()));
  }
  return static_cast<int>(l);
}

class CycNum {
 public:
  /// (num/den) * zeta^exponent at the conductor of the enclosing document.
  struct Term {
    BigInt num;
    BigInt den;
    long long exponent = 0;
  };

  CycNum() = default;
  CycNum(long long v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) coeffs_.emplace_back(v);
  }

  static CycNum rational(BigInt num, BigInt den = 1) {
    if (den == 0) throw InvalidArgument("CycNum: zero denominator");
    CycNum r;
    if (num != 0) r.coeffs_.push_back(std::move(num));
    r.den_ = std::move(den);
    r.normalize();
    return r;
  }

  /// zeta_m^k.
  static CycNum root_of_unity(int m, long long k) {
    if (m <= 0) throw InvalidArgument("CycNum: conductor must be positive");
    std::vector<BigInt> poly(static_cast<std::size_t>(m));
    poly[static_cast<std::size_t>(((k % m) + m) % m)] = 1;
    return from_power_coefficients(m, std::move(poly), 1);
  }

  /// Any representative sum_k (num_k/den) zeta_m^k with exponent k taken
  /// mod m; the result is canonical.
  static CycNum from_power_coefficients(int m, std::vector<BigInt> nums, BigInt den) {
    if (m <= 0) throw InvalidArgument("CycNum: conductor must be positive");
    if (den == 0) throw InvalidArgument("CycNum: zero denominator");
    if (m > conductor_cap()) {
      throw CapExceeded("conductor " + std::to_string(m) + " above cap " +
                        std::to_string(conductor_cap()));
    }
    std::vector<BigInt> poly(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < nums.size(); ++k) poly[k % static_cast<std::size_t>(m)] += nums[k];
    int target = m;
    if (m % 4 == 2) {
      // zeta_m = -zeta_h^((h+1)/2) with h = m/2 odd.
      const int h = m / 2;
      std::vector<BigInt> folded(static_cast<std::size_t>(h));
      for (int k = 0; k < m; ++k) {
        if (poly[static_cast<std::size_t>(k)] == 0) continue;
        const auto e = static_cast<std::size_t>((static_cast<long long>(k) * ((h + 1) / 2)) % h);
        if (k % 2 == 0)
          folded[e] += poly[static_cast<std::size_t>(k)];
        else
          folded[e] -= poly[static_cast<std::size_t>(k)];
      }
      poly = std::move(folded);
      target = h;
    }
    CycNum r;
    r.conductor_ = target;
    r.den_ = std::move(den);
    r.coeffs_ = reduce(target, std::move(poly));
    r.normalize();
    return r;
  }

  static CycNum from_terms(int m, std::span<const Term> terms) {
    if (m <= 0) throw InvalidArgument("CycNum: conductor must be positive");
    BigInt den = 1;
    for (const auto& t : terms) {
      if (t.den == 0) throw InvalidArgument("CycNum: zero denominator in term");
      den = boost::multiprecision::lcm(den, abs(t.den));
    }
    std::vector<BigInt> poly(static_cast<std::size_t>(m));
    for (const auto& t : terms) {
      const auto k = static_cast<std::size_t>(((t.exponent % m) + m) % m);
      BigInt scaled = t.num * (den / abs(t.den));
      if (t.den < 0) scaled = -scaled;
      poly[k] += scaled;
    }
    return from_power_coefficients(m, std::move(poly), std::move(den));
  }

  int conductor() const { return conductor_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return conductor_ == 1; }
  const BigInt& denominator() const { return den_; }

  /// Numerator coefficient of zeta^k at this value's own conductor.
  BigInt numerator(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= coeffs_.size()) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /// Rational value; only meaningful when is_rational().
  std::pair<BigInt, BigInt> as_rational() const {
    return {is_zero() ? BigInt(0) : coeffs_[0], den_};
  }

  /// Reduced power-basis numerators at conductor L (a multiple of ours),
  /// length phi(L), sharing denominator().
  std::vector<BigInt> numerators_at(int L) const {
    const auto& f = detail::field(L);
    std::vector<BigInt> out(static_cast<std::size_t>(f.degree));
    if (is_zero()) return out;
    if (L == conductor_) return coeffs_;
    if (L % conductor_ != 0) {
      throw InvalidArgument("CycNum: conductor " + std::to_string(L) + " is not a multiple of " +
                            std::to_string(conductor_));
    }
    const int step = L / conductor_;
    std::vector<BigInt> poly(static_cast<std::size_t>(L));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[k * static_cast<std::size_t>(step)] = coeffs_[k];
    return reduce(L, std::move(poly));
  }

  /// Nonzero terms at conductor L, each coefficient in lowest terms.
  std::vector<Term> terms(int L) const {
    std::vector<Term> out;
    const auto nums = numerators_at(L);
    for (std::size_t k = 0; k < nums.size(); ++k) {
      if (nums[k] == 0) continue;
      BigInt g = boost::multiprecision::gcd(nums[k], den_);
      out.push_back({nums[k] / g, den_ / g, static_cast<long long>(k)});
    }
    return out;
  }

  std::complex<double> embed() const {
    std::complex<double> acc{0.0, 0.0};
    if (is_zero()) return acc;
    const double den = den_.convert_to<double>();
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / conductor_;
      acc += (coeffs_[k].convert_to<double>() / den) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
  }

  CycNum conj() const {
    if (conductor_ == 1 || is_zero()) return *this;
    const int m = conductor_;
    std::vector<BigInt> poly(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      poly[(static_cast<std::size_t>(m) - k) % static_cast<std::size_t>(m)] = coeffs_[k];
    }
    CycNum r;
    r.conductor_ = m;
    r.den_ = den_;
    r.coeffs_ = reduce(m, std::move(poly));
    r.normalize();
    return r;
  }

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) { return add(a, b, false); }
  friend CycNum operator-(const CycNum& a, const CycNum& b) { return add(a, b, true); }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.conductor_ == 1) return b.scaled(a.coeffs_[0], a.den_);
    if (b.conductor_ == 1) return a.scaled(b.coeffs_[0], b.den_);
    const int L = a.conductor_ == b.conductor_ ? a.conductor_ : lcm_conductor(a.conductor_, b.conductor_);
    const auto ca = a.numerators_at(L);
    const auto cb = b.numerators_at(L);
    std::vector<BigInt> prod(ca.size() + cb.size() - 1);
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i] == 0) continue;
      for (std::size_t j = 0; j < cb.size(); ++j) {
        if (cb[j] == 0) continue;
        prod[i + j] += ca[i] * cb[j];
      }
    }
    CycNum r;
    r.conductor_ = L;
    r.den_ = a.den_ * b.den_;
    r.coeffs_ = reduce(L, std::move(prod));
    r.normalize();
    return r;
  }

  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  /// Division by a nonzero integer (the only inversion the library needs).
  CycNum divided_by(const BigInt& d) const {
    if (d == 0) throw InvalidArgument("CycNum: division by zero");
    if (is_zero()) return {};
    CycNum r = *this;
    r.den_ *= d;
    r.normalize();
    return r;
  }

  CycNum pow(unsigned long long e) const {
    CycNum result(1);
    CycNum base = *this;
    while (e != 0) {
      if (e & 1ULL) result *= base;
      e >>= 1;
      if (e != 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.conductor_ == b.conductor_) return a.den_ == b.den_ && a.coeffs_ == b.coeffs_;
    if (a.is_zero() != b.is_zero()) return false;
    if (a.conductor_ == 1 || b.conductor_ == 1) return false;  // rationals are always conductor 1
    return compare(a, b) == 0;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Canonical total order: lexicographic on power-basis coefficients at the
  /// lcm conductor, lowest exponent first. Not compatible with the field
  /// structure; used only for deterministic sorting.
  static int compare(const CycNum& a, const CycNum& b) {
    const int L = a.conductor_ == b.conductor_ ? a.conductor_ : lcm_conductor(a.conductor_, b.conductor_);
    const auto ca = a.numerators_at(L);
    const auto cb = b.numerators_at(L);
    for (std::size_t k = 0; k < ca.size(); ++k) {
      const BigInt lhs = ca[k] * b.den_;
      const BigInt rhs = cb[k] * a.den_;
      if (lhs < rhs) return -1;
      if (lhs > rhs) return 1;
    }
    return 0;
  }

  /// Appends an exact byte encoding of the value at conductor L; equal values
  /// give equal encodings for a fixed L.
  void append_key(std::string& out, int L) const {
    append_int(out, den_);
    if (is_zero()) {
      out.push_back('0');
      return;
    }
    const auto nums = numerators_at(L);
    out.push_back('[');
    for (const auto& c : nums) append_int(out, c);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      BigInt g = boost::multiprecision::gcd(coeffs_[k], den_);
      BigInt num = coeffs_[k] / g;
      BigInt den = den_ / g;
      if (!first) os << (num < 0 ? " - " : " + ");
      else if (num < 0) os << "-";
      first = false;
      BigInt mag = abs(num);
      const bool unit = (mag == 1 && den == 1 && k != 0);
      if (!unit) os << mag;
      if (den != 1) os << "/" << den;
      if (k != 0) {
        if (!unit) os << "*";
        os << "z" << conductor_;
        if (k != 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  static void append_int(std::string& out, const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
      const auto x = static_cast<long long>(v);
      out.push_back('i');
      out.append(reinterpret_cast<const char*>(&x), sizeof(x));
    } else {
      out.push_back('b');
      out += v.str();
      out.push_back(';');
    }
  }

  /// Remainder of poly modulo Phi_m, resized to phi(m).
  static std::vector<BigInt> reduce(int m, std::vector<BigInt> poly) {
    const auto& f = detail::field(m);
    const auto deg = static_cast<std::size_t>(f.degree);
    for (std::size_t k = poly.size(); k-- > deg;) {
      if (poly[k] == 0) continue;
      const BigInt c = poly[k];
      for (std::size_t j = 0; j <= deg; ++j) {
        if (f.minpoly[j] != 0) poly[k - deg + j] -= c * f.minpoly[j];
      }
    }
    poly.resize(deg);
    return poly;
  }

  static CycNum add(const CycNum& a, const CycNum& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    const int L = a.conductor_ == b.conductor_ ? a.conductor_ : lcm_conductor(a.conductor_, b.conductor_);
    CycNum r;
    r.conductor_ = L;
    auto ca = a.conductor_ == L ? a.coeffs_ : a.numerators_at(L);
    const auto& cbref = b.conductor_ == L ? b.coeffs_ : b.numerators_at(L);
    if (a.den_ == b.den_) {
      for (std::size_t k = 0; k < ca.size(); ++k) {
        if (subtract) ca[k] -= cbref[k];
        else ca[k] += cbref[k];
      }
      r.den_ = a.den_;
    } else {
      for (std::size_t k = 0; k < ca.size(); ++k) {
        ca[k] *= b.den_;
        if (subtract) ca[k] -= cbref[k] * a.den_;
        else ca[k] += cbref[k] * a.den_;
      }
      r.den_ = a.den_ * b.den_;
    }
    r.coeffs_ = std::move(ca);
    r.normalize();
    return r;
  }

  CycNum scaled(const BigInt& num, const BigInt& den) const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c *= num;
    r.den_ *= den;
    r.normalize();
    return r;
  }

  void normalize() {
    bool all_zero = true;
    bool rational = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] != 0) {
        all_zero = false;
        if (k != 0) rational = false;
      }
    }
    if (all_zero) {
      coeffs_.clear();
      conductor_ = 1;
      den_ = 1;
      return;
    }
    if (rational && conductor_ != 1) {
      coeffs_.resize(1);
      conductor_ = 1;
    }
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : coeffs_) c = -c;
    }
    if (den_ != 1) {
      BigInt g = den_;
      for (const auto& c : coeffs_) {
        if (c == 0) continue;
        g = boost::multiprecision::gcd(g, c);
        if (g == 1) return;
      }
      if (g != 1) {
        den_ /= g;
        for (auto& c : coeffs_) c /= g;
      }
    }
  }

  int conductor_ = 1;
  std::vector<BigInt> coeffs_;  // empty iff zero; else size phi(conductor_)
  BigInt den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const CycNum& v) { return os << v.to_string(); }

}  // namespace cliffcode
