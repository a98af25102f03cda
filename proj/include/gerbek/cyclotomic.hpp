#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_n), zeta_n = exp(2*pi*i/n).
// Elements are stored as rational coordinates in the power basis
// 1, zeta, ..., zeta^{phi(n)-1} modulo the n-th cyclotomic polynomial.
// All rank decisions elsewhere in the library run on these exact values;
// floating point appears only in to_complex().

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gerbek {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace poly {

// Dense integer polynomials, coefficient of x^k at index k.
inline void trim(std::vector<Int>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Int> r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Exact division by a monic divisor; throws if a remainder survives.
inline std::vector<Int> div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  if (den.empty() || den.back() != 1)
    throw std::invalid_argument("div_exact: divisor must be monic");
  std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  while (num.size() >= den.size()) {
    Int c = num.back();
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    trim(num);
  }
  if (!num.empty()) throw std::logic_error("div_exact: nonzero remainder");
  trim(q);
  return q;
}

}  // namespace poly

// n-th cyclotomic polynomial Phi_n, computed as (x^n - 1) / prod_{d|n, d<n} Phi_d.
inline std::vector<Int> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly::div_exact(num, cyclotomic_polynomial(d));
  }
  return num;
}

class CycField {
 public:
  explicit CycField(int n) : n_(n), phi_(cyclotomic_polynomial(n)) {
    degree_ = static_cast<int>(phi_.size()) - 1;
    // x^k reduced mod Phi_n for every k we ever need: products of two reduced
    // elements reach degree 2*deg-2, and zeta^k lookups reach n-1.
    int kmax = std::max(2 * degree_ - 2, n - 1);
    powers_.resize(kmax + 1);
    std::vector<Rational> cur(degree_, Rational(0));
    cur[0] = 1;
    for (int k = 0; k <= kmax; ++k) {
      powers_[k] = cur;
      // multiply by x, reduce the overflow coefficient with x^deg = -(low part of Phi)
      Rational top = cur[degree_ - 1];
      for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (int i = 0; i < degree_; ++i) cur[i] -= top * Rational(phi_[i]);
    }
  }

  int modulus() const { return n_; }
  int degree() const { return degree_; }
  const std::vector<Int>& polynomial() const { return phi_; }
  const std::vector<Rational>& power(int k) const { return powers_.at(k); }

 private:
  int n_;
  std::vector<Int> phi_;
  int degree_;
  std::vector<std::vector<Rational>> powers_;
};

// Shared per-modulus field cache; fields are immutable once built.
inline const CycField& cyclotomic_field(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<CycField>(n)).first;
  return *it->second;
}

class Cyc {
 public:
  Cyc() : field_(nullptr) {}
  explicit Cyc(const CycField& f) : field_(&f), coords_(f.degree(), Rational(0)) {}
  Cyc(const CycField& f, std::vector<Rational> coords)
      : field_(&f), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != f.degree())
      throw std::invalid_argument("Cyc: coordinate size mismatch");
  }

  static Cyc zero(const CycField& f) { return Cyc(f); }
  static Cyc one(const CycField& f) { return rational(f, Rational(1)); }
  static Cyc rational(const CycField& f, const Rational& r) {
    Cyc c(f);
    c.coords_[0] = r;
    return c;
  }
  // zeta^k for any integer k (reduced mod n).
  static Cyc zeta_pow(const CycField& f, long long k) {
    long long m = k % f.modulus();
    if (m < 0) m += f.modulus();
    return Cyc(f, f.power(static_cast<int>(m)));
  }

  const CycField& field() const {
    if (!field_) throw std::logic_error("Cyc: uninitialized");
    return *field_;
  }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
      if (coords_[i] != 0) return false;
    return true;
  }
  Rational rational_part() const { return coords_.empty() ? Rational(0) : coords_[0]; }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    a.require_same(b);
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }
  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    a.require_same(b);
    Cyc r = a;
    for (int i = 0; i < (int)r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
    return r;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator-=(const Cyc& b) { return *this = *this - b; }

  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    a.require_same(b);
    const CycField& f = a.field();
    int d = f.degree();
    std::vector<Rational> raw(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
      if (a.coords_[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (b.coords_[j] == 0) continue;
        raw[i + j] += a.coords_[i] * b.coords_[j];
      }
    }
    std::vector<Rational> out(raw.begin(), raw.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
      if (raw[k] == 0) continue;
      const auto& red = f.power(k);
      for (int i = 0; i < d; ++i) out[i] += raw[k] * red[i];
    }
    return Cyc(f, std::move(out));
  }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

  friend Cyc operator*(const Rational& r, const Cyc& a) {
    Cyc out = a;
    for (auto& c : out.coords_) c *= r;
    return out;
  }

  // Complex conjugation: zeta -> zeta^{-1}.
  Cyc conj() const {
    const CycField& f = field();
    Cyc out(f);
    int n = f.modulus();
    for (int i = 0; i < f.degree(); ++i) {
      if (coords_[i] == 0) continue;
      int k = (n - i) % n;
      const auto& p = f.power(k);
      for (int j = 0; j < f.degree(); ++j) out.coords_[j] += coords_[i] * p[j];
    }
    return out;
  }

  // Multiplicative inverse via the extended Euclidean algorithm in Q[x] mod Phi_n.
  Cyc inverse() const {
    if (is_zero()) throw std::domain_error("Cyc::inverse: division by zero");
    const CycField& f = field();
    using Poly = std::vector<Rational>;
    auto deg = [](const Poly& p) {
      for (int i = (int)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
      return -1;
    };
    Poly r0(f.polynomial().size());
    for (std::size_t i = 0; i < f.polynomial().size(); ++i) r0[i] = Rational(f.polynomial()[i]);
    Poly r1(coords_.begin(), coords_.end());
    Poly s0(1, Rational(0)), s1(1, Rational(1));  // coefficients of the input
    while (deg(r1) > 0) {
      // divide r0 by r1
      Poly q(std::max<std::size_t>(r0.size(), 1), Rational(0));
      Poly rem = r0;
      int d1 = deg(r1);
      Rational lead = r1[d1];
      for (int d0 = deg(rem); d0 >= d1; d0 = deg(rem)) {
        Rational c = rem[d0] / lead;
        q[d0 - d1] += c;
        for (int i = 0; i <= d1; ++i) rem[d0 - d1 + i] -= c * r1[i];
        rem[d0] = 0;
      }
      Poly s2(std::max(s0.size(), q.size() + s1.size()), Rational(0));
      for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
      }
      r0 = r1;
      r1 = rem;
      s0 = s1;
      s1 = s2;
    }
    int d = deg(r1);
    if (d != 0) throw std::logic_error("Cyc::inverse: gcd with Phi_n is not constant");
    Rational scale = Rational(1) / r1[0];
    // s1 may exceed the basis degree; reduce term by term.
    Cyc out(f);
    for (std::size_t i = 0; i < s1.size(); ++i) {
      if (s1[i] == 0) continue;
      if ((int)i < f.degree()) {
        out.coords_[i] += s1[i] * scale;
      } else {
        const auto& red = f.power((int)i);
        for (int j = 0; j < f.degree(); ++j) out.coords_[j] += s1[i] * scale * red[j];
      }
    }
    return out;
  }

  std::complex<double> to_complex() const {
    const CycField& f = field();
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> zeta = std::polar(1.0, two_pi / f.modulus());
    std::complex<double> acc(0.0, 0.0);
    for (int i = f.degree() - 1; i >= 0; --i)
      acc = acc * zeta + std::complex<double>(static_cast<double>(coords_[i]), 0.0);
    return acc;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    const CycField& f = field();
    for (int i = 0; i < f.degree(); ++i) {
      if (coords_[i] == 0) continue;
      if (!first) os << " + ";
      os << coords_[i];
      if (i == 1) os << "*z";
      if (i > 1) os << "*z^" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void require_same(const Cyc& b) const {
    if (field_ == nullptr || b.field_ == nullptr)
      throw std::logic_error("Cyc: uninitialized operand");
    if (field_->modulus() != b.field_->modulus())
      throw std::invalid_argument("Cyc: mixed cyclotomic fields");
  }

  const CycField* field_;
  std::vector<Rational> coords_;
};

}  // namespace gerbek
