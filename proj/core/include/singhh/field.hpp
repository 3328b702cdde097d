#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace singhh {

// Exact rational arithmetic, GMP-backed.
struct Rationals {
  using Elem = mpq_class;

  static Elem zero() { return Elem(0); }
  static Elem one() { return Elem(1); }
  static Elem from_long(long v) { return Elem(v); }

  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem inv(const Elem& a) {
    if (a == 0) throw std::domain_error("division by zero");
    return Elem(1) / a;
  }
  static Elem div(const Elem& a, const Elem& b) { return mul(a, inv(b)); }
  static bool is_zero(const Elem& a) { return a == 0; }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }

  // Canonical "num/den" form ("n" when den == 1).
  static std::string to_string(const Elem& a) {
    Elem c = a;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
  }
  static Elem parse(const std::string& s) {
    Elem e(s);
    e.canonicalize();
    return e;
  }
};

// Z/p for a prime p fitting in 31 bits; elements stored as least residues.
struct PrimeField {
  using Elem = std::uint32_t;
  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (prime < 2) throw std::invalid_argument("prime must be >= 2");
  }

  Elem zero() const { return 0; }
  Elem one() const { return p == 1 ? 0 : 1; }
  Elem from_long(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return s >= p ? Elem(s - p) : Elem(s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const {
    return Elem((std::uint64_t(a) * b) % p);
  }
  Elem neg(Elem a) const { return a ? p - a : 0; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero");
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("element not invertible");
    if (t < 0) t += p;
    return Elem(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const {
    // accept "num" or "num/den" with integer parts
    auto slash = s.find('/');
    if (slash == std::string::npos) return from_long(std::stol(s));
    Elem n = from_long(std::stol(s.substr(0, slash)));
    Elem d = from_long(std::stol(s.substr(slash + 1)));
    return div(n, d);
  }
};

// Field traits bridging the static Rationals API and stateful PrimeField.
// All generic code takes a `const F& K` and calls members, so Rationals
// gets thin member forwarders here.
struct RationalsCtx {
  using Elem = Rationals::Elem;
  Elem zero() const { return Rationals::zero(); }
  Elem one() const { return Rationals::one(); }
  Elem from_long(long v) const { return Rationals::from_long(v); }
  Elem add(const Elem& a, const Elem& b) const { return Rationals::add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return Rationals::sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return Rationals::mul(a, b); }
  Elem neg(const Elem& a) const { return Rationals::neg(a); }
  Elem inv(const Elem& a) const { return Rationals::inv(a); }
  Elem div(const Elem& a, const Elem& b) const { return Rationals::div(a, b); }
  bool is_zero(const Elem& a) const { return Rationals::is_zero(a); }
  bool eq(const Elem& a, const Elem& b) const { return Rationals::eq(a, b); }
  std::string to_string(const Elem& a) const { return Rationals::to_string(a); }
  Elem parse(const std::string& s) const { return Rationals::parse(s); }
};

}  // namespace singhh
