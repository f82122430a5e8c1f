#ifndef DIRACGB_MONOMIAL_HPP
#define DIRACGB_MONOMIAL_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace diracgb {

using Exponent = std::uint32_t;

/// Dense exponent vector, one entry per table variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
    for (auto e : exps_) degree_ += e;
  }

  static Monomial variable(std::size_t nvars, std::size_t var, Exponent e = 1) {
    Monomial m(nvars);
    m.exps_.at(var) = e;
    m.degree_ = e;
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  Monomial& operator*=(const Monomial& o) {
    check(o);
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += o.exps_[i];
    degree_ += o.degree_;
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  bool divides(const Monomial& o) const {
    check(o);
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// this / d; requires d | this.
  Monomial divided_by(const Monomial& d) const {
    if (!d.divides(*this)) throw std::domain_error("monomial division is not exact");
    Monomial q(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= d.exps_[i];
    q.degree_ -= d.degree_;
    return q;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    a.check(b);
    std::vector<Exponent> e(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.exps_[i], b.exps_[i]);
    return Monomial(std::move(e));
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    a.check(b);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  /// Zero-padded copy over a table with `nvars` >= size() variables.
  Monomial extended(std::size_t nvars) const {
    if (nvars < exps_.size()) throw std::invalid_argument("cannot shrink a monomial");
    Monomial m(*this);
    m.exps_.resize(nvars, 0);
    return m;
  }

  // Storage order only (lexicographic by variable index); term orders live
  // in MonomialOrder.
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps_ <=> b.exps_;
  }

  std::size_t hash() const {
    std::size_t h = exps_.size();
    for (auto e : exps_) h = h * 1000003u ^ e;
    return h;
  }

 private:
  void check(const Monomial& o) const {
    if (o.exps_.size() != exps_.size())
      throw std::invalid_argument("monomials over different variable tables");
  }

  std::vector<Exponent> exps_;
  std::uint64_t degree_ = 0;
};

}  // namespace diracgb

template <>
struct std::hash<diracgb::Monomial> {
  std::size_t operator()(const diracgb::Monomial& m) const noexcept { return m.hash(); }
};

#endif  // DIRACGB_MONOMIAL_HPP
