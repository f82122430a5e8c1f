#ifndef DIRACGB_POLYNOMIAL_HPP
#define DIRACGB_POLYNOMIAL_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "order.hpp"
#include "rational.hpp"
#include "variables.hpp"

namespace diracgb {

struct Term {
  Monomial mono;
  Rational coef;
};

/// Sparse distributed polynomial with exact rational coefficients over a
/// shared VariableTable. Values are immutable once built; terms are kept in
/// ascending storage order of their monomials with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(TablePtr table) : table_(std::move(table)) { require_table(); }

  /// Combines like terms, canonicalizes coefficients and drops zeros; input
  /// order is irrelevant.
  static Polynomial from_terms(TablePtr table, std::vector<Term> terms) {
    Polynomial p(std::move(table));
    for (const auto& t : terms)
      if (t.mono.size() != p.table_->size())
        throw std::invalid_argument("term does not match the variable table");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    for (auto& t : terms) {
      t.coef.canonicalize();
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
        p.terms_.back().coef += t.coef;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    }
    return p;
  }

  static Polynomial constant(TablePtr table, const Rational& c) {
    Polynomial p(std::move(table));
    if (c != 0) {
      p.terms_.push_back(Term{Monomial(p.table_->size()), c});
      p.terms_.back().coef.canonicalize();
    }
    return p;
  }

  static Polynomial variable(TablePtr table, std::size_t var, Exponent e = 1) {
    Polynomial p(std::move(table));
    if (var >= p.table_->size()) throw std::out_of_range("variable index out of range");
    p.terms_.push_back(Term{Monomial::variable(p.table_->size(), var, e), Rational(1)});
    return p;
  }

  static Polynomial variable(TablePtr table, std::string_view name) {
    auto idx = table->index(name);
    return variable(std::move(table), idx);
  }

  const TablePtr& table() const { return table_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  Rational constant_term() const {
    if (!terms_.empty() && terms_.front().mono.is_one()) return terms_.front().coef;
    return Rational(0);
  }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  Exponent degree_in(std::size_t var) const {
    Exponent d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }

  bool uses(std::size_t var) const { return degree_in(var) > 0; }

  bool uses_kind(VarKind k) const {
    for (std::size_t v = 0; v < table_->size(); ++v)
      if ((*table_)[v].kind == k && uses(v)) return true;
    return false;
  }

  /// Same polynomial over a table that extends this one.
  Polynomial rebind(TablePtr wider) const {
    if (!table_->is_prefix_of(*wider))
      throw std::invalid_argument("target table does not extend the polynomial's table");
    Polynomial p(std::move(wider));
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back(Term{t.mono.extended(p.table_->size()), t.coef});
    // Zero padding at the tail preserves the storage order.
    return p;
  }

  /// Walks every coefficient and term key; false on any broken invariant.
  bool audit() const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].coef == 0 || !is_normalized(terms_[i].coef)) return false;
      if (terms_[i].mono.size() != table_->size()) return false;
      if (i && !(terms_[i - 1].mono < terms_[i].mono)) return false;
    }
    return true;
  }

  Polynomial operator-() const {
    Polynomial p(*this);
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    auto table = common_table(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(table);
    std::map<Monomial, Rational> acc;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, fresh] = acc.try_emplace(s.mono * t.mono, s.coef * t.coef);
        if (!fresh) it->second += s.coef * t.coef;
      }
    Polynomial p(table);
    for (auto& [m, c] : acc)
      if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& a) {
    if (c == 0) return Polynomial(a.table_);
    Polynomial p(a);
    for (auto& t : p.terms_) t.coef *= c;
    return p;
  }
  friend Polynomial operator*(const Polynomial& a, const Rational& c) { return c * a; }

  /// a * c * m for a monomial m.
  Polynomial times_term(const Rational& c, const Monomial& m) const {
    if (c == 0) return Polynomial(table_);
    Polynomial p(table_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back(Term{t.mono * m, t.coef * c});
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& x, const Term& y) { return x.mono < y.mono; });
    return p;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(table_, 1);
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.table_ != b.table_ && !(*a.table_ == *b.table_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  static TablePtr common_table(const Polynomial& a, const Polynomial& b) {
    if (!a.table_ || !b.table_) throw std::invalid_argument("polynomial without a variable table");
    if (a.table_ == b.table_ || *a.table_ == *b.table_) return a.table_;
    throw std::invalid_argument("polynomials over different variable tables");
  }

 private:
  void require_table() const {
    if (!table_) throw std::invalid_argument("polynomial needs a variable table");
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial p(common_table(a, b));
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono < b.terms_[j].mono)) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].mono < a.terms_[i].mono) {
        p.terms_.push_back(b.terms_[j++]);
        if (subtract) p.terms_.back().coef = -p.terms_.back().coef;
      } else {
        Rational c = a.terms_[i].coef;
        if (subtract) c -= b.terms_[j].coef;
        else c += b.terms_[j].coef;
        if (c != 0) p.terms_.push_back(Term{a.terms_[i].mono, c});
        ++i;
        ++j;
      }
    }
    return p;
  }

  TablePtr table_;
  std::vector<Term> terms_;
};

/// Formal partial derivative with respect to variable index `var`.
inline Polynomial diff(const Polynomial& f, std::size_t var) {
  if (var >= f.table()->size()) throw std::out_of_range("unknown differentiation variable");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Exponent e = t.mono[var];
    if (e == 0) continue;
    auto exps = t.mono.exponents();
    exps[var] = e - 1;
    out.push_back(Term{Monomial(std::move(exps)), t.coef * e});
  }
  return Polynomial::from_terms(f.table(), std::move(out));
}

inline Polynomial diff(const Polynomial& f, std::string_view var) {
  auto idx = f.table()->find(var);
  if (!idx) throw std::out_of_range("unknown differentiation variable '" + std::string(var) + "'");
  return diff(f, *idx);
}

/// The ord-greatest term of a nonzero polynomial.
inline const Term& leading_term(const Polynomial& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw std::domain_error("leading term of the zero polynomial");
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms())
    if (ord.greater(t.mono, best->mono)) best = &t;
  return *best;
}

/// f scaled so that its leading coefficient is 1; zero stays zero.
inline Polynomial make_monic(const Polynomial& f, const MonomialOrder& ord) {
  if (f.is_zero()) return f;
  return Rational(1) / leading_term(f, ord).coef * f;
}

/// Terms sorted from the ord-greatest down.
inline std::vector<Term> sorted_terms(const Polynomial& f, const MonomialOrder& ord) {
  std::vector<Term> ts = f.terms();
  std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
  return ts;
}

inline std::string to_string(const Monomial& m, const VariableTable& table) {
  std::string s;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (!m[v]) continue;
    if (!s.empty()) s += "*";
    s += table[v].name;
    if (m[v] > 1) s += "^" + std::to_string(m[v]);
  }
  return s.empty() ? "1" : s;
}

/// Human- and parser-readable text, terms from the ord-greatest down.
inline std::string to_string(const Polynomial& f, const MonomialOrder& ord) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : sorted_terms(f, ord)) {
    Rational c = t.coef;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      s += to_string(c);
    } else {
      if (c != 1) s += to_string(c) + "*";
      s += to_string(t.mono, *f.table());
    }
  }
  return s;
}

inline std::string to_string(const Polynomial& f) {
  return to_string(f, MonomialOrder::elimination(*f.table()));
}

}  // namespace diracgb

#endif  // DIRACGB_POLYNOMIAL_HPP
