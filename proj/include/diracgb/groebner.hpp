#ifndef DIRACGB_GROEBNER_HPP
#define DIRACGB_GROEBNER_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace diracgb {

namespace detail {

// Terms sorted from the ord-greatest down; the working form for division.
using OrderedTerms = std::vector<Term>;

inline OrderedTerms ordered(const Polynomial& f, const MonomialOrder& ord) {
  return sorted_terms(f, ord);
}

// p[from..] - c * m * g, merged in ord-descending order. The leading term of
// the product cancels against p[from] when c, m were chosen for that.
inline OrderedTerms sub_scaled(const OrderedTerms& p, std::size_t from, const Rational& c,
                               const Monomial& m, const OrderedTerms& g, const MonomialOrder& ord) {
  OrderedTerms out;
  out.reserve(p.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].mono * m;
    if (i == p.size()) {
      out.push_back(Term{std::move(gm), -c * g[j].coef});
      ++j;
      continue;
    }
    auto cmp = ord.compare(p[i].mono, gm);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{std::move(gm), -c * g[j].coef});
      ++j;
    } else {
      Rational v = p[i].coef - c * g[j].coef;
      if (v != 0) out.push_back(Term{std::move(gm), std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of p by the reducers, tried in list order against the
// current leading monomial.
inline OrderedTerms reduce_full(OrderedTerms p, const std::vector<const OrderedTerms*>& reducers,
                                const MonomialOrder& ord) {
  OrderedTerms rem;
  std::size_t head = 0;
  while (head < p.size()) {
    const Term& lt = p[head];
    const OrderedTerms* hit = nullptr;
    for (const auto* g : reducers)
      if (g->front().mono.divides(lt.mono)) {
        hit = g;
        break;
      }
    if (!hit) {
      rem.push_back(lt);
      ++head;
      continue;
    }
    const Term& glt = hit->front();
    p = sub_scaled(p, head, lt.coef / glt.coef, lt.mono.divided_by(glt.mono), *hit, ord);
    head = 0;
  }
  return rem;
}

// c * m * p; multiplying by a monomial keeps the term order.
inline OrderedTerms scaled(const OrderedTerms& p, const Rational& c, const Monomial& m) {
  OrderedTerms out;
  out.reserve(p.size());
  for (const auto& t : p) out.push_back(Term{t.mono * m, t.coef * c});
  return out;
}

inline OrderedTerms make_monic(OrderedTerms p) {
  if (p.empty() || p.front().coef == 1) return p;
  Rational inv = 1 / p.front().coef;
  for (auto& t : p) t.coef *= inv;
  return p;
}

inline Polynomial to_polynomial(const TablePtr& table, const OrderedTerms& p) {
  return Polynomial::from_terms(table, p);
}

inline void require_same_table(const Polynomial& f, const TablePtr& table) {
  if (f.table() != table && !(*f.table() == *table))
    throw std::invalid_argument("polynomial is over a different variable table");
}

}  // namespace detail

/// Remainder of multivariate division of f by the list G. Reducers are tried
/// in list order; the result has no monomial divisible by any leading
/// monomial of G.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G,
                              const MonomialOrder& ord) {
  std::vector<detail::OrderedTerms> gs;
  gs.reserve(G.size());
  for (const auto& g : G) {
    if (g.is_zero()) throw std::invalid_argument("zero divisor in normal_form");
    detail::require_same_table(g, f.table());
    gs.push_back(detail::ordered(g, ord));
  }
  std::vector<const detail::OrderedTerms*> refs;
  for (const auto& g : gs) refs.push_back(&g);
  return detail::to_polynomial(f.table(), detail::reduce_full(detail::ordered(f, ord), refs, ord));
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("S-polynomial of a zero polynomial");
  const Term& lf = leading_term(f, ord);
  const Term& lg = leading_term(g, ord);
  Monomial l = lcm(lf.mono, lg.mono);
  return f.times_term(1 / lf.coef, l.divided_by(lf.mono)) -
         g.times_term(1 / lg.coef, l.divided_by(lg.mono));
}

/// Reduced monic Groebner basis of an ideal under a fixed order. Elements
/// are sorted by leading monomial, greatest first.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(TablePtr table, MonomialOrder ord) : table_(std::move(table)), order_(std::move(ord)) {
    if (order_.size() != table_->size()) throw std::invalid_argument("order does not match the table");
  }

  const std::vector<Polynomial>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  const MonomialOrder& order() const { return order_; }
  const TablePtr& table() const { return table_; }

  /// True iff the ideal is the whole ring.
  bool is_unit() const { return elems_.size() == 1 && elems_[0].is_constant(); }

  Polynomial reduce(const Polynomial& f) const {
    detail::require_same_table(f, table_);
    if (elems_.empty() || f.is_zero()) return f;
    std::vector<const detail::OrderedTerms*> refs;
    for (const auto& g : sorted_) refs.push_back(&g);
    return detail::to_polynomial(table_, detail::reduce_full(detail::ordered(f, order_), refs, order_));
  }

  bool contains(const Polynomial& h) const { return reduce(h).is_zero(); }

  /// The same basis over a wider table, with the order extended.
  GroebnerBasis rebind(TablePtr wider) const {
    GroebnerBasis b(wider, order_.extended(*wider));
    for (const auto& e : elems_) b.push(e.rebind(wider));
    return b;
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.order_ == b.order_ && a.elems_ == b.elems_;
  }

 private:
  friend GroebnerBasis buchberger(const std::vector<Polynomial>& F, const MonomialOrder& ord,
                                  const TablePtr& table);

  void push(Polynomial p) {
    sorted_.push_back(detail::ordered(p, order_));
    elems_.push_back(std::move(p));
  }

  TablePtr table_;
  MonomialOrder order_;
  std::vector<Polynomial> elems_;
  std::vector<detail::OrderedTerms> sorted_;
};

/// Buchberger's algorithm with the coprime and chain criteria and the normal
/// selection strategy (smallest lcm first, ties by generator indices).
/// Returns the reduced monic basis; {1} for the unit ideal.
inline GroebnerBasis buchberger(const std::vector<Polynomial>& F, const MonomialOrder& ord,
                                const TablePtr& table) {
  using detail::OrderedTerms;
  GroebnerBasis result(table, ord);

  std::vector<OrderedTerms> basis;
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  bool unit = false;

  auto refs = [&] {
    std::vector<const OrderedTerms*> r;
    r.reserve(basis.size());
    for (const auto& g : basis) r.push_back(&g);
    return r;
  };
  auto add = [&](OrderedTerms g) {
    g = detail::make_monic(std::move(g));
    if (g.front().mono.is_one()) unit = true;
    std::size_t k = basis.size();
    basis.push_back(std::move(g));
    for (std::size_t i = 0; i < k; ++i) {
      queue.emplace_back(i, k);
      pending.emplace(i, k);
    }
  };

  for (const auto& f : F) {
    detail::require_same_table(f, table);
    auto r = detail::reduce_full(detail::ordered(f, ord), refs(), ord);
    if (!r.empty()) add(std::move(r));
    if (unit) break;
  }

  while (!unit && !queue.empty()) {
    auto best = queue.begin();
    Monomial best_lcm = lcm(basis[best->first].front().mono, basis[best->second].front().mono);
    for (auto it = std::next(queue.begin()); it != queue.end(); ++it) {
      Monomial l = lcm(basis[it->first].front().mono, basis[it->second].front().mono);
      auto c = ord.compare(l, best_lcm);
      if (c < 0 || (c == 0 && *it < *best)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    auto [i, j] = *best;
    queue.erase(best);
    pending.erase({i, j});

    const Term& li = basis[i].front();
    const Term& lj = basis[j].front();
    if (coprime(li.mono, lj.mono)) continue;

    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!basis[k].front().mono.divides(best_lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = !pending.count(key(i, k)) && !pending.count(key(j, k));
    }
    if (chain) continue;

    OrderedTerms s = detail::scaled(basis[i], 1 / li.coef, best_lcm.divided_by(li.mono));
    s = detail::sub_scaled(s, 0, 1 / lj.coef, best_lcm.divided_by(lj.mono), basis[j], ord);
    auto r = detail::reduce_full(std::move(s), refs(), ord);
    if (!r.empty()) add(std::move(r));
  }

  if (unit) {
    result.push(Polynomial::constant(table, 1));
    return result;
  }

  // Minimal basis: drop elements whose leading monomial is a multiple of
  // another survivor's (equal leading monomials keep the earliest).
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = basis[i].front().mono;
      const auto& mj = basis[j].front().mono;
      if (mj.divides(mi) && (mj != mi || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }

  std::vector<OrderedTerms> reduced;
  for (auto i : keep) {
    std::vector<const OrderedTerms*> others;
    for (auto j : keep)
      if (j != i) others.push_back(&basis[j]);
    // The head is irreducible by the others, so only the tail changes.
    OrderedTerms head{basis[i].front()};
    OrderedTerms tail(basis[i].begin() + 1, basis[i].end());
    auto t = detail::reduce_full(std::move(tail), others, ord);
    head.insert(head.end(), t.begin(), t.end());
    reduced.push_back(detail::make_monic(std::move(head)));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const OrderedTerms& a, const OrderedTerms& b) { return ord.greater(a.front().mono, b.front().mono); });
  for (const auto& g : reduced) result.push(detail::to_polynomial(table, g));
  return result;
}

inline GroebnerBasis buchberger(const std::vector<Polynomial>& F, const MonomialOrder& ord) {
  if (F.empty()) throw std::invalid_argument("empty generator list; use the overload taking a table");
  return buchberger(F, ord, F.front().table());
}

inline bool ideal_member(const Polynomial& h, const GroebnerBasis& G) { return G.contains(h); }

/// h in the radical of <F>: the ideal <F, 1 - t*h> with a fresh auxiliary
/// variable t is the unit ideal.
inline bool radical_member(const Polynomial& h, const std::vector<Polynomial>& F,
                           BaseOrder base = BaseOrder::degrevlex) {
  if (h.is_zero()) return true;
  const auto& table = h.table();
  std::string name = "t_aux";
  while (table->find(name)) name += "_";
  auto wide = table->extended({Variable{name, VarKind::auxiliary}});
  auto ord = MonomialOrder::elimination(*wide, base);
  std::vector<Polynomial> gens;
  gens.reserve(F.size() + 1);
  for (const auto& f : F) {
    detail::require_same_table(f, table);
    gens.push_back(f.rebind(wide));
  }
  auto t = Polynomial::variable(wide, wide->size() - 1);
  gens.push_back(Polynomial::constant(wide, 1) - t * h.rebind(wide));
  return buchberger(gens, ord, wide).is_unit();
}

/// Basis elements involving only the `keep` variables; a Groebner basis of
/// the elimination ideal when the order eliminates everything else.
inline std::vector<Polynomial> eliminate(const GroebnerBasis& G, const std::vector<std::size_t>& keep) {
  const auto n = G.table()->size();
  std::vector<bool> eliminated(n, true);
  for (auto v : keep) {
    if (v >= n) throw std::out_of_range("keep variable out of range");
    eliminated[v] = false;
  }
  if (!G.order().eliminates(eliminated))
    throw std::invalid_argument("order is not an elimination order for the discarded variables");
  std::vector<Polynomial> out;
  for (const auto& g : G.elements()) {
    bool free = true;
    for (std::size_t v = 0; v < n && free; ++v)
      if (eliminated[v] && g.uses(v)) free = false;
    if (free) out.push_back(g);
  }
  return out;
}

}  // namespace diracgb

#endif  // DIRACGB_GROEBNER_HPP
