#ifndef DIRACGB_ORDER_HPP
#define DIRACGB_ORDER_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "variables.hpp"

namespace diracgb {

enum class BaseOrder { degrevlex, lex };

inline std::string_view base_order_name(BaseOrder b) {
  return b == BaseOrder::lex ? "lex" : "degrevlex";
}

inline BaseOrder parse_base_order(std::string_view s) {
  if (s == "degrevlex") return BaseOrder::degrevlex;
  if (s == "lex") return BaseOrder::lex;
  throw std::invalid_argument("unknown monomial order '" + std::string(s) + "'");
}

/// One block of a block order: its variables listed from highest to lowest.
struct OrderBlock {
  BaseOrder base;
  std::vector<std::size_t> vars;
};

/// Block order over a partition of the table's variables. Earlier blocks
/// dominate: monomials are compared on the first block, ties go to the next.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::size_t nvars, std::vector<OrderBlock> blocks)
      : nvars_(nvars), blocks_(std::move(blocks)) {
    std::vector<bool> seen(nvars_, false);
    std::size_t count = 0;
    for (const auto& b : blocks_) {
      if (b.vars.empty()) throw std::invalid_argument("empty order block");
      for (auto v : b.vars) {
        if (v >= nvars_ || seen[v])
          throw std::invalid_argument("order blocks must partition the variables");
        seen[v] = true;
        ++count;
      }
    }
    if (count != nvars_) throw std::invalid_argument("order blocks must cover every variable");
  }

  /// Single block over all variables in default precedence.
  static MonomialOrder plain(const VariableTable& t, BaseOrder base) {
    if (t.size() == 0) return MonomialOrder(0, {});
    return MonomialOrder(t.size(), {OrderBlock{base, t.precedence()}});
  }

  /// auxiliary > velocities > (momenta, coordinates) > multipliers, one block
  /// per group; eliminates velocities (and the auxiliary variable).
  static MonomialOrder elimination(const VariableTable& t, BaseOrder base = BaseOrder::degrevlex) {
    std::vector<OrderBlock> blocks;
    auto push = [&](std::vector<std::size_t> vars) {
      if (!vars.empty()) blocks.push_back(OrderBlock{base, std::move(vars)});
    };
    push(t.of_kind(VarKind::auxiliary));
    push(t.of_kind(VarKind::velocity));
    auto pq = t.of_kind(VarKind::momentum);
    auto q = t.of_kind(VarKind::coordinate);
    pq.insert(pq.end(), q.begin(), q.end());
    push(std::move(pq));
    push(t.of_kind(VarKind::multiplier));
    return MonomialOrder(t.size(), std::move(blocks));
  }

  std::size_t size() const { return nvars_; }
  const std::vector<OrderBlock>& blocks() const { return blocks_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (a.size() != nvars_ || b.size() != nvars_)
      throw std::invalid_argument("monomial does not match the order's variable count");
    for (const auto& blk : blocks_) {
      auto c = blk.base == BaseOrder::lex ? cmp_lex(blk.vars, a, b) : cmp_drl(blk.vars, a, b);
      if (c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  /// True iff every monomial involving a variable of `eliminated` is greater
  /// than every monomial free of them.
  bool eliminates(const std::vector<bool>& eliminated) const {
    if (eliminated.size() != nvars_) throw std::invalid_argument("mask size mismatch");
    bool kept_seen = false;
    for (const auto& blk : blocks_) {
      bool has_elim = false, has_keep = false;
      for (auto v : blk.vars) (eliminated[v] ? has_elim : has_keep) = true;
      if (has_elim && kept_seen) return false;
      if (has_elim && has_keep) {
        if (blk.base != BaseOrder::lex) return false;
        bool keep_in_block = false;
        for (auto v : blk.vars) {
          if (!eliminated[v]) keep_in_block = true;
          else if (keep_in_block) return false;
        }
      }
      if (has_keep) kept_seen = true;
    }
    return true;
  }

  /// Same order on a table that appends variables: new variables are placed
  /// in a trailing block, or in the leading block when they are auxiliary.
  MonomialOrder extended(const VariableTable& t) const {
    if (t.size() < nvars_) throw std::invalid_argument("cannot shrink an order");
    std::vector<OrderBlock> blocks = blocks_;
    std::vector<std::size_t> aux, rest;
    for (std::size_t v = nvars_; v < t.size(); ++v)
      (t[v].kind == VarKind::auxiliary ? aux : rest).push_back(v);
    BaseOrder base = blocks_.empty() ? BaseOrder::degrevlex : blocks_.front().base;
    if (!aux.empty()) blocks.insert(blocks.begin(), OrderBlock{base, aux});
    if (!rest.empty()) blocks.push_back(OrderBlock{base, rest});
    return MonomialOrder(t.size(), std::move(blocks));
  }

  std::string describe(const VariableTable& t) const {
    std::string s;
    for (const auto& blk : blocks_) {
      if (!s.empty()) s += " >> ";
      s += std::string(base_order_name(blk.base)) + "(";
      for (std::size_t i = 0; i < blk.vars.size(); ++i) {
        if (i) s += ">";
        s += t[blk.vars[i]].name;
      }
      s += ")";
    }
    return s;
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    if (a.nvars_ != b.nvars_ || a.blocks_.size() != b.blocks_.size()) return false;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i)
      if (a.blocks_[i].base != b.blocks_[i].base || a.blocks_[i].vars != b.blocks_[i].vars)
        return false;
    return true;
  }

 private:
  static std::strong_ordering cmp_lex(const std::vector<std::size_t>& vars, const Monomial& a,
                                      const Monomial& b) {
    for (auto v : vars)
      if (a[v] != b[v]) return a[v] <=> b[v];
    return std::strong_ordering::equal;
  }

  // Graded; ties go to the monomial with the smaller exponent in the last
  // (lowest) variable where the two differ.
  static std::strong_ordering cmp_drl(const std::vector<std::size_t>& vars, const Monomial& a,
                                      const Monomial& b) {
    std::uint64_t da = 0, db = 0;
    for (auto v : vars) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da <=> db;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (a[*it] != b[*it]) return b[*it] <=> a[*it];
    return std::strong_ordering::equal;
  }

  std::size_t nvars_ = 0;
  std::vector<OrderBlock> blocks_;
};

inline std::strong_ordering compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  return ord.compare(a, b);
}

}  // namespace diracgb

#endif  // DIRACGB_ORDER_HPP
