#ifndef DIRACGB_VARIABLES_HPP
#define DIRACGB_VARIABLES_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace diracgb {

/// Role of a ring variable. Enumerator order is the default precedence,
/// highest first.
enum class VarKind { auxiliary, velocity, momentum, coordinate, multiplier };

inline std::string_view kind_name(VarKind k) {
  switch (k) {
    case VarKind::auxiliary: return "auxiliary";
    case VarKind::velocity: return "velocity";
    case VarKind::momentum: return "momentum";
    case VarKind::coordinate: return "coordinate";
    case VarKind::multiplier: return "multiplier";
  }
  return "?";
}

inline constexpr std::size_t no_index = static_cast<std::size_t>(-1);

struct Variable {
  std::string name;
  VarKind kind;
  // Index of the phase-space pair (velocity/momentum/coordinate) or of the
  // primary constraint (multiplier); no_index otherwise.
  std::size_t pair = no_index;
};

class VariableTable;
using TablePtr = std::shared_ptr<const VariableTable>;

/// Ordered registry of ring variables. Indices are stable: extending a
/// table only appends, so polynomials over a table stay valid over every
/// extension of it.
class VariableTable {
 public:
  VariableTable() = default;

  /// Table with, for each coordinate c, a velocity "d<c>", a momentum
  /// "p_<c>" and the coordinate itself.
  static TablePtr phase_space(const std::vector<std::string>& coords) {
    auto t = std::make_shared<VariableTable>();
    for (std::size_t i = 0; i < coords.size(); ++i)
      t->add(velocity_name(coords[i]), VarKind::velocity, i);
    for (std::size_t i = 0; i < coords.size(); ++i)
      t->add(momentum_name(coords[i]), VarKind::momentum, i);
    for (std::size_t i = 0; i < coords.size(); ++i)
      t->add(coords[i], VarKind::coordinate, i);
    return t;
  }

  static std::string velocity_name(std::string_view coord) {
    return "d" + std::string(coord);
  }
  static std::string momentum_name(std::string_view coord) {
    return "p_" + std::string(coord);
  }
  static std::string multiplier_name(std::size_t index) {
    return "u_" + std::to_string(index + 1);
  }

  std::size_t add(std::string name, VarKind kind, std::size_t pair = no_index) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    if (by_name_.count(name))
      throw std::invalid_argument("duplicate variable name '" + name + "'");
    by_name_.emplace(name, vars_.size());
    vars_.push_back(Variable{std::move(name), kind, pair});
    if (kind == VarKind::coordinate) ++pairs_;
    return vars_.size() - 1;
  }

  /// Copy of this table with extra variables appended.
  TablePtr extended(const std::vector<Variable>& extra) const {
    auto t = std::make_shared<VariableTable>(*this);
    for (const auto& v : extra) t->add(v.name, v.kind, v.pair);
    return t;
  }

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::out_of_range("unknown variable '" + std::string(name) + "'");
  }

  /// Number of phase-space pairs (coordinates).
  std::size_t pairs() const { return pairs_; }

  std::size_t velocity(std::size_t pair) const { return lookup(VarKind::velocity, pair); }
  std::size_t momentum(std::size_t pair) const { return lookup(VarKind::momentum, pair); }
  std::size_t coordinate(std::size_t pair) const { return lookup(VarKind::coordinate, pair); }

  std::vector<std::size_t> of_kind(VarKind k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].kind == k) out.push_back(i);
    return out;
  }

  /// Variable indices sorted by default precedence, highest first; ties by
  /// declaration order.
  std::vector<std::size_t> precedence() const {
    std::vector<std::size_t> idx(vars_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return static_cast<int>(vars_[a].kind) < static_cast<int>(vars_[b].kind);
    });
    return idx;
  }

  /// True iff `other` starts with exactly this table's variables.
  bool is_prefix_of(const VariableTable& other) const {
    if (other.vars_.size() < vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name != other.vars_[i].name || vars_[i].kind != other.vars_[i].kind)
        return false;
    return true;
  }

  friend bool operator==(const VariableTable& a, const VariableTable& b) {
    return a.vars_.size() == b.vars_.size() && a.is_prefix_of(b);
  }

 private:
  std::size_t lookup(VarKind k, std::size_t pair) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].kind == k && vars_[i].pair == pair) return i;
    throw std::out_of_range("no " + std::string(kind_name(k)) + " for pair " +
                            std::to_string(pair));
  }

  std::vector<Variable> vars_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::size_t pairs_ = 0;
};

}  // namespace diracgb

#endif  // DIRACGB_VARIABLES_HPP
