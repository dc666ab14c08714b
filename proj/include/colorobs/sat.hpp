#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace colorobs::sat {

// Literal encoding: 2*var for the positive literal, 2*var+1 for its negation.
using Lit = std::uint32_t;

inline Lit pos(std::uint32_t var) { return 2 * var; }
inline Lit neg(std::uint32_t var) { return 2 * var + 1; }
inline std::uint32_t var_of(Lit l) { return l >> 1; }
inline bool is_neg(Lit l) { return l & 1; }

/// Incremental CDCL solver: watched literals, first-UIP learning, activity
/// branching with phase saving, Luby restarts. Clauses may be added between
/// calls to solve(); assumptions hold for one call only.
class Solver {
 public:
  std::uint32_t new_var();
  std::size_t num_vars() const noexcept { return assign_.size(); }

  /// Returns false once the clause set is unsatisfiable at level 0.
  bool add_clause(std::vector<Lit> clause);

  bool solve(const std::vector<Lit>& assumptions = {});

  /// Value in the last satisfying assignment.
  bool model_value(std::uint32_t var) const { return model_[var]; }

  std::uint64_t conflicts() const noexcept { return conflicts_; }

 private:
  static constexpr std::int8_t kUndef = -1;
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  std::int8_t value(Lit l) const {
    const auto a = assign_[var_of(l)];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(is_neg(l)));
  }
  std::size_t level() const noexcept { return trail_lim_.size(); }
  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t conflict, std::vector<Lit>& learnt, std::size_t& backtrack);
  void cancel_until(std::size_t lvl);
  void bump(std::uint32_t var);
  std::uint32_t attach(std::vector<Lit> clause);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::int8_t> assign_;
  std::vector<std::int8_t> phase_;
  std::vector<std::uint32_t> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<char> model_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool unsat_ = false;
  std::uint64_t conflicts_ = 0;
};

/// Unary counter over `inputs`: outputs()[j] is forced true whenever at least
/// j+1 inputs are true. Assuming the negation of outputs()[k] caps the count
/// at k.
class Totalizer {
 public:
  Totalizer(Solver& solver, const std::vector<Lit>& inputs);
  const std::vector<Lit>& outputs() const noexcept { return outputs_; }
  /// Assumption literal enforcing "at most k inputs true"; none when k >= n.
  std::vector<Lit> at_most(std::size_t k) const;

 private:
  std::vector<Lit> build(Solver& solver, const std::vector<Lit>& inputs, std::size_t lo, std::size_t hi);
  std::vector<Lit> outputs_;
};

}  // namespace colorobs::sat
