#include "colorobs/sat.hpp"

#include <algorithm>

namespace colorobs::sat {

namespace {

std::uint64_t luby(std::uint64_t i) {
  // Element i (0-based) of 1 1 2 1 1 2 4 ...
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i %= size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace

std::uint32_t Solver::new_var() {
  const auto v = static_cast<std::uint32_t>(assign_.size());
  assign_.push_back(kUndef);
  phase_.push_back(0);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  activity_.push_back(0.0);
  seen_.push_back(0);
  model_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

void Solver::enqueue(Lit l, std::uint32_t reason) {
  const auto v = var_of(l);
  assign_[v] = static_cast<std::int8_t>(!is_neg(l));
  levels_[v] = static_cast<std::uint32_t>(level());
  reasons_[v] = reason;
  trail_.push_back(l);
}

std::uint32_t Solver::attach(std::vector<Lit> clause) {
  const auto ci = static_cast<std::uint32_t>(clauses_.size());
  watches_[clause[0]].push_back(ci);
  watches_[clause[1]].push_back(ci);
  clauses_.push_back(std::move(clause));
  return ci;
}

bool Solver::add_clause(std::vector<Lit> clause) {
  if (unsat_) return false;
  cancel_until(0);
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i + 1 < clause.size() && clause[i + 1] == (clause[i] ^ 1)) return true;  // tautology
    const auto val = value(clause[i]);
    if (val == 1) return true;
    if (val == 0) continue;
    kept.push_back(clause[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) unsat_ = true;
    return !unsat_;
  }
  attach(std::move(kept));
  return true;
}

std::uint32_t Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit f = trail_[qhead_++] ^ 1;  // literal that just became false
    auto& ws = watches_[f];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const auto ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == f) std::swap(c[0], c[1]);
      if (value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::bump(std::uint32_t var) {
  activity_[var] += var_inc_;
  if (activity_[var] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Solver::analyze(std::uint32_t conflict, std::vector<Lit>& learnt, std::size_t& backtrack) {
  learnt.assign(1, 0);
  std::size_t pending = 0;
  Lit p = 0;
  bool have_p = false;
  auto idx = trail_.size();
  auto ci = conflict;
  do {
    for (auto q : clauses_[ci]) {
      if (have_p && q == p) continue;
      const auto v = var_of(q);
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (levels_[v] == level())
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen_[var_of(trail_[idx - 1])]) --idx;
    p = trail_[--idx];
    have_p = true;
    ci = reasons_[var_of(p)];
    seen_[var_of(p)] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = p ^ 1;

  backtrack = 0;
  std::size_t best = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    seen_[var_of(learnt[i])] = 0;
    if (levels_[var_of(learnt[i])] > backtrack) {
      backtrack = levels_[var_of(learnt[i])];
      best = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[best]);
}

void Solver::cancel_until(std::size_t lvl) {
  if (level() <= lvl) return;
  for (auto i = trail_.size(); i > trail_lim_[lvl]; --i) {
    const auto v = var_of(trail_[i - 1]);
    phase_[v] = assign_[v];
    assign_[v] = kUndef;
    reasons_[v] = kNoReason;
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

bool Solver::solve(const std::vector<Lit>& assumptions) {
  if (unsat_) return false;
  cancel_until(0);
  if (propagate() != kNoReason) {
    unsat_ = true;
    return false;
  }
  std::vector<Lit> learnt;
  std::uint64_t restart_index = 0;
  std::uint64_t budget = 100 * luby(restart_index);
  std::uint64_t since_restart = 0;
  for (;;) {
    const auto conflict = propagate();
    if (conflict != kNoReason) {
      ++conflicts_;
      ++since_restart;
      if (level() == 0) {
        unsat_ = true;
        return false;
      }
      std::size_t backtrack = 0;
      analyze(conflict, learnt, backtrack);
      cancel_until(backtrack);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const auto ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      continue;
    }
    if (since_restart >= budget) {
      cancel_until(0);
      since_restart = 0;
      budget = 100 * luby(++restart_index);
      continue;
    }
    if (level() < assumptions.size()) {
      const Lit a = assumptions[level()];
      const auto val = value(a);
      if (val == 0) {
        cancel_until(0);
        return false;
      }
      trail_lim_.push_back(trail_.size());
      if (val == kUndef) enqueue(a, kNoReason);
      continue;
    }
    std::uint32_t pick = UINT32_MAX;
    double best = -1.0;
    for (std::uint32_t v = 0; v < assign_.size(); ++v) {
      if (assign_[v] == kUndef && activity_[v] > best) {
        best = activity_[v];
        pick = v;
      }
    }
    if (pick == UINT32_MAX) {
      for (std::uint32_t v = 0; v < assign_.size(); ++v) model_[v] = assign_[v] == 1;
      cancel_until(0);
      return true;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(phase_[pick] == 1 ? pos(pick) : neg(pick), kNoReason);
  }
}

Totalizer::Totalizer(Solver& solver, const std::vector<Lit>& inputs) {
  if (!inputs.empty()) outputs_ = build(solver, inputs, 0, inputs.size());
}

std::vector<Lit> Totalizer::build(Solver& solver, const std::vector<Lit>& inputs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {inputs[lo]};
  const auto mid = lo + (hi - lo) / 2;
  const auto a = build(solver, inputs, lo, mid);
  const auto b = build(solver, inputs, mid, hi);
  std::vector<Lit> out;
  for (std::size_t i = 0; i < a.size() + b.size(); ++i) out.push_back(pos(solver.new_var()));
  // a_i and b_j true => out_{i+j}, with index 0 meaning "no input needed".
  for (std::size_t i = 0; i <= a.size(); ++i) {
    for (std::size_t j = 0; j <= b.size(); ++j) {
      if (i + j == 0) continue;
      std::vector<Lit> clause;
      if (i > 0) clause.push_back(a[i - 1] ^ 1);
      if (j > 0) clause.push_back(b[j - 1] ^ 1);
      clause.push_back(out[i + j - 1]);
      solver.add_clause(std::move(clause));
    }
  }
  return out;
}

std::vector<Lit> Totalizer::at_most(std::size_t k) const {
  if (k >= outputs_.size()) return {};
  return {outputs_[k] ^ 1};
}

}  // namespace colorobs::sat
