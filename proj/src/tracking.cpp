#include "colorobs/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include "colorobs/errors.hpp"
#include "colorobs/taxonomy.hpp"

namespace colorobs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<std::vector<char>> reachability(const ColoredGraph& g) {
  const auto n = g.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (NodeIndex s = 0; s < n; ++s) {
    std::vector<NodeIndex> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : g.successors(v)) {
        if (!reach[s][w]) {
          reach[s][w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return reach;
}

// Closed communicating classes, each as a sorted node list.
std::vector<std::vector<NodeIndex>> closed_classes(const ColoredGraph& g) {
  const auto reach = reachability(g);
  const auto n = g.size();
  std::vector<char> assigned(n, 0);
  std::vector<std::vector<NodeIndex>> out;
  for (NodeIndex v = 0; v < n; ++v) {
    if (assigned[v]) continue;
    std::vector<NodeIndex> cls;
    for (NodeIndex u = 0; u < n; ++u) {
      if (reach[v][u] && reach[u][v]) {
        cls.push_back(u);
        assigned[u] = 1;
      }
    }
    bool closed = true;
    for (NodeIndex u = 0; u < n && closed; ++u) {
      if (reach[v][u] && !reach[u][v]) closed = false;
    }
    if (closed) out.push_back(std::move(cls));
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

HmmModel make_model(const ColoredGraph& graph, std::vector<double> P, std::vector<double> initial) {
  const auto n = graph.size();
  if (!graph.single_colored()) throw ModelError("model graph must be single-colored");
  if (P.size() != n * n) throw ModelError("transition matrix has the wrong size");
  if (initial.size() != n) throw ModelError("initial distribution has the wrong size");
  for (NodeIndex i = 0; i < n; ++i) {
    double sum = 0.0;
    for (NodeIndex j = 0; j < n; ++j) {
      const double p = P[static_cast<std::size_t>(i) * n + j];
      if (!(p >= 0.0) || !std::isfinite(p)) throw ModelError("transition probabilities must be finite and nonnegative");
      if ((p > 0.0) != graph.has_edge(i, j))
        throw ModelError("transition support differs from the edge set at " + graph.id(i) + " -> " + graph.id(j));
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ModelError("row " + graph.id(i) + " does not sum to 1");
  }
  double total = 0.0;
  for (double p : initial) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ModelError("initial probabilities must be finite and nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ModelError("initial distribution does not sum to 1");
  if (graph.start_nodes()) {
    std::vector<char> allowed(n, 0);
    for (auto v : *graph.start_nodes()) allowed[v] = 1;
    for (NodeIndex v = 0; v < n; ++v) {
      if (initial[v] > 0.0 && !allowed[v]) throw ModelError("initial mass outside the start set at " + graph.id(v));
    }
  }
  HmmModel m{graph, std::move(P), std::move(initial), std::nullopt};
  try {
    m.stationary = stationary_distribution(m);
  } catch (const ModelError&) {
  }
  return m;
}

HmmModel uniform_model(const ColoredGraph& graph, StartMode start, const std::vector<NodeIndex>& subset) {
  const auto n = graph.size();
  std::vector<double> P(n * n, 0.0);
  for (NodeIndex v = 0; v < n; ++v) {
    auto succ = graph.successors(v);
    if (succ.empty()) throw ModelError("node " + graph.id(v) + " has no outgoing edge");
    for (auto w : succ) P[static_cast<std::size_t>(v) * n + w] = 1.0 / static_cast<double>(succ.size());
  }
  return model_with_transitions(graph, std::move(P), start, subset);
}

HmmModel model_with_transitions(const ColoredGraph& graph, std::vector<double> P, StartMode start,
                                const std::vector<NodeIndex>& subset) {
  const auto n = graph.size();
  if (P.size() != n * n) throw ModelError("transition matrix has the wrong size");
  std::vector<double> initial(n, 0.0);
  auto spread = [&](const std::vector<NodeIndex>& nodes) {
    if (nodes.empty()) throw ModelError("empty start subset");
    for (auto v : nodes) {
      if (v >= n) throw ModelError("start subset references a missing node");
      initial[v] = 1.0 / static_cast<double>(nodes.size());
    }
  };
  HmmModel probe{graph, P, std::vector<double>(n, 1.0 / static_cast<double>(n)), std::nullopt};
  switch (start) {
    case StartMode::Uniform: {
      std::vector<NodeIndex> nodes(n);
      std::iota(nodes.begin(), nodes.end(), 0);
      spread(graph.start_nodes() ? *graph.start_nodes() : nodes);
      break;
    }
    case StartMode::Subset: spread(subset); break;
    case StartMode::Stationary: initial = stationary_distribution(probe); break;
  }
  if (start == StartMode::Stationary && graph.start_nodes()) {
    // The start set would reject stationary mass elsewhere; drop it.
    auto data = graph.to_data();
    data.start_nodes.reset();
    return make_model(ColoredGraph::from_data(data), std::move(P), std::move(initial));
  }
  return make_model(graph, std::move(P), std::move(initial));
}

std::size_t chain_period(const HmmModel& model) {
  const auto& g = model.graph;
  auto classes = closed_classes(g);
  if (classes.size() != 1) throw ModelError("chain has " + std::to_string(classes.size()) + " closed classes");
  const auto& cls = classes.front();
  std::vector<std::int64_t> level(g.size(), -1);
  std::vector<NodeIndex> queue{cls.front()};
  level[cls.front()] = 0;
  std::int64_t period = 0;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto v = queue[k];
    for (auto w : g.successors(v)) {
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      } else {
        period = std::gcd(period, std::abs(level[v] + 1 - level[w]));
      }
    }
  }
  return static_cast<std::size_t>(period == 0 ? 1 : period);
}

std::vector<double> stationary_distribution(const HmmModel& model, const StationaryOptions& options) {
  const auto& g = model.graph;
  const auto n = g.size();
  auto classes = closed_classes(g);
  if (classes.size() != 1)
    throw ModelError("chain has " + std::to_string(classes.size()) + " closed classes; stationary distribution is not unique");
  if (options.require_aperiodic && chain_period(model) > 1) throw ModelError("periodic chain");

  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  auto step = [&](const std::vector<double>& x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (NodeIndex i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      for (auto j : g.successors(i)) y[j] += x[i] * model.p(i, j);
    }
  };
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    step(pi, next);
    double diff = 0.0;
    for (NodeIndex i = 0; i < n; ++i) {
      const double lazy = 0.5 * (pi[i] + next[i]);
      diff = std::max(diff, std::abs(lazy - pi[i]));
      pi[i] = lazy;
    }
    if (diff < options.tolerance * 1e-3) break;
  }
  double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (auto& x : pi) x /= total;
  step(pi, next);
  for (NodeIndex i = 0; i < n; ++i) {
    if (std::abs(next[i] - pi[i]) > options.tolerance)
      throw ModelError("power iteration did not converge within " + std::to_string(options.max_iterations) +
                       " iterations");
  }
  return pi;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (stream * 0xd1342543de82ef95ULL);
  std::uint64_t a = splitmix64(x);
  std::uint64_t b = splitmix64(x);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

NodeIndex draw(Rng& rng, const std::vector<double>& weights) {
  const double u = rng.uniform();
  double acc = 0.0;
  NodeIndex last = 0;
  for (NodeIndex i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

NodeIndex step_from(Rng& rng, const HmmModel& model, NodeIndex v) {
  const double u = rng.uniform();
  double acc = 0.0;
  auto succ = model.graph.successors(v);
  for (auto w : succ) {
    acc += model.p(v, w);
    if (u < acc) return w;
  }
  return succ.back();
}

}  // namespace

Trajectory sample(const HmmModel& model, std::size_t length, Rng& rng) {
  if (length == 0) throw Error("trajectory length must be positive");
  Trajectory t;
  t.states.reserve(length);
  t.colors.reserve(length);
  NodeIndex v = draw(rng, model.initial);
  for (std::size_t i = 0; i < length; ++i) {
    if (i > 0) v = step_from(rng, model, v);
    t.states.push_back(v);
    t.colors.push_back(model.graph.color_of(v));
  }
  return t;
}

Trajectory sample(const HmmModel& model, std::size_t length, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  return sample(model, length, rng);
}

namespace {

bool better(double candidate, double incumbent) {
  if (incumbent == kNegInf) return candidate != kNegInf;
  if (candidate == kNegInf) return false;
  const double scale = std::max({1.0, std::abs(candidate), std::abs(incumbent)});
  return candidate > incumbent + kTieTolerance * scale;
}

// Log-space Viterbi with predecessor lists sorted by node index.
class Decoder {
 public:
  explicit Decoder(const HmmModel& model) : model_(model), n_(model.size()), preds_(n_) {
    for (NodeIndex i = 0; i < n_; ++i) {
      for (auto j : model.graph.successors(i)) preds_[j].push_back({i, std::log(model.p(i, j))});
    }
    for (auto& p : preds_) std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  // Empty optional when no path emits `colors`.
  std::optional<WindowEstimate> decode(std::span<const ColorIndex> colors, const std::vector<double>& prior) {
    const auto len = colors.size();
    delta_.assign(n_, kNegInf);
    back_.assign(len * n_, 0);
    for (NodeIndex v = 0; v < n_; ++v) {
      if (prior[v] > 0.0 && model_.graph.color_of(v) == colors[0]) delta_[v] = std::log(prior[v]);
    }
    for (std::size_t t = 1; t < len; ++t) {
      next_.assign(n_, kNegInf);
      for (NodeIndex j = 0; j < n_; ++j) {
        if (model_.graph.color_of(j) != colors[t]) continue;
        double best = kNegInf;
        NodeIndex arg = 0;
        for (const auto& [i, lp] : preds_[j]) {
          if (delta_[i] == kNegInf) continue;
          const double s = delta_[i] + lp;
          if (better(s, best)) {
            best = s;
            arg = i;
          }
        }
        next_[j] = best;
        back_[t * n_ + j] = arg;
      }
      delta_.swap(next_);
    }
    double best = kNegInf;
    NodeIndex arg = 0;
    for (NodeIndex j = 0; j < n_; ++j) {
      if (better(delta_[j], best)) {
        best = delta_[j];
        arg = j;
      }
    }
    if (best == kNegInf) return std::nullopt;
    WindowEstimate w;
    w.log_score = best;
    w.path.assign(len, 0);
    w.path[len - 1] = arg;
    for (std::size_t t = len - 1; t > 0; --t) w.path[t - 1] = back_[t * n_ + w.path[t]];
    return w;
  }

 private:
  const HmmModel& model_;
  std::size_t n_;
  std::vector<std::vector<std::pair<NodeIndex, double>>> preds_;
  std::vector<double> delta_;
  std::vector<double> next_;
  std::vector<NodeIndex> back_;
};

const std::vector<double>& default_prior(const HmmModel& model, std::optional<std::vector<double>>& storage) {
  if (model.stationary) return *model.stationary;
  storage = stationary_distribution(model);
  return *storage;
}

}  // namespace

WindowEstimate viterbi_window(const HmmModel& model, std::span<const ColorIndex> colors, std::size_t beta,
                              const std::vector<double>* prior) {
  if (colors.empty()) throw Error("empty observation window");
  if (beta >= colors.size()) throw Error("lag must be smaller than the window length");
  std::optional<std::vector<double>> storage;
  const auto& p = prior ? *prior : default_prior(model, storage);
  if (p.size() != model.size()) throw ModelError("prior has the wrong size");
  Decoder decoder(model);
  auto w = decoder.decode(colors, p);
  if (!w) throw Error("color sequence is impossible for this graph");
  w->node = w->path[colors.size() - 1 - beta];
  return std::move(*w);
}

std::uint64_t CurrencySurface::hits(std::size_t beta, std::size_t gamma) const {
  if (!defined(beta, gamma)) throw Error("currency cell is undefined");
  return correct[beta * (gamma_max + 1) + gamma];
}

double CurrencySurface::alpha(std::size_t beta, std::size_t gamma) const {
  return static_cast<double>(hits(beta, gamma)) / static_cast<double>(trials);
}

double CurrencySurface::standard_error(std::size_t beta, std::size_t gamma) const {
  const double a = alpha(beta, gamma);
  return std::sqrt(a * (1.0 - a) / static_cast<double>(trials));
}

double CurrencySurface::median_alpha() const {
  std::vector<double> values;
  for (std::size_t b = 0; b <= beta_max; ++b) {
    for (std::size_t g = 1; g <= gamma_max; ++g) {
      if (defined(b, g)) values.push_back(alpha(b, g));
    }
  }
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

std::string CurrencySurface::to_csv() const {
  std::string out = "beta,gamma,alpha,stderr\n";
  char line[128];
  for (std::size_t b = 0; b <= beta_max; ++b) {
    for (std::size_t g = 1; g <= gamma_max; ++g) {
      if (!defined(b, g)) continue;
      std::snprintf(line, sizeof line, "%zu,%zu,%.6f,%.6f\n", b, g, alpha(b, g), standard_error(b, g));
      out += line;
    }
  }
  return out;
}

CurrencySurface currency_surface(const HmmModel& model, const CurrencyOptions& options) {
  if (options.trials == 0) throw Error("trials must be positive");
  if (options.gamma_max == 0) throw Error("gamma_max must be positive");
  const auto length = std::max(options.length, options.gamma_max);
  const auto gmax = options.gamma_max;
  const auto bmax = std::min(options.beta_max, gmax - 1);

  CurrencySurface s;
  s.beta_max = bmax;
  s.gamma_max = gmax;
  s.trials = options.trials;
  s.seed = options.seed;
  s.anchor = options.anchor;
  s.correct.assign((bmax + 1) * (gmax + 1), 0);

  std::optional<std::vector<double>> storage;
  const auto& prior = options.anchor == Anchor::End ? default_prior(model, storage) : model.initial;
  const std::vector<double> flat(model.size(), 1.0 / static_cast<double>(model.size()));

  auto run = [&](std::size_t begin, std::size_t end, std::vector<std::uint64_t>& counts) {
    Decoder decoder(model);
    for (std::size_t trial = begin; trial < end; ++trial) {
      Rng rng(options.seed, trial);
      const auto traj = sample(model, length, rng);
      for (std::size_t g = 1; g <= gmax; ++g) {
        const std::size_t offset = options.anchor == Anchor::End ? length - g : 0;
        std::span<const ColorIndex> window(traj.colors.data() + offset, g);
        auto est = decoder.decode(window, prior);
        // Windows can start on nodes the prior rules out (transient nodes
        // under the stationary prior); fall back to a flat prior there.
        if (!est) est = decoder.decode(window, flat);
        if (!est) throw InternalConsistencyError("sampled window has no consistent path");
        for (std::size_t b = 0; b <= bmax && b < g; ++b) {
          if (est->path[g - 1 - b] == traj.states[offset + g - 1 - b]) ++counts[b * (gmax + 1) + g];
        }
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.trials)));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(s.correct.size(), 0));
  if (threads == 1) {
    run(0, options.trials, partial[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const auto begin = options.trials * t / threads;
      const auto end = options.trials * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          run(begin, end, partial[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < p.size(); ++i) s.correct[i] += p[i];
  }
  return s;
}

HypothesisCount hypothesis_count(const ColoredGraph& graph, std::span<const ColorIndex> colors) {
  HypothesisCount out;
  if (colors.empty()) {
    out.total = 1;
    return out;
  }
  const auto n = graph.size();
  std::vector<BigCount> cur(n), next(n);
  std::vector<char> allowed(n, graph.start_nodes() ? 0 : 1);
  if (graph.start_nodes()) {
    for (auto v : *graph.start_nodes()) allowed[v] = 1;
  }
  for (NodeIndex v = 0; v < n; ++v) cur[v] = (allowed[v] && graph.has_color(v, colors[0])) ? 1 : 0;
  auto sum = [&] {
    BigCount s = 0;
    for (const auto& c : cur) s += c;
    return s;
  };
  out.per_step.push_back(sum());
  for (std::size_t t = 1; t < colors.size(); ++t) {
    for (auto& x : next) x = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      if (cur[v] == 0) continue;
      for (auto w : graph.successors(v)) {
        if (graph.has_color(w, colors[t])) next[w] += cur[v];
      }
    }
    cur.swap(next);
    out.per_step.push_back(sum());
  }
  out.total = out.per_step.back();
  return out;
}

std::string to_string(Growth g) { return g == Growth::Exponential ? "exponential" : "polynomial"; }

namespace {

constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kSaturate, a + b); }

// Walk-count matrix N[v][u]: walks from v to u emitting the word so far
// (v emits the first symbol).
struct WordState {
  std::size_t n;
  std::vector<std::uint64_t> N;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto x : N) s = sat_add(s, x);
    return s;
  }
};

WordState first_symbol(const ColoredGraph& g, ColorIndex c, const std::vector<char>& allowed) {
  WordState s{g.size(), std::vector<std::uint64_t>(g.size() * g.size(), 0)};
  for (NodeIndex v = 0; v < g.size(); ++v) {
    if (allowed[v] && g.has_color(v, c)) s.N[v * g.size() + v] = 1;
  }
  return s;
}

WordState extend(const ColoredGraph& g, const WordState& s, ColorIndex c) {
  const auto n = g.size();
  WordState out{n, std::vector<std::uint64_t>(n * n, 0)};
  for (NodeIndex v = 0; v < n; ++v) {
    for (NodeIndex u = 0; u < n; ++u) {
      const auto x = s.N[v * n + u];
      if (x == 0) continue;
      for (auto w : g.successors(u)) {
        if (g.has_color(w, c)) out.N[v * n + w] = sat_add(out.N[v * n + w], x);
      }
    }
  }
  return out;
}

struct GrowthSearch {
  const ColoredGraph& g;
  GrowthReport& report;
  std::vector<ColorIndex> word;

  void observe(const WordState& s) {
    const auto len = word.size();
    const auto total = s.total();
    if (total > report.max_counts[len - 1]) {
      report.max_counts[len - 1] = total;
      if (len == report.max_counts.size()) report.maximizing_sequence = word;
    }
    if (!report.pump_node && len >= 2) {
      for (NodeIndex v = 0; v < g.size(); ++v) {
        if (s.N[v * g.size() + v] >= 2) {
          report.pump_node = v;
          report.pump_word.assign(word.begin() + 1, word.end());
          break;
        }
      }
    }
  }
};

}  // namespace

GrowthReport growth_class(const ColoredGraph& graph, const GrowthOptions& options) {
  const auto k = graph.palette().size();
  const auto cap = options.length_cap;
  if (cap == 0) throw Error("length cap must be positive");
  GrowthReport report;
  report.max_counts.assign(cap, 0);
  GrowthSearch search{graph, report, {}};
  const std::vector<char> all(graph.size(), 1);

  if (options.mode == GrowthMode::WorstCase) {
    if (std::pow(static_cast<double>(k), static_cast<double>(cap)) > options.enumeration_budget)
      throw BudgetExceeded("|palette|^length_cap exceeds the enumeration budget");
    auto rec = [&](auto&& self, const WordState& s) -> void {
      search.observe(s);
      if (search.word.size() == cap) return;
      for (ColorIndex c = 0; c < k; ++c) {
        auto t = extend(graph, s, c);
        if (t.total() == 0) continue;
        search.word.push_back(c);
        self(self, t);
        search.word.pop_back();
      }
    };
    for (ColorIndex c = 0; c < k; ++c) {
      auto s = first_symbol(graph, c, all);
      if (s.total() == 0) continue;
      search.word = {c};
      rec(rec, s);
    }
  } else {
    Rng rng(options.seed, 0);
    std::vector<NodeIndex> nodes(graph.size());
    std::iota(nodes.begin(), nodes.end(), 0);
    for (std::size_t trial = 0; trial < options.samples; ++trial) {
      std::vector<ColorIndex> colors;
      NodeIndex v = nodes[rng.next() % nodes.size()];
      for (std::size_t i = 0; i < cap; ++i) {
        colors.push_back(graph.colors(v)[rng.next() % graph.colors(v).size()]);
        auto succ = graph.successors(v);
        if (succ.empty()) break;
        v = succ[rng.next() % succ.size()];
      }
      for (std::size_t start = 0; start < colors.size(); ++start) {
        search.word = {colors[start]};
        auto s = first_symbol(graph, colors[start], all);
        search.observe(s);
        for (std::size_t i = start + 1; i < colors.size(); ++i) {
          s = extend(graph, s, colors[i]);
          search.word.push_back(colors[i]);
          search.observe(s);
        }
      }
    }
  }

  report.verdict = report.pump_node ? Growth::Exponential : Growth::Polynomial;
  const auto lo = std::max<std::size_t>(1, cap / 2);
  if (cap > lo && report.max_counts[lo - 1] > 0 && report.max_counts[cap - 1] > 0) {
    report.loglog_slope = (std::log(static_cast<double>(report.max_counts[cap - 1])) -
                           std::log(static_cast<double>(report.max_counts[lo - 1]))) /
                          (std::log(static_cast<double>(cap)) - std::log(static_cast<double>(lo)));
  }
  report.trackable = satisfies(graph, GraphClass::Trackable);
  report.agrees_with_taxonomy = report.trackable == (report.verdict == Growth::Polynomial);
  return report;
}

}  // namespace colorobs
