#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "colorobs/graph.hpp"

namespace colorobs {

/// Row-stochastic chain on a single-colored graph. Emissions are degenerate:
/// a node always emits its one color.
struct HmmModel {
  ColoredGraph graph;
  // Dense n x n, row-major.
  std::vector<double> P;
  std::vector<double> initial;
  // Filled when the chain has a unique stationary distribution.
  std::optional<std::vector<double>> stationary;

  std::size_t size() const noexcept { return graph.size(); }
  double p(NodeIndex i, NodeIndex j) const { return P[static_cast<std::size_t>(i) * graph.size() + j]; }
};

enum class StartMode { Uniform, Stationary, Subset };

/// Checks support, row sums and the initial distribution. Throws ModelError.
HmmModel make_model(const ColoredGraph& graph, std::vector<double> P, std::vector<double> initial);

/// Equal probability on every out-edge. Uniform start covers the graph's start
/// set when present. Subset mode spreads the start over `subset`.
HmmModel uniform_model(const ColoredGraph& graph, StartMode start = StartMode::Stationary,
                       const std::vector<NodeIndex>& subset = {});

/// Given transitions with the initial distribution chosen as in uniform_model.
HmmModel model_with_transitions(const ColoredGraph& graph, std::vector<double> P, StartMode start = StartMode::Stationary,
                                const std::vector<NodeIndex>& subset = {});

struct StationaryOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
  // Refuse periodic chains instead of averaging over the period.
  bool require_aperiodic = false;
};

/// Power iteration on the lazy chain (I+P)/2, which has the same stationary
/// vector and converges for periodic chains too. Throws ModelError unless
/// the chain has exactly one closed communicating class.
std::vector<double> stationary_distribution(const HmmModel& model, const StationaryOptions& options = {});

/// Period of the closed class (1 for aperiodic chains).
std::size_t chain_period(const HmmModel& model);

struct Trajectory {
  std::vector<NodeIndex> states;
  std::vector<ColorIndex> colors;
};

/// Per-trial random stream: mt19937_64 seeded from splitmix64(seed, stream).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

Trajectory sample(const HmmModel& model, std::size_t length, std::uint64_t seed, std::uint64_t stream = 0);
Trajectory sample(const HmmModel& model, std::size_t length, Rng& rng);

struct WindowEstimate {
  NodeIndex node = 0;
  double log_score = 0.0;
  std::vector<NodeIndex> path;
};

/// Relative tolerance for treating two log scores as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Max-probability path for a window of observed colors; returns the node at
/// position γ-1-β (0-based). Ties go to the lowest node index both at each
/// backpointer and at the final argmax. The prior defaults to the model's
/// stationary distribution. Throws Error if no path emits `colors`.
WindowEstimate viterbi_window(const HmmModel& model, std::span<const ColorIndex> colors, std::size_t beta,
                              const std::vector<double>* prior = nullptr);

enum class Anchor {
  // Window = the last γ observations of the trajectory; stationary prior.
  End,
  // Window = the first γ observations; the model's initial distribution.
  Start,
};

struct CurrencyOptions {
  std::size_t beta_max = 10;
  std::size_t gamma_max = 50;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  // Trajectory length; at least gamma_max.
  std::size_t length = 0;
  Anchor anchor = Anchor::End;
  unsigned threads = 1;
};

struct CurrencySurface {
  std::size_t beta_max = 0;
  std::size_t gamma_max = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Anchor anchor = Anchor::End;
  // correct[beta * (gamma_max + 1) + gamma]
  std::vector<std::uint64_t> correct;

  bool defined(std::size_t beta, std::size_t gamma) const noexcept {
    return beta < gamma && beta <= beta_max && gamma >= 1 && gamma <= gamma_max;
  }
  std::uint64_t hits(std::size_t beta, std::size_t gamma) const;
  double alpha(std::size_t beta, std::size_t gamma) const;
  double standard_error(std::size_t beta, std::size_t gamma) const;
  /// Median of α over all defined cells.
  double median_alpha() const;
  /// `beta,gamma,alpha,stderr` with six decimals, beta-major.
  std::string to_csv() const;
};

CurrencySurface currency_surface(const HmmModel& model, const CurrencyOptions& options);

using BigCount = boost::multiprecision::cpp_int;

struct HypothesisCount {
  BigCount total;
  // per_step[i]: sequences consistent with the first i+1 colors.
  std::vector<BigCount> per_step;
};

/// Exact forward count of node sequences emitting `colors`. Starts anywhere,
/// or in the start set when the graph has one.
HypothesisCount hypothesis_count(const ColoredGraph& graph, std::span<const ColorIndex> colors);

enum class GrowthMode { WorstCase, Sampled };
enum class Growth { Polynomial, Exponential };

std::string to_string(Growth g);

struct GrowthReport {
  Growth verdict = Growth::Polynomial;
  // Largest hypothesis count over the examined sequences of each length
  // 1..length_cap, saturating at 2^62.
  std::vector<std::uint64_t> max_counts;
  // Sequence reaching max_counts.back().
  std::vector<ColorIndex> maximizing_sequence;
  // Slope of log(max count) against log(length) over the upper half.
  double loglog_slope = 0.0;
  // When exponential: a color word w and node v with at least two walks
  // from v back to v emitting w; repeating w k times gives 2^k hypotheses.
  std::vector<ColorIndex> pump_word;
  std::optional<NodeIndex> pump_node;
  bool trackable = true;
  bool agrees_with_taxonomy = true;
};

struct GrowthOptions {
  std::size_t length_cap = 8;
  GrowthMode mode = GrowthMode::WorstCase;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  // Worst-case mode refuses |Φ|^length_cap above this.
  double enumeration_budget = 1e6;
};

GrowthReport growth_class(const ColoredGraph& graph, const GrowthOptions& options = {});

}  // namespace colorobs
