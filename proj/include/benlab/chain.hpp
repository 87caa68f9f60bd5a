#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "benlab/digits.hpp"
#include "benlab/distributions.hpp"

namespace benlab {

// Tree of distribution expressions stored as an arena. Family nodes come
// from the grammar; the remaining kinds exist only inside presets.
struct ChainSpec {
  enum class Kind { Family, Mixture, Sum, Negate, Abs };

  struct Arg {
    bool is_node = false;
    double value = 0.0;
    int node = -1;

    static Arg constant(double v) { return {false, v, -1}; }
    static Arg child(int n) { return {true, 0.0, n}; }
  };

  struct Node {
    Kind kind = Kind::Family;
    Family family = Family::Uniform;
    std::vector<Arg> args;
  };

  std::vector<Node> nodes;
  int root = -1;

  int add(Node n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  // Family nodes on the longest root-to-leaf path.
  int depth() const;
  std::string to_string() const;
  // Copy of the subtree rooted at `node`.
  ChainSpec subtree(int node) const;
};

bool structurally_equal(const ChainSpec& a, const ChainSpec& b);

ChainSpec parse_chain(std::string_view text);

// Builders for the presets and the experiment harness.
ChainSpec chain_of(const DistributionModel& m);
// Family node whose argument i is either the constant args[i] or, when
// children[i] is non-empty, a copy of that chain.
ChainSpec compose(Family f, const std::vector<double>& constants,
                  const std::vector<const ChainSpec*>& children);

struct ResamplePolicy {
  enum class OnExhaustion { Error, SkipSample };
  int max_attempts = 100;
  OnExhaustion on_exhaustion = OnExhaustion::SkipSample;
};

struct SimulateOptions {
  bool retain_samples = false;
  int threads = 0;  // 0: OpenMP default
};

struct ChainRunResult {
  std::string spec_text;
  std::uint64_t seed = 0;
  std::uint64_t n_requested = 0;
  std::uint64_t n_accepted = 0;
  std::uint64_t n_resampled = 0;     // parameter redraws
  std::uint64_t n_zero = 0;          // root draws equal to 0
  std::uint64_t n_nonfinite = 0;     // root draws that overflowed
  std::uint64_t n_policy_dropped = 0;
  std::array<std::uint64_t, 9> counts{};
  DigitDistribution ld;
  double chi_sqr = 0.0;
  bool valid = true;  // skip rate at most 1%
  std::vector<double> samples;

  std::uint64_t skips() const { return n_zero + n_nonfinite; }
  double skip_rate() const;
};

// Draws per RNG block. Block b of a run with master seed s uses
// Rng(stream_seed(s, b)); serial and parallel runs therefore agree exactly.
inline constexpr std::uint64_t kChainBlock = 4096;

ChainRunResult simulate_chain(const ChainSpec& spec, std::uint64_t n, std::uint64_t seed,
                              const ResamplePolicy& policy = {},
                              const SimulateOptions& options = {});
ChainRunResult simulate_chain_serial(const ChainSpec& spec, std::uint64_t n,
                                     std::uint64_t seed, const ResamplePolicy& policy = {},
                                     bool retain_samples = false);

struct NodeChiSqr {
  std::string path;  // child indices from the root, "" for the root itself
  std::string text;
  double chi_sqr = 0.0;
};

// Every non-constant node simulated as a chain root, leaves first.
std::vector<NodeChiSqr> sequential_chisqr(const ChainSpec& spec, std::uint64_t n,
                                          std::uint64_t seed,
                                          const ResamplePolicy& policy = {});

enum class Verdict { BEN, not_, NOT };
std::string_view verdict_name(Verdict v);

struct Chainer {
  enum class Kind { ReciprocalLog, Lognormal };
  Kind kind = Kind::ReciprocalLog;
  double F = 0.0;      // range starts at 10^F
  int span = 3;        // decades covered by the range
  double shape = 1.3;  // lognormal shape
  // Lognormal location; defaults to the log of the reciprocal range's
  // geometric centre so both chainers aim at the same magnitude.
  double location() const;
  ChainSpec spec() const;
  std::string to_string() const;
};

struct ChainabilityThresholds {
  double ben_chi = 15.5;
  double not_factor = 2.0;
};

struct ChainabilityConfig {
  Family family = Family::Uniform;
  std::vector<int> chained;        // parameter indices
  std::vector<double> constants;   // full vector: unchained values and the baseline
  Chainer chainer;
  std::uint64_t n = 10000;
  std::uint64_t seed = 1;
  ChainabilityThresholds thresholds;
  ResamplePolicy policy;
};

struct ChainabilityResult {
  Verdict verdict = Verdict::NOT;
  double chi_baseline = 0.0;
  double chi_chained = 0.0;
  std::string baseline_text;
  std::string chained_text;
  bool valid = true;
};

Verdict classify(double chi_chained, double chi_baseline, const ChainabilityThresholds& t);
ChainabilityResult chainability_experiment(const ChainabilityConfig& config);

struct ChainabilityVote {
  Verdict verdict = Verdict::NOT;
  std::vector<ChainabilityResult> runs;
};
// Repeats with seeds stream_seed(config.seed, r) and takes the majority;
// with no majority the run with the median chained chi-square decides.
ChainabilityVote chainability_vote(const ChainabilityConfig& config, int repetitions = 3);

struct InvarianceMode {
  enum class Kind { Analytic, MonteCarlo };
  Kind kind = Kind::Analytic;
  std::uint64_t n = 1000000;
  std::uint64_t seed = 1;
};

struct InvarianceResult {
  double linf = 0.0;
  DigitDistribution original;
  DigitDistribution scaled;
};

// Multiplies the parameters listed in `scaled_params` (all when empty)
// by 10^M and compares first-digit distributions.
InvarianceResult power_of_ten_invariance_check(const DistributionModel& model, int M,
                                               const std::vector<int>& scaled_params,
                                               const InvarianceMode& mode);

// flehinger(depth, M) | benford_twist | mini_hill | rayleigh_cycles(cycles)
// | table8_chain
ChainSpec preset(std::string_view name, const std::vector<double>& args = {});
std::vector<std::string> preset_names();

}  // namespace benlab
