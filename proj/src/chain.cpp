#include "benlab/chain.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>

#include "benlab/analytic.hpp"
#include "benlab/conformity.hpp"
#include "benlab/error.hpp"
#include "benlab/numeric.hpp"
#include "parallel.hpp"

namespace benlab {
namespace {

using Kind = ChainSpec::Kind;

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Mixture: return "Mixture";
    case Kind::Sum: return "Sum";
    case Kind::Negate: return "Neg";
    case Kind::Abs: return "Abs";
    default: return "";
  }
}

// Recursive-descent parser for NAME '(' arg {',' arg} ')'.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ChainSpec parse() {
    ChainSpec spec;
    spec.root = expr(spec);
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::SyntaxError, "trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg, std::size_t at) const {
    throw ParseError(code, msg + " at position " + std::to_string(at), at);
  }
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const { fail(code, msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(ErrorCode::SyntaxError, std::string("expected '") + c + "'");
    ++pos_;
  }

  int expr(ChainSpec& spec) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      fail(ErrorCode::SyntaxError, "expected a family name", start);
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    const auto family = family_by_name(name);
    if (!family) fail(ErrorCode::UnknownFamily, "unknown family '" + std::string(name) + "'", start);
    expect('(');
    ChainSpec::Node node;
    node.family = *family;
    do {
      node.args.push_back(arg(spec));
    } while (peek(',') && (++pos_, true));
    expect(')');
    if (static_cast<int>(node.args.size()) != arity(*family)) {
      fail(ErrorCode::ArityMismatch,
           std::string(family_info(*family).name) + " takes " + std::to_string(arity(*family)) +
               " arguments, got " + std::to_string(node.args.size()),
           start);
    }
    return spec.add(std::move(node));
  }

  ChainSpec::Arg arg(ChainSpec& spec) {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::SyntaxError, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      return ChainSpec::Arg::constant(number());
    }
    return ChainSpec::Arg::child(expr(spec));
  }

  double number() {
    const std::size_t start = pos_;
    if (text_[pos_] == '+') ++pos_;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double v = 0.0;
    const auto res = std::from_chars(first, last, v, std::chars_format::general);
    if (res.ec != std::errc() || !std::isfinite(v)) fail(ErrorCode::SyntaxError, "malformed number", start);
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int copy_subtree(const ChainSpec& from, int node, ChainSpec& to) {
  ChainSpec::Node n = from.nodes[node];
  for (auto& a : n.args) {
    if (a.is_node) a.node = copy_subtree(from, a.node, to);
  }
  return to.add(std::move(n));
}

bool equal_nodes(const ChainSpec& a, int na, const ChainSpec& b, int nb) {
  const auto& x = a.nodes[na];
  const auto& y = b.nodes[nb];
  if (x.kind != y.kind || x.args.size() != y.args.size()) return false;
  if (x.kind == Kind::Family && x.family != y.family) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    const auto& p = x.args[i];
    const auto& q = y.args[i];
    if (p.is_node != q.is_node) return false;
    if (p.is_node ? !equal_nodes(a, p.node, b, q.node) : p.value != q.value) return false;
  }
  return true;
}

struct Tally {
  std::array<std::uint64_t, 9> counts{};
  std::uint64_t accepted = 0, resampled = 0, zero = 0, nonfinite = 0, dropped = 0;
  std::vector<double> samples;

  void merge(const Tally& o) {
    for (int i = 0; i < 9; ++i) counts[i] += o.counts[i];
    accepted += o.accepted;
    resampled += o.resampled;
    zero += o.zero;
    nonfinite += o.nonfinite;
    dropped += o.dropped;
    samples.insert(samples.end(), o.samples.begin(), o.samples.end());
  }
};

class Evaluator {
 public:
  Evaluator(const ChainSpec& spec, const ResamplePolicy& policy) : spec_(spec), policy_(policy) {}

  // Returns false when the draw is dropped under SkipSample.
  bool draw(int node, Rng& rng, Tally& t, double& out) const {
    const auto& n = spec_.nodes[node];
    switch (n.kind) {
      case Kind::Family: return draw_family(n, rng, t, out);
      case Kind::Mixture: {
        const auto k = static_cast<std::size_t>(rng.uniform() * n.args.size());
        return value(n.args[std::min(k, n.args.size() - 1)], rng, t, out);
      }
      case Kind::Sum: {
        double s = 0.0;
        for (const auto& a : n.args) {
          double v;
          if (!value(a, rng, t, v)) return false;
          s += v;
        }
        out = s;
        return true;
      }
      case Kind::Negate:
        if (!value(n.args[0], rng, t, out)) return false;
        out = -out;
        return true;
      case Kind::Abs:
        if (!value(n.args[0], rng, t, out)) return false;
        out = std::abs(out);
        return true;
    }
    return false;
  }

 private:
  bool value(const ChainSpec::Arg& a, Rng& rng, Tally& t, double& out) const {
    if (!a.is_node) {
      out = a.value;
      return true;
    }
    return draw(a.node, rng, t, out);
  }

  bool draw_family(const ChainSpec::Node& n, Rng& rng, Tally& t, double& out) const {
    DistributionModel m{n.family, std::vector<double>(n.args.size())};
    for (int attempt = 0; attempt < policy_.max_attempts; ++attempt) {
      if (attempt > 0) ++t.resampled;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (!value(n.args[i], rng, t, m.params[i])) return false;
      }
      const DistributionModel r = resolve_integer_params(m);
      if (params_valid(r)) {
        out = sample(r, rng);
        return true;
      }
    }
    if (policy_.on_exhaustion == ResamplePolicy::OnExhaustion::Error) {
      throw Error(ErrorCode::PolicyExhausted,
                  "no valid parameters for " + std::string(family_info(n.family).name) +
                      " after " + std::to_string(policy_.max_attempts) + " attempts");
    }
    return false;
  }

  const ChainSpec& spec_;
  const ResamplePolicy& policy_;
};

void check_constants(const ChainSpec& spec) {
  for (const auto& n : spec.nodes) {
    if (n.kind != Kind::Family) continue;
    const bool all_const = std::none_of(n.args.begin(), n.args.end(),
                                        [](const ChainSpec::Arg& a) { return a.is_node; });
    if (!all_const) continue;
    DistributionModel m{n.family, {}};
    for (const auto& a : n.args) m.params.push_back(a.value);
    require_valid(resolve_integer_params(m));
  }
}

void run_block(const Evaluator& ev, int root, std::uint64_t seed, std::uint64_t block,
               std::uint64_t count, bool retain, Tally& t) {
  Rng rng(stream_seed(seed, block));
  if (retain) t.samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    double x;
    if (!ev.draw(root, rng, t, x)) {
      ++t.dropped;
      continue;
    }
    if (x == 0.0) {
      ++t.zero;
      continue;
    }
    if (!std::isfinite(x)) {
      ++t.nonfinite;
      continue;
    }
    ++t.counts[first_digit(x) - 1];
    ++t.accepted;
    if (retain) t.samples.push_back(x);
  }
}

ChainRunResult finish(const ChainSpec& spec, std::uint64_t n, std::uint64_t seed, Tally&& t) {
  ChainRunResult r;
  r.spec_text = spec.to_string();
  r.seed = seed;
  r.n_requested = n;
  r.n_accepted = t.accepted;
  r.n_resampled = t.resampled;
  r.n_zero = t.zero;
  r.n_nonfinite = t.nonfinite;
  r.n_policy_dropped = t.dropped;
  r.counts = t.counts;
  std::array<double, 9> c{};
  for (int i = 0; i < 9; ++i) c[i] = static_cast<double>(t.counts[i]);
  r.ld = DigitDistribution::from_counts(c);
  r.chi_sqr = t.accepted > 0 ? chi_sqr_benford(t.counts) : std::nan("");
  r.valid = t.accepted > 0 && r.skip_rate() <= 0.01;
  r.samples = std::move(t.samples);
  return r;
}

std::uint64_t block_count(std::uint64_t n) { return (n + kChainBlock - 1) / kChainBlock; }

std::uint64_t block_size(std::uint64_t n, std::uint64_t b) {
  return std::min(kChainBlock, n - b * kChainBlock);
}

void postorder(const ChainSpec& spec, int node, const std::string& path,
               std::vector<std::pair<int, std::string>>& out) {
  const auto& n = spec.nodes[node];
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (n.args[i].is_node) {
      postorder(spec, n.args[i].node, path.empty() ? std::to_string(i) : path + "." + std::to_string(i), out);
    }
  }
  out.emplace_back(node, path);
}

ChainSpec::Node family_node(Family f, std::vector<ChainSpec::Arg> args) {
  return {Kind::Family, f, std::move(args)};
}

ChainSpec::Node op_node(Kind k, std::vector<ChainSpec::Arg> args) {
  return {k, Family::Uniform, std::move(args)};
}

using A = ChainSpec::Arg;

}  // namespace

int ChainSpec::depth() const {
  std::function<int(int)> walk = [&](int i) {
    int best = 0;
    for (const auto& a : nodes[i].args) {
      if (a.is_node) best = std::max(best, walk(a.node));
    }
    return best + (nodes[i].kind == Kind::Family ? 1 : 0);
  };
  return root < 0 ? 0 : walk(root);
}

std::string ChainSpec::to_string() const {
  std::function<std::string(int)> walk = [&](int i) {
    const auto& n = nodes[i];
    std::string s(n.kind == Kind::Family ? family_info(n.family).name : kind_name(n.kind));
    s += '(';
    for (std::size_t k = 0; k < n.args.size(); ++k) {
      if (k) s += ", ";
      s += n.args[k].is_node ? walk(n.args[k].node) : format_double(n.args[k].value);
    }
    return s + ')';
  };
  return root < 0 ? std::string() : walk(root);
}

ChainSpec ChainSpec::subtree(int node) const {
  ChainSpec out;
  out.root = copy_subtree(*this, node, out);
  return out;
}

bool structurally_equal(const ChainSpec& a, const ChainSpec& b) {
  if (a.root < 0 || b.root < 0) return a.root == b.root;
  return equal_nodes(a, a.root, b, b.root);
}

ChainSpec parse_chain(std::string_view text) { return Parser(text).parse(); }

ChainSpec chain_of(const DistributionModel& m) {
  ChainSpec s;
  std::vector<A> args;
  for (double v : m.params) args.push_back(A::constant(v));
  s.root = s.add(family_node(m.family, std::move(args)));
  return s;
}

ChainSpec compose(Family f, const std::vector<double>& constants,
                  const std::vector<const ChainSpec*>& children) {
  ChainSpec s;
  std::vector<A> args;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    const ChainSpec* c = i < children.size() ? children[i] : nullptr;
    if (c != nullptr) {
      args.push_back(A::child(copy_subtree(*c, c->root, s)));
    } else {
      args.push_back(A::constant(constants[i]));
    }
  }
  s.root = s.add(family_node(f, std::move(args)));
  return s;
}

double ChainRunResult::skip_rate() const {
  if (n_requested == 0) return 0.0;
  return static_cast<double>(skips() + n_policy_dropped) / static_cast<double>(n_requested);
}

ChainRunResult simulate_chain_serial(const ChainSpec& spec, std::uint64_t n, std::uint64_t seed,
                                     const ResamplePolicy& policy, bool retain_samples) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (policy.max_attempts < 1) throw Error(ErrorCode::InvalidParameter, "max_attempts must be >= 1");
  check_constants(spec);
  const Evaluator ev(spec, policy);
  Tally total;
  for (std::uint64_t b = 0; b < block_count(n); ++b) {
    Tally t;
    run_block(ev, spec.root, seed, b, block_size(n, b), retain_samples, t);
    total.merge(t);
  }
  return finish(spec, n, seed, std::move(total));
}

ChainRunResult simulate_chain(const ChainSpec& spec, std::uint64_t n, std::uint64_t seed,
                              const ResamplePolicy& policy, const SimulateOptions& options) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (policy.max_attempts < 1) throw Error(ErrorCode::InvalidParameter, "max_attempts must be >= 1");
  check_constants(spec);
  const Evaluator ev(spec, policy);
  const auto blocks = static_cast<std::int64_t>(block_count(n));
  std::vector<Tally> tallies(static_cast<std::size_t>(blocks));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int threads = options.threads;
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_default_threads())
  for (std::int64_t b = 0; b < blocks; ++b) {
    try {
      run_block(ev, spec.root, seed, static_cast<std::uint64_t>(b),
                block_size(n, static_cast<std::uint64_t>(b)), options.retain_samples,
                tallies[static_cast<std::size_t>(b)]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  return finish(spec, n, seed, std::move(total));
}

std::vector<NodeChiSqr> sequential_chisqr(const ChainSpec& spec, std::uint64_t n,
                                          std::uint64_t seed, const ResamplePolicy& policy) {
  std::vector<std::pair<int, std::string>> order;
  postorder(spec, spec.root, "", order);
  std::vector<NodeChiSqr> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ChainSpec sub = spec.subtree(order[i].first);
    const auto r = simulate_chain(sub, n, stream_seed(seed, i), policy);
    out.push_back({order[i].second, sub.to_string(), r.chi_sqr});
  }
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::BEN: return "BEN";
    case Verdict::not_: return "not";
    case Verdict::NOT: return "NOT";
  }
  return "?";
}

double Chainer::location() const { return std::log(10.0) * (F + span / 2.0); }

ChainSpec Chainer::spec() const {
  if (kind == Kind::ReciprocalLog) {
    return chain_of({Family::PowerLaw, {1.0, std::pow(10.0, F), std::pow(10.0, F + span)}});
  }
  return chain_of({Family::LogNormal, {location(), shape}});
}

std::string Chainer::to_string() const { return spec().to_string(); }

Verdict classify(double chi_chained, double chi_baseline, const ChainabilityThresholds& t) {
  if (chi_chained < t.ben_chi) return Verdict::BEN;
  // No improvement beyond the factor (including getting worse) is indifference.
  if (chi_chained * t.not_factor >= chi_baseline) return Verdict::NOT;
  return Verdict::not_;
}

ChainabilityResult chainability_experiment(const ChainabilityConfig& c) {
  const int k = arity(c.family);
  if (static_cast<int>(c.constants.size()) != k) {
    throw Error(ErrorCode::InvalidParameter, "constants must cover every parameter");
  }
  if (c.chained.empty()) throw Error(ErrorCode::InvalidParameter, "no parameter chained");
  std::vector<const ChainSpec*> children(k, nullptr);
  const ChainSpec chainer = c.chainer.spec();
  for (int i : c.chained) {
    if (i < 0 || i >= k) throw Error(ErrorCode::InvalidParameter, "chained index out of range");
    children[i] = &chainer;
  }
  const DistributionModel base{c.family, c.constants};
  require_valid(resolve_integer_params(base));
  const ChainSpec baseline = chain_of(base);
  const ChainSpec chained = compose(c.family, c.constants, children);
  const auto rb = simulate_chain(baseline, c.n, stream_seed(c.seed, 0), c.policy);
  const auto rc = simulate_chain(chained, c.n, stream_seed(c.seed, 1), c.policy);
  ChainabilityResult r;
  r.chi_baseline = rb.chi_sqr;
  r.chi_chained = rc.chi_sqr;
  r.baseline_text = baseline.to_string();
  r.chained_text = chained.to_string();
  r.valid = rb.valid && rc.valid;
  r.verdict = classify(r.chi_chained, r.chi_baseline, c.thresholds);
  return r;
}

ChainabilityVote chainability_vote(const ChainabilityConfig& config, int repetitions) {
  ChainabilityVote v;
  std::array<int, 3> tally{};
  for (int i = 0; i < repetitions; ++i) {
    ChainabilityConfig c = config;
    c.seed = stream_seed(config.seed, static_cast<std::uint64_t>(i));
    v.runs.push_back(chainability_experiment(c));
    ++tally[static_cast<int>(v.runs.back().verdict)];
  }
  const auto best = std::max_element(tally.begin(), tally.end());
  if (*best * 2 > repetitions) {
    v.verdict = static_cast<Verdict>(best - tally.begin());
  } else {
    std::vector<ChainabilityResult> sorted = v.runs;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.chi_chained < b.chi_chained; });
    v.verdict = sorted[sorted.size() / 2].verdict;
  }
  return v;
}

InvarianceResult power_of_ten_invariance_check(const DistributionModel& model, int M,
                                               const std::vector<int>& scaled_params,
                                               const InvarianceMode& mode) {
  require_valid(resolve_integer_params(model));
  DistributionModel scaled = model;
  const double factor = std::pow(10.0, M);
  if (scaled_params.empty()) {
    for (auto& p : scaled.params) p *= factor;
  } else {
    for (int i : scaled_params) {
      if (i < 0 || i >= static_cast<int>(scaled.params.size())) {
        throw Error(ErrorCode::InvalidParameter, "scaled parameter index out of range");
      }
      scaled.params[i] *= factor;
    }
  }
  require_valid(resolve_integer_params(scaled));
  InvarianceResult r;
  if (mode.kind == InvarianceMode::Kind::Analytic) {
    if (model.family == Family::Die) {
      throw Error(ErrorCode::UnsupportedForm, "analytic mode needs a density");
    }
    r.original = ld_of_model(model).ld;
    r.scaled = ld_of_model(scaled).ld;
  } else {
    r.original = simulate_chain(chain_of(model), mode.n, stream_seed(mode.seed, 0)).ld;
    r.scaled = simulate_chain(chain_of(scaled), mode.n, stream_seed(mode.seed, 1)).ld;
  }
  r.linf = linf(r.original, r.scaled);
  return r;
}

std::vector<std::string> preset_names() {
  return {"flehinger", "benford_twist", "mini_hill", "rayleigh_cycles", "table8_chain"};
}

ChainSpec preset(std::string_view name, const std::vector<double>& args) {
  auto arg_or = [&](std::size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };
  ChainSpec s;
  if (name == "flehinger") {
    const int depth = static_cast<int>(arg_or(0, 4));
    const double M = arg_or(1, 1e5);
    if (depth < 1) throw Error(ErrorCode::InvalidParameter, "depth must be >= 1");
    int inner = s.add(family_node(Family::Uniform, {A::constant(0), A::constant(M)}));
    for (int i = 1; i < depth; ++i) {
      inner = s.add(family_node(Family::Uniform, {A::constant(0), A::child(inner)}));
    }
    s.root = inner;
    return s;
  }
  if (name == "benford_twist") {
    const int pl = s.add(family_node(Family::PowerLaw, {A::constant(1), A::constant(10), A::constant(100)}));
    s.root = s.add(family_node(Family::Uniform, {A::constant(0), A::child(pl)}));
    return s;
  }
  if (name == "rayleigh_cycles") {
    const int cycles = static_cast<int>(arg_or(0, 9));
    if (cycles < 1) throw Error(ErrorCode::InvalidParameter, "need at least one cycle");
    A inner = A::constant(1.0);
    int top = -1;
    for (int i = 0; i < cycles; ++i) {
      const int e = s.add(family_node(Family::Exp1, {inner}));
      const int u = s.add(family_node(Family::Uniform, {A::constant(0), A::child(e)}));
      top = s.add(family_node(Family::Rayleigh, {A::child(u)}));
      inner = A::child(top);
    }
    s.root = top;
    return s;
  }
  if (name == "table8_chain") {
    const int die = s.add(family_node(Family::Die, {A::constant(6)}));
    const int chi = s.add(family_node(Family::ChiSqr, {A::child(die)}));
    const int u1 = s.add(family_node(Family::Uniform, {A::constant(0), A::child(chi)}));
    const int u2 = s.add(family_node(Family::Uniform, {A::constant(0), A::constant(2)}));
    s.root = s.add(family_node(Family::Normal, {A::child(u1), A::child(u2)}));
    return s;
  }
  if (name == "mini_hill") {
    auto uni = [&](double b) {
      return A::child(s.add(family_node(Family::Uniform, {A::constant(0), A::constant(b)})));
    };
    auto neg = [&](A a) { return A::child(s.add(op_node(Kind::Negate, {a}))); };
    auto abs_of = [&](A a) { return A::child(s.add(op_node(Kind::Abs, {a}))); };
    auto sum = [&](std::vector<A> a) { return A::child(s.add(op_node(Kind::Sum, std::move(a)))); };
    auto fam = [&](Family f, std::vector<A> a) { return A::child(s.add(family_node(f, std::move(a)))); };
    std::vector<A> parts;
    // 5.4U + 6.034U + 0.054U
    parts.push_back(sum({uni(5.4), uni(6.034), uni(0.054)}));
    // |-0.0042312 ln(1-U) - 5| + 0.0042312 U
    parts.push_back(sum({abs_of(sum({fam(Family::Exp2, {A::constant(0.0042312)}), A::constant(-5)})),
                         uni(0.0042312)}));
    // |N(5, 3)|
    parts.push_back(abs_of(fam(Family::Normal, {A::constant(5), A::constant(3)})));
    // |||-0.345 ln(7U) - 3| - 0.345U| - 1.37U|, with -0.345 ln(7U) = 0.345 E - 0.345 ln 7
    const A e4 = fam(Family::Exp2, {A::constant(0.345)});
    const A inner4 = abs_of(sum({e4, A::constant(-0.345 * std::log(7.0) - 3.0)}));
    const A mid4 = abs_of(sum({inner4, neg(uni(0.345))}));
    parts.push_back(abs_of(sum({mid4, neg(uni(1.37))})));
    // |N(0.002442281, 0.256533505)|
    parts.push_back(abs_of(fam(Family::Normal, {A::constant(0.002442281), A::constant(0.256533505)})));
    // |7U - 3U|
    parts.push_back(abs_of(sum({uni(7), neg(uni(3))})));
    s.root = s.add(op_node(Kind::Mixture, std::move(parts)));
    return s;
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

}  // namespace benlab
