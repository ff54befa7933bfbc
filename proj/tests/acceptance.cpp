// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "asofs/annealing.hpp"
#include "asofs/binarizer.hpp"
#include "asofs/dataset.hpp"
#include "asofs/dynamics.hpp"
#include "asofs/evaluator.hpp"
#include "asofs/optimizer.hpp"
#include "asofs/oracle.hpp"
#include "support/synthetic.hpp"

using namespace asofs;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.1fs)\n", id, o.pass ? "PASS" : "FAIL",
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

double rel_error(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Reference formulas, written independently of the library.
namespace ref {

double depth(double alpha, int t, int T) {
  const double decay = static_cast<double>(T - t + 1) / T;
  return alpha * decay * decay * decay * std::exp(-20.0 * t / T);
}

double drift(int t, int T) { return 0.1 * std::sin(std::acos(-1.0) * t / (2.0 * T)); }

long neighbors(int t, int T, long N) {
  const long k = std::llround(N - (N - 2) * std::sqrt(static_cast<double>(t) / T));
  return std::clamp(k, 2L, N);
}

double pair_force(double h, double eta) {
  double h7 = 1.0;
  for (int i = 0; i < 7; ++i) h7 *= h;
  const double h13 = h7 * h * h * h * h * h * h;
  return eta * (h7 - 2.0 * h13);
}

double sigmoid(double v) { return 0.5 * (1.0 + std::tanh(0.5 * v)); }

double abs_tanh(double v) {
  const double e = std::expm1(2.0 * std::abs(v));
  return e / (e + 2.0);
}

std::vector<double> masses(const std::vector<double>& fit) {
  double best = fit[0], worst = fit[0];
  for (double f : fit) {
    best = std::min(best, f);
    worst = std::max(worst, f);
  }
  std::vector<double> m;
  for (double f : fit) m.push_back(worst == best ? 1.0 : std::exp((best - f) / (worst - best)));
  double sum = 0.0;
  for (double x : m) sum += x;
  for (double& x : m) x /= sum;
  return m;
}

double fitness(double err, double selected, double total, double omega) {
  return omega * err + (1.0 - omega) * (selected / total);
}

double boltzmann(double cur, double best, double temp) {
  return cur <= best ? 1.0 : std::exp((best - cur) / temp);
}

} // namespace ref

Outcome closed_forms() {
  Rng rng(20240101);
  double worst = 0.0;
  std::string worst_name;
  auto track = [&](const char* name, double got, double want) {
    const double e = rel_error(got, want);
    if (e > worst || std::isnan(e)) {
      worst = std::isnan(e) ? INFINITY : e;
      worst_name = name;
    }
  };
  bool exact = true;
  for (int draw = 0; draw < 1000; ++draw) {
    const int T = 1 + static_cast<int>(rng.index(100));
    const int t = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(T)));
    DynamicsParams p;
    p.alpha = rng.uniform(1.0, 100.0);
    p.max_iterations = T;
    track("depth", depth(t, p), ref::depth(p.alpha, t, T));
    track("drift", drift(t, T), ref::drift(t, T));

    const std::size_t N = 2 + rng.index(99);
    exact &= static_cast<long>(neighbor_count(t, T, N)) ==
             ref::neighbors(t, T, static_cast<long>(N));

    const double h = rng.uniform(1.0, 2.0), eta = rng.uniform(0.0, 50.0);
    track("pair force", interaction_magnitude(h, eta), ref::pair_force(h, eta));

    const double v = rng.uniform(-6.0, 6.0);
    track("S transfer", transfer(TransferKind::SShaped, v), ref::sigmoid(v));
    track("V transfer", transfer(TransferKind::VShaped, v), ref::abs_tanh(v));

    std::vector<double> fit(1 + rng.index(30));
    for (double& f : fit) f = rng.uniform();
    const auto got = compute_masses(fit);
    const auto want = ref::masses(fit);
    for (std::size_t i = 0; i < fit.size(); ++i) track("mass", got[i], want[i]);

    const std::size_t total = 1 + rng.index(60), selected = 1 + rng.index(total);
    const double err = rng.uniform(), omega = rng.uniform();
    track("fitness", fitness(err, selected, total, FitnessWeights{omega}),
          ref::fitness(err, double(selected), double(total), omega));

    const double best = rng.uniform(), cur = best + rng.uniform(-0.2, 1.0);
    const double temp = rng.uniform(0.05, 40.0);
    track("boltzmann", boltzmann_p(cur, best, temp), ref::boltzmann(cur, best, temp));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max relative error %.3g (%s), K exact: %s", worst,
                worst_name.empty() ? "-" : worst_name.c_str(), exact ? "yes" : "no");
  return {worst <= 1e-12 && exact, buf};
}

Outcome schedule_endpoints() {
  std::size_t bad = 0;
  for (int T = 1; T <= 100; ++T) {
    for (std::size_t N = 2; N <= 100; ++N) bad += neighbor_count(T, T, N) != 2;
    bad += drift(T, T) != 0.1;
    DynamicsParams p;
    p.max_iterations = T;
    bad += distance_bounds(T, p).lower != p.g0 + 0.1;
    bad += distance_bounds(T, p).upper != p.u;
  }
  return {bad == 0, std::to_string(bad) + " mismatches over N, T in [2|1, 100]"};
}

Outcome mass_normalization() {
  Rng rng(77);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    std::vector<double> fit(1 + rng.index(50));
    if (n % 10 == 0) {
      std::fill(fit.begin(), fit.end(), rng.uniform());
    } else {
      for (double& f : fit) f = rng.bernoulli(0.2) ? 0.5 : rng.uniform(0.0, 2.0);
    }
    const auto m = compute_masses(fit);
    const double sum = std::accumulate(m.begin(), m.end(), 0.0);
    worst = std::max(worst, std::abs(sum - 1.0));
    bad += std::abs(sum - 1.0) > 1e-9;
    for (double x : m) bad += !(x > 0.0 && x <= 1.0);
    if (n % 10 == 0) {
      for (double x : m) bad += x != m[0];
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu violations, max |sum-1| = %.2g", bad, worst);
  return {bad == 0, buf};
}

Outcome binarization() {
  Rng rng(4);
  const FlipPolicy fixed;
  const double cut = std::atanh(0.5);
  std::size_t bad = 0;
  for (int n = 0; n < 10000; ++n) {
    const std::size_t d = 1 + rng.index(40);
    FeatureMask mask(d);
    std::vector<double> v(d);
    for (std::size_t k = 0; k < d; ++k) {
      mask.set(k, rng.bernoulli(0.5));
      v[k] = rng.bernoulli(0.05) ? 0.0 : rng.uniform(-6.0, 6.0);
    }
    const auto s = apply_flip(mask, v, TransferKind::SShaped, fixed, rng);
    const auto w = apply_flip(mask, v, TransferKind::VShaped, fixed, rng);
    for (std::size_t k = 0; k < d; ++k) {
      bad += (s.test(k) != mask.test(k)) != (v[k] > 0.0);
      bad += (w.test(k) != mask.test(k)) != (std::abs(v[k]) > cut);
    }
  }
  return {bad == 0, std::to_string(bad) + " mismatched bits over 10000 vectors"};
}

Outcome annealing_contract() {
  const auto wine = load_csv(ASOFS_DATA_DIR "/wine.csv");
  const auto ctx = make_context(wine, SplitSpec{0.8, true, 1}, 5, FitnessWeights{});
  const std::size_t d = wine.feature_count;

  Rng rng(55);
  std::size_t worse = 0;
  for (int n = 0; n < 1000; ++n) {
    FeatureMask start(d);
    for (std::size_t k = 0; k < d; ++k) start.set(k, rng.bernoulli(0.5));
    if (start.none()) start.set(rng.index(d));
    const auto value = ctx->evaluate(start);
    auto walk = Rng::derive(55, {static_cast<std::uint64_t>(n)});
    const auto out = anneal(start, value, *ctx, AnnealSchedule::for_features(d), walk);
    worse += out.value.fitness > value.fitness;
  }

  double worst_freq = 0.0;
  for (double gap : {0.01, 0.1, 0.5}) {
    for (double temp : {0.05, 0.3, 2.0}) {
      int accepted = 0;
      for (int n = 0; n < 10000; ++n) accepted += accept_neighbor(0.1 + gap, 0.1, temp, rng);
      worst_freq = std::max(worst_freq, std::abs(accepted / 1e4 - std::exp(-gap / temp)));
    }
  }

  std::size_t count_bad = 0;
  for (std::size_t width : {1, 5, 13}) {
    const auto small = make_context(wine, SplitSpec{0.8, true, 1}, 5, FitnessWeights{});
    for (double stop : {0.5, 1.0, 3.0}) {
      const auto s = AnnealSchedule::for_features(width, stop);
      const double t0 = 2.0 * static_cast<double>(width);
      const auto expect = t0 <= stop ? 0.0 : std::ceil(std::log(t0 / stop) / std::log(1 / 0.93));
      FeatureMask m(d);
      for (std::size_t k = 0; k < width; ++k) m.set(k);
      Rng r(width);
      // The schedule width is set independently of the mask so every
      // combination is exercised on the same evaluator.
      const auto out = anneal(m, small->evaluate(m), *small, s, r);
      count_bad += static_cast<double>(out.neighbors_evaluated) != expect;
      count_bad += s.step_count() != static_cast<std::size_t>(expect);
    }
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu/1000 walks worse than start, max acceptance deviation %.4f, "
                "%zu neighbour-count mismatches",
                worse, worst_freq, count_bad);
  return {worse == 0 && worst_freq <= 0.05 && count_bad == 0, buf};
}

Outcome oracle_equivalence() {
  const auto ds = testing::parity_dataset(200, 2, 8, 2024);
  const SplitSpec split{0.8, true, 1};
  const auto oracle = exhaustive_oracle(ds, FitnessWeights{0.99}, 5, split);
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    OptimizerConfig c;
    c.set_method("asov-sa");
    c.population_size = 20;
    c.dynamics.max_iterations = 30;
    c.knn_k = 5;
    c.weights.omega = 0.99;
    c.split = split;
    c.seed = seed;
    const auto r = run(c, ds);
    const double gap = (r.best_fitness - oracle.value.fitness) / oracle.value.fitness;
    worst = std::max(worst, gap);
    within += gap <= 0.05;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "oracle %s fitness %.6f over %zu masks; %d/10 runs within 5%%, worst gap %.2f%%",
                oracle.mask.to_string().c_str(), oracle.value.fitness,
                oracle.masks_evaluated, within, 100 * worst);
  return {oracle.masks_evaluated == 1023 && within >= 8, buf};
}

struct Benchmark {
  std::string name;
  Dataset data;
  std::vector<std::vector<RunReport>> by_method;  // ASOs, ASOv, ASOs-SA, ASOv-SA
};

const char* const kMethods[] = {"asos", "asov", "asos-sa", "asov-sa"};
const SplitSpec kBenchSplit{0.8, true, 1};

std::vector<Benchmark>& benchmarks() {
  static std::vector<Benchmark> all = [] {
    std::vector<Benchmark> out;
    out.push_back({"WineEW", load_csv(ASOFS_DATA_DIR "/wine.csv"), {}});
    out.push_back({"Zoo", load_csv(ASOFS_DATA_DIR "/zoo.csv", "type"), {}});
    for (auto& b : out) {
      for (const char* method : kMethods) {
        std::vector<RunReport> runs;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
          OptimizerConfig c;
          c.set_method(method);
          c.split = kBenchSplit;
          c.seed = seed;
          runs.push_back(run(c, b.data));
        }
        b.by_method.push_back(std::move(runs));
      }
    }
    return out;
  }();
  return all;
}

Outcome uci_reproduction() {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& b : benchmarks()) {
    const auto ctx = make_context(b.data, kBenchSplit, 5, FitnessWeights{});
    const double full = 1.0 - ctx->evaluate(FeatureMask(b.data.feature_count, true)).error_rate;
    const auto& runs = b.by_method[2];
    double best = 0.0, selected = 0.0;
    for (const auto& r : runs) {
      best = std::max(best, r.test_accuracy);
      selected += static_cast<double>(r.selected_count);
    }
    selected /= static_cast<double>(runs.size());
    const double limit = 0.75 * static_cast<double>(b.data.feature_count);
    pass &= best >= full && selected <= limit;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: ASOs-SA best acc %.4f vs full %.4f, mean |X| %.1f <= %.2f; ",
                  b.name.c_str(), best, full, selected, limit);
    detail << buf;
  }
  return {pass, detail.str()};
}

Outcome convergence_behaviour() {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& b : benchmarks()) {
    for (std::size_t m = 0; m < 4; ++m) {
      int monotone = 0, settled = 0;
      for (const auto& r : b.by_method[m]) {
        const auto& c = r.convergence;
        const bool mono = std::is_sorted(c.rbegin(), c.rend());
        // No improvement during any of the final five iterations.
        const bool flat = c.size() >= 6 && c[c.size() - 6] == c.back();
        monotone += mono;
        settled += mono && flat;
      }
      pass &= monotone == 10 && settled >= 6;
      detail << b.name << '/' << b.by_method[m].front().method << ' ' << settled << "/10 ";
    }
  }
  return {pass, detail.str()};
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "asofs_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto invoke = [&](const std::string& name) {
    const std::string cmd = std::string("\"") + ASOFS_CLI_PATH + "\" run --data \"" +
                            ASOFS_DATA_DIR "/wine.csv\" --method asov-sa --seed 42 --threads 4"
                            " --out \"" + (dir / name).string() + "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  auto slurp = [&](const std::string& name) {
    std::ifstream in(dir / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  if (!invoke("first.json") || !invoke("second.json")) return {false, "run failed"};
  const auto a = slurp("first.json"), b = slurp("second.json");
  const bool same = !a.empty() && a == b &&
                    slurp("first.convergence.csv") == slurp("second.convergence.csv");
  return {same, same ? "reports byte-identical (" + std::to_string(a.size()) + " bytes, 4 threads)"
                     : "reports differ"};
}

} // namespace

int main() {
  report(1, closed_forms);
  report(2, schedule_endpoints);
  report(3, mass_normalization);
  report(4, binarization);
  report(5, annealing_contract);
  report(6, oracle_equivalence);
  report(7, uci_reproduction);
  report(8, convergence_behaviour);
  report(9, determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
