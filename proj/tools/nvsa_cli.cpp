// nvsa: command-line workbench around the library. Generates synthetic
// test datasets (JSONL, schema v:1), solves them with either the
// vector-symbolic backend or the exact enumeration engine, evaluates
// answer files into accuracy tables, and benchmarks the two engines.
//
// Exit codes: 0 ok, 2 I/O failure, 3 parse failure, 4 shape mismatch.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nvsa/backend.hpp"
#include "nvsa/codec.hpp"
#include "nvsa/oracle.hpp"
#include "nvsa/rng.hpp"
#include "nvsa/rpm.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitShape = 4;

int thread_count() {
  if (const char* env = std::getenv("NVSA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) on a pool of workers; results must be
// written by index so output ordering is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int threads = std::min<int>(thread_count(), static_cast<int>(n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<nvsa::rpm::ConstellationKind> parse_constellations(
    const std::vector<std::string>& names) {
  if (names.empty()) {
    return {nvsa::rpm::kAllConstellations.begin(), nvsa::rpm::kAllConstellations.end()};
  }
  std::vector<nvsa::rpm::ConstellationKind> kinds;
  for (const std::string& name : names) {
    const auto kind = nvsa::rpm::constellation_from_name(name);
    if (!kind) throw CLI::ValidationError("unknown constellation: " + name);
    kinds.push_back(*kind);
  }
  return kinds;
}

struct Dataset {
  std::vector<nvsa::rpm::RpmTest> tests;
};

// Exits with kExitIo / kExitParse on failure.
Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open dataset: " << path << "\n";
    std::exit(kExitIo);
  }
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      ds.tests.push_back(nvsa::rpm::from_jsonl_line(line));
    } catch (const std::exception& e) {
      std::cerr << "error: " << path << ":" << line_no << ": " << e.what() << "\n";
      std::exit(kExitParse);
    }
  }
  return ds;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output: " << path << "\n";
    std::exit(kExitIo);
  }
  return out;
}

json trace_json(const nvsa::SolveResult& r) {
  json components = json::array();
  for (const auto& comp : r.components) {
    json attrs = json::array();
    for (const auto& at : comp.attrs) {
      json scores = json::array();
      for (const auto& s : at.scores) {
        scores.push_back({{"rule", nvsa::rpm::rule_name(s.rule)}, {"u", s.u}});
      }
      attrs.push_back({{"attr", nvsa::rpm::attribute_name(at.attr)},
                       {"scores", std::move(scores)},
                       {"chosen", nvsa::rpm::rule_name(at.chosen)},
                       {"u", at.best_u}});
    }
    json c = {{"attrs", std::move(attrs)}};
    if (comp.has_layout) c["governed"] = nvsa::rpm::attribute_name(comp.governed);
    components.push_back(std::move(c));
  }
  return {{"answer", r.answer_index},
          {"scores", std::vector<double>(r.candidate_scores.begin(),
                                         r.candidate_scores.end())},
          {"components", std::move(components)}};
}

struct AccuracyTable {
  // Per-constellation (correct, total), plus the unweighted average.
  std::map<std::string, std::pair<int, int>> per_constellation;

  void add(nvsa::rpm::ConstellationKind kind, bool correct) {
    auto& [c, t] = per_constellation[nvsa::rpm::constellation_name(kind)];
    c += correct ? 1 : 0;
    ++t;
  }
  double average() const {
    double sum = 0.0;
    for (const auto& [name, ct] : per_constellation) {
      sum += 100.0 * ct.first / ct.second;
    }
    return per_constellation.empty() ? 0.0 : sum / per_constellation.size();
  }
};

// Mirrors the standard report layout: Avg first, then each constellation.
void print_table(const AccuracyTable& table, std::ostream& os) {
  static const char* kOrder[] = {"center", "2x2",  "3x3",  "left_right",
                                 "up_down", "out_in_center", "out_in_grid"};
  os << "Avg " << table.average() << "\n";
  for (const char* name : kOrder) {
    const auto it = table.per_constellation.find(name);
    if (it == table.per_constellation.end()) continue;
    os << name << " " << 100.0 * it->second.first / it->second.second << " ("
       << it->second.first << "/" << it->second.second << ")\n";
  }
}

json table_json(const AccuracyTable& table) {
  json per = json::object();
  for (const auto& [name, ct] : table.per_constellation) {
    per[name] = {{"correct", ct.first},
                 {"total", ct.second},
                 {"accuracy", 100.0 * ct.first / ct.second}};
  }
  return {{"v", 1}, {"avg", table.average()}, {"constellations", std::move(per)}};
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> constellations;
  int n = 100;
  std::string mode = "raven";
  std::string out;
};

int cmd_generate(const GenerateOptions& opt) {
  const auto kinds = parse_constellations(opt.constellations);
  const auto mode = nvsa::rpm::answer_mode_from_name(opt.mode);
  if (!mode) {
    std::cerr << "error: unknown mode: " << opt.mode << "\n";
    return kExitParse;
  }
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file = open_out(opt.out);
    os = &file;
  }
  for (const auto kind : kinds) {
    const std::uint64_t base =
        nvsa::hash_combine(opt.seed, nvsa::hash_str(nvsa::rpm::constellation_name(kind)));
    for (int i = 0; i < opt.n; ++i) {
      const auto test =
          nvsa::rpm::generate_test(nvsa::hash_combine(base, static_cast<std::uint64_t>(i)),
                                   kind, *mode);
      *os << nvsa::rpm::to_jsonl_line(test) << "\n";
    }
  }
  if (os->fail()) {
    std::cerr << "error: write failure\n";
    return kExitIo;
  }
  return kExitOk;
}

struct SolveOptions {
  std::string dataset;
  std::string engine = "vsa";
  std::string perception = "oracle";
  double tau = nvsa::kDefaultDecodeThreshold;
  std::uint64_t seed = 0;
  std::size_t dim = nvsa::kFhrrDim;
  std::string out;
  std::string trace;
};

// Round-trips every panel through the bundled-scene codec: encode the
// ground-truth objects, decode with the threshold, rebuild the scene.
nvsa::rpm::RpmTest codec_roundtrip(const nvsa::ObjectDictionary& dict, double tau,
                                   const nvsa::rpm::RpmTest& test) {
  nvsa::rpm::RpmTest out = test;
  const auto roundtrip = [&](const nvsa::rpm::Scene& scene) {
    return nvsa::scene_from_codes(scene.constellation,
                                  dict.decode(dict.encode_scene(scene), tau));
  };
  for (auto& scene : out.context) scene = roundtrip(scene);
  for (auto& scene : out.candidates) scene = roundtrip(scene);
  return out;
}

int cmd_solve(const SolveOptions& opt) {
  Dataset ds = load_dataset(opt.dataset);
  if (opt.perception == "codec") {
    const nvsa::ObjectDictionary dict(opt.seed);
    parallel_for(ds.tests.size(), [&](std::size_t i) {
      ds.tests[i] = codec_roundtrip(dict, opt.tau, ds.tests[i]);
    });
  } else if (opt.perception != "oracle") {
    std::cerr << "error: unknown perception: " << opt.perception << "\n";
    return kExitParse;
  }
  std::vector<nvsa::SolveResult> results(ds.tests.size());

  if (opt.engine == "vsa") {
    nvsa::BackendConfig cfg;
    cfg.d = opt.dim;
    cfg.seed = opt.seed;
    nvsa::ReasoningBackend backend(cfg);
    parallel_for(ds.tests.size(),
                 [&](std::size_t i) { results[i] = backend.solve(ds.tests[i]); });
  } else if (opt.engine == "exact") {
    nvsa::ExactOracle oracle;
    parallel_for(ds.tests.size(),
                 [&](std::size_t i) { results[i] = oracle.solve(ds.tests[i]); });
  } else {
    std::cerr << "error: unknown engine: " << opt.engine << "\n";
    return kExitParse;
  }

  AccuracyTable table;
  for (std::size_t i = 0; i < ds.tests.size(); ++i) {
    table.add(ds.tests[i].constellation,
              results[i].answer_index == ds.tests[i].answer_index);
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file = open_out(opt.out);
    os = &file;
  }
  for (std::size_t i = 0; i < ds.tests.size(); ++i) {
    json line = {{"v", 1},
                 {"index", i},
                 {"constellation",
                  nvsa::rpm::constellation_name(ds.tests[i].constellation)},
                 {"predicted", results[i].answer_index}};
    *os << line.dump() << "\n";
  }
  if (!opt.out.empty()) print_table(table, std::cout);

  if (!opt.trace.empty()) {
    std::ofstream tf = open_out(opt.trace);
    json traces = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      json t = trace_json(results[i]);
      t["index"] = i;
      traces.push_back(std::move(t));
    }
    tf << json{{"v", 1}, {"engine", opt.engine}, {"tests", std::move(traces)}}.dump(2)
       << "\n";
    if (tf.fail()) {
      std::cerr << "error: write failure: " << opt.trace << "\n";
      return kExitIo;
    }
  }
  if (os->fail()) {
    std::cerr << "error: write failure\n";
    return kExitIo;
  }
  return kExitOk;
}

struct EvalOptions {
  std::string answers;
  std::string dataset;
  std::string out;
};

int cmd_eval(const EvalOptions& opt) {
  const Dataset ds = load_dataset(opt.dataset);
  std::ifstream in(opt.answers);
  if (!in) {
    std::cerr << "error: cannot open answers: " << opt.answers << "\n";
    return kExitIo;
  }
  std::vector<int> predicted;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      predicted.push_back(j.at("predicted").get<int>());
    } catch (const std::exception& e) {
      std::cerr << "error: " << opt.answers << ":" << line_no << ": " << e.what()
                << "\n";
      return kExitParse;
    }
  }
  if (predicted.size() != ds.tests.size()) {
    std::cerr << "error: answer count (" << predicted.size()
              << ") does not match dataset (" << ds.tests.size() << ")\n";
    return kExitShape;
  }
  AccuracyTable table;
  for (std::size_t i = 0; i < ds.tests.size(); ++i) {
    table.add(ds.tests[i].constellation, predicted[i] == ds.tests[i].answer_index);
  }
  print_table(table, std::cout);
  if (!opt.out.empty()) {
    std::ofstream file = open_out(opt.out);
    file << table_json(table).dump(2) << "\n";
    if (file.fail()) {
      std::cerr << "error: write failure\n";
      return kExitIo;
    }
  }
  return kExitOk;
}

struct BenchOptions {
  std::uint64_t seed = 0;
  std::size_t dim = nvsa::kFhrrDim;
  int reps = 5;
  std::string out;
};

double median_ms(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int cmd_bench(const BenchOptions& opt) {
  using namespace nvsa;
  BackendConfig cfg;
  cfg.d = opt.dim;
  cfg.seed = opt.seed;
  ReasoningBackend backend(cfg);
  ExactOracle oracle;

  json report = {{"v", 1}, {"reps", opt.reps}};

  // Rule-probability microbenchmark: 3x3 position support (n = 511),
  // distribute three, vsa vs exact.
  {
    const int n_slots = 9;
    const auto test = rpm::generate_test(opt.seed, rpm::ConstellationKind::Grid3x3);
    PmfGrid grid;
    for (int i = 0; i < 8; ++i) grid[i] = panel_pmfs(test.context[i], 0).pos;
    backend.discrete_codebook(grid[0].n_values());  // build outside the timer

    std::vector<double> vsa_ms, exact_ms;
    for (int r = 0; r < opt.reps; ++r) {
      vsa_ms.push_back(time_ms([&] { backend.rule_prob_distribute_three(grid); }));
      exact_ms.push_back(time_ms([&] {
        oracle.position_rule_prob(rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0},
                                  grid, n_slots);
      }));
    }
    const double v = median_ms(vsa_ms), e = median_ms(exact_ms);
    report["position_distribute_three_n511"] = {
        {"vsa_ms", v}, {"exact_ms", e}, {"speedup", e / v}};
    std::cout << "position distribute-three (n=511): vsa " << v << " ms, exact " << e
              << " ms, speedup " << e / v << "x\n";
  }

  // End-to-end throughput on Center tests, both engines.
  {
    const int n_tests = 20;
    std::vector<rpm::RpmTest> tests;
    for (int i = 0; i < n_tests; ++i) {
      tests.push_back(rpm::generate_test(hash_combine(opt.seed, i),
                                         rpm::ConstellationKind::Center));
    }
    std::vector<double> vsa_ms, exact_ms;
    for (int r = 0; r < opt.reps; ++r) {
      vsa_ms.push_back(time_ms([&] {
        for (const auto& t : tests) backend.solve(t);
      }));
      exact_ms.push_back(time_ms([&] {
        for (const auto& t : tests) oracle.solve(t);
      }));
    }
    const double v = median_ms(vsa_ms) / n_tests, e = median_ms(exact_ms) / n_tests;
    report["center_solve"] = {{"vsa_ms_per_test", v},
                              {"exact_ms_per_test", e},
                              {"vsa_tests_per_s", 1000.0 / v},
                              {"exact_tests_per_s", 1000.0 / e}};
    std::cout << "center solve: vsa " << v << " ms/test (" << 1000.0 / v
              << "/s), exact " << e << " ms/test (" << 1000.0 / e << "/s)\n";
  }

  if (!opt.out.empty()) {
    std::ofstream file = open_out(opt.out);
    file << report.dump(2) << "\n";
    if (file.fail()) {
      std::cerr << "error: write failure\n";
      return kExitIo;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-symbolic Raven's-matrix workbench"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic test dataset (JSONL)");
  g->add_option("--seed", gen.seed, "Base seed");
  g->add_option("--constellation", gen.constellations,
                "Constellation name (repeatable; default all)");
  g->add_option("--n", gen.n, "Tests per constellation");
  g->add_option("--mode", gen.mode, "Answer-set mode: raven or fair");
  g->add_option("--out", gen.out, "Output path (default stdout)");

  SolveOptions sol;
  auto* s = app.add_subcommand("solve", "Solve a dataset and report accuracy");
  s->add_option("dataset", sol.dataset, "JSONL dataset path")->required();
  s->add_option("--engine", sol.engine, "vsa or exact");
  s->add_option("--perception", sol.perception,
                "oracle (ground truth) or codec (bundled-vector round trip)");
  s->add_option("--tau", sol.tau, "Codec decode threshold");
  s->add_option("--seed", sol.seed, "Codebook seed (vsa engine)");
  s->add_option("--dim", sol.dim, "Phasor dimension (vsa engine)");
  s->add_option("--out", sol.out, "Answers JSONL path (default stdout)");
  s->add_option("--trace", sol.trace, "Solve-trace JSON path");

  EvalOptions ev;
  auto* e = app.add_subcommand("eval", "Score an answers file against a dataset");
  e->add_option("answers", ev.answers, "Answers JSONL path")->required();
  e->add_option("dataset", ev.dataset, "JSONL dataset path")->required();
  e->add_option("--out", ev.out, "JSON report path");

  BenchOptions be;
  auto* b = app.add_subcommand("bench", "Benchmark vsa vs exact engines");
  b->add_option("--seed", be.seed, "Base seed");
  b->add_option("--dim", be.dim, "Phasor dimension");
  b->add_option("--reps", be.reps, "Repetitions per measurement");
  b->add_option("--out", be.out, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) return cmd_generate(gen);
    if (s->parsed()) return cmd_solve(sol);
    if (e->parsed()) return cmd_eval(ev);
    if (b->parsed()) return cmd_bench(be);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return kExitOk;
}
