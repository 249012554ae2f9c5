// trank: exact solvers and rank certificates for balanced tripartitioning
// and bounded set cover.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "trank/analysis.hpp"
#include "trank/gen.hpp"
#include "trank/io.hpp"
#include "trank/partition_tensor.hpp"
#include "trank/setcover.hpp"
#include "trank/tripartition.hpp"

using namespace trank;

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t modulus = 0;  // 0: TRANK_MODULUS or the built-in default

  std::uint64_t pick_seed() const { return seed_set ? seed : Rng::entropy_seed(); }
  std::uint64_t pick_modulus() const { return modulus ? modulus : default_modulus(); }
};

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
}

std::string rational_str(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Certified decomposition for the tensor solver; exact expansion for k <= 3,
// random-evaluation certificate for k = 4.
Decomposition certified_decomposition(int k, const FieldContext& ctx, Rng& rng) {
  bool fallback = false;
  Decomposition d = group_decomposition(k, ctx, &fallback);
  if (fallback) std::cerr << "note: label map check failed; using the full-group decomposition\n";
  const auto cert = certify_decomposition(d, k, rng);
  if (!cert.valid) throw ParameterError("decomposition failed certification");
  return d;
}

Json solve_tripartition_json(const TripartitionInstance& inst, const std::string& algo,
                             const CommonOpts& common, int k, unsigned lambda, bool y4,
                             int threads) {
  Json j;
  if (algo == "brute") {
    const auto witness = tripartition_brute(inst);
    j["answer"] = witness.has_value();
    if (witness) {
      Json w = Json::array();
      for (const auto& part : *witness) w.push_back(part.elements());
      j["witness"] = std::move(w);
    }
  } else if (algo == "wht") {
    const WideInt count = tripartition_count_wht(inst);
    j["answer"] = count > 0;
    j["count"] = count.str();
  } else if (algo == "tensor") {
    FieldContext ctx(common.pick_modulus());
    Rng rng(common.pick_seed());
    const Decomposition d = certified_decomposition(k, ctx, rng);
    TensorSolveOptions opts;
    opts.lambda = lambda;
    opts.small_sample = y4;
    opts.threads = threads;
    const auto res = tripartition_tensor(inst, d, k, opts, rng);
    j["answer"] = res.answer;
    j["trials_used"] = res.trials_used;
    j["p"] = rational_str(res.plan.p);
  } else {
    throw ParameterError("unknown algorithm: " + algo);
  }
  return j;
}

Json solve_setcover_json(const SetCoverInstance& inst, const std::string& algo,
                         const CommonOpts& common, int k, unsigned lambda, bool y4, int threads) {
  Json j;
  if (algo == "brute") {
    j["answer"] = setcover_brute(inst);
    return j;
  }
  TriSolver solver;
  std::optional<Decomposition> d;
  FieldContext ctx(common.pick_modulus());
  Rng rng(common.pick_seed());
  if (algo == "wht") {
    solver = [](const TripartitionInstance& t) { return tripartition_wht(t); };
  } else if (algo == "tensor") {
    d = certified_decomposition(k, ctx, rng);
    solver = [&](const TripartitionInstance& t) {
      TensorSolveOptions opts;
      opts.lambda = lambda;
      opts.small_sample = y4;
      opts.threads = threads;
      Rng call_rng = rng.split(rng.next());
      return tripartition_tensor(t, *d, k, opts, call_rng).answer;
    };
  } else {
    throw ParameterError("unknown algorithm: " + algo);
  }
  const auto res = reduce_and_solve(inst, solver);
  j["answer"] = res.answer;
  j["used_fallback"] = res.used_fallback;
  j["solver_calls"] = res.solver_calls;
  j["dp_level_sizes"] = res.dp_level_sizes;
  return j;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_selftest(std::uint64_t seed, bool full) {
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  FieldContext ctx(default_modulus());
  report("field: 2 * inv(2) = 1", ctx.mul(2, ctx.inv2()) == 1);
  report("binomial(33,11) = 193536720", binomial(33, 11) == WideInt(193536720));

  {
    bool ok = true;
    const int kmax = full ? 3 : 2;
    for (int k = 1; k <= kmax; ++k) {
      const Decomposition d = group_decomposition(k, ctx);
      ok = ok && d.rank() == (1ull << (3 * k - 1)) && verify_decomposition(d, partition_tensor(k));
    }
    report("group decompositions certify (k <= " + std::to_string(kmax) + ")", ok);
  }

  {
    Rng rng(mix64(seed ^ 0x7269));
    bool counts_ok = true, no_fp = true;
    int planted = 0, detected = 0;
    const Decomposition d1 = group_decomposition(1, ctx);
    for (int i = 0; i < 100; ++i) {
      TripartitionGenOptions opts;
      opts.n = 1 + static_cast<int>(rng.below(3));
      opts.density = 0.25;
      opts.plant = rng.below(2) == 0;
      Rng local = rng.split(static_cast<std::uint64_t>(i));
      const auto inst = gen_tripartition(opts, local);
      const WideInt brute = tripartition_count_brute(inst);
      counts_ok = counts_ok && tripartition_count_wht(inst) == brute;
      TensorSolveOptions topts;
      Rng solver_rng = rng.split(1000 + static_cast<std::uint64_t>(i));
      const bool tensor_answer = tripartition_tensor(inst, d1, 1, topts, solver_rng).answer;
      if (brute == 0 && tensor_answer) no_fp = false;
      if (brute > 0) {
        ++planted;
        if (tensor_answer) ++detected;
      }
    }
    report("tripartition: wht count = brute count (100 instances)", counts_ok);
    report("tripartition: tensor solver has no false positives", no_fp);
    report("tripartition: tensor solver detects >= 95% of yes-instances",
           planted > 0 && detected * 100 >= planted * 95);
  }

  {
    Rng rng(mix64(seed ^ 0x5343));
    bool ok = true;
    for (int i = 0; i < 40; ++i) {
      SetCoverGenOptions opts;
      opts.n = 4 + static_cast<int>(rng.below(6));
      opts.s = 1 + static_cast<int>(rng.below(3));
      opts.t = 1 + static_cast<int>(rng.below(4));
      opts.count = rng.below(8);
      Rng local = rng.split(static_cast<std::uint64_t>(i));
      const auto inst = gen_setcover(opts, local);
      const auto res = reduce_and_solve(
          inst, [](const TripartitionInstance& t) { return tripartition_wht(t); });
      ok = ok && res.answer == setcover_brute(inst);
    }
    report("set cover: reduction matches brute force (40 instances)", ok);
  }

  std::cout << (failures == 0 ? "selftest: all checks passed\n"
                              : "selftest: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers and rank certificates for balanced tripartitioning and set cover"};
  app.fallthrough();  // --seed / --p may appear after the subcommand
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--seed", common.seed, "seed for all randomness (default: entropy)")
      ->each([&](const std::string&) { common.seed_set = true; });
  app.add_option("--p", common.modulus, "field modulus (prime >= 5; default: TRANK_MODULUS or 2^31-1)");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  gen->require_subcommand(1);
  std::string gen_out;
  TripartitionGenOptions tri_gen;
  double tri_density = -1.0;
  std::size_t tri_family_size = 0;
  auto* gen_tri = gen->add_subcommand("tripartition", "three families of n-subsets of [3n]");
  gen_tri->add_option("--n", tri_gen.n, "block size")->required();
  gen_tri->add_option("--density", tri_density, "inclusion probability per n-subset");
  gen_tri->add_option("--family-size", tri_family_size, "sample this many subsets per family");
  gen_tri->add_flag("--plant", tri_gen.plant, "insert a random partition triple");
  gen_tri->add_option("--out", gen_out, "output file (default: stdout)");

  SetCoverGenOptions sc_gen;
  auto* gen_sc = gen->add_subcommand("setcover", "random sets of size <= s over [n]");
  gen_sc->add_option("--n", sc_gen.n, "universe size")->required();
  gen_sc->add_option("--s", sc_gen.s, "maximum set size")->required();
  gen_sc->add_option("--t", sc_gen.t, "budget")->required();
  gen_sc->add_option("--count", sc_gen.count, "number of random sets");
  gen_sc->add_flag("--plant", sc_gen.plant, "insert a partition of [n] into blocks of size <= s");
  gen_sc->add_option("--out", gen_out, "output file (default: stdout)");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_file, solve_algo = "brute", solve_out;
  int solve_k = 1, solve_threads = 1;
  unsigned solve_lambda = 5;
  bool solve_y4 = false;
  solve->add_option("file", solve_file, "instance file (tripartition or set cover)")->required();
  solve->add_option("--algo", solve_algo, "brute | wht | tensor")
      ->check(CLI::IsMember({"brute", "wht", "tensor"}));
  solve->add_option("--k", solve_k, "base tensor order for the tensor solver");
  solve->add_option("--lambda", solve_lambda, "amplification factor (trials = ceil(lambda/p))");
  solve->add_flag("--y4", solve_y4, "sample evaluation values from {0,1,2,3}");
  solve->add_option("--threads", solve_threads, "parallel trials in the tensor solver");
  solve->add_option("--out", solve_out, "output file (default: stdout)");

  // ---- tensor ----
  auto* tensor = app.add_subcommand("tensor", "partition tensor artifacts");
  tensor->require_subcommand(1);
  int tk_k = 1;
  std::string tensor_out, tensor_file;
  auto* t_build = tensor->add_subcommand("build-tk", "write the order-k partition tensor");
  t_build->add_option("--k", tk_k, "tensor order")->required();
  t_build->add_option("--out", tensor_out, "output file (default: stdout)");

  bool dec_naive = false, dec_group = false;
  auto* t_dec = tensor->add_subcommand("decompose", "write a rank decomposition");
  t_dec->add_option("--k", tk_k, "tensor order")->required();
  t_dec->add_flag("--group", dec_group, "2^{3k-1}-term character decomposition (default)");
  t_dec->add_flag("--naive", dec_naive, "2^{3k}-term full-group decomposition");
  t_dec->add_option("--out", tensor_out, "output file (default: stdout)");

  auto* t_verify = tensor->add_subcommand("verify", "check a decomposition file against order k");
  t_verify->add_option("file", tensor_file, "decomposition file")->required();
  t_verify->add_option("--k", tk_k, "tensor order")->required();

  std::optional<std::uint64_t> bounds_candidate;
  bool bounds_json = false;
  auto* t_bounds = tensor->add_subcommand("bounds", "rank thresholds for order k");
  t_bounds->add_option("--k", tk_k, "tensor order")->required();
  t_bounds->add_option("--candidate", bounds_candidate, "compare a candidate rank");
  t_bounds->add_flag("--json", bounds_json, "JSON output");

  // ---- bounds (analysis tables) ----
  auto* bounds = app.add_subcommand("bounds", "runtime-base and threshold tables");
  int bounds_kmax = 12;
  bool tables_json = false;
  bounds->add_option("--kmax", bounds_kmax, "largest k");
  bounds->add_flag("--json", tables_json, "JSON output");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "median wall times per block size");
  std::string bench_suite = "wht", bench_out;
  std::vector<int> bench_sizes{4, 5, 6};
  int bench_reps = 9;
  std::size_t bench_family = 32;
  bench->add_option("--suite", bench_suite, "wht | brute")->check(CLI::IsMember({"wht", "brute"}));
  bench->add_option("--sizes", bench_sizes, "block sizes to measure");
  bench->add_option("--reps", bench_reps, "repetitions per size (median)");
  bench->add_option("--family-size", bench_family, "family size of generated instances");
  bench->add_option("--out", bench_out, "output file (default: stdout)");

  // ---- selftest ----
  auto* selftest = app.add_subcommand("selftest", "run the oracle-agreement corpus");
  bool selftest_full = false;
  selftest->add_flag("--full", selftest_full, "include the order-3 certificate");

  try {
    app.parse(argc, argv);

    if (gen->parsed()) {
      Rng rng(common.pick_seed());
      if (gen_tri->parsed()) {
        if (tri_density >= 0.0) tri_gen.density = tri_density;
        if (tri_family_size > 0) tri_gen.family_size = tri_family_size;
        emit(tripartition_to_json(gen_tripartition(tri_gen, rng)), gen_out);
      } else {
        emit(setcover_to_json(gen_setcover(sc_gen, rng)), gen_out);
      }
      return 0;
    }

    if (solve->parsed()) {
      const Json j = parse_json_file(solve_file);
      Json result;
      if (j.contains("families"))
        result = solve_tripartition_json(tripartition_from_json(j), solve_algo, common, solve_k,
                                         solve_lambda, solve_y4, solve_threads);
      else if (j.contains("sets"))
        result = solve_setcover_json(setcover_from_json(j), solve_algo, common, solve_k,
                                     solve_lambda, solve_y4, solve_threads);
      else
        throw ParameterError("instance file has neither \"families\" nor \"sets\"");
      emit(result, solve_out);
      return 0;
    }

    if (tensor->parsed()) {
      FieldContext ctx(common.pick_modulus());
      if (t_build->parsed()) {
        emit(sparse_tensor_to_json(partition_tensor(tk_k), ctx.modulus()), tensor_out);
      } else if (t_dec->parsed()) {
        if (dec_naive && dec_group) throw ParameterError("choose one of --group / --naive");
        const Decomposition d =
            dec_naive ? naive_group_decomposition(tk_k, ctx) : group_decomposition(tk_k, ctx);
        emit(decomposition_to_json(d), tensor_out);
      } else if (t_verify->parsed()) {
        const Decomposition d = decomposition_from_json(parse_json_file(tensor_file));
        Rng rng(common.pick_seed());
        const auto cert = certify_decomposition(d, tk_k, rng);
        if (cert.valid)
          std::cout << "valid, rank " << d.rank() << (cert.exact ? "" : " (random-evaluation certificate)")
                    << "\n";
        else
          std::cout << "invalid\n";
      } else if (t_bounds->parsed()) {
        std::optional<WideInt> candidate;
        if (bounds_candidate) candidate = WideInt(*bounds_candidate);
        const RankBounds b = rank_bounds(tk_k, candidate);
        if (bounds_json) {
          std::cout << rank_bounds_to_json(b).dump(2) << "\n";
        } else {
          std::cout << "k = " << b.k << "\n"
                    << "lower threshold      " << rational_str(b.lower_threshold) << "\n"
                    << "weak lower threshold " << rational_str(b.lower_threshold_weak) << "\n"
                    << "known upper bound    " << rational_str(b.upper_bound) << "\n";
          if (b.candidate_rank)
            std::cout << "candidate rank " << b.candidate_rank->str()
                      << (b.candidate_below_threshold ? " lies below the threshold\n"
                                                      : " does not beat the threshold\n");
        }
      }
      return 0;
    }

    if (bounds->parsed()) {
      const auto rows = runtime_base_table(bounds_kmax);
      const auto thresholds = threshold_table(std::min(bounds_kmax, 50));
      if (tables_json) {
        Json j;
        j["runtime_base"] = Json::array();
        for (const auto& row : rows)
          j["runtime_base"].push_back(Json{{"k", row.k},
                                           {"base_per_block", rational_str(row.base_per_block)},
                                           {"base_per_element", row.base_per_element},
                                           {"uncond_base_per_element", row.uncond_base_per_element},
                                           {"beats_wht", row.beats_wht}});
        j["thresholds"] = Json::array();
        for (const auto& row : thresholds) j["thresholds"].push_back(rank_bounds_to_json(row));
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << format_runtime_table(rows) << "\n" << format_threshold_table(thresholds);
      }
      return 0;
    }

    if (bench->parsed()) {
      Rng rng(common.pick_seed());
      Json out;
      out["suite"] = bench_suite;
      out["rows"] = Json::array();
      double prev = 0.0;
      for (int n : bench_sizes) {
        TripartitionGenOptions opts;
        opts.n = n;
        opts.family_size = bench_family;
        opts.plant = true;
        Rng local = rng.split(static_cast<std::uint64_t>(n));
        const auto inst = gen_tripartition(opts, local);
        std::vector<double> times;
        bool answer = false;
        for (int rep = 0; rep < bench_reps; ++rep) {
          const auto start = std::chrono::steady_clock::now();
          if (bench_suite == "wht")
            answer = tripartition_wht(inst);
          else
            answer = tripartition_brute(inst).has_value();
          const auto stop = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double>(stop - start).count());
        }
        const double med = median(times);
        Json row{{"n", n}, {"median_seconds", med}, {"answer", answer}};
        if (prev > 0.0) row["ratio_to_previous"] = med / prev;
        prev = med;
        out["rows"].push_back(std::move(row));
        std::fprintf(stderr, "n=%d median %.6fs\n", n, med);
      }
      emit(out, bench_out);
      return 0;
    }

    if (selftest->parsed()) return run_selftest(common.pick_seed(), selftest_full);

    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const GuardError& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
