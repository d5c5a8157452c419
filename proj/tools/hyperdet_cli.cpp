// hyperdet: compute and verify definite Hermitian determinantal
// representations of hyperbolic plane curves.
//
// Subcommands: represent | generate | verify | bench.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hyperdet/detrep.hpp"
#include "hyperdet/generate.hpp"
#include "hyperdet/json_io.hpp"
#include "hyperdet/rng.hpp"
#include "hyperdet/verify.hpp"

using namespace hyperdet;

namespace {

int exit_code_for(const Error& err) {
  switch (err.kind()) {
    case ErrorKind::NotHyperbolic:
      return 2;
    case ErrorKind::TransversalityFailure:
      return 3;
    case ErrorKind::ParseError:
    case ErrorKind::InvalidInput:
      return 1;
    default:
      return 4;  // solver-stage failures
  }
}

Direction parse_direction(const std::string& text) {
  double e1, e2, e3;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &e1, &e2, &e3) != 3) {
    throw InvalidInput("direction must be three comma-separated numbers, e.g. \"1,0,0\"");
  }
  return Direction(e1, e2, e3);
}

HomogeneousPoly load_poly(const std::string& poly_text, const std::string& in_path) {
  if (!poly_text.empty()) return parse_polynomial(poly_text);
  if (!in_path.empty()) return poly_from_json(load_json_file(in_path));
  throw InvalidInput("provide a polynomial via --poly or --in");
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> degrees;
  size_t range = text.find("..");
  if (range != std::string::npos) {
    int lo = std::stoi(text.substr(0, range));
    int hi = std::stoi(text.substr(range + 2));
    for (int d = lo; d <= hi; ++d) degrees.push_back(d);
    return degrees;
  }
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) degrees.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (degrees.empty()) throw InvalidInput("empty degree list");
  return degrees;
}

int bench_threads() {
  const char* env = std::getenv("HYPERDET_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  return t < 1 ? 1 : t;
}

struct BenchRow {
  int degree = 0;
  double mean_total_seconds = 0.0;
  double mean_intersection_seconds = 0.0;
  double mean_abs_error = 0.0;
  double mean_rel_error = 0.0;
  int instances = 0;
  int failures = 0;
};

int cmd_represent(const std::string& poly_text, const std::string& in_path, const std::string& e_text,
                  const std::string& interlacer_path, const std::string& points_path,
                  const std::string& basis_path, std::uint64_t seed, const std::string& out_path,
                  bool json_output, int max_retries) {
  HomogeneousPoly f = load_poly(poly_text, in_path);
  Direction e = parse_direction(e_text);
  RepresentOptions opts;
  opts.seed = seed;
  opts.max_retries = max_retries;
  if (!interlacer_path.empty()) opts.interlacer = poly_from_json(load_json_file(interlacer_path));
  if (!points_path.empty()) opts.points = pointset_from_json(load_json_file(points_path));
  if (!basis_path.empty()) opts.basis = basis_from_json(load_json_file(basis_path));

  Representation rep = represent(f, e, opts);
  ErrorReport err = representation_error(f, rep.pencil, rep.c, Rng::derive(seed, 0xE44));

  Json j = representation_to_json(rep);
  if (!out_path.empty()) write_json_file(out_path, j);
  char summary[256];
  std::snprintf(summary, sizeof(summary), "d=%d c=%.12g rel_error=%.3g residual=%.3g time=%.3fs",
                rep.pencil.d, rep.c, err.rel_error, rep.lsq.residual_norm,
                rep.diagnostics.total_seconds);
  if (json_output) {
    std::cout << j.dump(2) << "\n";
    std::cerr << summary << "\n";
  } else {
    std::cout << summary << "\n";
  }
  return 0;
}

int cmd_generate(int degree, std::uint64_t seed, const std::string& out_path, bool json_output) {
  HomogeneousPoly f = generate_random_hyperbolic(degree, seed);
  Json j = poly_to_json(f);
  if (!out_path.empty()) write_json_file(out_path, j);
  if (json_output || out_path.empty()) std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& poly_text, const std::string& in_path, const std::string& rep_path,
               const std::string& e_text, double tol, std::uint64_t seed, bool json_output) {
  HomogeneousPoly f = load_poly(poly_text, in_path);
  LoadedRepresentation loaded = representation_from_json(load_json_file(rep_path));
  if (loaded.pencil.d != f.degree()) {
    std::cerr << "degree mismatch: polynomial has degree " << f.degree() << ", representation is "
              << loaded.pencil.d << "x" << loaded.pencil.d << "\n";
    return 5;
  }
  Direction e = e_text.empty()
                    ? (loaded.has_direction ? loaded.direction_used : Direction(1, 0, 0))
                    : parse_direction(e_text);

  ErrorReport err = representation_error(f, loaded.pencil, loaded.c, Rng::derive(seed, 0xE44));
  DefinitenessResult definite = check_definite(loaded.pencil, e);
  HyperbolicityResult hyp = hyperbolicity_check(f, e, 50, Rng::derive(seed, 0x6879));

  bool pass = err.rel_error <= tol && definite.positive_definite;
  if (json_output) {
    Json j;
    j["abs_error"] = err.abs_error;
    j["rel_error"] = err.rel_error;
    j["c_used"] = err.c_used;
    j["sample_count"] = err.sample_count;
    j["fit_residual"] = err.fit_residual;
    j["positive_definite"] = definite.positive_definite;
    j["min_eigenvalue"] = definite.min_eigenvalue;
    j["hyperbolic"] = hyp.hyperbolic;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("abs_error=%.6g rel_error=%.6g (tol %.3g) c=%.12g\n", err.abs_error, err.rel_error,
                tol, err.c_used);
    std::printf("pencil at e: %s (min eigenvalue %.6g)\n",
                definite.positive_definite ? "positive definite" : "NOT positive definite",
                definite.min_eigenvalue);
    std::printf("hyperbolicity check: %s\n", hyp.hyperbolic ? "pass" : "FAIL");
    std::printf("verdict: %s\n", pass ? "PASS" : "FAIL");
  }
  return pass ? 0 : 1;
}

int cmd_bench(const std::string& degrees_text, int instances, std::uint64_t seed,
              const std::string& out_path, bool json_output) {
  std::vector<int> degrees = parse_degrees(degrees_text);
  Direction e(1, 0, 0);
  int threads = bench_threads();

  std::vector<BenchRow> rows;
  for (int d : degrees) {
    BenchRow row;
    row.degree = d;
    row.instances = instances;
    struct InstanceResult {
      bool ok = false;
      double total = 0.0, intersection = 0.0, abs_error = 0.0, rel_error = 0.0;
    };
    std::vector<InstanceResult> results(std::max(instances, 0));
    auto run_instance = [&](int idx) {
      std::uint64_t inst_seed = Rng::derive(seed, 0xB000 + 1000003ull * d + idx);
      try {
        HomogeneousPoly f = generate_random_hyperbolic(d, inst_seed);
        RepresentOptions opts;
        opts.seed = inst_seed;
        Representation rep = represent(f, e, opts);
        ErrorReport err = representation_error(f, rep.pencil, rep.c, Rng::derive(inst_seed, 0xE44));
        results[idx] = {true, rep.diagnostics.total_seconds, rep.diagnostics.intersection_seconds,
                        err.abs_error, err.rel_error};
      } catch (const Error&) {
        results[idx].ok = false;
      }
    };
    if (threads <= 1 || instances <= 1) {
      for (int i = 0; i < instances; ++i) run_instance(i);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      int n_workers = std::min(threads, instances);
      for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&]() {
          while (true) {
            int idx = next.fetch_add(1);
            if (idx >= instances) break;
            run_instance(idx);
          }
        });
      }
      for (auto& t : pool) t.join();
    }
    int ok = 0;
    for (const auto& r : results) {
      if (!r.ok) {
        ++row.failures;
        continue;
      }
      ++ok;
      row.mean_total_seconds += r.total;
      row.mean_intersection_seconds += r.intersection;
      row.mean_abs_error += r.abs_error;
      row.mean_rel_error += r.rel_error;
    }
    if (ok > 0) {
      row.mean_total_seconds /= ok;
      row.mean_intersection_seconds /= ok;
      row.mean_abs_error /= ok;
      row.mean_rel_error /= ok;
    }
    rows.push_back(row);
  }

  std::printf("%-7s %-11s %-16s %-12s %-12s %-10s %s\n", "degree", "time (s)", "time V(f,g) (s)",
              "error", "rel error", "instances", "failures");
  for (const auto& r : rows) {
    std::printf("%-7d %-11.4f %-16.4f %-12.3g %-12.3g %-10d %d\n", r.degree, r.mean_total_seconds,
                r.mean_intersection_seconds, r.mean_abs_error, r.mean_rel_error, r.instances,
                r.failures);
  }

  std::string csv =
      "degree,instances,failures,mean_total_seconds,mean_intersection_seconds,"
      "mean_abs_error,mean_rel_error\n";
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof(line), "%d,%d,%d,%.6f,%.6f,%.6g,%.6g\n", r.degree, r.instances,
                  r.failures, r.mean_total_seconds, r.mean_intersection_seconds, r.mean_abs_error,
                  r.mean_rel_error);
    csv += line;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InvalidInput("cannot open file for writing: " + out_path);
    out << csv;
  }
  if (json_output) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json jr;
      jr["degree"] = r.degree;
      jr["mean_total_seconds"] = r.mean_total_seconds;
      jr["mean_intersection_seconds"] = r.mean_intersection_seconds;
      jr["mean_abs_error"] = r.mean_abs_error;
      jr["mean_rel_error"] = r.mean_rel_error;
      jr["instances"] = r.instances;
      jr["failures"] = r.failures;
      arr.push_back(jr);
    }
    std::cout << arr.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definite Hermitian determinantal representations of hyperbolic plane curves"};
  app.require_subcommand(1);

  std::string poly_text, in_path, e_text = "1,0,0", interlacer_path, points_path, basis_path;
  std::string out_path, rep_path, ver_e_text, degrees_text = "3..8";
  std::uint64_t seed = 0;
  bool json_output = false;
  int max_retries = 3;
  int degree = 4;
  int instances = 20;
  double tol = 1e-6;

  auto* rep_cmd = app.add_subcommand("represent", "compute a representation f = c det(xM1+yM2+zM3)");
  rep_cmd->add_option("--poly", poly_text, "polynomial as text, e.g. \"x^2 - y^2 - z^2\"");
  rep_cmd->add_option("--in", in_path, "polynomial JSON file");
  rep_cmd->add_option("--e", e_text, "hyperbolicity direction (default 1,0,0)");
  rep_cmd->add_option("--interlacer", interlacer_path, "interlacer polynomial JSON file");
  rep_cmd->add_option("--points", points_path, "intersection point set JSON file");
  rep_cmd->add_option("--basis", basis_path, "vanishing basis JSON file");
  rep_cmd->add_option("--seed", seed, "random seed");
  rep_cmd->add_option("--out", out_path, "output representation JSON file");
  rep_cmd->add_option("--max-retries", max_retries, "perturb-and-retry budget");
  rep_cmd->add_flag("--json", json_output, "print the representation JSON to stdout");

  auto* gen_cmd = app.add_subcommand("generate", "generate a random hyperbolic instance");
  gen_cmd->add_option("--degree", degree, "degree of the generated polynomial")->required();
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--out", out_path, "output polynomial JSON file");
  gen_cmd->add_flag("--json", json_output, "print the polynomial JSON to stdout");

  auto* ver_cmd = app.add_subcommand("verify", "verify a representation against a polynomial");
  ver_cmd->add_option("--poly", poly_text, "polynomial as text");
  ver_cmd->add_option("--in", in_path, "polynomial JSON file");
  ver_cmd->add_option("--rep", rep_path, "representation JSON file")->required();
  ver_cmd->add_option("--e", ver_e_text, "direction for the definiteness check (default: from the file)");
  ver_cmd->add_option("--tol", tol, "relative error tolerance (default 1e-6)");
  ver_cmd->add_option("--seed", seed, "random seed");
  ver_cmd->add_flag("--json", json_output, "print the report as JSON");

  auto* bench_cmd = app.add_subcommand("bench", "run timing/error sweeps over random instances");
  bench_cmd->add_option("--degrees", degrees_text, "degrees, e.g. \"3..10\" or \"3,5,8\"");
  bench_cmd->add_option("--instances", instances, "instances per degree (default 20)");
  bench_cmd->add_option("--seed", seed, "random seed");
  bench_cmd->add_option("--out", out_path, "CSV output file");
  bench_cmd->add_flag("--json", json_output, "print rows as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rep_cmd->parsed()) {
      return cmd_represent(poly_text, in_path, e_text, interlacer_path, points_path, basis_path,
                           seed, out_path, json_output, max_retries);
    }
    if (gen_cmd->parsed()) return cmd_generate(degree, seed, out_path, json_output);
    if (ver_cmd->parsed()) {
      return cmd_verify(poly_text, in_path, rep_path, ver_e_text, tol, seed, json_output);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(degrees_text, instances, seed, out_path, json_output);
    }
  } catch (const Error& err) {
    std::cerr << err.what() << "\n";
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
