#include <clocale>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlat/cache.hpp"
#include "qlat/canonical.hpp"
#include "qlat/census.hpp"
#include "qlat/equidist.hpp"
#include "qlat/genus.hpp"
#include "qlat/gross.hpp"
#include "qlat/intlinalg.hpp"

using namespace qlat;

namespace {

std::string rat_str(const Rat& r) { return to_string(r.num) + "/" + to_string(r.den); }

nlohmann::json ints_json(const std::vector<Int>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& x : v) a.push_back(to_string(x));
  return a;
}

std::string run_classset(const std::string& cache, long long delta, long long level) {
  return class_set_to_json(cached_class_set(cache, Int(delta), Int(level))) + "\n";
}

std::string run_gross(const std::string& cache, long long delta, long long level) {
  ClassSet cs = cached_class_set(cache, Int(delta), Int(level));
  std::vector<TernaryLattice> gs = class_gross_lattices(cs);
  std::string s = "class,g11,g12,g13,g22,g23,g33,det,qdet,w\n";
  for (size_t i = 0; i < gs.size(); ++i) {
    CanonicalForm cf = canonical_form(MatI(gs[i].gram));
    const MatI& g = cf.gram;
    s += std::to_string(i);
    s += "," + to_string(g(0, 0)) + "," + to_string(g(0, 1)) + "," + to_string(g(0, 2));
    s += "," + to_string(g(1, 1)) + "," + to_string(g(1, 2)) + "," + to_string(g(2, 2));
    s += "," + to_string(det_bareiss(MatI(g))) + "," + rat_str(gs[i].qdet());
    s += "," + to_string(cf.aut_count) + "\n";
  }
  return s;
}

std::string run_theta(const std::string& cache, long long delta, long long level,
                      long long bound) {
  if (bound < 0) throw input_error("theta: bound must be nonnegative");
  ClassSet cs = cached_class_set(cache, Int(delta), Int(level));
  std::vector<TernaryLattice> gs = class_gross_lattices(cs);
  std::vector<TernaryTheta> th;
  th.reserve(gs.size());
  for (const TernaryLattice& L : gs) th.push_back(theta_coeffs(L, bound));
  std::string s = "m";
  for (size_t i = 0; i < th.size(); ++i)
    s += ",r_" + std::to_string(i) + ",rprim_" + std::to_string(i);
  s += "\n";
  for (long long m = 0; m <= bound; ++m) {
    s += std::to_string(m);
    for (const TernaryTheta& t : th) {
      s += "," + std::to_string(t.all[static_cast<size_t>(m)]);
      s += "," + std::to_string(t.prim[static_cast<size_t>(m)]);
    }
    s += "\n";
  }
  return s;
}

std::string run_genus(long long delta, long long level) {
  TernaryLattice L = gross_lattice(canonical_order(Int(delta), Int(level)));
  GenusSet G = genus_enumerate(L);
  Int p(3); // partition under the smallest admissible neighbor prime
  while (!is_prime(p) || (G.bilinear_det % p).is_zero()) p += 2;
  nlohmann::json j;
  j["det"] = to_string(G.bilinear_det);
  nlohmann::json classes = nlohmann::json::array();
  for (const GenusClass& c : G.classes) {
    const Mat3I& g = c.lat.gram;
    nlohmann::json e;
    e["gram6"] = ints_json({g(0, 0), g(0, 1), g(0, 2), g(1, 1), g(1, 2), g(2, 2)});
    e["w"] = to_string(c.aut_count);
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  j["spinor_partition"] = spinor_partition(G, p);
  return j.dump() + "\n";
}

std::string run_embed(const std::string& cache, long long delta, long long level, long long D,
                      long long c) {
  ClassSet cs = cached_class_set(cache, Int(delta), Int(level));
  EmbeddingCount E = embedding_number(cs, class_gross_lattices(cs), Int(D), Int(c));
  nlohmann::json j;
  j["D"] = to_string(E.D);
  j["c"] = to_string(E.c);
  j["counts"] = ints_json(E.counts);
  j["total"] = to_string(E.total);
  return j.dump() + "\n";
}

} // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"Exact arithmetic of definite quaternion orders: right-ideal class sets, Gross "
               "lattices and their theta series, genus and spinor partitions, optimal-embedding "
               "counts, reduction-measure experiments, and degenerate-fiber censuses."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Config file holding the global options (flags win)");

  std::string cache_dir;
  int threads = 1;
  std::string output;
  app.add_option("--cache-dir", cache_dir,
                 "Directory for cached class sets (also read from QLAT_CACHE_DIR)")
      ->envname("QLAT_CACHE_DIR");
  app.add_option("--threads", threads, "Worker threads for equidist and census ratio")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Write the result here instead of stdout");

  long long delta = 0, level = 1, p = 0, D = 0, c = 1, bound = 0;
  long long min_absD = 0, max_absD = 0, max_c = 1, genus_arg = 0;
  std::function<std::string()> action;

  CLI::App* sc = app.add_subcommand("classset", "Right-ideal class set of the (delta, level) "
                                                "Eichler order, as JSON");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->callback([&] { action = [&] { return run_classset(cache_dir, delta, level); }; });

  sc = app.add_subcommand("gross", "Per-class Gross lattices: bilinear Gram, det, and the "
                                   "quadratic-form determinant");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->callback([&] { action = [&] { return run_gross(cache_dir, delta, level); }; });

  sc = app.add_subcommand("theta", "Theta coefficients (all and primitive) of every class "
                                   "Gross lattice up to the bound, as CSV");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->add_option("bound", bound, "largest represented value to report")->required();
  sc->callback([&] { action = [&] { return run_theta(cache_dir, delta, level, bound); }; });

  sc = app.add_subcommand("genus", "Genus of the (delta, level) Gross lattice with automorphism "
                                   "weights and the spinor partition, as JSON");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->callback([&] { action = [&] { return run_genus(delta, level); }; });

  sc = app.add_subcommand("embed", "Optimal embedding counts of the discriminant-D*c^2 "
                                   "quadratic order into each class order, as JSON");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->add_option("D", D, "fundamental discriminant (negative)")->required();
  sc->add_option("c", c, "conductor")->required();
  sc->callback([&] { action = [&] { return run_embed(cache_dir, delta, level, D, c); }; });

  sc = app.add_subcommand("equidist", "Reduction-measure convergence table over CM points of "
                                      "|D|c^2 up to the range bounds, as CSV");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->add_option("p", p, "reduction prime dividing delta or the level")->required();
  sc->add_option("min_absD", min_absD, "smallest |D|")->required();
  sc->add_option("max_absD", max_absD, "largest |D|")->required();
  sc->add_option("max_c", max_c, "largest conductor")->required();
  sc->callback([&] {
    action = [&] {
      ClassSet cs = cached_class_set(cache_dir, Int(delta), Int(level));
      return convergence_csv(convergence_experiment(cs, Int(p), Int(min_absD), Int(max_absD),
                                                    Int(max_c), threads));
    };
  });

  CLI::App* census = app.add_subcommand("census", "Counts and invariants of the special fiber "
                                                  "of the (delta, level) Shimura curve");
  census->require_subcommand(1);

  sc = census->add_subcommand("genus", "Genus of the (delta, level) Shimura curve");
  sc->add_option("delta", delta, "indefinite discriminant (even number of prime factors)")
      ->required();
  sc->add_option("level", level, "level, squarefree and coprime to delta")->required();
  sc->callback([&] {
    action = [&] { return to_string(shimura_genus(Int(delta), Int(level))) + "\n"; };
  });

  sc = census->add_subcommand("ss", "Supersingular point count from the reduction prime and "
                                    "the curve genus");
  sc->add_option("p", p, "reduction prime of good reduction")->required();
  sc->add_option("genus", genus_arg, "genus of the curve")->required();
  sc->callback([&] {
    action = [&] {
      SupersingularCount r = supersingular_count(Int(p), Int(genus_arg));
      return r.applicable ? to_string(r.count) + "\n" : std::string("inapplicable\n");
    };
  });

  sc = census->add_subcommand("ssp", "Superspecial point count at a prime dividing the "
                                     "discriminant");
  sc->add_option("delta", delta, "indefinite discriminant")->required();
  sc->add_option("p", p, "prime divisor of delta")->required();
  sc->add_option("level", level, "level, squarefree and coprime to delta")->required();
  sc->callback([&] {
    action = [&] { return to_string(superspecial_count(Int(delta), Int(p), Int(level))) + "\n"; };
  });

  sc = census->add_subcommand("dualgraph", "Dual graph of the degenerate special fiber at a "
                                           "prime dividing the discriminant");
  sc->add_option("delta", delta, "indefinite discriminant")->required();
  sc->add_option("p", p, "prime divisor of delta")->required();
  sc->add_option("level", level, "level, squarefree and coprime to delta")->required();
  sc->callback([&] {
    action = [&] { return dual_graph_edge_list(dual_graph(Int(delta), Int(p), Int(level))); };
  });

  sc = census->add_subcommand("ratio", "Primitive representation counts against class numbers "
                                       "over a |D| window, as CSV");
  sc->add_option("delta", delta, "discriminant of the definite algebra")->required();
  sc->add_option("level", level, "Eichler level, coprime to delta")->required();
  sc->add_option("min_absD", min_absD, "smallest |D|")->required();
  sc->add_option("max_absD", max_absD, "largest |D|")->required();
  sc->callback([&] {
    action = [&] {
      ClassSet cs = cached_class_set(cache_dir, Int(delta), Int(level));
      return ratio_csv(ratio_experiment(cs, Int(min_absD), Int(max_absD), threads));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::string result = action();
    if (output.empty()) {
      std::fwrite(result.data(), 1, result.size(), stdout);
    } else {
      std::ofstream out(output, std::ios::binary | std::ios::trunc);
      out << result;
      if (!out.good()) {
        std::fprintf(stderr, "input error: cannot write %s\n", output.c_str());
        return 1;
      }
    }
    return 0;
  } catch (const input_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 1;
  } catch (const consistency_error& e) {
    std::fprintf(stderr, "consistency failure: %s\n", e.what());
    return 2;
  } catch (const overflow_error& e) {
    std::fprintf(stderr, "overflow: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
}
