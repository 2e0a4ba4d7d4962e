#include "qlat/equidist.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "qlat/errors.hpp"
#include "qlat/intlinalg.hpp"
#include "qlat/quaternion.hpp"
#include "qlat/shortvec.hpp"

namespace qlat {

Rat WeightedMeasure::total() const {
  Rat t(0);
  for (const Rat& w : weights) t += w;
  return t;
}

std::vector<TernaryLattice> class_gross_lattices(const ClassSet& cs) {
  std::vector<TernaryLattice> out;
  out.reserve(cs.classes.size());
  for (const auto& c : cs.classes) out.push_back(gross_lattice(left_order(cs.order, c.ideal)));
  return out;
}

namespace {

void validate_Dc(Int D, Int c, const char* what) {
  if (!is_fundamental(D)) throw input_error(std::string(what) + ": D not fundamental");
  if (c < Int(1)) throw input_error(std::string(what) + ": conductor must be positive");
}

void run_indexed(int n, int threads, const std::function<void(int)>& body) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      try {
        for (int i; (i = next.fetch_add(1)) < n;) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        next.store(n);
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double to_double(const Rat& r) {
  return static_cast<double>(r.num.v) / static_cast<double>(r.den.v);
}

std::string rat_str(const Rat& r) { return to_string(r.num) + "/" + to_string(r.den); }

} // namespace

Int embedding_from_rep(Int prim_rep, Int class_weight, Int D, Int c) {
  validate_Dc(D, c, "embedding_from_rep");
  if (class_weight < Int(1)) throw input_error("embedding_from_rep: weight must be positive");
  Int u = unit_count(D, c);
  return exact_div(prim_rep * u, Int(2) * class_weight, "embedding_from_rep: count");
}

EmbeddingCount embedding_number(const ClassSet& cs, const std::vector<TernaryLattice>& gross,
                                Int D, Int c) {
  validate_Dc(D, c, "embedding_number");
  if (gross.size() != cs.classes.size())
    throw input_error("embedding_number: lattice list misaligned with the class set");
  EmbeddingCount out;
  out.D = D;
  out.c = c;
  out.total = Int(0);
  Int m = abs(D) * c * c;
  for (size_t i = 0; i < cs.classes.size(); ++i) {
    Int r = primitive_rep_number(gross[i], m);
    Int h = embedding_from_rep(r, cs.classes[i].unit_count, D, c);
    out.counts.push_back(h);
    out.total += h;
  }
  return out;
}

Int embedding_count_bruteforce(const QuatOrder& R, Int D, Int c) {
  validate_Dc(D, c, "embedding_count_bruteforce");
  const QuatAlgebra& B = R.alg;
  Int d = D * c * c;
  Int t = d.is_even() ? Int(0) : Int(1);
  Int n = exact_div(t * t - d, Int(4), "embedding_count_bruteforce: norm");
  MatQ bas = R.lat.basis();
  MatQ gram = nrd_gram(B, R.lat);

  auto lift = [&](const RowI& x) {
    RowQ v = RowQ::Zero(4);
    for (int j = 0; j < 4; ++j)
      if (!x(j).is_zero()) v += Rat(x(j)) * RowQ(bas.row(j));
    return v;
  };

  // optimality: beta may not be congruent to an integer modulo q R for any
  // prime q dividing the conductor
  auto optimal = [&](const RowQ& beta) {
    for (const auto& [q, e] : factor(c)) {
      (void)e;
      for (Int r(0); r < q; r += 1) {
        RowQ g = beta;
        g(0) = g(0) - Rat(r);
        if (lattice_contains(R.lat, g * Rat(Int(1), q))) return false;
      }
    }
    return true;
  };

  // all beta in R with trd = t and nrd = n, both sign choices resolved
  std::vector<RowQ> betas;
  std::map<std::vector<Rat>, int> index;
  auto add = [&](const RowQ& beta) {
    if (!optimal(beta)) return;
    std::vector<Rat> key(beta.data(), beta.data() + 4);
    if (index.count(key)) return;
    index.emplace(std::move(key), static_cast<int>(betas.size()));
    betas.push_back(beta);
  };
  enumerate_up_to(gram, Rat(n), [&](const RowI& x, const Rat& q) {
    if (q != Rat(n)) return true;
    RowQ beta = lift(x);
    Rat tr = qtrd(beta);
    if (tr == Rat(t)) add(beta);
    if ((-tr) == Rat(t)) add(-beta);
    return true;
  });

  // conjugation orbits under the unit group (one representative per +-u)
  std::vector<RowQ> units;
  enumerate_up_to(gram, Rat(1), [&](const RowI& x, const Rat& q) {
    if (q == Rat(1)) units.push_back(lift(x));
    return true;
  });
  const int nb = static_cast<int>(betas.size());
  std::vector<int> parent(static_cast<size_t>(nb));
  for (int i = 0; i < nb; ++i) parent[static_cast<size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < nb; ++i)
    for (const RowQ& u : units) {
      RowQ img = qmul(B, qmul(B, u, betas[static_cast<size_t>(i)]), qconj(u));
      std::vector<Rat> key(img.data(), img.data() + 4);
      auto it = index.find(key);
      if (it == index.end())
        throw consistency_error("embedding_count_bruteforce: orbit leaves the sample");
      parent[static_cast<size_t>(find(i))] = find(it->second);
    }
  Int orbits(0);
  for (int i = 0; i < nb; ++i)
    if (find(i) == i) orbits += 1;
  return orbits;
}

WeightedMeasure mu_Dc(const EmbeddingCount& E, int omega_n, int eps) {
  if (omega_n < 0 || (eps != 0 && eps != 1)) throw input_error("mu_Dc: bad exponent data");
  Int h = class_number(E.D * E.c * E.c);
  Rat denom = Rat(pow_int(Int(2), omega_n + eps) * h);
  WeightedMeasure out;
  for (size_t i = 0; i < E.counts.size(); ++i) {
    out.support.push_back(std::to_string(i));
    out.weights.push_back(Rat(E.counts[i]) / denom);
  }
  out.normalized = (out.total() == Rat(1));
  return out;
}

WeightedMeasure mu_canonical(const ClassSet& cs) {
  if (cs.classes.empty()) throw input_error("mu_canonical: empty class set");
  Rat total(0);
  for (const auto& c : cs.classes) total += Rat(Int(1), c.unit_count);
  WeightedMeasure out;
  for (size_t i = 0; i < cs.classes.size(); ++i) {
    out.support.push_back(std::to_string(i));
    out.weights.push_back(Rat(Int(1), cs.classes[i].unit_count) / total);
  }
  out.normalized = (out.total() == Rat(1));
  return out;
}

Rat tv_distance(const WeightedMeasure& a, const WeightedMeasure& b) {
  if (a.support != b.support) throw input_error("tv_distance: measures on different supports");
  Rat s(0);
  for (size_t i = 0; i < a.weights.size(); ++i) s += abs(a.weights[i] - b.weights[i]);
  return s / Rat(2);
}

ConvergenceTable convergence_experiment(Int delta, Int level, Int p, Int min_absD, Int max_absD,
                                        Int max_c, int threads) {
  QuatAlgebra B = build_algebra(prime_divisors(delta));
  QuatOrder O = eichler_order(maximal_order(B), level);
  return convergence_experiment(right_ideal_class_set(O), p, min_absD, max_absD, max_c, threads);
}

ConvergenceTable convergence_experiment(const ClassSet& cs, Int p, Int min_absD, Int max_absD,
                                        Int max_c, int threads) {
  const Int delta = cs.order.alg.delta;
  const Int level = cs.order.level;
  if (!is_prime(p)) throw input_error("convergence_experiment: p must be prime");
  if (min_absD < Int(3) || max_absD < min_absD || max_c < Int(1) || threads < 1)
    throw input_error("convergence_experiment: bad ranges");
  bool ssp;
  if ((delta % p).is_zero())
    ssp = false; // supersingular: p ramified in the definite algebra
  else if ((level % p).is_zero())
    ssp = true; // superspecial: p divides the level
  else
    throw input_error("convergence_experiment: p must divide delta or the level");

  const QuatAlgebra& B = cs.order.alg;
  std::vector<TernaryLattice> gross = class_gross_lattices(cs);
  WeightedMeasure target = mu_canonical(cs);

  Int n = ssp ? exact_div(level, p, "convergence_experiment") : level;
  const int omega_n = omega(n);
  const int eps = ssp ? 0 : 1;
  std::vector<Int> level_primes = prime_divisors(n);

  auto locus_ok = [&](Int D) {
    int kp = kronecker(D, p);
    if (ssp ? (kp != 0) : (kp > 0)) return false;
    for (const Int& q : B.ram) {
      if (q == p && !ssp) continue;
      if (kronecker(D, q) == 1) return false; // the CM field splits the curve's algebra
    }
    for (const Int& q : level_primes)
      if (kronecker(D, q) == -1) return false; // no conductor-coprime CM points
    return true;
  };

  ConvergenceTable out;
  out.delta = delta;
  out.level = level;
  out.p = p;
  out.superspecial = ssp;
  out.support = target.support;

  std::vector<std::pair<Int, Int>> pairs; // (D, c)
  for (Int a = min_absD; a <= max_absD; a += 1) {
    Int D = -a;
    if (!is_fundamental(D) || !locus_ok(D)) continue;
    for (Int c(1); c <= max_c; c += 1)
      if (gcd(c, p * level) == Int(1)) pairs.emplace_back(D, c);
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    Int nx = abs(x.first) * x.second * x.second;
    Int ny = abs(y.first) * y.second * y.second;
    if (nx != ny) return nx < ny;
    return abs(x.first) < abs(y.first);
  });
  if (pairs.empty()) {
    out.diagnostic = "no admissible (D, c) pairs in range";
    return out;
  }

  std::int64_t bound = (abs(Int(max_absD)) * max_c * max_c).to_i64();
  std::vector<std::vector<std::int64_t>> prim(cs.classes.size());
  run_indexed(static_cast<int>(cs.classes.size()), threads, [&](int i) {
    prim[static_cast<size_t>(i)] = theta_coeffs(gross[static_cast<size_t>(i)], bound).prim;
  });

  out.rows.resize(pairs.size());
  run_indexed(static_cast<int>(pairs.size()), threads, [&](int idx) {
    auto [D, c] = pairs[static_cast<size_t>(idx)];
    Int m = abs(D) * c * c;
    EmbeddingCount E;
    E.D = D;
    E.c = c;
    E.total = Int(0);
    for (size_t i = 0; i < cs.classes.size(); ++i) {
      Int r(prim[i][static_cast<size_t>(m.to_i64())]);
      Int h = embedding_from_rep(r, cs.classes[i].unit_count, D, c);
      E.counts.push_back(h);
      E.total += h;
    }
    WeightedMeasure mu = mu_Dc(E, omega_n, eps);
    ConvergenceRow row;
    row.D = D;
    row.c = c;
    row.absnorm = m;
    row.mu = mu.weights;
    row.normalized = mu.normalized;
    row.tv = tv_distance(mu, target);
    out.rows[static_cast<size_t>(idx)] = std::move(row);
  });
  return out;
}

std::string convergence_csv(const ConvergenceTable& t) {
  std::string s = "D,c,absnorm";
  for (const std::string& label : t.support) s += ",mu_" + label;
  s += ",tv\n";
  char buf[40];
  for (const ConvergenceRow& r : t.rows) {
    s += to_string(r.D) + "," + to_string(r.c) + "," + to_string(r.absnorm);
    for (const Rat& w : r.mu) s += "," + rat_str(w);
    std::snprintf(buf, sizeof buf, "%.11e", to_double(r.tv));
    s += std::string(",") + buf + "\n";
  }
  return s;
}

SlopeReport deviation_slope(Int delta, Int level, Int min_absD, Int max_absD) {
  if (min_absD < Int(3) || max_absD < min_absD)
    throw input_error("deviation_slope: bad D range");
  QuatAlgebra B = build_algebra(prime_divisors(delta));
  QuatOrder O = eichler_order(maximal_order(B), level);
  GenusSet G = genus_enumerate(gross_lattice(O));
  const size_t k = G.classes.size();
  SlopeReport rep;
  rep.points.assign(k, 0);
  rep.slopes.assign(k, 0.0);
  rep.defined.assign(k, false);
  if (k < 2) return rep; // deviation identically zero

  std::vector<std::vector<std::int64_t>> prim(k);
  for (size_t i = 0; i < k; ++i) prim[i] = theta_coeffs(G.classes[i].lat, max_absD.to_i64()).prim;
  Rat mass(0);
  for (const auto& c : G.classes) mass += Rat(Int(1), c.aut_count);

  std::vector<double> sx(k, 0), sy(k, 0), sxx(k, 0), sxy(k, 0);
  for (Int a = min_absD; a <= max_absD; a += 1) {
    if (!is_fundamental(-a)) continue;
    size_t m = static_cast<size_t>(a.to_i64());
    Rat avg(0);
    for (size_t i = 0; i < k; ++i) avg += Rat(Int(prim[i][m]), G.classes[i].aut_count);
    avg /= mass;
    Rat cancel(0);
    for (size_t i = 0; i < k; ++i) {
      Rat dev = Rat(Int(prim[i][m])) - avg;
      cancel += dev / Rat(G.classes[i].aut_count);
      if (dev.is_zero()) continue;
      double x = std::log(static_cast<double>(a.to_i64()));
      double y = std::log(std::fabs(to_double(dev)));
      rep.points[i] += 1;
      sx[i] += x;
      sy[i] += y;
      sxx[i] += x * x;
      sxy[i] += x * y;
    }
    if (!cancel.is_zero()) throw consistency_error("deviation_slope: weighted deviations not balanced");
  }
  for (size_t i = 0; i < k; ++i) {
    double np = rep.points[i];
    if (rep.points[i] >= 8) {
      rep.defined[i] = true;
      rep.slopes[i] = (np * sxy[i] - sx[i] * sy[i]) / (np * sxx[i] - sx[i] * sx[i]);
    }
  }
  return rep;
}

WeightedMeasure smooth_locus_measure(Int delta, Int p, Int level) {
  if (!is_prime(p) || !(delta % p).is_zero())
    throw input_error("smooth_locus_measure: p must be a prime divisor of delta");
  if (!is_squarefree(delta) || omega(delta) % 2 != 0)
    throw input_error("smooth_locus_measure: delta must be squarefree with an even number of primes");
  if (level < Int(1) || !is_squarefree(level) || gcd(level, delta) != Int(1))
    throw input_error("smooth_locus_measure: level must be squarefree and coprime to delta");
  Int dd = exact_div(delta, p, "smooth_locus_measure");
  QuatOrder O = eichler_order(maximal_order(build_algebra(prime_divisors(dd))), level);
  ClassSet cs = right_ideal_class_set(O);
  Rat total(0);
  for (const auto& c : cs.classes) total += Rat(Int(1), c.unit_count);
  total *= Rat(2);
  WeightedMeasure out;
  for (int side = 0; side < 2; ++side)
    for (size_t i = 0; i < cs.classes.size(); ++i) {
      out.support.push_back((side == 0 ? "a" : "b") + std::to_string(i));
      out.weights.push_back(Rat(Int(1), cs.classes[i].unit_count) / total);
    }
  out.normalized = (out.total() == Rat(1));
  return out;
}

} // namespace qlat
