#include "freegroup/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "freegroup/errors.hpp"

namespace freegroup {

  double log_of(BigInt const& x) {
    if (x <= 0) {
      return -std::numeric_limits<double>::infinity();
    }
    auto const top = boost::multiprecision::msb(x);
    if (top < 64) {
      return std::log(x.convert_to<double>());
    }
    auto const shift = top - 60;
    BigInt     head  = x >> shift;
    return std::log(head.convert_to<double>())
           + static_cast<double>(shift) * std::log(2.0);
  }

  std::vector<BigInt> cycle_counts(CoreGraph const& g, std::size_t r_max) {
    int const   width = 2 * g.ambient_rank();
    auto const  slots = g.vertex_count() * static_cast<std::size_t>(width);
    auto const  root  = CoreGraph::root();
    std::vector<BigInt> counts(r_max + 1);
    counts[0] = 1;

    // paths[v * width + o]: reduced paths from the root whose last step
    // was along ordinal o out of v
    std::vector<BigInt> paths(slots), next(slots);
    for (int o = 0; o < width; ++o) {
      if (g.target(root, o) != kNoVertex) {
        paths[static_cast<std::size_t>(o)] = 1;
      }
    }
    for (std::size_t len = 1; len <= r_max; ++len) {
      BigInt closed = 0;
      for (std::size_t s = 0; s < slots; ++s) {
        if (paths[s].is_zero()) {
          continue;
        }
        auto const v = static_cast<Vertex>(s / static_cast<std::size_t>(width));
        int const  o = static_cast<int>(s % static_cast<std::size_t>(width));
        Vertex     t = g.target(v, o);
        if (t == root) {
          closed += paths[s];
        }
        if (len == r_max) {
          continue;
        }
        for (int o2 = 0; o2 < width; ++o2) {
          if (o2 != (o ^ 1) && g.target(t, o2) != kNoVertex) {
            next[static_cast<std::size_t>(t) * width + o2] += paths[s];
          }
        }
      }
      counts[len] = counts[len - 1] + closed;
      std::swap(paths, next);
      for (auto& x : next) {
        x = 0;
      }
    }
    return counts;
  }

  double dp_slope(std::span<BigInt const> counts) {
    if (counts.size() < 2) {
      return 0.0;
    }
    std::size_t const R    = counts.size() - 1;
    std::size_t const half = R / 2;
    return (log_of(counts[R]) - log_of(counts[half]))
           / static_cast<double>(R - half);
  }

  bool is_cyclic(CoreGraph const& g) {
    return rank(g) <= 1;
  }

  namespace {

    // Vertices of the 2-core (maximal subgraph of minimum valency 2).
    std::vector<char> two_core(CoreGraph const& g) {
      auto const        n     = g.vertex_count();
      int const         width = 2 * g.ambient_rank();
      std::vector<char> alive(n, 1);
      std::vector<int>  degree(n);
      std::vector<Vertex> leaves;
      for (std::size_t v = 0; v < n; ++v) {
        degree[v] = g.valency(static_cast<Vertex>(v));
        if (degree[v] <= 1) {
          leaves.push_back(static_cast<Vertex>(v));
        }
      }
      while (!leaves.empty()) {
        Vertex v = leaves.back();
        leaves.pop_back();
        if (!alive[v]) {
          continue;
        }
        alive[v] = 0;
        for (int o = 0; o < width; ++o) {
          Vertex t = g.target(v, o);
          if (t != kNoVertex && t != v && alive[t] && --degree[t] <= 1) {
            leaves.push_back(t);
          }
        }
      }
      return alive;
    }

    // A maximal path of the 2-core whose interior vertices have valency 2,
    // between branch vertices (valency >= 3).
    struct Chain {
      Vertex      start;
      int         first;  // ordinal of the first step out of start
      Vertex      end;
      int         last;   // ordinal of the step arriving at end
      std::size_t length;
    };

    std::vector<Chain> branch_chains(CoreGraph const& g) {
      auto const alive = two_core(g);
      int const  width = 2 * g.ambient_rank();
      auto const n     = static_cast<Vertex>(g.vertex_count());
      auto live_valency = [&](Vertex v) {
        int d = 0;
        for (int o = 0; o < width; ++o) {
          Vertex t = g.target(v, o);
          d += (t != kNoVertex && alive[t]) ? 1 : 0;
        }
        return d;
      };
      std::vector<char> branch(static_cast<std::size_t>(n), 0);
      for (Vertex v = 0; v < n; ++v) {
        branch[v] = alive[v] && live_valency(v) >= 3;
      }
      std::vector<Chain> chains;
      for (Vertex w = 0; w < n; ++w) {
        if (!branch[w]) {
          continue;
        }
        for (int o = 0; o < width; ++o) {
          Vertex t = g.target(w, o);
          if (t == kNoVertex || !alive[t]) {
            continue;
          }
          Chain c{w, o, kNoVertex, o, 1};
          Vertex cur = t;
          while (!branch[cur]) {
            // valency 2: leave by the edge we did not arrive on
            int out = -1;
            for (int o2 = 0; o2 < width; ++o2) {
              Vertex s = g.target(cur, o2);
              if (o2 != (c.last ^ 1) && s != kNoVertex && alive[s]) {
                out = o2;
                break;
              }
            }
            c.last = out;
            cur    = g.target(cur, out);
            ++c.length;
          }
          c.end = cur;
          chains.push_back(c);
        }
      }
      return chains;
    }

    // Whether rho(M) < 1 for M_{ef} = exp(-s L_f) over allowed transitions,
    // i.e. whether I - M is a nonsingular M-matrix: all pivots of Gaussian
    // elimination without pivoting are positive.
    bool radius_below_one(std::vector<Chain> const& chains, double s) {
      auto const      n = static_cast<Eigen::Index>(chains.size());
      Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
      for (Eigen::Index e = 0; e < n; ++e) {
        auto const& ce = chains[static_cast<std::size_t>(e)];
        for (Eigen::Index f = 0; f < n; ++f) {
          auto const& cf = chains[static_cast<std::size_t>(f)];
          if (cf.start == ce.end && cf.first != (ce.last ^ 1)) {
            a(e, f) -= std::exp(-s * static_cast<double>(cf.length));
          }
        }
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        double const pivot = a(k, k);
        if (!(pivot > 0.0)) {
          return false;
        }
        Eigen::Index const m = n - k - 1;
        if (m > 0) {
          a.bottomRightCorner(m, m).noalias()
              -= (a.col(k).tail(m) / pivot) * a.row(k).tail(m);
        }
      }
      return true;
    }

    double max_exponent(CoreGraph const& g) {
      return std::log(2.0 * g.ambient_rank() - 1.0);
    }

  }  // namespace

  double spectral_exponent(CoreGraph const& g, double tol) {
    if (!(tol > 0.0)) {
      throw Error("tolerance must be positive");
    }
    if (is_cyclic(g)) {
      return 0.0;
    }
    auto const chains = branch_chains(g);
    double     lo     = 0.0;
    double     hi     = max_exponent(g) + 1e-3;
    while (!radius_below_one(chains, hi)) {
      hi *= 2.0;
    }
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (radius_below_one(chains, mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  bool exponent_below(CoreGraph const& g, double bound) {
    if (is_cyclic(g)) {
      return bound > 0.0;
    }
    return radius_below_one(branch_chains(g), bound);
  }

  PowerIteration hashimoto_power_iteration(CoreGraph const& g, double tol,
                                           std::size_t cap) {
    if (!(tol > 0.0)) {
      throw Error("tolerance must be positive");
    }
    if (is_cyclic(g)) {
      return {1.0, 0.0, 0};
    }
    auto const alive = two_core(g);
    int const  width = 2 * g.ambient_rank();
    auto const slots = g.vertex_count() * static_cast<std::size_t>(width);

    // states: half-edges (v, o) of the 2-core
    std::vector<Eigen::Index> state(slots, -1);
    Eigen::Index              n = 0;
    for (std::size_t s = 0; s < slots; ++s) {
      auto const v = static_cast<Vertex>(s / static_cast<std::size_t>(width));
      Vertex     t = g.target(v, static_cast<int>(s % width));
      if (alive[v] && t != kNoVertex && alive[t]) {
        state[s] = n++;
      }
    }
    std::vector<Eigen::Triplet<double>> entries;
    for (std::size_t s = 0; s < slots; ++s) {
      if (state[s] < 0) {
        continue;
      }
      auto const v = static_cast<Vertex>(s / static_cast<std::size_t>(width));
      int const  o = static_cast<int>(s % width);
      Vertex     t = g.target(v, o);
      for (int o2 = 0; o2 < width; ++o2) {
        auto const f = static_cast<std::size_t>(t) * width + o2;
        if (o2 != (o ^ 1) && state[f] >= 0) {
          entries.emplace_back(state[s], state[f], 1.0);
        }
      }
    }
    Eigen::SparseMatrix<double, Eigen::RowMajor> b(n, n);
    b.setFromTriplets(entries.begin(), entries.end());

    if (cap == 0) {
      cap = static_cast<std::size_t>(10.0 * static_cast<double>(n / 2)
                                     * std::log(1.0 / tol))
            + 1000;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    double          residual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= cap; ++it) {
      Eigen::VectorXd z      = b * x;
      double const    lambda = z.cwiseAbs().maxCoeff();
      residual               = (z - lambda * x).cwiseAbs().maxCoeff();
      if (residual <= tol) {
        return {lambda, residual, it};
      }
      x = z + x;  // shift by the identity: primitive, same Perron vector
      x /= x.cwiseAbs().maxCoeff();
    }
    throw ConvergenceError("power iteration hit its cap of "
                               + std::to_string(cap) + " iterations",
                           residual);
  }

  GrowthEstimate critical_exponent(CoreGraph const& g, double tol,
                                   ExponentOptions opts) {
    GrowthEstimate est;
    est.counts           = cycle_counts(g, opts.dp_radius);
    est.cyclic           = is_cyclic(g);
    est.delta            = spectral_exponent(g, tol);
    est.lambda           = std::exp(est.delta);
    est.residual         = est.cyclic ? 0.0 : tol;
    est.delta_dp         = dp_slope(est.counts);
    est.method_agreement = std::abs(est.delta - est.delta_dp);
    if (opts.with_coornaert && !est.cyclic) {
      est.coornaert_k = coornaert_constant(est.counts, est.delta);
    }
    return est;
  }

  double coornaert_constant(std::span<BigInt const> counts, double delta) {
    double worst = 0.0;
    for (std::size_t r = 0; r < counts.size(); ++r) {
      worst = std::max(
          worst, std::abs(log_of(counts[r]) - delta * static_cast<double>(r)));
    }
    return std::exp(worst);
  }

  double coornaert_constant(CoreGraph const& g, std::size_t r_max,
                            double tol) {
    if (is_cyclic(g)) {
      throw HypothesisError(
          "Coornaert constant needs a non-cyclic subgroup (limit set with "
          "more than two points)");
    }
    auto const counts = cycle_counts(g, r_max);
    return coornaert_constant(counts, spectral_exponent(g, tol));
  }

  double kwon_park_polynomial(int n, double t) {
    if (n % 2 == 1) {
      return 2.0 * std::pow(t, n) + t - 1.0;
    }
    return 2.0 * (std::pow(t, n) + t) / (t + 1.0) - 1.0;
  }

  KwonParkResult kwon_park(int n, double tol) {
    if (n < 1) {
      throw Error("kwon_park needs n >= 1");
    }
    if (!(tol > 0.0)) {
      throw Error("tolerance must be positive");
    }
    auto   f  = [n](double t) { return 2.0 * std::pow(t, n) + t - 1.0; };
    double lo = 0.0;
    double hi = 1.0;
    double root = 0.5;
    while (hi - lo > tol) {
      root           = 0.5 * (lo + hi);
      double const v = f(root);
      if (v == 0.0) {
        lo = hi = root;
        break;
      }
      (v < 0.0 ? lo : hi) = root;
    }
    root = 0.5 * (lo + hi);
    return {n, root, -std::log(root)};
  }

  std::size_t cr_estimate_required_length(std::size_t g_len, std::size_t J,
                                          std::size_t R) {
    if (J == 0) {
      throw Error("join length must be at least 1");
    }
    std::size_t const i_max = R / (2 * J);
    std::size_t const slack = g_len > 2 * J ? g_len - 2 * J : 0;
    return R + 2 * i_max * slack + 1;
  }

  BigInt cr_estimate_rhs(std::span<BigInt const> base_counts,
                         std::size_t g_len, std::size_t J, std::size_t R) {
    if (J == 0 || g_len < J) {
      throw Error("cr_estimate_rhs needs 1 <= J <= |g|");
    }
    std::size_t const need = cr_estimate_required_length(g_len, J, R);
    if (base_counts.size() < need) {
      throw Error("cr_estimate_rhs needs " + std::to_string(need)
                  + " base counts, got " + std::to_string(base_counts.size()));
    }
    auto convolve = [need](std::vector<BigInt> const& p,
                           std::span<BigInt const>    q) {
      std::vector<BigInt> out(need);
      for (std::size_t i = 0; i < need; ++i) {
        if (p[i].is_zero()) {
          continue;
        }
        for (std::size_t j = 0; i + j < need; ++j) {
          out[i + j] += p[i] * q[j];
        }
      }
      return out;
    };
    std::vector<BigInt> odd_power(base_counts.begin(),
                                  base_counts.begin()
                                      + static_cast<std::ptrdiff_t>(need));
    auto const square = convolve(odd_power, base_counts);

    BigInt            total = 0;
    std::size_t const i_max = R / (2 * J);
    auto const        shift = 2 * (static_cast<long long>(g_len)
                            - 2 * static_cast<long long>(J));
    for (std::size_t i = 0; i <= i_max; ++i) {
      long long const idx
          = static_cast<long long>(R) + static_cast<long long>(i) * shift;
      if (idx >= 0) {
        total += odd_power[static_cast<std::size_t>(idx)];
      }
      if (i < i_max) {
        odd_power = convolve(odd_power, square);
      }
    }
    return total;
  }

}  // namespace freegroup
