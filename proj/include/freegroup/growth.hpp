#ifndef FREEGROUP_GROWTH_HPP_
#define FREEGROUP_GROWTH_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freegroup/core_graph.hpp"

namespace freegroup {

  using BigInt = boost::multiprecision::cpp_int;

  // Natural logarithm of a positive big integer, accurate to double
  // precision at any size.
  [[nodiscard]] double log_of(BigInt const& x);

  // counts[R] = number of subgroup elements of length <= R, i.e. reduced
  // closed paths at the root of length <= R.  Exact; computed by a
  // non-backtracking transfer over directed edges.
  [[nodiscard]] std::vector<BigInt> cycle_counts(CoreGraph const& g,
                                                 std::size_t      r_max);

  // Two-scale growth slope (ln c(R) - ln c(R/2)) / (R - R/2) at R = the last
  // index; the multiplicative constant cancels, unlike ln c(R) / R.
  [[nodiscard]] double dp_slope(std::span<BigInt const> counts);

  // True when the subgroup is trivial or cyclic (free rank <= 1).
  [[nodiscard]] bool is_cyclic(CoreGraph const& g);

  // Critical exponent from the spectral radius of the non-backtracking
  // operator of the 2-core.  The 2-core is contracted to its branch
  // vertices; with chain lengths L_f the operator M(x)_{ef} = x^{L_f}
  // satisfies rho(M(e^{-s})) < 1 iff s > delta, and rho < 1 is decided
  // exactly by an M-matrix pivot test on I - M.  Bisection on s to width
  // `tol`.  Cyclic cores return 0 exactly.
  [[nodiscard]] double spectral_exponent(CoreGraph const& g, double tol);

  // delta(g) < bound, decided with a single pivot test.
  [[nodiscard]] bool exponent_below(CoreGraph const& g, double bound);

  struct PowerIteration {
    double      lambda;
    double      residual;
    std::size_t iterations;
  };

  // Perron eigenvalue of the full Hashimoto (non-backtracking edge) matrix
  // of the 2-core by power iteration on B + I, started from all ones.
  // Stops once |B x - lambda x|_inf <= tol with |x|_inf = 1.  Throws
  // ConvergenceError past the iteration cap (0 = default cap of
  // 10 |E| ln(1/tol) + 1000).
  [[nodiscard]] PowerIteration hashimoto_power_iteration(CoreGraph const& g,
                                                         double      tol,
                                                         std::size_t cap = 0);

  struct GrowthEstimate {
    std::vector<BigInt>   counts;
    double                delta;     // spectral, nats
    double                lambda;    // exp(delta)
    double                delta_dp;  // dp_slope(counts)
    double                method_agreement;
    double                residual;  // bisection width
    bool                  cyclic;
    std::optional<double> coornaert_k;
  };

  struct ExponentOptions {
    std::size_t dp_radius      = 60;
    bool        with_coornaert = false;
  };

  [[nodiscard]] GrowthEstimate critical_exponent(CoreGraph const& g,
                                                 double           tol,
                                                 ExponentOptions  opts = {});

  // Smallest K with (1/K) e^{delta R} <= c(R) <= K e^{delta R} for every
  // R < counts.size().
  [[nodiscard]] double coornaert_constant(std::span<BigInt const> counts,
                                          double                  delta);

  // As above with counts up to r_max and the spectral delta.  Throws
  // HypothesisError for trivial or cyclic subgroups.
  [[nodiscard]] double coornaert_constant(CoreGraph const& g,
                                          std::size_t      r_max,
                                          double           tol = 1e-10);

  struct KwonParkResult {
    int    n;
    double root;
    double delta;
  };

  // The polynomial as written case by case: 2t^n + t - 1 for odd n,
  // 2(t^n + t)/(t + 1) - 1 for even n.
  [[nodiscard]] double kwon_park_polynomial(int n, double t);

  // Root in (0, 1) of 2t^n + t - 1 (which has the same root as the even
  // case after clearing t + 1) by bisection to width tol.
  [[nodiscard]] KwonParkResult kwon_park(int n, double tol);

  // Right-hand side of the free-product counting bound
  //   sum_{i=0}^{floor(R/2J)} (base^{*(2i+1)})[R + 2i(g_len - 2J)]
  // where base^{*k} is the k-fold convolution of the cumulative counts and
  // negative indices contribute nothing.  Throws Error if base_counts is too
  // short.
  [[nodiscard]] BigInt cr_estimate_rhs(std::span<BigInt const> base_counts,
                                       std::size_t             g_len,
                                       std::size_t             J,
                                       std::size_t             R);

  // Number of base counts cr_estimate_rhs needs: one past the largest
  // index R + 2 floor(R/2J) max(0, g_len - 2J).
  [[nodiscard]] std::size_t cr_estimate_required_length(std::size_t g_len,
                                                        std::size_t J,
                                                        std::size_t R);

}  // namespace freegroup

#endif  // FREEGROUP_GROWTH_HPP_
