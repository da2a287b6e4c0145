#ifndef FREEGROUP_BOOMERANG_HPP_
#define FREEGROUP_BOOMERANG_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "freegroup/core_graph.hpp"
#include "freegroup/word.hpp"

namespace freegroup {

  // Smallest n >= 1 with g^n in the subgroup, if any.  Decided exactly:
  // with g = h c h^-1 cyclically reduced, h must be readable from the root
  // and reading c is a partial permutation of the core's vertices, so the
  // orbit either closes within vertex_count() rounds or leaves the core.
  // Throws Error for the trivial word.
  [[nodiscard]] std::optional<long long>
  finite_power_witness(Word const& g, CoreGraph const& gamma);

  // Whether {v_{g^n} : n in Z} is finite, equivalently some g^n (n >= 1)
  // lies in the subgroup.
  [[nodiscard]] bool has_finite_power_orbit(Word const& g,
                                            CoreGraph const& gamma);

  // One step of the tower and its certificate.
  struct StageRecord {
    std::size_t stage     = 0;  // n >= 1
    Word        g;              // g_n, or the bootstrap letter
    bool        skipped   = false;
    bool        bootstrap = false;
    long long   m         = 0;  // power used; 0 when skipped
    long long   witness   = 0;  // n with g^n in Gamma_{n-1} when skipped
    std::size_t power_length = 0;  // |g^m|
    std::size_t J1 = 0;
    std::size_t J  = 0;
    std::size_t J2 = 0;
    std::size_t r_guarantee = 0;  // radius R_{n-1} of the previous core
    double      budget          = 0.0;
    double      delta_before    = 0.0;
    double      delta_after     = 0.0;
    double      delta_increment = 0.0;

    [[nodiscard]] Word connector() const {
      return power(g, m);
    }
  };

  struct ConstructionState {
    std::size_t              stage = 0;
    CoreGraph                gamma;
    double                   delta  = 0.0;
    std::size_t              radius = 0;
    std::vector<StageRecord> history;

    // the starting point, for neighbourhood and budget checks
    CoreGraph                  gamma0;
    double                     delta0 = 0.0;
    double                     eps    = 0.0;
    std::optional<std::size_t> neighborhood_radius;
  };

  struct StageOptions {
    double    tol   = 1e-10;
    long long m_cap = 1LL << 20;
  };

  [[nodiscard]] ConstructionState
  initial_state(CoreGraph gamma0, double eps,
                std::optional<std::size_t> neighborhood_radius,
                double                     tol = 1e-10);

  // Stage n = state.stage + 1.  Skips when g has a finite power orbit;
  // otherwise searches m = m0, 2 m0, 4 m0, ... (m0 the least m with
  // |g^m| > 2 R_{n-1}) for the first m where g^m is an admissible
  // connector of Gamma_{n-1} with itself, the measured exponent increment
  // is below eps_budget, the neighbourhood ball of Gamma_0 is intact, and
  // every certificate so far (including the new one) holds.
  //
  // Throws HypothesisError for cyclic or trivial Gamma_{n-1} and
  // SearchExhausted past opts.m_cap.
  [[nodiscard]] ConstructionState
  construct_stage(ConstructionState const& state, Word const& g,
                  double eps_budget, StageOptions const& opts = {});

  // Runs `stages` stages with budgets eps / 2^n over the length-lex
  // enumeration of F_d.  Trivial and finite-index inputs are returned
  // unchanged.  A cyclic input is first made non-cyclic by a bootstrap
  // stage gluing along a power of a fresh letter.  Throws
  // NeighborhoodViolation if the radius-R ball around the root ever
  // changes.
  [[nodiscard]] ConstructionState construct(CoreGraph const& gamma0,
                                            double eps, std::size_t stages,
                                            std::size_t         radius,
                                            StageOptions const& opts = {});

  struct CertificateCheck {
    std::size_t stage;
    bool        skipped;
    bool        ball_ok;
    bool        length_ok;
    bool        budget_ok;

    [[nodiscard]] bool passed() const noexcept {
      return ball_ok && length_ok && budget_ok;
    }
  };

  struct CertificateReport {
    std::vector<CertificateCheck> checks;

    [[nodiscard]] bool all_passed() const noexcept;
  };

  // Ball isomorphism between the root and v_{g^m} at the given radius in g.
  [[nodiscard]] bool certificate_holds(CoreGraph const&   g,
                                       StageRecord const& record,
                                       std::size_t        radius);

  // Checks every record with stage <= depth against the final core:
  // the ball isomorphism at r_guarantee, |g^m| > 2 r_guarantee and the
  // exponent increment against its budget.  Skipped records re-check their
  // power witness.
  [[nodiscard]] CertificateReport
  verify_certificates(ConstructionState const& state, std::size_t depth);

}  // namespace freegroup

#endif  // FREEGROUP_BOOMERANG_HPP_
