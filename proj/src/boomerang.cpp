#include "freegroup/boomerang.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freegroup/errors.hpp"
#include "freegroup/glue.hpp"
#include "freegroup/growth.hpp"

namespace freegroup {

  std::optional<long long> finite_power_witness(Word const& g,
                                                CoreGraph const& gamma) {
    if (g.empty()) {
      throw Error("the power orbit of the identity is not defined");
    }
    if (g.max_index() > gamma.ambient_rank()) {
      return std::nullopt;
    }
    auto const [core, conj] = cyclic_reduce(g);
    auto read = [&gamma](Word const& w, Vertex v) {
      for (Letter x : w) {
        v = gamma.target(v, x);
        if (v == kNoVertex) {
          break;
        }
      }
      return v;
    };
    Vertex const start = read(conj, CoreGraph::root());
    if (start == kNoVertex) {
      return std::nullopt;
    }
    Vertex v = start;
    auto const n = static_cast<long long>(gamma.vertex_count());
    for (long long k = 1; k <= n; ++k) {
      v = read(core, v);
      if (v == kNoVertex) {
        return std::nullopt;
      }
      if (v == start) {
        return k;
      }
    }
    return std::nullopt;
  }

  bool has_finite_power_orbit(Word const& g, CoreGraph const& gamma) {
    return finite_power_witness(g, gamma).has_value();
  }

  ConstructionState initial_state(CoreGraph gamma0, double eps,
                                  std::optional<std::size_t> neighborhood_radius,
                                  double tol) {
    double const      delta0 = spectral_exponent(gamma0, tol);
    std::size_t const r0     = radius(gamma0);
    return ConstructionState{0,
                             gamma0,
                             delta0,
                             r0,
                             {},
                             std::move(gamma0),
                             delta0,
                             eps,
                             neighborhood_radius};
  }

  bool certificate_holds(CoreGraph const& g, StageRecord const& record,
                         std::size_t radius) {
    SchreierLocus const far = trace(record.connector(), g);
    return balls_isomorphic(g, SchreierLocus{}, far, radius);
  }

  namespace {

    std::size_t power_length(Word const& g, long long m) {
      auto const [core, conj] = cyclic_reduce(g);
      return 2 * conj.size() + static_cast<std::size_t>(m) * core.size();
    }

    // Least m >= 1 with |g^m| > 2 R.
    long long least_escaping_power(Word const& g, std::size_t R) {
      auto const [core, conj] = cyclic_reduce(g);
      std::size_t const need = 2 * R + 1;
      std::size_t const base = 2 * conj.size();
      if (base >= need) {
        return 1;
      }
      auto const c = core.size();
      return static_cast<long long>(std::max<std::size_t>(
          1, (need - base + c - 1) / c));
    }

    bool certificates_hold(CoreGraph const&                g,
                           std::vector<StageRecord> const& history) {
      return std::all_of(history.begin(), history.end(),
                         [&g](StageRecord const& r) {
                           return r.skipped
                                  || certificate_holds(g, r, r.r_guarantee);
                         });
    }

    // Doubling search over powers of g starting at m_start.
    ConstructionState search_power(ConstructionState const& state,
                                   Word const& g, double budget,
                                   long long m_start, bool bootstrap,
                                   StageOptions const& opts) {
      CoreGraph const&  gamma  = state.gamma;
      std::size_t const R      = state.radius;
      double const      target = state.delta + budget;

      StageRecord record;
      record.stage        = state.stage + 1;
      record.g            = g;
      record.bootstrap    = bootstrap;
      record.r_guarantee  = R;
      record.budget       = budget;
      record.delta_before = state.delta;

      std::optional<CoreGraph> last_glued;
      for (long long m = m_start; m <= opts.m_cap; m *= 2) {
        Word const conn  = power(g, m);
        auto const split = connector_decompose(gamma, gamma, conn);
        if (!split || conn.size() <= 2 * R) {
          continue;
        }
        CoreGraph glued = glue(gamma, gamma, *split);
        if (!exponent_below(glued, target)) {
          last_glued = std::move(glued);
          continue;
        }
        double const delta = spectral_exponent(glued, opts.tol);
        if (!(delta - state.delta < budget)) {
          last_glued = std::move(glued);
          continue;
        }
        if (state.neighborhood_radius
            && !balls_isomorphic(glued, {}, state.gamma0, {},
                                 *state.neighborhood_radius)) {
          continue;
        }
        record.m               = m;
        record.power_length    = conn.size();
        record.J1              = split->J1;
        record.J               = split->J;
        record.J2              = split->J2;
        record.delta_after     = delta;
        record.delta_increment = delta - state.delta;
        if (!certificate_holds(glued, record, R)
            || !certificates_hold(glued, state.history)) {
          continue;
        }
        ConstructionState next = state;
        next.stage             = record.stage;
        next.radius            = radius(glued);
        next.gamma             = std::move(glued);
        next.delta             = delta;
        next.history.push_back(std::move(record));
        return next;
      }
      double best = std::numeric_limits<double>::infinity();
      if (last_glued) {
        best = spectral_exponent(*last_glued, opts.tol) - state.delta;
      }
      throw SearchExhausted("no power of " + to_string(g) + " up to "
                                + std::to_string(opts.m_cap)
                                + " meets the stage conditions",
                            best);
    }

    // Turns a cyclic subgroup <gamma> into a non-cyclic one with exponent
    // below `budget`, gluing along a power of a letter that neither starts
    // nor ends gamma or gamma^-1, with length a multiple of |gamma| and at
    // least (1 / (|gamma| budget))^2.
    ConstructionState bootstrap(ConstructionState const& state, double budget,
                                StageOptions const& opts) {
      int const  d     = state.gamma.ambient_rank();
      Word const gamma = free_basis(state.gamma).front();
      for (int i = 1; i <= d; ++i) {
        if (i == gamma.front().index() || i == gamma.back().index()) {
          continue;
        }
        Word const        x{Letter(i, 1)};
        auto const        len  = static_cast<long long>(gamma.size());
        double const      root = 1.0 / (static_cast<double>(len) * budget);
        auto const        need = static_cast<long long>(std::ceil(root * root));
        long long         m    = std::max(need, least_escaping_power(x, state.radius));
        m                      = ((m + len - 1) / len) * len;
        return search_power(state, x, budget, m, true, opts);
      }
      // no fresh letter: first enumerated word with an infinite power orbit
      Enumeration words(d);
      for (int tries = 0; tries < 1024; ++tries) {
        Word const c = words.next();
        if (has_finite_power_orbit(c, state.gamma)) {
          continue;
        }
        try {
          return search_power(state, c, budget,
                              least_escaping_power(c, state.radius), true,
                              opts);
        } catch (SearchExhausted const&) {
          continue;
        }
      }
      throw SearchExhausted("no bootstrap connector found", 0.0);
    }

  }  // namespace

  ConstructionState construct_stage(ConstructionState const& state,
                                    Word const& g, double eps_budget,
                                    StageOptions const& opts) {
    if (g.empty()) {
      throw Error("stage connector must be nontrivial");
    }
    if (!(eps_budget > 0.0)) {
      throw Error("stage budget must be positive");
    }
    if (is_cyclic(state.gamma)) {
      throw HypothesisError("construct_stage needs a non-cyclic subgroup; "
                            "bootstrap cyclic subgroups through construct()");
    }
    if (auto witness = finite_power_witness(g, state.gamma)) {
      ConstructionState next = state;
      next.stage             = state.stage + 1;
      StageRecord record;
      record.stage        = next.stage;
      record.g            = g;
      record.skipped      = true;
      record.witness      = *witness;
      record.r_guarantee  = state.radius;
      record.budget       = eps_budget;
      record.delta_before = state.delta;
      record.delta_after  = state.delta;
      next.history.push_back(std::move(record));
      return next;
    }
    return search_power(state, g, eps_budget,
                        least_escaping_power(g, state.radius), false, opts);
  }

  ConstructionState construct(CoreGraph const& gamma0, double eps,
                              std::size_t stages, std::size_t radius_R,
                              StageOptions const& opts) {
    if (!(eps > 0.0)) {
      throw Error("eps must be positive");
    }
    ConstructionState state = initial_state(gamma0, eps, radius_R, opts.tol);
    if (rank(gamma0) == 0 || is_finite_index(gamma0)) {
      return state;
    }
    Enumeration words(gamma0.ambient_rank());
    for (std::size_t n = 1; n <= stages; ++n) {
      double const budget = eps / std::ldexp(1.0, static_cast<int>(n));
      if (is_cyclic(state.gamma)) {
        state = bootstrap(state, budget, opts);
      } else {
        state = construct_stage(state, words.next(), budget, opts);
      }
      if (!balls_isomorphic(state.gamma, {}, gamma0, {}, radius_R)) {
        throw NeighborhoodViolation("stage " + std::to_string(n)
                                    + " changed the radius-"
                                    + std::to_string(radius_R)
                                    + " ball around the root");
      }
    }
    return state;
  }

  bool CertificateReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](CertificateCheck const& c) { return c.passed(); });
  }

  CertificateReport verify_certificates(ConstructionState const& state,
                                        std::size_t depth) {
    CertificateReport report;
    for (auto const& r : state.history) {
      if (r.stage > depth) {
        continue;
      }
      CertificateCheck check{r.stage, r.skipped, true, true, true};
      if (r.skipped) {
        check.ball_ok = r.witness >= 1
                        && membership(power(r.g, r.witness), state.gamma);
      } else {
        check.ball_ok   = certificate_holds(state.gamma, r, r.r_guarantee);
        check.length_ok = r.power_length == power_length(r.g, r.m)
                          && r.power_length > 2 * r.r_guarantee;
        check.budget_ok = r.delta_increment < r.budget
                          && std::abs(r.delta_after - r.delta_before
                                      - r.delta_increment)
                                 <= 1e-12;
      }
      report.checks.push_back(check);
    }
    return report;
  }

}  // namespace freegroup
