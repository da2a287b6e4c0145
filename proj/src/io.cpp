#include "freegroup/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freegroup/errors.hpp"

namespace freegroup {

  json graph_to_json(CoreGraph const& g) {
    json edges = json::array();
    for (Edge const& e : g.edges()) {
      edges.push_back({e.src, e.label, e.dst});
    }
    return {{"rank", g.ambient_rank()},
            {"vertices", g.vertex_count()},
            {"root", CoreGraph::root()},
            {"edges", std::move(edges)}};
  }

  CoreGraph graph_from_json(json const& j) {
    try {
      if (!j.is_object()) {
        throw GraphFormatError("graph must be a JSON object");
      }
      int const         rank = j.at("rank").get<int>();
      auto const        n    = j.at("vertices").get<long long>();
      auto const        root = j.value("root", 0LL);
      std::vector<Edge> edges;
      if (rank < 1) {
        throw GraphFormatError("rank must be at least 1");
      }
      if (n < 1) {
        throw GraphFormatError("a graph needs at least one vertex");
      }
      for (json const& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) {
          throw GraphFormatError("edges are [src, label, dst] triples");
        }
        edges.push_back({e[0].get<Vertex>(), e[1].get<int>(),
                         e[2].get<Vertex>()});
      }
      return from_edges(rank, static_cast<std::size_t>(n),
                        static_cast<Vertex>(root), edges);
    } catch (json::exception const& e) {
      throw GraphFormatError(e.what());
    }
  }

  json counts_to_json(std::span<BigInt const> counts) {
    json out = json::array();
    for (BigInt const& c : counts) {
      out.push_back(c.str());
    }
    return out;
  }

  std::vector<BigInt> counts_from_json(json const& j) {
    std::vector<BigInt> out;
    for (json const& c : j) {
      auto const& s = c.get_ref<std::string const&>();
      if (s.empty()
          || !std::all_of(s.begin(), s.end(),
                          [](char ch) { return ch >= '0' && ch <= '9'; })) {
        throw Error("count is not a decimal string: " + s);
      }
      out.emplace_back(s);
    }
    return out;
  }

  json decomposition_to_json(ConnectorDecomposition const& s) {
    return {{"J1", s.J1}, {"J", s.J},   {"J2", s.J2},
            {"u1", s.u1}, {"u2", s.u2}, {"join", to_string(s.join_word)}};
  }

  json record_to_json(StageRecord const& r) {
    return {{"stage", r.stage},
            {"g", to_string(r.g)},
            {"skipped", r.skipped},
            {"bootstrap", r.bootstrap},
            {"m", r.m},
            {"witness", r.witness},
            {"|g^m|", r.power_length},
            {"J1", r.J1},
            {"J", r.J},
            {"J2", r.J2},
            {"r_guarantee", r.r_guarantee},
            {"budget", r.budget},
            {"delta_before", r.delta_before},
            {"delta_after", r.delta_after},
            {"delta_increment", r.delta_increment}};
  }

  StageRecord record_from_json(json const& j, int rank) {
    try {
      StageRecord r;
      r.stage           = j.at("stage").get<std::size_t>();
      r.g               = parse_reduce(j.at("g").get<std::string>(), rank);
      r.skipped         = j.at("skipped").get<bool>();
      r.bootstrap       = j.value("bootstrap", false);
      r.m               = j.at("m").get<long long>();
      r.witness         = j.value("witness", 0LL);
      r.power_length    = j.at("|g^m|").get<std::size_t>();
      r.J1              = j.at("J1").get<std::size_t>();
      r.J               = j.at("J").get<std::size_t>();
      r.J2              = j.at("J2").get<std::size_t>();
      r.r_guarantee     = j.at("r_guarantee").get<std::size_t>();
      r.budget          = j.at("budget").get<double>();
      r.delta_before    = j.at("delta_before").get<double>();
      r.delta_after     = j.at("delta_after").get<double>();
      r.delta_increment = j.value("delta_increment",
                                  r.delta_after - r.delta_before);
      return r;
    } catch (json::exception const& e) {
      throw GraphFormatError(std::string("bad stage record: ") + e.what());
    }
  }

  json transcript_to_json(ConstructionState const& state,
                          TranscriptInfo const&    info) {
    json records = json::array();
    for (auto const& r : state.history) {
      records.push_back(record_to_json(r));
    }
    json out = {{"d", state.gamma0.ambient_rank()},
                {"generators", info.generators},
                {"eps", state.eps},
                {"stages", info.stages},
                {"tol", info.options.tol},
                {"m_cap", info.options.m_cap},
                {"gamma0", graph_to_json(state.gamma0)},
                {"delta0", state.delta0},
                {"records", std::move(records)},
                {"final",
                 {{"graph", graph_to_json(state.gamma)},
                  {"delta", state.delta},
                  {"rank", rank(state.gamma)},
                  {"radius", state.radius}}}};
    out["radius"] = state.neighborhood_radius
                        ? json(*state.neighborhood_radius)
                        : json(nullptr);
    return out;
  }

  namespace {

    template <typename T>
    void expect_equal(std::vector<std::string>& out, std::size_t stage,
                      char const* what, T const& recorded, T const& actual) {
      if (!(recorded == actual)) {
        std::ostringstream s;
        s.precision(17);
        s << "stage " << stage << ": " << what << " recorded " << recorded
          << ", replayed " << actual;
        out.push_back(s.str());
      }
    }

  }  // namespace

  Replay replay_transcript(json const& t) {
    CoreGraph   gamma0 = graph_from_json(t.at("gamma0"));
    double      tol    = 1e-10;
    double      eps    = 0.0;
    std::optional<std::size_t> R;
    try {
      tol = t.value("tol", 1e-10);
      eps = t.at("eps").get<double>();
      if (t.contains("radius") && !t.at("radius").is_null()) {
        R = t.at("radius").get<std::size_t>();
      }
    } catch (json::exception const& e) {
      throw GraphFormatError(std::string("bad transcript: ") + e.what());
    }
    int const rank_d = gamma0.ambient_rank();
    Replay    out{initial_state(std::move(gamma0), eps, R, tol), {}};
    auto&     state = out.state;
    auto&     bad   = out.mismatches;
    // Bisection is deterministic, so replayed exponents agree to rounding.
    double const slack = std::max(10 * tol, 1e-12);
    if (std::abs(t.value("delta0", state.delta0) - state.delta0) > slack) {
      bad.push_back("delta0 does not match the starting core");
    }
    for (json const& j : t.at("records")) {
      StageRecord r = record_from_json(j, rank_d);
      expect_equal(bad, r.stage, "stage", r.stage, state.stage + 1);
      expect_equal(bad, r.stage, "r_guarantee", r.r_guarantee, state.radius);
      r.delta_before = state.delta;
      if (r.skipped) {
        auto const w = finite_power_witness(r.g, state.gamma);
        expect_equal(bad, r.stage, "witness", r.witness, w.value_or(0));
        r.delta_after     = state.delta;
        r.delta_increment = 0.0;
        state.history.push_back(r);
        state.stage = r.stage;
        continue;
      }
      Word const conn  = r.connector();
      auto const split = connector_decompose(state.gamma, state.gamma, conn);
      if (!split) {
        bad.push_back("stage " + std::to_string(r.stage)
                      + ": connector is not admissible");
        break;
      }
      expect_equal(bad, r.stage, "|g^m|", r.power_length, conn.size());
      expect_equal(bad, r.stage, "J1", r.J1, split->J1);
      expect_equal(bad, r.stage, "J", r.J, split->J);
      expect_equal(bad, r.stage, "J2", r.J2, split->J2);
      CoreGraph    glued = glue(state.gamma, state.gamma, *split);
      double const delta = spectral_exponent(glued, tol);
      if (std::abs(delta - r.delta_after) > slack) {
        expect_equal(bad, r.stage, "delta_after", r.delta_after, delta);
      }
      r.power_length    = conn.size();
      r.J1              = split->J1;
      r.J               = split->J;
      r.J2              = split->J2;
      r.delta_after     = delta;
      r.delta_increment = delta - r.delta_before;
      state.stage       = r.stage;
      state.radius      = radius(glued);
      state.gamma       = std::move(glued);
      state.delta       = delta;
      state.history.push_back(std::move(r));
    }
    return out;
  }

}  // namespace freegroup
