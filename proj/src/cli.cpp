#include "freegroup/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "freegroup/boomerang.hpp"
#include "freegroup/errors.hpp"
#include "freegroup/glue.hpp"
#include "freegroup/growth.hpp"
#include "freegroup/io.hpp"

namespace freegroup {

  namespace {

    // Bad combinations of otherwise well-formed flags; exit code 2.
    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct IoError : Error {
      using Error::Error;
    };

    struct SubgroupInput {
      std::vector<std::string> words;
      std::string              graph;  // path, "-" for stdin

      void add(CLI::App* app, std::string const& w_flag,
               std::string const& graph_flag) {
        app->add_option(w_flag, words, "generator word (repeatable)");
        app->add_option(graph_flag, graph, "graph JSON file, - for stdin");
      }
    };

    std::string slurp(std::string const& path, std::istream& in) {
      std::ostringstream buf;
      if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
      }
      std::ifstream file(path);
      if (!file) {
        throw IoError("cannot read " + path);
      }
      buf << file.rdbuf();
      return buf.str();
    }

    json read_json(std::string const& path, std::istream& in) {
      try {
        return json::parse(slurp(path, in));
      } catch (json::parse_error const& e) {
        throw GraphFormatError(std::string("invalid JSON: ") + e.what());
      }
    }

    CoreGraph load(SubgroupInput const& input, std::optional<int> d,
                   std::istream& in, char const* which) {
      if (!input.graph.empty()) {
        if (!input.words.empty()) {
          throw UsageError(std::string("give either words or a graph for ")
                           + which + ", not both");
        }
        CoreGraph g = graph_from_json(read_json(input.graph, in));
        if (d && *d != g.ambient_rank()) {
          throw RankError("graph has rank " + std::to_string(g.ambient_rank())
                          + " but -d is " + std::to_string(*d));
        }
        return g;
      }
      if (!d) {
        throw UsageError(std::string("-d is required with words for ")
                         + which);
      }
      if (input.words.empty()) {
        throw UsageError(std::string("no generators or graph given for ")
                         + which);
      }
      std::vector<Word> gens;
      for (auto const& w : input.words) {
        gens.push_back(parse_reduce(w, *d));
      }
      return fold(gens, *d);
    }

    json error_object(std::exception const& e) {
      json body = {{"message", e.what()}};
      if (auto const* s = dynamic_cast<SyntaxError const*>(&e)) {
        body["type"]     = "SyntaxError";
        body["position"] = s->position();
      } else if (dynamic_cast<RankError const*>(&e)) {
        body["type"] = "RankError";
      } else if (dynamic_cast<GraphFormatError const*>(&e)) {
        body["type"] = "GraphFormatError";
      } else if (dynamic_cast<NotAdmissible const*>(&e)) {
        body["type"] = "NotAdmissible";
      } else if (auto const* c = dynamic_cast<ConvergenceError const*>(&e)) {
        body["type"]     = "ConvergenceError";
        body["residual"] = c->residual();
      } else if (dynamic_cast<HypothesisError const*>(&e)) {
        body["type"] = "HypothesisError";
      } else if (auto const* x = dynamic_cast<SearchExhausted const*>(&e)) {
        body["type"] = "SearchExhausted";
        double const b = x->best_increment();
        body["best_increment"] = std::isfinite(b) ? json(b) : json(nullptr);
      } else if (dynamic_cast<NeighborhoodViolation const*>(&e)) {
        body["type"] = "NeighborhoodViolation";
      } else if (dynamic_cast<IoError const*>(&e)) {
        body["type"] = "IOError";
      } else {
        body["type"] = "Error";
      }
      return {{"error", std::move(body)}};
    }

  }  // namespace

  int run_cli(std::vector<std::string> const& args, std::istream& in,
              std::ostream& out, std::ostream& err) {
    CLI::App app{"Subgroups of free groups through Stallings core graphs",
                 "freegroup"};
    app.require_subcommand(1);

    std::optional<int> d;
    bool               pretty = false;
    double             tol    = 1e-10;
    auto add_common = [&](CLI::App* sub) {
      sub->add_option("-d", d, "ambient rank")->check(CLI::Range(1, 1 << 20));
      sub->add_flag("--pretty", pretty, "indent the JSON output");
      sub->add_option("--tol", tol, "solver tolerance")
          ->check(CLI::PositiveNumber);
    };

    SubgroupInput first;
    SubgroupInput second;
    std::string   connector;
    std::size_t   delta_rmax     = 60;
    std::size_t   count_rmax     = 20;
    bool          flag_confined  = false;
    bool          with_coornaert = false;
    double        eps            = 0.0;
    std::size_t   stages         = 1;
    std::size_t   radius_R       = 0;
    long long     m_cap          = StageOptions{}.m_cap;
    std::string   transcript;
    std::optional<std::size_t> depth;
    int           kp_n = 0;

    auto* fold_cmd = app.add_subcommand("fold", "fold generators into a core");
    add_common(fold_cmd);
    first.add(fold_cmd, "-w", "--graph");

    auto* delta_cmd = app.add_subcommand("delta", "critical exponent");
    add_common(delta_cmd);
    first.add(delta_cmd, "-w", "--graph");
    delta_cmd->add_option("--rmax", delta_rmax,
                          "radius for the counting estimate")
        ->capture_default_str();
    delta_cmd->add_flag("--flag-confined", flag_confined,
                        "report whether delta < ln(2d-1)/2");
    delta_cmd->add_flag("--coornaert", with_coornaert,
                        "estimate the multiplicative growth constant");

    auto* count_cmd = app.add_subcommand("count", "exact cycle counts");
    add_common(count_cmd);
    first.add(count_cmd, "-w", "--graph");
    count_cmd->add_option("--rmax", count_rmax, "largest length")
        ->capture_default_str();

    auto* glue_cmd = app.add_subcommand("glue", "glue two cores along g");
    auto* conn_cmd = app.add_subcommand("connector", "split a connector");
    for (auto* sub : {glue_cmd, conn_cmd}) {
      add_common(sub);
      first.add(sub, "-w", "--graph");
      second.add(sub, "--w2", "--graph2");
      sub->add_option("-g", connector, "connector word")->required();
    }

    auto* construct_cmd =
        app.add_subcommand("construct", "build a boomerang tower");
    add_common(construct_cmd);
    first.add(construct_cmd, "-w", "--graph");
    construct_cmd->add_option("--eps", eps, "exponent budget")
        ->required()
        ->check(CLI::PositiveNumber);
    construct_cmd->add_option("--stages", stages, "number of stages")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    construct_cmd->add_option("--radius", radius_R, "protected ball radius")
        ->default_val(0);
    construct_cmd->add_option("--m-cap", m_cap, "largest power tried")
        ->check(CLI::PositiveNumber);

    auto* certify_cmd =
        app.add_subcommand("certify", "replay and check a transcript");
    certify_cmd->add_flag("--pretty", pretty, "indent the JSON output");
    certify_cmd->add_option("--transcript", transcript,
                            "transcript JSON file, - for stdin")
        ->required();
    certify_cmd->add_option("--depth", depth, "check stages up to this one");

    auto* kp_cmd = app.add_subcommand("kwonpark", "root of 2t^n + t - 1");
    add_common(kp_cmd);
    kp_cmd->add_option("-n", kp_n, "degree")->required()->check(
        CLI::PositiveNumber);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    auto emit = [&](json const& doc) {
      out << (pretty ? doc.dump(2) : doc.dump()) << '\n';
    };

    try {
      json doc;
      if (fold_cmd->parsed()) {
        doc = graph_to_json(load(first, d, in, "the subgroup"));
      } else if (delta_cmd->parsed()) {
        CoreGraph const g = load(first, d, in, "the subgroup");
        ExponentOptions opts;
        opts.dp_radius      = delta_rmax;
        opts.with_coornaert = with_coornaert;
        auto const est      = critical_exponent(g, tol, opts);
        doc = {{"delta", est.delta},
               {"lambda", est.lambda},
               {"delta_dp", est.delta_dp},
               {"method_agreement", est.method_agreement},
               {"residual", est.residual},
               {"cyclic", est.cyclic},
               {"rmax", delta_rmax}};
        if (est.coornaert_k) {
          doc["coornaert_k"] = *est.coornaert_k;
        }
        if (flag_confined) {
          int const    r         = g.ambient_rank();
          double const threshold = std::log(2.0 * r - 1.0) / 2.0;
          doc["confined_threshold"] = threshold;
          doc["below_threshold"]    = est.delta < threshold;
        }
      } else if (count_cmd->parsed()) {
        CoreGraph const g = load(first, d, in, "the subgroup");
        auto const      c = cycle_counts(g, count_rmax);
        doc = {{"rmax", count_rmax}, {"counts", counts_to_json(c)}};
      } else if (glue_cmd->parsed() || conn_cmd->parsed()) {
        if (!first.graph.empty() && first.graph == second.graph
            && first.graph == "-") {
          throw UsageError("only one input can come from stdin");
        }
        CoreGraph const g1 = load(first, d, in, "the first subgroup");
        bool const      same = second.words.empty() && second.graph.empty();
        CoreGraph const g2 =
            same ? g1 : load(second, g1.ambient_rank(), in, "the second subgroup");
        Word const g     = parse_reduce(connector, g1.ambient_rank());
        auto const split = connector_decompose(g1, g2, g);
        if (!split) {
          throw NotAdmissible("g = " + to_string(g)
                              + " is not an admissible connector");
        }
        doc               = decomposition_to_json(*split);
        doc["admissible"] = true;
        if (glue_cmd->parsed()) {
          CoreGraph const glued = glue(g1, g2, *split);
          doc = {{"decomposition", std::move(doc)},
                 {"graph", graph_to_json(glued)},
                 {"subgroup_rank", rank(glued)}};
        }
      } else if (construct_cmd->parsed()) {
        CoreGraph const g = load(first, d, in, "the subgroup");
        TranscriptInfo  info;
        info.generators    = first.words;
        info.stages        = stages;
        info.options.tol   = tol;
        info.options.m_cap = m_cap;
        auto const state   = construct(g, eps, stages, radius_R, info.options);
        doc                = transcript_to_json(state, info);
      } else if (certify_cmd->parsed()) {
        json const t      = read_json(transcript, in);
        Replay     replay = replay_transcript(t);
        std::size_t const upto = depth.value_or(replay.state.stage);
        if (upto > replay.state.stage) {
          throw UsageError("--depth exceeds the number of recorded stages");
        }
        auto const report = verify_certificates(replay.state, upto);
        json checks = json::array();
        for (auto const& c : report.checks) {
          checks.push_back({{"stage", c.stage},
                            {"skipped", c.skipped},
                            {"ball_ok", c.ball_ok},
                            {"length_ok", c.length_ok},
                            {"budget_ok", c.budget_ok}});
        }
        bool final_ok = true;
        if (t.contains("final") && t["final"].contains("graph")) {
          final_ok = graph_from_json(t["final"]["graph"]) == replay.state.gamma;
        }
        bool const passed =
            report.all_passed() && replay.mismatches.empty() && final_ok;
        doc = {{"passed", passed},
               {"depth", upto},
               {"checks", std::move(checks)},
               {"mismatches", replay.mismatches},
               {"final_graph_matches", final_ok},
               {"delta", replay.state.delta}};
        if (!passed) {
          doc["error"] = {{"type", "CertificateFailure"},
                          {"message", "transcript does not certify"}};
          emit(doc);
          return 1;
        }
      } else if (kp_cmd->parsed()) {
        auto const r = kwon_park(kp_n, tol);
        double const n = kp_n;
        doc = {{"n", r.n},
               {"root", r.root},
               {"delta", r.delta},
               {"lower", std::exp(-1.0 / std::sqrt(n))},
               {"upper", std::exp(-1.0 / n)}};
      }
      emit(doc);
      return 0;
    } catch (UsageError const& e) {
      err << e.what() << '\n';
      return 2;
    } catch (std::exception const& e) {
      emit(error_object(e));
      return 1;
    }
  }

}  // namespace freegroup
