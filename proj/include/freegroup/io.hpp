#ifndef FREEGROUP_IO_HPP_
#define FREEGROUP_IO_HPP_

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "freegroup/boomerang.hpp"
#include "freegroup/core_graph.hpp"
#include "freegroup/glue.hpp"
#include "freegroup/growth.hpp"

namespace freegroup {

  using json = nlohmann::json;

  // {"rank": d, "vertices": n, "root": 0, "edges": [[src, label, dst], ...]}
  [[nodiscard]] json graph_to_json(CoreGraph const& g);

  // Accepts any labelled graph in the schema above; the result is folded,
  // trimmed and canonically numbered.  Throws GraphFormatError.
  [[nodiscard]] CoreGraph graph_from_json(json const& j);

  // Counts as decimal strings.
  [[nodiscard]] json counts_to_json(std::span<BigInt const> counts);
  [[nodiscard]] std::vector<BigInt> counts_from_json(json const& j);

  [[nodiscard]] json decomposition_to_json(ConnectorDecomposition const& s);

  [[nodiscard]] json record_to_json(StageRecord const& r);
  [[nodiscard]] StageRecord record_from_json(json const& j, int rank);

  // Everything needed to rerun or replay a construction.
  struct TranscriptInfo {
    std::vector<std::string> generators;  // empty when given as a graph
    std::size_t              stages = 0;
    StageOptions             options;
  };

  [[nodiscard]] json transcript_to_json(ConstructionState const& state,
                                        TranscriptInfo const&    info);

  struct Replay {
    ConstructionState        state;
    std::vector<std::string> mismatches;
  };

  // Rebuilds the tower from a transcript by redoing each recorded glue
  // (no search) and recomputing every exponent.  Disagreements with the
  // recorded values are listed in `mismatches`.  Throws GraphFormatError
  // on a malformed transcript.
  [[nodiscard]] Replay replay_transcript(json const& transcript);

}  // namespace freegroup

#endif  // FREEGROUP_IO_HPP_
