#ifndef FREEGROUP_GLUE_HPP_
#define FREEGROUP_GLUE_HPP_

#include <cstddef>
#include <optional>

#include "freegroup/core_graph.hpp"
#include "freegroup/word.hpp"

namespace freegroup {

  // Split of a connector g = (initial)(join)(terminal).  The initial
  // segment is the longest prefix of g readable from the root of the first
  // core, ending at u1; the terminal segment is the longest suffix s with
  // s^-1 readable from the root of the second core, ending at u2.
  // J1 + J + J2 == |g| and J >= 1.
  struct ConnectorDecomposition {
    std::size_t J1;
    std::size_t J;
    std::size_t J2;
    Vertex      u1;
    Vertex      u2;
    Word        join_word;

    bool operator==(ConnectorDecomposition const&) const = default;
  };

  // nullopt when g is not an admissible connector (J1 + J2 >= |g|, which
  // includes the empty word).  Throws RankError on rank mismatch.
  [[nodiscard]] std::optional<ConnectorDecomposition>
  connector_decompose(CoreGraph const& g1, CoreGraph const& g2, Word const& g);

  // g1 and g2 joined by a fresh path labelled by the join segment from u1
  // to u2, rooted at the root of g1, with hanging trees trimmed.  This is
  // the core of <G(g1), g G(g2) g^-1>, a free product.  Throws NotAdmissible.
  [[nodiscard]] CoreGraph glue(CoreGraph const& g1, CoreGraph const& g2,
                               Word const& g);

  [[nodiscard]] CoreGraph glue(CoreGraph const& g1, CoreGraph const& g2,
                               ConnectorDecomposition const& split);

}  // namespace freegroup

#endif  // FREEGROUP_GLUE_HPP_
