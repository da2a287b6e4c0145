#include "freegroup/glue.hpp"

#include <stdexcept>

#include "freegroup/errors.hpp"

namespace freegroup {

  std::optional<ConnectorDecomposition>
  connector_decompose(CoreGraph const& g1, CoreGraph const& g2, Word const& g) {
    if (g1.ambient_rank() != g2.ambient_rank()) {
      throw RankError("cores have different ambient ranks");
    }
    if (g.max_index() > g1.ambient_rank()) {
      throw RankError("connector " + to_string(g) + " exceeds rank "
                      + std::to_string(g1.ambient_rank()));
    }
    std::size_t const k = g.size();

    std::size_t J1 = 0;
    Vertex      u1 = CoreGraph::root();
    while (J1 < k) {
      Vertex t = g1.target(u1, g[J1]);
      if (t == kNoVertex) {
        break;
      }
      u1 = t;
      ++J1;
    }

    std::size_t J2 = 0;
    Vertex      u2 = CoreGraph::root();
    while (J2 < k) {
      Vertex t = g2.target(u2, g[k - 1 - J2].inverse());
      if (t == kNoVertex) {
        break;
      }
      u2 = t;
      ++J2;
    }

    if (J1 + J2 >= k) {
      return std::nullopt;
    }
    std::size_t const J = k - J1 - J2;
    return ConnectorDecomposition{J1, J, J2, u1, u2, g.subword(J1, J)};
  }

  CoreGraph glue(CoreGraph const& g1, CoreGraph const& g2,
                 ConnectorDecomposition const& split) {
    if (g1.ambient_rank() != g2.ambient_rank()) {
      throw RankError("cores have different ambient ranks");
    }
    if (split.J == 0 || split.join_word.size() != split.J) {
      throw NotAdmissible("join segment must be nonempty");
    }
    detail::Folder folder(g1.ambient_rank());
    auto const     n1 = static_cast<Vertex>(g1.vertex_count());
    auto const     n2 = static_cast<Vertex>(g2.vertex_count());
    for (Vertex v = 0; v < n1 + n2; ++v) {
      folder.add_vertex();
    }
    for (auto const& e : g1.edges()) {
      folder.add_edge(e.src, Letter(e.label, 1), e.dst);
    }
    for (auto const& e : g2.edges()) {
      folder.add_edge(n1 + e.src, Letter(e.label, 1), n1 + e.dst);
    }
    folder.add_path(split.u1, split.join_word, n1 + split.u2);
    // maximality of J1 and J2 leaves nothing to fold at u1 or u2
    if (folder.merges() != 0) {
      throw std::logic_error("glued graph was not folded; "
                             "connector decomposition is inconsistent");
    }
    return folder.finish(CoreGraph::root());
  }

  CoreGraph glue(CoreGraph const& g1, CoreGraph const& g2, Word const& g) {
    auto split = connector_decompose(g1, g2, g);
    if (!split) {
      throw NotAdmissible(to_string(g) + " is not an admissible connector");
    }
    return glue(g1, g2, *split);
  }

}  // namespace freegroup
