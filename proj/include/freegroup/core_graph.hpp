#ifndef FREEGROUP_CORE_GRAPH_HPP_
#define FREEGROUP_CORE_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "freegroup/word.hpp"

namespace freegroup {

  using Vertex = std::int32_t;

  inline constexpr Vertex kNoVertex = -1;

  // A directed edge src --a_label--> dst, with label in [1, rank].
  struct Edge {
    Vertex src;
    int    label;
    Vertex dst;

    bool operator==(Edge const&) const = default;
    auto operator<=>(Edge const&) const = default;
  };

  namespace detail {
    class Folder;
  }

  // The Stallings core graph of a finitely generated subgroup of F_d.
  //
  // A CoreGraph is folded (at most one edge with a given label leaves, and
  // at most one enters, each vertex), connected, and every vertex other than
  // the root has valency at least 2.  Vertices are numbered by breadth-first
  // search from the root, exploring a1, a1^-1, a2, a2^-1, ... in that order,
  // so the root is always 0 and two cores of the same subgroup compare equal
  // member by member.
  //
  // The Schreier graph of the subgroup is the core with an infinite tree
  // hanging off each missing edge; it is never stored.  See SchreierLocus.
  class CoreGraph {
   public:
    // The core of the trivial subgroup: one vertex, no edges.
    explicit CoreGraph(int rank);

    [[nodiscard]] int ambient_rank() const noexcept {
      return _rank;
    }
    [[nodiscard]] std::size_t vertex_count() const noexcept {
      return _table.size() / width();
    }
    [[nodiscard]] std::size_t edge_count() const noexcept {
      return _edge_count;
    }
    [[nodiscard]] static constexpr Vertex root() noexcept {
      return 0;
    }

    // The vertex reached from v along x, or kNoVertex if that step leaves
    // the core.
    [[nodiscard]] Vertex target(Vertex v, Letter x) const {
      return _table[slot(v, x.ordinal())];
    }
    [[nodiscard]] Vertex target(Vertex v, int ordinal) const {
      return _table[slot(v, ordinal)];
    }

    // Number of edge ends at v; a loop counts twice.
    [[nodiscard]] int valency(Vertex v) const;

    // All edges, sorted by (src, label).
    [[nodiscard]] std::vector<Edge> edges() const;

    bool operator==(CoreGraph const&) const = default;

   private:
    friend class detail::Folder;

    CoreGraph(int rank, std::vector<Vertex> table, std::size_t edge_count)
        : _rank(rank), _edge_count(edge_count), _table(std::move(table)) {}

    [[nodiscard]] std::size_t width() const noexcept {
      return 2 * static_cast<std::size_t>(_rank);
    }
    [[nodiscard]] std::size_t slot(Vertex v, int ordinal) const noexcept {
      return static_cast<std::size_t>(v) * width()
             + static_cast<std::size_t>(ordinal);
    }

    int                 _rank;
    std::size_t         _edge_count;
    std::vector<Vertex> _table;  // vertex_count() rows of 2 * rank ordinals
  };

  namespace detail {

    // Union-find folding of a labelled graph under construction.  Edges
    // added through add_edge() are folded eagerly; finish() trims and
    // canonically renumbers the component of the root.
    class Folder {
     public:
      explicit Folder(int rank);

      Vertex add_vertex();
      void   add_edge(Vertex u, Letter x, Vertex v);

      // Adds a path reading w from `from`, ending at `to` (a fresh vertex
      // when `to` is kNoVertex), and returns the end vertex.
      Vertex add_path(Vertex from, Word const& w, Vertex to = kNoVertex);

      // Number of vertex identifications performed so far.
      [[nodiscard]] std::size_t merges() const noexcept {
        return _merges;
      }

      [[nodiscard]] CoreGraph finish(Vertex root);

     private:
      Vertex& slot(Vertex v, int ordinal) {
        return _table[static_cast<std::size_t>(v) * _width
                      + static_cast<std::size_t>(ordinal)];
      }
      Vertex find(Vertex v);
      void   define(Vertex u, int ordinal, Vertex w);
      void   merge(Vertex a, Vertex b);
      void   drain();

      int                                   _rank;
      std::size_t                           _width;
      std::vector<Vertex>                   _parent;
      std::vector<Vertex>                   _table;
      std::vector<std::pair<Vertex, Vertex>> _pending;
      std::size_t                           _merges = 0;
    };

  }  // namespace detail

  // Core of the subgroup generated by `generators`.  Throws RankError when a
  // generator uses an index above `rank`.
  [[nodiscard]] CoreGraph fold(std::span<Word const> generators, int rank);

  // Builds a core from an arbitrary labelled graph (folding, dropping parts
  // not connected to the root and trimming hanging trees).  Throws
  // GraphFormatError on out-of-range ids or labels.
  [[nodiscard]] CoreGraph from_edges(int rank, std::size_t vertex_count,
                                     Vertex root, std::span<Edge const> edges);

  [[nodiscard]] bool membership(Word const& w, CoreGraph const& g);

  // Free rank of the subgroup: edges - vertices + 1.
  [[nodiscard]] std::size_t rank(CoreGraph const& g);

  // A free basis read off the canonical BFS spanning tree, one element per
  // non-tree edge (in edge order).
  [[nodiscard]] std::vector<Word> free_basis(CoreGraph const& g);

  // Largest distance from the root to a core vertex.
  [[nodiscard]] std::size_t radius(CoreGraph const& g);

  // The word labelling the BFS tree path from the root to v.
  [[nodiscard]] Word tree_path(CoreGraph const& g, Vertex v);

  // True when every vertex has valency 2 * rank (finite index).
  [[nodiscard]] bool is_finite_index(CoreGraph const& g);

  // Re-checks every structural invariant of a CoreGraph: symmetric edge
  // table, connectivity, minimal valency, canonical numbering.
  [[nodiscard]] bool satisfies_invariants(CoreGraph const& g);

  ////////////////////////////////////////////////////////////////////////
  // Schreier graph loci
  ////////////////////////////////////////////////////////////////////////

  // A vertex of the Schreier graph: a core vertex together with a reduced
  // path into the tree hanging there.  The excursion is empty iff the
  // locus lies in the core; otherwise its first letter is not readable
  // from `base` inside the core.
  struct SchreierLocus {
    Vertex           base = CoreGraph::root();
    std::vector<int> excursion;  // letter ordinals

    [[nodiscard]] bool in_core() const noexcept {
      return excursion.empty();
    }

    bool operator==(SchreierLocus const&) const = default;
    auto operator<=>(SchreierLocus const&) const = default;
  };

  [[nodiscard]] SchreierLocus step(CoreGraph const& g, SchreierLocus locus,
                                   int ordinal);

  // The locus reached from `start` by reading w.
  [[nodiscard]] SchreierLocus trace(Word const& w, CoreGraph const& g,
                                    SchreierLocus start = {});

  // Whether the radius-R balls of the Schreier graphs around u (in g) and v
  // (in h) are isomorphic as rooted, labelled, directed graphs.  Labelled
  // Schreier graphs admit at most one root-preserving isomorphism, so this
  // is a paired breadth-first search; hanging trees are synthesised lazily.
  [[nodiscard]] bool balls_isomorphic(CoreGraph const&     g,
                                      SchreierLocus const& u,
                                      CoreGraph const&     h,
                                      SchreierLocus const& v,
                                      std::size_t          R);

  [[nodiscard]] inline bool balls_isomorphic(CoreGraph const&     g,
                                             SchreierLocus const& u,
                                             SchreierLocus const& v,
                                             std::size_t          R) {
    return balls_isomorphic(g, u, g, v, R);
  }

}  // namespace freegroup

#endif  // FREEGROUP_CORE_GRAPH_HPP_
