#include "freegroup/core_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "freegroup/errors.hpp"

namespace freegroup {

  ////////////////////////////////////////////////////////////////////////
  // CoreGraph
  ////////////////////////////////////////////////////////////////////////

  CoreGraph::CoreGraph(int rank)
      : _rank(rank),
        _edge_count(0),
        _table(2 * static_cast<std::size_t>(rank), kNoVertex) {
    if (rank < 1) {
      throw RankError("ambient rank must be at least 1");
    }
  }

  int CoreGraph::valency(Vertex v) const {
    int result = 0;
    for (int o = 0; o < 2 * _rank; ++o) {
      result += target(v, o) != kNoVertex ? 1 : 0;
    }
    return result;
  }

  std::vector<Edge> CoreGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(_edge_count);
    auto const n = static_cast<Vertex>(vertex_count());
    for (Vertex v = 0; v < n; ++v) {
      for (int i = 1; i <= _rank; ++i) {
        Vertex w = target(v, Letter(i, 1));
        if (w != kNoVertex) {
          out.push_back({v, i, w});
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Folder
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    Folder::Folder(int rank)
        : _rank(rank), _width(2 * static_cast<std::size_t>(rank)) {
      if (rank < 1) {
        throw RankError("ambient rank must be at least 1");
      }
    }

    Vertex Folder::add_vertex() {
      auto v = static_cast<Vertex>(_parent.size());
      _parent.push_back(v);
      _table.resize(_table.size() + _width, kNoVertex);
      return v;
    }

    Vertex Folder::find(Vertex v) {
      while (_parent[v] != v) {
        _parent[v] = _parent[_parent[v]];
        v          = _parent[v];
      }
      return v;
    }

    void Folder::define(Vertex u, int o, Vertex w) {
      u         = find(u);
      w         = find(w);
      Vertex& t = slot(u, o);
      if (t == kNoVertex) {
        t = w;
      } else if (Vertex tt = find(t); tt != w) {
        _pending.emplace_back(tt, w);
      }
      Vertex& s = slot(w, o ^ 1);
      if (s == kNoVertex) {
        s = u;
      } else if (Vertex ss = find(s); ss != u) {
        _pending.emplace_back(ss, u);
      }
    }

    void Folder::merge(Vertex a, Vertex b) {
      a = find(a);
      b = find(b);
      if (a == b) {
        return;
      }
      if (b < a) {
        std::swap(a, b);
      }
      _parent[b] = a;
      ++_merges;
      for (int o = 0; o < static_cast<int>(_width); ++o) {
        Vertex t = slot(b, o);
        if (t != kNoVertex) {
          slot(b, o) = kNoVertex;
          define(a, o, t);
        }
      }
    }

    void Folder::drain() {
      while (!_pending.empty()) {
        auto [x, y] = _pending.back();
        _pending.pop_back();
        merge(x, y);
      }
    }

    void Folder::add_edge(Vertex u, Letter x, Vertex v) {
      if (x.index() > _rank) {
        throw RankError("letter " + to_string(x) + " exceeds rank "
                        + std::to_string(_rank));
      }
      define(u, x.ordinal(), v);
      drain();
    }

    Vertex Folder::add_path(Vertex from, Word const& w, Vertex to) {
      if (w.empty()) {
        if (to != kNoVertex) {
          merge(from, to);
          drain();
          return find(to);
        }
        return from;
      }
      Vertex cur = from;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Vertex next = add_vertex();
        add_edge(cur, w[i], next);
        cur = next;
      }
      Vertex last = (to == kNoVertex) ? add_vertex() : to;
      add_edge(cur, w.back(), last);
      return find(last);
    }

    CoreGraph Folder::finish(Vertex root) {
      drain();
      root                  = find(root);
      auto const n          = _parent.size();
      int const  width      = static_cast<int>(_width);
      auto       target_rep = [&](Vertex v, int o) {
        Vertex t = slot(v, o);
        return t == kNoVertex ? kNoVertex : find(t);
      };

      // component of the root, with resolved targets
      std::vector<char> alive(n, 0);
      std::vector<int>  degree(n, 0);
      std::deque<Vertex> queue{root};
      alive[root] = 1;
      while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (int o = 0; o < width; ++o) {
          Vertex t = target_rep(v, o);
          slot(v, o) = t;
          if (t == kNoVertex) {
            continue;
          }
          ++degree[v];
          if (!alive[t]) {
            alive[t] = 1;
            queue.push_back(t);
          }
        }
      }

      // trim hanging trees, never the root
      std::vector<Vertex> leaves;
      for (std::size_t v = 0; v < n; ++v) {
        if (alive[v] && static_cast<Vertex>(v) != root && degree[v] <= 1) {
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
          Vertex t = slot(v, o);
          if (t == kNoVertex) {
            continue;
          }
          slot(v, o) = kNoVertex;
          if (t != v) {
            slot(t, o ^ 1) = kNoVertex;
            if (--degree[t] <= 1 && t != root && alive[t]) {
              leaves.push_back(t);
            }
          }
        }
      }

      // canonical renumbering
      std::vector<Vertex> number(n, kNoVertex);
      std::vector<Vertex> order{root};
      number[root] = 0;
      for (std::size_t k = 0; k < order.size(); ++k) {
        for (int o = 0; o < width; ++o) {
          Vertex t = slot(order[k], o);
          if (t != kNoVertex && number[t] == kNoVertex) {
            number[t] = static_cast<Vertex>(order.size());
            order.push_back(t);
          }
        }
      }
      std::vector<Vertex> table(order.size() * _width, kNoVertex);
      std::size_t         ends = 0;
      for (std::size_t k = 0; k < order.size(); ++k) {
        for (int o = 0; o < width; ++o) {
          Vertex t = slot(order[k], o);
          if (t != kNoVertex) {
            table[k * _width + static_cast<std::size_t>(o)] = number[t];
            ++ends;
          }
        }
      }
      return CoreGraph(_rank, std::move(table), ends / 2);
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  CoreGraph fold(std::span<Word const> generators, int rank) {
    detail::Folder folder(rank);
    Vertex const   root = folder.add_vertex();
    for (auto const& w : generators) {
      if (w.max_index() > rank) {
        throw RankError("generator " + to_string(w) + " exceeds rank "
                        + std::to_string(rank));
      }
      if (!w.empty()) {
        folder.add_path(root, w, root);
      }
    }
    return folder.finish(root);
  }

  CoreGraph from_edges(int rank, std::size_t vertex_count, Vertex root,
                       std::span<Edge const> edges) {
    if (rank < 1) {
      throw GraphFormatError("rank must be at least 1");
    }
    if (vertex_count == 0 || root < 0
        || static_cast<std::size_t>(root) >= vertex_count) {
      throw GraphFormatError("root out of range");
    }
    detail::Folder folder(rank);
    for (std::size_t v = 0; v < vertex_count; ++v) {
      folder.add_vertex();
    }
    for (auto const& e : edges) {
      auto in_range = [&](Vertex v) {
        return v >= 0 && static_cast<std::size_t>(v) < vertex_count;
      };
      if (!in_range(e.src) || !in_range(e.dst)) {
        throw GraphFormatError("edge endpoint out of range");
      }
      if (e.label < 1 || e.label > rank) {
        throw GraphFormatError("edge label " + std::to_string(e.label)
                               + " out of range");
      }
      folder.add_edge(e.src, Letter(e.label, 1), e.dst);
    }
    return folder.finish(root);
  }

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  bool membership(Word const& w, CoreGraph const& g) {
    if (w.max_index() > g.ambient_rank()) {
      return false;
    }
    Vertex v = CoreGraph::root();
    for (Letter x : w) {
      v = g.target(v, x);
      if (v == kNoVertex) {
        return false;
      }
    }
    return v == CoreGraph::root();
  }

  std::size_t rank(CoreGraph const& g) {
    return g.edge_count() + 1 - g.vertex_count();
  }

  namespace {
    // BFS parents: (parent vertex, ordinal used to reach the child)
    std::vector<std::pair<Vertex, int>> bfs_tree(CoreGraph const& g) {
      auto const n = g.vertex_count();
      std::vector<std::pair<Vertex, int>> parent(n, {kNoVertex, -1});
      std::vector<char>                  seen(n, 0);
      std::vector<Vertex>                order{CoreGraph::root()};
      seen[0] = 1;
      for (std::size_t k = 0; k < order.size(); ++k) {
        for (int o = 0; o < 2 * g.ambient_rank(); ++o) {
          Vertex t = g.target(order[k], o);
          if (t != kNoVertex && !seen[t]) {
            seen[t]   = 1;
            parent[t] = {order[k], o};
            order.push_back(t);
          }
        }
      }
      return parent;
    }

    Word path_from(std::vector<std::pair<Vertex, int>> const& parent,
                   Vertex                                      v) {
      std::vector<Letter> rev;
      while (parent[v].first != kNoVertex) {
        rev.push_back(Letter::from_ordinal(parent[v].second));
        v = parent[v].first;
      }
      std::reverse(rev.begin(), rev.end());
      return Word(std::move(rev));
    }
  }  // namespace

  Word tree_path(CoreGraph const& g, Vertex v) {
    return path_from(bfs_tree(g), v);
  }

  std::vector<Word> free_basis(CoreGraph const& g) {
    auto const        parent = bfs_tree(g);
    std::vector<Word> basis;
    for (auto const& e : g.edges()) {
      int const o = Letter(e.label, 1).ordinal();
      bool tree_edge = (parent[e.dst].first == e.src && parent[e.dst].second == o)
                       || (parent[e.src].first == e.dst
                           && parent[e.src].second == (o ^ 1));
      if (tree_edge) {
        continue;
      }
      basis.push_back(concat(concat(path_from(parent, e.src),
                                    Word{Letter(e.label, 1)}),
                             inverse(path_from(parent, e.dst))));
    }
    return basis;
  }

  std::size_t radius(CoreGraph const& g) {
    auto const               n = g.vertex_count();
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<Vertex>      order{CoreGraph::root()};
    dist[0]                = 0;
    std::size_t result     = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      Vertex v = order[k];
      result   = std::max(result, dist[v]);
      for (int o = 0; o < 2 * g.ambient_rank(); ++o) {
        Vertex t = g.target(v, o);
        if (t != kNoVertex && dist[t] == SIZE_MAX) {
          dist[t] = dist[v] + 1;
          order.push_back(t);
        }
      }
    }
    return result;
  }

  bool is_finite_index(CoreGraph const& g) {
    auto const n = static_cast<Vertex>(g.vertex_count());
    for (Vertex v = 0; v < n; ++v) {
      if (g.valency(v) != 2 * g.ambient_rank()) {
        return false;
      }
    }
    return true;
  }

  bool satisfies_invariants(CoreGraph const& g) {
    auto const n     = static_cast<Vertex>(g.vertex_count());
    int const  width = 2 * g.ambient_rank();
    std::size_t ends = 0;
    for (Vertex v = 0; v < n; ++v) {
      for (int o = 0; o < width; ++o) {
        Vertex t = g.target(v, o);
        if (t == kNoVertex) {
          continue;
        }
        if (t < 0 || t >= n || g.target(t, o ^ 1) != v) {
          return false;
        }
        ++ends;
      }
      if (v != CoreGraph::root() && g.valency(v) < 2) {
        return false;
      }
    }
    if (ends != 2 * g.edge_count()) {
      return false;
    }
    // canonical BFS numbering: the k-th discovered vertex has id k
    Vertex next = 1;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[0] = 1;
    for (Vertex v = 0; v < n; ++v) {
      if (!seen[v]) {
        return false;
      }
      for (int o = 0; o < width; ++o) {
        Vertex t = g.target(v, o);
        if (t != kNoVertex && !seen[t]) {
          if (t != next) {
            return false;
          }
          seen[t] = 1;
          ++next;
        }
      }
    }
    return next == n;
  }

  ////////////////////////////////////////////////////////////////////////
  // Schreier loci
  ////////////////////////////////////////////////////////////////////////

  SchreierLocus step(CoreGraph const& g, SchreierLocus locus, int ordinal) {
    if (!locus.excursion.empty()) {
      if (locus.excursion.back() == (ordinal ^ 1)) {
        locus.excursion.pop_back();
      } else {
        locus.excursion.push_back(ordinal);
      }
      return locus;
    }
    Vertex t = g.target(locus.base, ordinal);
    if (t != kNoVertex) {
      locus.base = t;
    } else {
      locus.excursion.push_back(ordinal);
    }
    return locus;
  }

  SchreierLocus trace(Word const& w, CoreGraph const& g, SchreierLocus start) {
    for (Letter x : w) {
      start = step(g, std::move(start), x.ordinal());
    }
    return start;
  }

  bool balls_isomorphic(CoreGraph const&     g,
                        SchreierLocus const& u,
                        CoreGraph const&     h,
                        SchreierLocus const& v,
                        std::size_t          R) {
    if (g.ambient_rank() != h.ambient_rank()) {
      return false;
    }
    int const width = 2 * g.ambient_rank();

    std::map<SchreierLocus, SchreierLocus> fwd;
    std::map<SchreierLocus, SchreierLocus> bwd;
    struct Item {
      SchreierLocus x;
      SchreierLocus y;
      std::size_t   depth;
      bool          outward;  // both reached by stepping away from the core
    };
    std::deque<Item> queue;
    fwd.emplace(u, v);
    bwd.emplace(v, u);
    queue.push_back({u, v, 0, false});

    while (!queue.empty()) {
      Item item = std::move(queue.front());
      queue.pop_front();
      // Both sides just stepped deeper into a hanging tree along the same
      // label, so everything beyond is the same outward tree and is reached
      // only through this pair.
      if (item.outward) {
        continue;
      }
      for (int o = 0; o < width; ++o) {
        SchreierLocus x2 = step(g, item.x, o);
        SchreierLocus y2 = step(h, item.y, o);
        auto          fx = fwd.find(x2);
        auto          by = bwd.find(y2);
        if (fx == fwd.end() && by == bwd.end()) {
          if (item.depth + 1 <= R) {
            fwd.emplace(x2, y2);
            bwd.emplace(y2, x2);
            bool const out = x2.excursion.size() > item.x.excursion.size()
                             && y2.excursion.size() > item.y.excursion.size();
            queue.push_back(
                {std::move(x2), std::move(y2), item.depth + 1, out});
          }
        } else if (fx == fwd.end() || by == bwd.end() || fx->second != y2) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace freegroup
