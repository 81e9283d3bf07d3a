#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <unordered_set>
#include <vector>

#include "irg/kernel.hpp"
#include "irg/rng.hpp"

namespace irg {

enum class AssignMode { Deterministic, Iid };

inline const char* to_string(AssignMode m) {
  return m == AssignMode::Deterministic ? "deterministic" : "iid";
}

// Vertex types for a graph of size n. Vertices are grouped into contiguous
// blocks per type: block layout is what makes the pair sampler and the
// union-find cache-friendly.
struct TypeAssignment {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> counts;      // per type index
  std::vector<std::uint32_t> vertex_type; // type index per vertex
  AssignMode mode = AssignMode::Deterministic;

  std::vector<std::uint64_t> block_offsets() const {
    std::vector<std::uint64_t> off(counts.size() + 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i) off[i + 1] = off[i] + counts[i];
    return off;
  }
};

namespace detail {

inline TypeAssignment assignment_from_counts(std::vector<std::uint64_t> counts,
                                             std::uint64_t n, AssignMode mode) {
  TypeAssignment a;
  a.n = n;
  a.counts = std::move(counts);
  a.mode = mode;
  a.vertex_type.reserve(n);
  for (std::size_t t = 0; t < a.counts.size(); ++t)
    a.vertex_type.insert(a.vertex_type.end(), a.counts[t], static_cast<std::uint32_t>(t));
  return a;
}

}  // namespace detail

// Deterministic mode: largest-remainder apportionment of n*mu, which keeps
// |counts(x)/n - mu(x)| <= 1/n per type. Iid mode: every vertex draws its
// type independently from mu.
inline TypeAssignment assign_types(const TypeSpace& space, std::uint64_t n, AssignMode mode,
                                   Rng& rng) {
  if (n < 1) throw ConfigError("assign_types requires n >= 1");
  const std::size_t d = space.size();
  std::vector<std::uint64_t> counts(d, 0);
  if (mode == AssignMode::Deterministic) {
    std::vector<double> frac(d);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const double quota = static_cast<double>(n) * space.weight(i);
      counts[i] = static_cast<std::uint64_t>(std::floor(quota));
      frac[i] = quota - std::floor(quota);
      assigned += counts[i];
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++counts[order[i % d]];
  } else {
    std::discrete_distribution<std::size_t> pick(space.weights().begin(),
                                                 space.weights().end());
    for (std::uint64_t v = 0; v < n; ++v) ++counts[pick(rng)];
  }
  return detail::assignment_from_counts(std::move(counts), n, mode);
}

// Empirical-measure closeness test: counts(x)/n - mu(x) <= eps e^{q T[1](x)} mu(x)
// for every type.
inline bool verify_assumption(const TypeAssignment& assignment, const Kernel& k,
                              double eps, double q) {
  const std::vector<double> t1 = t_one(k);
  for (std::size_t x = 0; x < k.dim(); ++x) {
    const double empirical =
        static_cast<double>(assignment.counts[x]) / static_cast<double>(assignment.n);
    const double bound = eps * std::exp(q * t1[x]) * k.space().weight(x);
    if (empirical - k.space().weight(x) > bound) return false;
  }
  return true;
}

struct GraphSample {
  TypeAssignment assignment;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v, unique
  std::uint64_t seed = 0;
};

namespace detail {

// draw `m` distinct unordered pairs from a block, uniformly; duplicates are
// rejected through the seen-set
template <typename PairGen>
inline void sample_distinct_pairs(std::uint64_t m, std::uint64_t n, PairGen&& gen,
                                  std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  while (seen.size() < m) {
    const auto [u, v] = gen();
    const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
    if (seen.insert(key).second) edges.emplace_back(u, v);
  }
}

}  // namespace detail

// G(n, kappa): for each unordered type pair the number of edges is
// Binomial(#pairs, min(kappa/n, 1)) and the edges are distinct uniform pairs,
// which is distribution-identical to independent Bernoulli trials per pair.
// Expected work O(n + m) for sparse kernels.
inline GraphSample generate_graph(const TypeAssignment& assignment, const Kernel& k,
                                  std::uint64_t seed) {
  if (assignment.counts.size() != k.dim())
    throw ConfigError("generate_graph: assignment/kernel dimension mismatch");
  GraphSample g;
  g.assignment = assignment;
  g.seed = seed;
  const std::uint64_t n = assignment.n;
  const std::vector<std::uint64_t> off = assignment.block_offsets();

  std::uint64_t block_id = 0;
  for (std::size_t a = 0; a < k.dim(); ++a) {
    for (std::size_t b = a; b < k.dim(); ++b, ++block_id) {
      const std::uint64_t ca = assignment.counts[a], cb = assignment.counts[b];
      if (ca == 0 || cb == 0) continue;
      const std::uint64_t pairs =
          (a == b) ? ca * (ca - 1) / 2 : ca * cb;  // 64-bit safe for n <= ~10^9
      if (pairs == 0) continue;
      const double p = std::min(k.at(a, b) / static_cast<double>(n), 1.0);
      if (p <= 0.0) continue;

      Rng rng = make_stream(seed, block_id);
      if (p >= 1.0) {
        // complete block; only reachable for tiny n
        if (a == b) {
          for (std::uint64_t i = 0; i < ca; ++i)
            for (std::uint64_t j = i + 1; j < ca; ++j)
              g.edges.emplace_back(off[a] + i, off[a] + j);
        } else {
          for (std::uint64_t i = 0; i < ca; ++i)
            for (std::uint64_t j = 0; j < cb; ++j)
              g.edges.emplace_back(off[a] + i, off[b] + j);
        }
        continue;
      }
      std::binomial_distribution<std::uint64_t> bin(pairs, p);
      const std::uint64_t m = bin(rng);
      if (m == 0) continue;
      if (a == b) {
        std::uniform_int_distribution<std::uint64_t> pick(0, ca - 1);
        detail::sample_distinct_pairs(
            m, n,
            [&]() {
              for (;;) {
                const std::uint64_t i = pick(rng), j = pick(rng);
                if (i != j)
                  return std::pair<std::uint32_t, std::uint32_t>(
                      static_cast<std::uint32_t>(off[a] + std::min(i, j)),
                      static_cast<std::uint32_t>(off[a] + std::max(i, j)));
              }
            },
            g.edges);
      } else {
        std::uniform_int_distribution<std::uint64_t> pa(0, ca - 1), pb(0, cb - 1);
        detail::sample_distinct_pairs(
            m, n,
            [&]() {
              return std::pair<std::uint32_t, std::uint32_t>(
                  static_cast<std::uint32_t>(off[a] + pa(rng)),
                  static_cast<std::uint32_t>(off[b] + pb(rng)));
            },
            g.edges);
      }
    }
  }
  return g;
}

// Union-find with path compression and union by size.
class UnionFind {
public:
  explicit UnionFind(std::uint64_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint64_t{0});
  }

  std::uint64_t find(std::uint64_t x) {
    std::uint64_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint64_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::uint64_t component_size(std::uint64_t x) { return size_[find(x)]; }

private:
  std::vector<std::uint64_t> parent_, size_;
};

struct ComponentStats {
  std::uint64_t c1 = 0;  // largest component
  std::uint64_t c2 = 0;  // second largest
  std::map<std::uint64_t, std::uint64_t> histogram;  // size -> multiplicity
  std::vector<std::uint32_t> representative;         // vertex -> component id
};

inline ComponentStats largest_component(const GraphSample& g) {
  const std::uint64_t n = g.assignment.n;
  UnionFind uf(n);
  for (const auto& [u, v] : g.edges) uf.unite(u, v);
  ComponentStats stats;
  stats.representative.resize(n);
  for (std::uint64_t v = 0; v < n; ++v)
    stats.representative[v] = static_cast<std::uint32_t>(uf.find(v));
  for (std::uint64_t v = 0; v < n; ++v)
    if (stats.representative[v] == v) {
      const std::uint64_t s = uf.component_size(v);
      ++stats.histogram[s];
      if (s > stats.c1) {
        stats.c2 = stats.c1;
        stats.c1 = s;
      } else if (s > stats.c2) {
        stats.c2 = s;
      }
    }
  return stats;
}

struct ExplorationTrace {
  std::vector<std::uint32_t> order;  // vertices in saturation order, root first
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_edges;  // (parent, child)
};

// Breadth-first component exploration: reveal all neighbours of the current
// vertex, mark it saturated, continue through revealed non-saturated
// vertices. The trace covers exactly the root's component.
inline ExplorationTrace explore_component(const GraphSample& g, std::uint32_t root) {
  const std::uint64_t n = g.assignment.n;
  if (root >= n) throw ConfigError("explore_component: root out of range");

  // CSR adjacency
  std::vector<std::uint64_t> deg(n + 1, 0);
  for (const auto& [u, v] : g.edges) {
    ++deg[u + 1];
    ++deg[v + 1];
  }
  for (std::uint64_t i = 0; i < n; ++i) deg[i + 1] += deg[i];
  std::vector<std::uint32_t> adj(g.edges.size() * 2);
  std::vector<std::uint64_t> cursor(deg.begin(), deg.end() - 1);
  for (const auto& [u, v] : g.edges) {
    adj[cursor[u]++] = v;
    adj[cursor[v]++] = u;
  }

  ExplorationTrace trace;
  std::vector<bool> revealed(n, false);
  std::queue<std::uint32_t> pending;
  revealed[root] = true;
  pending.push(root);
  while (!pending.empty()) {
    const std::uint32_t v = pending.front();
    pending.pop();
    trace.order.push_back(v);  // v is now saturated
    for (std::uint64_t e = deg[v]; e < deg[v + 1]; ++e) {
      const std::uint32_t w = adj[e];
      if (!revealed[w]) {
        revealed[w] = true;
        trace.tree_edges.emplace_back(v, w);
        pending.push(w);
      }
    }
  }
  return trace;
}

// Component sizes of sampled roots; size-biased by construction since large
// components are hit proportionally to their size.
inline std::map<std::uint64_t, std::uint64_t> component_size_spectrum(
    const GraphSample& g, const std::vector<std::uint32_t>& roots) {
  if (roots.empty()) throw ConfigError("component_size_spectrum: no roots");
  UnionFind uf(g.assignment.n);
  for (const auto& [u, v] : g.edges) uf.unite(u, v);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint32_t r : roots) ++hist[uf.component_size(r)];
  return hist;
}

// Debug dump: header "n m", then one "u v" per edge.
inline void write_edge_list(const GraphSample& g, std::ostream& os) {
  os << g.assignment.n << ' ' << g.edges.size() << '\n';
  for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
}

}  // namespace irg
