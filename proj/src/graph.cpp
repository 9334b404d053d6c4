#include "gts/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gts/matching.hpp"

namespace gts {

GraphKind graph_kind_from_string(const std::string& name) {
  if (name == "kmst" || name == "mst") return GraphKind::kMst;
  if (name == "kmdp" || name == "mdp") return GraphKind::kMdp;
  if (name == "knn" || name == "nn") return GraphKind::kNn;
  throw ParseError("unknown graph kind: " + name);
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kMst: return "kmst";
    case GraphKind::kMdp: return "kmdp";
    case GraphKind::kNn: return "knn";
  }
  throw InternalError("unhandled graph kind");
}

namespace {

struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

// Certification size limit for the lexicographic tie-break refinement on
// matchings: beyond this many nodes the refinement's subproblem solves get
// too expensive and the solver's deterministic optimum is returned as is.
constexpr int kLexCertifyLimit = 64;

double matching_weight(const std::vector<int>& mates, const Matrix& cost) {
  double w = 0.0;
  for (int u = 0; u < static_cast<int>(mates.size()); ++u) {
    const int v = mates[static_cast<std::size_t>(u)];
    if (v > u) w += cost(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return w;
}

// Rewrites `mates` into the optimal matching whose sorted edge list is
// lexicographically smallest, by fixing pairs stage by stage: the smallest
// unfixed node is paired with the smallest partner that still admits an
// optimal completion. A two-swap test catches most ties cheaply; otherwise
// the completion is certified by solving the reduced problem.
void lex_refine(int m, const Matrix& cost, const std::vector<std::uint8_t>& allowed,
                std::vector<int>& mates) {
  const auto allow = [&](int u, int v) {
    return allowed[static_cast<std::size_t>(u) * static_cast<std::size_t>(m) +
                   static_cast<std::size_t>(v)] != 0;
  };
  const double target = matching_weight(mates, cost);
  const double tol = 1e-9 * (1.0 + std::abs(target));
  double current_total = target;
  double fixed_weight = 0.0;

  std::vector<int> rem(static_cast<std::size_t>(m));
  std::iota(rem.begin(), rem.end(), 0);

  while (!rem.empty()) {
    const int u = rem.front();
    int chosen = -1;
    for (std::size_t vi = 1; vi < rem.size() && chosen == -1; ++vi) {
      const int v = rem[vi];
      if (!allow(u, v)) continue;
      if (mates[static_cast<std::size_t>(u)] == v) {
        chosen = v;
        break;
      }
      const int mu = mates[static_cast<std::size_t>(u)];
      const int mv = mates[static_cast<std::size_t>(v)];
      const auto c = [&](int a, int b) {
        return cost(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      };
      if (allow(mu, mv)) {
        const double delta = c(u, v) + c(mu, mv) - c(u, mu) - c(v, mv);
        if (current_total + delta <= target + tol) {
          mates[static_cast<std::size_t>(u)] = v;
          mates[static_cast<std::size_t>(v)] = u;
          mates[static_cast<std::size_t>(mu)] = mv;
          mates[static_cast<std::size_t>(mv)] = mu;
          current_total += delta;
          chosen = v;
          break;
        }
      }
      // Certify by solving the problem without u and v.
      std::vector<int> sub_nodes;
      sub_nodes.reserve(rem.size() - 2);
      for (int w : rem)
        if (w != u && w != v) sub_nodes.push_back(w);
      const int sn = static_cast<int>(sub_nodes.size());
      Matrix sub_cost(static_cast<std::size_t>(sn), static_cast<std::size_t>(sn), 0.0);
      std::vector<std::uint8_t> sub_allowed(static_cast<std::size_t>(sn) * static_cast<std::size_t>(sn), 0);
      for (int a = 0; a < sn; ++a) {
        for (int b = a + 1; b < sn; ++b) {
          const int oa = sub_nodes[static_cast<std::size_t>(a)];
          const int ob = sub_nodes[static_cast<std::size_t>(b)];
          if (!allow(oa, ob)) continue;
          sub_allowed[static_cast<std::size_t>(a) * static_cast<std::size_t>(sn) + static_cast<std::size_t>(b)] = 1;
          sub_allowed[static_cast<std::size_t>(b) * static_cast<std::size_t>(sn) + static_cast<std::size_t>(a)] = 1;
          sub_cost(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = c(oa, ob);
          sub_cost(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = c(oa, ob);
        }
      }
      const auto sub = min_weight_perfect_matching(sn, sub_cost, sub_allowed);
      if (!sub) continue;
      double sub_weight = 0.0;
      for (int a = 0; a < sn; ++a) {
        if ((*sub)[static_cast<std::size_t>(a)] > a)
          sub_weight += sub_cost(static_cast<std::size_t>(a),
                                 static_cast<std::size_t>((*sub)[static_cast<std::size_t>(a)]));
      }
      if (fixed_weight + c(u, v) + sub_weight <= target + tol) {
        mates[static_cast<std::size_t>(u)] = v;
        mates[static_cast<std::size_t>(v)] = u;
        for (int a = 0; a < sn; ++a) {
          const int oa = sub_nodes[static_cast<std::size_t>(a)];
          const int ob = sub_nodes[static_cast<std::size_t>((*sub)[static_cast<std::size_t>(a)])];
          mates[static_cast<std::size_t>(oa)] = ob;
        }
        current_total = fixed_weight + c(u, v) + sub_weight;
        chosen = v;
        break;
      }
    }
    if (chosen == -1) throw InternalError("tie-break refinement lost the optimal matching");
    fixed_weight += cost(static_cast<std::size_t>(u), static_cast<std::size_t>(chosen));
    std::erase(rem, u);
    std::erase(rem, chosen);
  }
}

}  // namespace

std::vector<std::vector<Edge>> kmst_rounds(const DistanceMatrix& dist, int k) {
  const int n = dist.size();
  if (k < 1) throw InfeasibleK("number of rounds must be at least 1", k);
  struct WeightedPair {
    double w;
    int a, b;
  };
  std::vector<WeightedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      pairs.push_back({dist.values(static_cast<std::size_t>(a), static_cast<std::size_t>(b)), a, b});
  std::sort(pairs.begin(), pairs.end(), [](const WeightedPair& x, const WeightedPair& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  std::vector<std::uint8_t> used(pairs.size(), 0);
  std::vector<std::vector<Edge>> rounds;
  rounds.reserve(static_cast<std::size_t>(k));
  for (int round = 1; round <= k; ++round) {
    DisjointSets dsu(n);
    std::vector<Edge> tree;
    tree.reserve(static_cast<std::size_t>(n - 1));
    for (std::size_t i = 0; i < pairs.size() && static_cast<int>(tree.size()) < n - 1; ++i) {
      if (used[i]) continue;
      if (dsu.unite(pairs[i].a, pairs[i].b)) {
        used[i] = 1;
        tree.push_back(Edge{pairs[i].a, pairs[i].b});
      }
    }
    if (static_cast<int>(tree.size()) != n - 1) {
      throw InfeasibleK("spanning tree round " + std::to_string(round) +
                            " cannot be completed: remaining edges do not connect all observations",
                        round);
    }
    std::sort(tree.begin(), tree.end());
    rounds.push_back(std::move(tree));
  }
  return rounds;
}

SimilarityGraph build_kmst(const DistanceMatrix& dist, int k) {
  auto rounds = kmst_rounds(dist, k);
  std::vector<Edge> all;
  for (auto& r : rounds) all.insert(all.end(), r.begin(), r.end());
  return make_graph(dist.size(), std::move(all));
}

std::vector<std::vector<Edge>> kmdp_rounds(const DistanceMatrix& dist, int k) {
  const int n = dist.size();
  if (k < 1) throw InfeasibleK("number of rounds must be at least 1", k);
  const bool odd = n % 2 != 0;
  const int m = odd ? n + 1 : n;  // augmented node count; node n is the stand-in

  Matrix cost(static_cast<std::size_t>(m), static_cast<std::size_t>(m), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      cost(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
          dist.values(static_cast<std::size_t>(a), static_cast<std::size_t>(b));

  std::vector<std::uint8_t> allowed(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 1);
  for (int a = 0; a < m; ++a)
    allowed[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)] = 0;

  std::vector<std::vector<Edge>> rounds;
  rounds.reserve(static_cast<std::size_t>(k));
  for (int round = 1; round <= k; ++round) {
    auto mates = min_weight_perfect_matching(m, cost, allowed);
    if (!mates) {
      throw InfeasibleK("pairing round " + std::to_string(round) +
                            " cannot be completed: remaining pairs admit no perfect matching",
                        round);
    }
    if (m <= kLexCertifyLimit) lex_refine(m, cost, allowed, *mates);
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<std::size_t>(n / 2));
    for (int u = 0; u < n; ++u) {
      const int v = (*mates)[static_cast<std::size_t>(u)];
      if (v > u && v < n) {
        pairs.push_back(Edge{u, v});
        // Used pairs are off limits in later rounds; stand-in pairs stay open.
        allowed[static_cast<std::size_t>(u) * static_cast<std::size_t>(m) + static_cast<std::size_t>(v)] = 0;
        allowed[static_cast<std::size_t>(v) * static_cast<std::size_t>(m) + static_cast<std::size_t>(u)] = 0;
      }
    }
    std::sort(pairs.begin(), pairs.end());
    rounds.push_back(std::move(pairs));
  }
  return rounds;
}

SimilarityGraph build_kmdp(const DistanceMatrix& dist, int k) {
  auto rounds = kmdp_rounds(dist, k);
  std::vector<Edge> all;
  for (auto& r : rounds) all.insert(all.end(), r.begin(), r.end());
  return make_graph(dist.size(), std::move(all));
}

SimilarityGraph build_knn(const DistanceMatrix& dist, int k) {
  const int n = dist.size();
  if (k < 1) throw InfeasibleK("number of neighbors must be at least 1", k);
  if (k >= n) {
    throw InfeasibleK("number of neighbors must be smaller than the number of observations", k);
  }
  std::vector<Edge> edges;
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = dist.values(static_cast<std::size_t>(i), static_cast<std::size_t>(a));
      const double db = dist.values(static_cast<std::size_t>(i), static_cast<std::size_t>(b));
      if (da != db) return da < db;
      return a < b;
    });
    for (int t = 0; t < k; ++t) {
      const int j = order[static_cast<std::size_t>(t)];
      edges.push_back(Edge{std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return make_graph(n, std::move(edges));
}

GraphStats graph_stats(const SimilarityGraph& graph) {
  GraphStats s;
  s.n_nodes = graph.n_nodes;
  s.n_edges = graph.n_edges();
  s.degrees.assign(static_cast<std::size_t>(graph.n_nodes), 0);
  for (const Edge& e : graph.edges) {
    ++s.degrees[static_cast<std::size_t>(e.a)];
    ++s.degrees[static_cast<std::size_t>(e.b)];
  }
  for (int d : s.degrees) {
    s.sum_deg_sq += static_cast<long long>(d) * d;
    s.c_pairs += static_cast<long long>(d) * (d - 1) / 2;
    s.max_degree = std::max(s.max_degree, d);
  }

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.n_nodes));
  for (const Edge& e : graph.edges) {
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  std::vector<int> stamp(static_cast<std::size_t>(graph.n_nodes), -1);
  int epoch = 0;
  for (const Edge& e : graph.edges) {
    const auto mark = [&](int v) { stamp[static_cast<std::size_t>(v)] = epoch; };
    mark(e.a);
    mark(e.b);
    for (int v : adj[static_cast<std::size_t>(e.a)]) mark(v);
    for (int v : adj[static_cast<std::size_t>(e.b)]) mark(v);
    const long long a_count = s.degrees[static_cast<std::size_t>(e.a)] +
                              s.degrees[static_cast<std::size_t>(e.b)] - 1;
    long long b_count = 0;
    for (const Edge& f : graph.edges) {
      if (stamp[static_cast<std::size_t>(f.a)] == epoch || stamp[static_cast<std::size_t>(f.b)] == epoch)
        ++b_count;
    }
    s.sum_ae_be += a_count * b_count;
    ++epoch;
  }
  return s;
}

ApplicabilityDiagnostics applicability_diagnostics(const GraphStats& stats) {
  ApplicabilityDiagnostics d;
  const double n = static_cast<double>(stats.n_nodes);
  if (stats.n_nodes > 0) {
    d.edge_ratio = static_cast<double>(stats.n_edges) / n;
    d.deg_sq_ratio = static_cast<double>(stats.sum_deg_sq) / n;
    d.aebe_ratio = static_cast<double>(stats.sum_ae_be) / std::pow(n, 1.5);
  }
  d.max_degree = stats.max_degree;
  d.asymptotics_questionable = d.aebe_ratio > 1.0 || d.max_degree > std::sqrt(n);
  return d;
}

}  // namespace gts
