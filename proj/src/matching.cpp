#include "gts/matching.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <vector>

#include "gts/errors.hpp"

// Primal-dual blossom solver for minimum-weight perfect matching on a dense
// graph. Alternating forests are grown from exposed vertices over tight
// edges; odd cycles are contracted into blossoms; dual adjustments create new
// tight edges when the forest is stuck. Ids 0..n-1 are original vertices,
// n..2n-1 are blossoms. All scans run in fixed index order, so the result is
// deterministic for a given input.

namespace gts {
namespace {

constexpr double kEps = 1e-12;
constexpr int kEven = 2;
constexpr int kOdd = 1;
constexpr int kUnlabeled = 0;

inline bool greater(double a, double b) { return a - b > kEps; }

class BlossomSolver {
public:
  BlossomSolver(int n, const Matrix& weight, const std::vector<std::uint8_t>& allowed)
      : n_(n),
        m_(n * (n - 1) / 2),
        allowed_(allowed),
        slack_(static_cast<std::size_t>(m_), 0.0),
        outer_(2 * n),
        tip_(2 * n),
        active_(2 * n),
        type_(2 * n),
        forest_(2 * n),
        root_(2 * n),
        blocked_(2 * n),
        dual_(2 * n),
        mate_(2 * n),
        visited_(2 * n),
        deep_(2 * n),
        shallow_(2 * n) {
    // Scale weights into [0, 1] so the epsilon comparisons are meaningful
    // regardless of the magnitude of the input distances.
    double mx = 0.0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (is_allowed(u, v)) mx = std::max(mx, std::abs(weight(u, v)));
    const double scale = mx > 0.0 ? 1.0 / mx : 1.0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (is_allowed(u, v)) slack_[edge_index(u, v)] = weight(u, v) * scale;
  }

  std::optional<std::vector<int>> solve() {
    if (n_ == 0) return std::vector<int>{};
    if (n_ % 2 != 0) return std::nullopt;

    free_.clear();
    for (int i = n_; i < 2 * n_; ++i) free_.push_back(i);
    for (int i = 0; i < 2 * n_; ++i) {
      outer_[i] = i;
      deep_[i].clear();
      if (i < n_) deep_[i].push_back(i);
      shallow_[i].clear();
      active_[i] = i < n_;
      type_[i] = kUnlabeled;
      forest_[i] = -1;
      root_[i] = i;
      blocked_[i] = false;
      dual_[i] = 0.0;
      mate_[i] = -1;
      tip_[i] = i;
    }

    bool perfect = false;
    // Each dual adjustment strictly increases the dual objective by a bounded
    // step, so the iteration count is finite; the cap is a defensive bound.
    const long limit = 64L * n_ * n_ + 4096;
    for (long iter = 0; !perfect; ++iter) {
      if (iter > limit) throw InternalError("matching solver failed to converge");
      heuristic();
      perfect = grow();
      if (!perfect) {
        if (!update_dual_costs()) return std::nullopt;  // no perfect matching exists
      }
      reset();
    }

    for (int i = 0; i < 2 * n_; ++i)
      if (active_[i] && mate_[i] != -1 && outer_[i] == i) expand(i, true);

    std::vector<int> mates(static_cast<std::size_t>(n_));
    for (int u = 0; u < n_; ++u) mates[static_cast<std::size_t>(u)] = mate_[u];
    return mates;
  }

private:
  int edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    return u * n_ - (u + 1) * (u + 2) / 2 + v;
  }

  bool is_allowed(int u, int v) const {
    return allowed_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(v)] != 0;
  }

  bool is_edge_blocked(int u, int v) const {
    return !is_allowed(u, v) || greater(slack_[edge_index(u, v)], 0.0);
  }

  bool is_adjacent(int u, int v) const { return u != v && !is_edge_blocked(u, v); }

  // Greedy initial matching over tight edges, lowest-degree vertices first.
  void heuristic() {
    std::vector<int> degree(static_cast<std::size_t>(n_), 0);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) {
        if (is_edge_blocked(u, v)) continue;
        ++degree[static_cast<std::size_t>(u)];
        ++degree[static_cast<std::size_t>(v)];
      }
    for (int u = 0; u < n_; ++u) {
      if (mate_[outer_[u]] != -1) continue;
      int best = -1;
      for (int v = 0; v < n_; ++v) {
        if (u == v || is_edge_blocked(u, v) || outer_[u] == outer_[v] ||
            mate_[outer_[v]] != -1)
          continue;
        if (best == -1 || degree[static_cast<std::size_t>(v)] < degree[static_cast<std::size_t>(best)])
          best = v;
      }
      if (best != -1) {
        mate_[outer_[u]] = best;
        mate_[outer_[best]] = u;
      }
    }
  }

  // Grows the alternating forest from all exposed vertices; returns whether
  // the matching became perfect.
  bool grow() {
    reset();
    while (!forest_list_.empty()) {
      const int w = outer_[forest_list_.back()];
      forest_list_.pop_back();
      for (std::size_t it = 0; it < deep_[w].size(); ++it) {
        const int u = deep_[w][it];
        bool cont = false;
        for (int v = 0; v < n_; ++v) {
          if (u == v || is_edge_blocked(u, v)) continue;
          if (type_[outer_[v]] == kOdd) continue;
          if (type_[outer_[v]] != kEven) {
            // v is unlabeled: bring the matched pair (v, mate of v) in.
            const int vm = mate_[outer_[v]];
            forest_[outer_[v]] = u;
            type_[outer_[v]] = kOdd;
            root_[outer_[v]] = root_[outer_[u]];
            forest_[outer_[vm]] = v;
            type_[outer_[vm]] = kEven;
            root_[outer_[vm]] = root_[outer_[u]];
            if (!visited_[outer_[vm]]) {
              forest_list_.push_back(vm);
              visited_[outer_[vm]] = 1;
            }
          } else if (root_[outer_[v]] != root_[outer_[u]]) {
            // Two even vertices in different trees: augmenting path.
            augment(u, v);
            reset();
            cont = true;
            break;
          } else if (outer_[u] != outer_[v]) {
            // Two even vertices in the same tree: odd cycle, contract it.
            const int b = blossom(u, v);
            forest_list_.push_back(b);
            visited_[b] = 1;
            cont = true;
            break;
          }
        }
        if (cont) break;
      }
    }
    for (int i = 0; i < n_; ++i)
      if (mate_[outer_[i]] == -1) return false;
    return true;
  }

  void reset() {
    for (int i = 0; i < 2 * n_; ++i) {
      forest_[i] = -1;
      root_[i] = i;
      if (i >= n_ && active_[i] && outer_[i] == i) destroy_blossom(i);
    }
    std::fill(visited_.begin(), visited_.end(), 0);
    forest_list_.clear();
    for (int i = 0; i < n_; ++i) {
      if (mate_[outer_[i]] == -1) {
        type_[outer_[i]] = kEven;
        if (!visited_[outer_[i]]) {
          forest_list_.push_back(i);
          visited_[outer_[i]] = 1;
        }
      } else {
        type_[outer_[i]] = kUnlabeled;
      }
    }
  }

  void destroy_blossom(int t) {
    if (t < n_ || (blocked_[t] && greater(dual_[t], 0.0))) return;
    for (int s : shallow_[t]) {
      outer_[s] = s;
      for (int d : deep_[s]) outer_[d] = s;
      destroy_blossom(s);
    }
    active_[t] = false;
    blocked_[t] = false;
    free_.push_back(t);
    mate_[t] = -1;
  }

  // Rewires mates across the (possibly nested) blossoms u and its matched
  // counterpart, choosing the minimum-index tight edge so both sides agree.
  void expand(int u, bool expand_blocked) {
    const int v = outer_[mate_[u]];
    int index = m_;
    int p = -1, q = -1;
    for (int di : deep_[u]) {
      for (int dj : deep_[v]) {
        if (is_adjacent(di, dj) && edge_index(di, dj) < index) {
          index = edge_index(di, dj);
          p = di;
          q = dj;
        }
      }
    }
    mate_[u] = q;
    mate_[v] = p;
    if (u < n_ || (blocked_[u] && !expand_blocked)) return;

    bool found = false;
    // Rotate the cycle so the sub-blossom containing the connecting vertex
    // becomes the new tip.
    for (auto it = shallow_[u].begin(); it != shallow_[u].end() && !found;) {
      const int si = *it;
      for (auto jt = deep_[si].begin(); jt != deep_[si].end() && !found; ++jt)
        if (*jt == p) found = true;
      ++it;
      if (!found) {
        shallow_[u].push_back(si);
        shallow_[u].pop_front();
      }
    }

    auto it = shallow_[u].begin();
    mate_[*it] = mate_[u];
    ++it;
    // Walk the remaining even-length path pairing consecutive sub-blossoms.
    while (it != shallow_[u].end()) {
      auto itnext = std::next(it);
      mate_[*it] = *itnext;
      mate_[*itnext] = *it;
      it = std::next(itnext);
    }

    for (int s : shallow_[u]) {
      outer_[s] = s;
      for (int d : deep_[s]) outer_[d] = s;
    }
    active_[u] = false;
    free_.push_back(u);
    for (int s : shallow_[u]) expand(s, expand_blocked);
  }

  // Flips matched and unmatched edges along the forest path through (u, v).
  void augment(int u, int v) {
    int p = outer_[u];
    int q = outer_[v];
    const int outv = q;
    int fp = forest_[p];
    mate_[p] = q;
    mate_[q] = p;
    expand(p, false);
    expand(q, false);
    while (fp != -1) {
      q = outer_[forest_[p]];
      p = outer_[forest_[q]];
      fp = forest_[p];
      mate_[p] = q;
      mate_[q] = p;
      expand(p, false);
      expand(q, false);
    }
    p = outv;
    fp = forest_[p];
    while (fp != -1) {
      q = outer_[forest_[p]];
      p = outer_[forest_[q]];
      fp = forest_[p];
      mate_[p] = q;
      mate_[q] = p;
      expand(p, false);
      expand(q, false);
    }
  }

  // Contracts the odd cycle through u and v; the tip is the first common
  // vertex of their root paths.
  int blossom(int u, int v) {
    const int t = free_.back();
    free_.pop_back();

    std::vector<char> in_path(static_cast<std::size_t>(2 * n_), 0);
    int u_ = u;
    while (u_ != -1) {
      in_path[static_cast<std::size_t>(outer_[u_])] = 1;
      u_ = forest_[outer_[u_]];
    }
    int v_ = outer_[v];
    while (!in_path[static_cast<std::size_t>(v_)]) v_ = outer_[forest_[v_]];
    tip_[t] = v_;

    std::list<int> circuit;
    u_ = outer_[u];
    circuit.push_front(u_);
    while (u_ != tip_[t]) {
      u_ = outer_[forest_[u_]];
      circuit.push_front(u_);
    }

    shallow_[t].clear();
    deep_[t].clear();
    for (int s : circuit) shallow_[t].push_back(s);
    v_ = outer_[v];
    while (v_ != tip_[t]) {
      shallow_[t].push_back(v_);
      v_ = outer_[forest_[v_]];
    }

    for (int s : shallow_[t]) {
      outer_[s] = t;
      for (int d : deep_[s]) {
        deep_[t].push_back(d);
        outer_[d] = t;
      }
    }

    forest_[t] = forest_[tip_[t]];
    type_[t] = kEven;
    root_[t] = root_[tip_[t]];
    active_[t] = true;
    outer_[t] = t;
    mate_[t] = mate_[tip_[t]];
    return t;
  }

  // Adjusts duals by the largest feasible step; returns false when no
  // direction exists, i.e. no perfect matching over the allowed pairs.
  bool update_dual_costs() {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    bool init_e1 = false, init_e2 = false, init_e3 = false;

    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (!is_allowed(u, v)) continue;
        const int i = edge_index(u, v);
        if ((type_[outer_[u]] == kEven && type_[outer_[v]] == kUnlabeled) ||
            (type_[outer_[v]] == kEven && type_[outer_[u]] == kUnlabeled)) {
          if (!init_e1 || greater(e1, slack_[i])) {
            e1 = slack_[i];
            init_e1 = true;
          }
        } else if (outer_[u] != outer_[v] && type_[outer_[u]] == kEven &&
                   type_[outer_[v]] == kEven) {
          if (!init_e2 || greater(e2, slack_[i])) {
            e2 = slack_[i];
            init_e2 = true;
          }
        }
      }
    }
    for (int i = n_; i < 2 * n_; ++i) {
      if (active_[i] && i == outer_[i] && type_[outer_[i]] == kOdd &&
          (!init_e3 || greater(e3, dual_[i]))) {
        e3 = dual_[i];
        init_e3 = true;
      }
    }

    if (!init_e1 && !init_e2 && !init_e3) return false;

    double e = 0.0;
    if (init_e1)
      e = e1;
    else if (init_e2)
      e = e2;
    else
      e = e3;
    if (greater(e, e2 / 2.0) && init_e2) e = e2 / 2.0;
    if (greater(e, e3) && init_e3) e = e3;

    for (int i = 0; i < 2 * n_; ++i) {
      if (i != outer_[i] || !active_[i]) continue;
      if (type_[outer_[i]] == kEven)
        dual_[i] += e;
      else if (type_[outer_[i]] == kOdd)
        dual_[i] -= e;
    }

    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (!is_allowed(u, v) || outer_[u] == outer_[v]) continue;
        const int i = edge_index(u, v);
        const int tu = type_[outer_[u]];
        const int tv = type_[outer_[v]];
        if (tu == kEven && tv == kEven)
          slack_[i] -= 2.0 * e;
        else if (tu == kOdd && tv == kOdd)
          slack_[i] += 2.0 * e;
        else if ((tv == kUnlabeled && tu == kEven) || (tu == kUnlabeled && tv == kEven))
          slack_[i] -= e;
        else if ((tv == kUnlabeled && tu == kOdd) || (tu == kUnlabeled && tv == kOdd))
          slack_[i] += e;
      }
    }

    for (int i = n_; i < 2 * n_; ++i) {
      if (greater(dual_[i], 0.0)) {
        blocked_[i] = true;
      } else if (active_[i] && blocked_[i]) {
        if (mate_[i] == -1) {
          destroy_blossom(i);
        } else {
          blocked_[i] = false;
          expand(i, false);
        }
      }
    }
    return true;
  }

  int n_;
  int m_;
  const std::vector<std::uint8_t>& allowed_;
  std::vector<double> slack_;
  std::vector<int> outer_;
  std::vector<int> tip_;
  std::vector<char> active_;
  std::vector<int> type_;
  std::vector<int> forest_;
  std::vector<int> root_;
  std::vector<char> blocked_;
  std::vector<double> dual_;
  std::vector<int> mate_;
  std::vector<char> visited_;
  std::vector<std::vector<int>> deep_;
  std::vector<std::list<int>> shallow_;
  std::vector<int> free_;
  std::vector<int> forest_list_;
};

}  // namespace

std::optional<std::vector<int>> min_weight_perfect_matching(
    int n, const Matrix& weight, const std::vector<std::uint8_t>& allowed) {
  if (n < 0) throw ShapeError("negative vertex count");
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != allowed.size()) {
    throw LengthMismatch("allowed mask size does not match vertex count");
  }
  BlossomSolver solver(n, weight, allowed);
  return solver.solve();
}

}  // namespace gts
