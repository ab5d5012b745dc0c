#include "jcpd/matching.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

namespace jcpd {

void WeightedGraph::add_node(NodeId id) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) nodes_.insert(it, id);
}

bool WeightedGraph::has_node(NodeId id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

void WeightedGraph::add_edge(NodeId a, NodeId b, double weight) {
  if (a == b) throw ConfigError("matching graph: self loop on node " + std::to_string(a));
  if (!std::isfinite(weight))
    throw ConfigError("matching graph: non-finite weight on edge " + std::to_string(a) + "-" +
                      std::to_string(b));
  NodeId lo = std::min(a, b), hi = std::max(a, b);
  for (const auto& e : edges_)
    if (e.a == lo && e.b == hi)
      throw ConfigError("matching graph: duplicate edge " + std::to_string(lo) + "-" +
                        std::to_string(hi));
  add_node(lo);
  add_node(hi);
  edges_.push_back({lo, hi, weight});
}

namespace {

struct DenseEdge {
  int i, j;
  double w;
};

// Maximum weight matching on a general graph: the classic O(V^3) blossom
// algorithm with slack tracking per (blossom, blossom) pair. Labels: 0 free,
// 1 outer (S), 2 inner (T); bit 4 marks breadcrumbs while scanning.
class BlossomMatcher {
 public:
  BlossomMatcher(int nvertex, std::vector<DenseEdge> edges)
      : nv_(nvertex), edges_(std::move(edges)), ne_(static_cast<int>(edges_.size())) {
    maxweight_ = 0.0;
    for (const auto& e : edges_) maxweight_ = std::max(maxweight_, e.w);
    endpoint_.resize(2 * static_cast<std::size_t>(ne_));
    for (int p = 0; p < 2 * ne_; ++p)
      endpoint_[p] = (p % 2 == 0) ? edges_[p / 2].i : edges_[p / 2].j;
    neighbend_.assign(nv_, {});
    for (int k = 0; k < ne_; ++k) {
      neighbend_[edges_[k].i].push_back(2 * k + 1);
      neighbend_[edges_[k].j].push_back(2 * k);
    }
    mate_.assign(nv_, -1);
    label_.assign(2 * nv_, 0);
    labelend_.assign(2 * nv_, -1);
    inblossom_.resize(nv_);
    std::iota(inblossom_.begin(), inblossom_.end(), 0);
    blossomparent_.assign(2 * nv_, -1);
    blossomchilds_.assign(2 * nv_, {});
    blossombase_.assign(2 * nv_, -1);
    std::iota(blossombase_.begin(), blossombase_.begin() + nv_, 0);
    blossomendps_.assign(2 * nv_, {});
    bestedge_.assign(2 * nv_, -1);
    blossombestedges_.assign(2 * nv_, {});
    hasbestedges_.assign(2 * nv_, 0);
    unusedblossoms_.resize(nv_);
    std::iota(unusedblossoms_.begin(), unusedblossoms_.end(), nv_);
    dualvar_.assign(2 * nv_, 0.0);
    std::fill(dualvar_.begin(), dualvar_.begin() + nv_, maxweight_);
    allowedge_.assign(ne_, 0);
  }

  // Returns mate vertex per vertex, -1 when unmatched.
  std::vector<int> solve() {
    if (ne_ == 0) return std::vector<int>(nv_, -1);
    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nv_; b < 2 * nv_; ++b) {
        hasbestedges_[b] = 0;
        blossombestedges_[b].clear();
      }
      std::fill(allowedge_.begin(), allowedge_.end(), static_cast<char>(0));
      queue_.clear();
      for (int v = 0; v < nv_; ++v)
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          int v = queue_.back();
          queue_.pop_back();
          assert(label_[inblossom_[v]] == 1);
          for (int p : neighbend_[v]) {
            int k = p / 2;
            int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            double kslack = 0.0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0.0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                assert(label_[inblossom_[w]] == 2);
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        // Optimality gap: pick the smallest dual adjustment that makes
        // progress (frees a vertex, tightens an edge, or pops a blossom).
        int deltatype = 1;
        double delta =
            std::max(0.0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_));
        int deltaedge = -1, deltablossom = -1;
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            double d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            double d = slack(bestedge_[b]) / 2.0;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < nv_; ++v) {
          int lbl = label_[inblossom_[v]];
          if (lbl == 1)
            dualvar_[v] -= delta;
          else if (lbl == 2)
            dualvar_[v] += delta;
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1)
              dualvar_[b] += delta;
            else if (label_[b] == 2)
              dualvar_[b] -= delta;
          }
        }

        if (deltatype == 1) break;  // no augmenting path exists
        if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].i;
          if (label_[inblossom_[i]] == 0) i = edges_[deltaedge].j;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].i;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = nv_; b < 2 * nv_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
            dualvar_[b] == 0.0)
          expand_blossom(b, true);
      }
    }
    std::vector<int> result(nv_, -1);
    for (int v = 0; v < nv_; ++v)
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    return result;
  }

 private:
  double slack(int k) const {
    return dualvar_[edges_[k].i] + dualvar_[edges_[k].j] - 2.0 * edges_[k].w;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) blossom_leaves(t, out);
  }

  // Python-style wrap-around indexing into the child / endpoint rings.
  int child_at(int b, int j) const {
    int n = static_cast<int>(blossomchilds_[b].size());
    int idx = j % n;
    if (idx < 0) idx += n;
    return blossomchilds_[b][idx];
  }
  int endp_at(int b, int j) const {
    int n = static_cast<int>(blossomendps_[b].size());
    int idx = j % n;
    if (idx < 0) idx += n;
    return blossomendps_[b][idx];
  }
  static int index_of(const std::vector<int>& v, int x) {
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
  }

  void assign_label(int w, int t, int p) {
    int b = inblossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      scratch_.clear();
      blossom_leaves(b, scratch_);
      for (int v : scratch_) queue_.push_back(v);
    } else if (t == 2) {
      int base = blossombase_[b];
      assert(mate_[base] >= 0);
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  // Walks back from both ends of a tight edge between S-blossoms; returns
  // the common ancestor base vertex, or -1 when the paths reach two distinct
  // roots (an augmenting path).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      assert(labelend_[b] == mate_[blossombase_[b]]);
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        assert(label_[b] == 2);
        assert(labelend_[b] >= 0);
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].i, w = edges_[k].j;
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      assert(label_[bv] == 2 || (label_[bv] == 1 && labelend_[bv] == mate_[blossombase_[bv]]));
      assert(labelend_[bv] >= 0);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      assert(label_[bw] == 2 || (label_[bw] == 1 && labelend_[bw] == mate_[blossombase_[bw]]));
      assert(labelend_[bw] >= 0);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    assert(label_[bb] == 1);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0.0;
    scratch_.clear();
    blossom_leaves(b, scratch_);
    for (int lv : scratch_) {
      if (label_[inblossom_[lv]] == 2) queue_.push_back(lv);
      inblossom_[lv] = b;
    }
    // Merge least-slack edge lists of the children.
    std::vector<int> bestedgeto(2 * static_cast<std::size_t>(nv_), -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!hasbestedges_[child]) {
        std::vector<int> leaves;
        blossom_leaves(child, leaves);
        for (int lv : leaves) {
          std::vector<int> ks;
          ks.reserve(neighbend_[lv].size());
          for (int p : neighbend_[lv]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[kk].i, j = edges_[kk].j;
          if (inblossom_[j] == b) std::swap(i, j);
          int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
            bestedgeto[bj] = kk;
        }
      }
      hasbestedges_[child] = 0;
      blossombestedges_[child].clear();
      bestedge_[child] = -1;
    }
    auto& bbe = blossombestedges_[b];
    bbe.clear();
    for (int kk : bestedgeto)
      if (kk != -1) bbe.push_back(kk);
    hasbestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : bbe)
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    for (std::size_t ci = 0; ci < blossomchilds_[b].size(); ++ci) {
      int s = blossomchilds_[b][ci];
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0.0) {
        expand_blossom(s, endstage);
      } else {
        std::vector<int> leaves;
        blossom_leaves(s, leaves);
        for (int lv : leaves) inblossom_[lv] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      // The expanding blossom is inner: relabel the even-alternating chain
      // of children between the entry child and the base, leave the rest to
      // be picked up lazily.
      assert(labelend_[b] >= 0);
      int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = index_of(blossomchilds_[b], entrychild);
      int nchilds = static_cast<int>(blossomchilds_[b].size());
      int jstep, endptrick;
      if (j & 1) {
        j -= nchilds;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endp_at(b, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endp_at(b, j - endptrick) / 2] = 1;
        j += jstep;
        p = endp_at(b, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      // Relabel the base sub-blossom in place (no assign_label: its mate was
      // already handled while walking the chain). p now points along the last
      // matched edge into the base child, not at the blossom's entry endpoint.
      int bv = child_at(b, j);
      label_[endpoint_[p ^ 1]] = 2;
      label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = p;
      labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (child_at(b, j) != entrychild) {
        bv = child_at(b, j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        scratch_.clear();
        blossom_leaves(bv, scratch_);
        int vfound = -1;
        for (int lv : scratch_)
          if (label_[lv] != 0) {
            vfound = lv;
            break;
          }
        if (vfound != -1) {
          assert(label_[vfound] == 2);
          assert(inblossom_[vfound] == bv);
          label_[vfound] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(vfound, 2, labelend_[vfound]);
        }
        j += jstep;
      }
    }
    label_[b] = -1;
    labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    hasbestedges_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  // Swaps matched/unmatched edges along the path inside blossom b from
  // vertex v to the base, then rotates the child ring to re-root at v.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);
    int nchilds = static_cast<int>(blossomchilds_[b].size());
    int i = index_of(blossomchilds_[b], t);
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= nchilds;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      int tt = child_at(b, j);
      int p = endp_at(b, j - endptrick) ^ endptrick;
      if (tt >= nv_) augment_blossom(tt, endpoint_[p]);
      j += jstep;
      tt = child_at(b, j);
      if (tt >= nv_) augment_blossom(tt, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    auto& ch = blossomchilds_[b];
    auto& eps = blossomendps_[b];
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(eps.begin(), eps.begin() + i, eps.end());
    blossombase_[b] = blossombase_[ch[0]];
    assert(blossombase_[b] == v);
  }

  void augment_matching(int k) {
    for (int pass = 0; pass < 2; ++pass) {
      int s = pass == 0 ? edges_[k].i : edges_[k].j;
      int p = pass == 0 ? 2 * k + 1 : 2 * k;
      while (true) {
        int bs = inblossom_[s];
        assert(label_[bs] == 1);
        assert(labelend_[bs] == mate_[blossombase_[bs]]);
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        int t = endpoint_[labelend_[bs]];
        int bt = inblossom_[t];
        assert(label_[bt] == 2);
        assert(labelend_[bt] >= 0);
        s = endpoint_[labelend_[bt]];
        int j = endpoint_[labelend_[bt] ^ 1];
        assert(blossombase_[bt] == t);
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int nv_;
  std::vector<DenseEdge> edges_;
  int ne_;
  double maxweight_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<char> hasbestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<double> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
  std::vector<int> scratch_;
};

}  // namespace

Matching max_weight_matching(const WeightedGraph& g) {
  // Non-positive edges can never improve a maximum weight matching; drop
  // them so they cannot appear in the result.
  std::vector<WeightedEdge> kept;
  kept.reserve(g.edges().size());
  for (const auto& e : g.edges())
    if (e.weight > 0.0) kept.push_back(e);

  Matching out;
  if (kept.empty()) return out;

  // Canonical edge order makes the result independent of insertion order.
  std::sort(kept.begin(), kept.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });

  std::vector<NodeId> active;
  active.reserve(kept.size() * 2);
  for (const auto& e : kept) {
    active.push_back(e.a);
    active.push_back(e.b);
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());

  auto dense = [&](NodeId id) {
    return static_cast<int>(std::lower_bound(active.begin(), active.end(), id) - active.begin());
  };

  std::vector<DenseEdge> dedges;
  dedges.reserve(kept.size());
  for (const auto& e : kept) dedges.push_back({dense(e.a), dense(e.b), e.weight});

  BlossomMatcher matcher(static_cast<int>(active.size()), dedges);
  std::vector<int> mate = matcher.solve();

  std::map<std::pair<NodeId, NodeId>, double> wlookup;
  for (const auto& e : kept) wlookup[{e.a, e.b}] = e.weight;

  for (int v = 0; v < static_cast<int>(active.size()); ++v) {
    int m = mate[v];
    if (m > v) {
      NodeId a = active[v], b = active[m];
      out.pairs.emplace_back(a, b);
      out.total_weight += wlookup.at({a, b});
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

namespace {

struct BruteState {
  const std::vector<WeightedEdge>* edges;
  std::vector<std::pair<NodeId, NodeId>> cur;
  double cur_w = 0.0;
  std::vector<std::pair<NodeId, NodeId>> best;
  double best_w = 0.0;

  void consider() {
    if (cur_w > best_w || (cur_w == best_w && cur < best)) {
      best = cur;
      best_w = cur_w;
    }
  }

  void rec(std::size_t ei, std::set<NodeId>& used) {
    if (ei == edges->size()) {
      consider();
      return;
    }
    const auto& e = (*edges)[ei];
    rec(ei + 1, used);  // skip this edge
    if (!used.count(e.a) && !used.count(e.b)) {
      used.insert(e.a);
      used.insert(e.b);
      cur.emplace_back(e.a, e.b);
      cur_w += e.weight;
      rec(ei + 1, used);
      cur_w -= e.weight;
      cur.pop_back();
      used.erase(e.a);
      used.erase(e.b);
    }
  }
};

}  // namespace

Matching brute_force_matching(const WeightedGraph& g) {
  if (g.nodes().size() > 16)
    throw TooLargeError("brute_force_matching: refusing graphs above 16 nodes");

  // Same candidate space as max_weight_matching: nonpositive edges can never
  // raise the total, and on ties they must not sneak into the pair list.
  std::vector<WeightedEdge> es;
  for (const WeightedEdge& e : g.edges())
    if (e.weight > 0.0) es.push_back(e);
  std::sort(es.begin(), es.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });

  BruteState st;
  st.edges = &es;
  std::set<NodeId> used;
  st.rec(0, used);

  Matching out;
  out.pairs = st.best;
  out.total_weight = st.best_w;
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

}  // namespace jcpd
