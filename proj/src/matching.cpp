#include "holo/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace holo {

namespace {

// Primal-dual blossom matching. Endpoint p of edge k is p = 2k or 2k+1;
// endpoint[p] is the vertex, p ^ 1 the other end.
class Blossom {
 public:
  Blossom(int nv, const std::vector<WeightedEdge>& edges, bool maxcard)
      : nv_(nv), edges_(edges), maxcard_(maxcard) {}

  std::vector<int> run();

 private:
  using I = std::int64_t;
  int nv_;
  const std::vector<WeightedEdge>& edges_;
  bool maxcard_;

  std::vector<int> endpoint_, mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_,
      bestedge_, unused_, queue_;
  std::vector<std::vector<int>> neighbend_, childs_, endps_, bestedges_;
  std::vector<char> has_bestedges_, allowedge_;
  std::vector<I> dual_;

  I slack(int k) const {
    const auto& e = edges_[k];
    return dual_[e.u] + dual_[e.v] - 2 * e.w;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[b]) leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].u, w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v], bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int> path, endps;
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
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
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    childs_[b] = path;
    endps_[b] = endps;
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;
    for (int u : leaves(b)) {
      if (label_[inblossom_[u]] == 2) queue_.push_back(u);
      inblossom_[u] = b;
    }
    std::vector<int> bestedgeto(2 * nv_, -1);
    for (int sb : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[sb]) {
        for (int u : leaves(sb)) {
          std::vector<int> l;
          for (int p : neighbend_[u]) l.push_back(p / 2);
          nblists.push_back(std::move(l));
        }
      } else {
        nblists.push_back(bestedges_[sb]);
      }
      for (const auto& nb : nblists)
        for (int kk : nb) {
          int i = edges_[kk].u, j = edges_[kk].v;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
            bestedgeto[bj] = kk;
        }
      bestedges_[sb].clear();
      has_bestedges_[sb] = 0;
      bestedge_[sb] = -1;
    }
    bestedges_[b].clear();
    for (int kk : bestedgeto)
      if (kk != -1) bestedges_[b].push_back(kk);
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : bestedges_[b])
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> ch = childs_[b];
    for (int s : ch) {
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dual_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int u : leaves(s)) inblossom_[u] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      const int L = static_cast<int>(ch.size());
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep, endptrick;
      if (j & 1) {
        j -= L;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      auto at = [L](const std::vector<int>& v, int idx) { return v[((idx % L) + L) % L]; };
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[at(endps_[b], j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[at(endps_[b], j - endptrick) / 2] = 1;
        j += jstep;
        p = at(endps_[b], j - endptrick) ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = at(ch, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (at(ch, j) != entrychild) {
        bv = at(ch, j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int u : leaves(bv))
          if (label_[u] != 0) {
            found = u;
            break;
          }
        if (found >= 0) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    childs_[b].clear();
    endps_[b].clear();
    blossombase_[b] = -1;
    bestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);
    auto& ch = childs_[b];
    auto& ep = endps_[b];
    const int L = static_cast<int>(ch.size());
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i, jstep, endptrick;
    if (i & 1) {
      j -= L;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    auto at = [L](const std::vector<int>& vv, int idx) { return vv[((idx % L) + L) % L]; };
    while (j != 0) {
      j += jstep;
      t = at(ch, j);
      const int p = at(ep, j - endptrick) ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = at(ch, j);
      if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[b] = blossombase_[ch[0]];
  }

  void augment_matching(int k) {
    const int v = edges_[k].u, w = edges_[k].v;
    const int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (const auto& sp : starts) {
      int s = sp[0], p = sp[1];
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }
};

std::vector<int> Blossom::run() {
  const int ne = static_cast<int>(edges_.size());
  if (nv_ == 0) return {};
  I maxw = 0;
  for (const auto& e : edges_) maxw = std::max(maxw, e.w);
  endpoint_.resize(2 * ne);
  neighbend_.assign(nv_, {});
  for (int k = 0; k < ne; ++k) {
    endpoint_[2 * k] = edges_[k].u;
    endpoint_[2 * k + 1] = edges_[k].v;
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  mate_.assign(nv_, -1);
  label_.assign(2 * nv_, 0);
  labelend_.assign(2 * nv_, -1);
  inblossom_.resize(nv_);
  for (int i = 0; i < nv_; ++i) inblossom_[i] = i;
  blossomparent_.assign(2 * nv_, -1);
  childs_.assign(2 * nv_, {});
  endps_.assign(2 * nv_, {});
  blossombase_.assign(2 * nv_, -1);
  for (int i = 0; i < nv_; ++i) blossombase_[i] = i;
  bestedge_.assign(2 * nv_, -1);
  bestedges_.assign(2 * nv_, {});
  has_bestedges_.assign(2 * nv_, 0);
  unused_.clear();
  for (int i = nv_; i < 2 * nv_; ++i) unused_.push_back(i);
  dual_.assign(2 * nv_, 0);
  for (int i = 0; i < nv_; ++i) dual_[i] = maxw;
  allowedge_.assign(ne, 0);

  for (int stage = 0; stage < nv_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = nv_; b < 2 * nv_; ++b) {
      bestedges_[b].clear();
      has_bestedges_[b] = 0;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), 0);
    queue_.clear();
    for (int v = 0; v < nv_; ++v)
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[v]) {
          const int k = p / 2;
          const int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          I kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = 1;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = -1, deltaedge = -1, deltablossom = -1;
      I delta = 0;
      if (!maxcard_) {
        deltatype = 1;
        delta = *std::min_element(dual_.begin(), dual_.begin() + nv_);
      }
      for (int v = 0; v < nv_; ++v)
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          const I d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      for (int b = 0; b < 2 * nv_; ++b)
        if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          const I ks = slack(bestedge_[b]);
          if (ks % 2 != 0) throw std::logic_error("blossom: odd slack between S-blossoms");
          const I d = ks / 2;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      for (int b = nv_; b < 2 * nv_; ++b)
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
            (deltatype == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      if (deltatype == -1) {
        deltatype = 1;
        delta = std::max<I>(0, *std::min_element(dual_.begin(), dual_.begin() + nv_));
      }
      for (int v = 0; v < nv_; ++v) {
        if (label_[inblossom_[v]] == 1)
          dual_[v] -= delta;
        else if (label_[inblossom_[v]] == 2)
          dual_[v] += delta;
      }
      for (int b = nv_; b < 2 * nv_; ++b)
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
          if (label_[b] == 1)
            dual_[b] += delta;
          else if (label_[b] == 2)
            dual_[b] -= delta;
        }
      if (deltatype == 1) break;
      if (deltatype == 2) {
        allowedge_[deltaedge] = 1;
        int i = edges_[deltaedge].u, j = edges_[deltaedge].v;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = 1;
        queue_.push_back(edges_[deltaedge].u);
      } else if (deltatype == 4) {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;
    for (int b = nv_; b < 2 * nv_; ++b)
      if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dual_[b] == 0)
        expand_blossom(b, true);
  }
  std::vector<int> out(nv_, -1);
  for (int v = 0; v < nv_; ++v)
    if (mate_[v] >= 0) out[v] = endpoint_[mate_[v]];
  return out;
}

}  // namespace

std::vector<int> max_weight_matching(int n_vertices, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality) {
  for (const auto& e : edges)
    if (e.u < 0 || e.v < 0 || e.u >= n_vertices || e.v >= n_vertices || e.u == e.v)
      throw std::invalid_argument("max_weight_matching: bad edge");
  // Doubling keeps every dual variable and slack integral.
  std::vector<WeightedEdge> e2(edges);
  for (auto& e : e2) e.w *= 2;
  Blossom b(n_vertices, e2, max_cardinality);
  return b.run();
}

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<std::int64_t>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n % 2) throw std::invalid_argument("perfect matching needs an even vertex count");
  std::int64_t top = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) top = std::max(top, cost[i][j]);
  std::vector<WeightedEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, top + 1 - cost[i][j]});
  auto mate = max_weight_matching(n, edges, true);
  for (int v : mate)
    if (v < 0) throw std::logic_error("matching is not perfect");
  return mate;
}

std::vector<int> min_weight_boundary_matching(const std::vector<std::vector<std::int64_t>>& cost,
                                              const std::vector<std::int64_t>& boundary) {
  const int n = static_cast<int>(cost.size());
  std::vector<std::vector<std::int64_t>> full(2 * n, std::vector<std::int64_t>(2 * n, 0));
  std::int64_t big = 0;
  for (int i = 0; i < n; ++i) {
    big = std::max(big, boundary[i]);
    for (int j = 0; j < n; ++j) big = std::max(big, cost[i][j]);
  }
  // Image vertices n + i: defect i reaches only its own image; images pair freely.
  const std::int64_t forbid = 4 * (big + 1) * std::max(1, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      full[i][j] = cost[i][j];
      full[i][n + j] = full[n + j][i] = (i == j) ? boundary[i] : forbid;
      full[n + i][n + j] = 0;
    }
  auto m = min_weight_perfect_matching(full);
  std::vector<int> mate(n);
  for (int i = 0; i < n; ++i) {
    if (m[i] >= n && m[i] != n + i) throw std::logic_error("boundary matching used a forbidden edge");
    mate[i] = m[i] < n ? m[i] : -1;
  }
  return mate;
}

std::int64_t brute_force_matching_weight(const std::vector<std::vector<std::int64_t>>& cost,
                                         const std::vector<std::int64_t>& boundary) {
  const int n = static_cast<int>(cost.size());
  if (n > 20) throw std::invalid_argument("brute force limited to 20 defects");
  const bool has_b = !boundary.empty();
  if (!has_b && n % 2) throw std::invalid_argument("odd defect count without boundary");
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> best(std::size_t{1} << n, inf);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int i = 0;
    while (!(mask & (1u << i))) ++i;
    const std::uint32_t rest = mask & ~(1u << i);
    std::int64_t b = inf;
    if (has_b && best[rest] < inf) b = best[rest] + boundary[i];
    for (int j = i + 1; j < n; ++j)
      if ((rest & (1u << j)) && best[rest & ~(1u << j)] < inf)
        b = std::min(b, best[rest & ~(1u << j)] + cost[i][j]);
    best[mask] = b;
  }
  return best[(std::size_t{1} << n) - 1];
}

std::int64_t matching_weight(const std::vector<std::vector<std::int64_t>>& cost,
                             const std::vector<std::int64_t>& boundary,
                             const std::vector<int>& mate) {
  std::int64_t w = 0;
  for (int i = 0; i < static_cast<int>(mate.size()); ++i) {
    if (mate[i] < 0)
      w += boundary.at(i);
    else if (mate[i] > i)
      w += cost[i][mate[i]];
  }
  return w;
}

}  // namespace holo
