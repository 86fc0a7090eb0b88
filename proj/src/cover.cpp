#include "ghlab/cover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace ghlab {

// --- FlatMap64 ----------------------------------------------------------------

namespace {
constexpr int64_t kEmptySlot = -1;
inline size_t slot_hash(int64_t key) {
  return static_cast<uint64_t>(key) * 0x9E3779B97F4A7C15ULL >> 17;
}
}  // namespace

int32_t FlatMap64::find(int64_t key) const {
  if (keys_.empty()) return -1;
  const size_t mask = keys_.size() - 1;
  size_t pos = slot_hash(key) & mask;
  while (keys_[pos] != kEmptySlot) {
    if (keys_[pos] == key) return vals_[pos];
    pos = (pos + 1) & mask;
  }
  return -1;
}

void FlatMap64::grow() {
  const size_t cap = keys_.empty() ? (1 << 16) : keys_.size() * 2;
  std::vector<int64_t> nk(cap, kEmptySlot);
  std::vector<int32_t> nv(cap, 0);
  const size_t mask = cap - 1;
  for (size_t i = 0; i < keys_.size(); ++i) {
    if (keys_[i] == kEmptySlot) continue;
    size_t pos = slot_hash(keys_[i]) & mask;
    while (nk[pos] != kEmptySlot) pos = (pos + 1) & mask;
    nk[pos] = keys_[i];
    nv[pos] = vals_[i];
  }
  keys_.swap(nk);
  vals_.swap(nv);
}

int32_t FlatMap64::find_or_insert(int64_t key, int32_t value) {
  if (keys_.empty() || used_ * 10 >= keys_.size() * 6) grow();
  const size_t mask = keys_.size() - 1;
  size_t pos = slot_hash(key) & mask;
  while (keys_[pos] != kEmptySlot) {
    if (keys_[pos] == key) return vals_[pos];
    pos = (pos + 1) & mask;
  }
  keys_[pos] = key;
  vals_[pos] = value;
  ++used_;
  return -1;
}

// --- WordTable ----------------------------------------------------------------

void WordTable::rehash() {
  size_t cap = 64;
  while (cap < words_.size() * 4) cap <<= 1;
  index_.assign(cap, -1);
  for (int32_t id = 1; id < static_cast<int32_t>(words_.size()); ++id) {
    uint64_t h = 1469598103934665603ULL;
    for (int16_t x : words_[id]) {
      h ^= static_cast<uint16_t>(x);
      h *= 1099511628211ULL;
    }
    size_t pos = h & (cap - 1);
    while (index_[pos] >= 0) pos = (pos + 1) & (cap - 1);
    index_[pos] = id;
  }
}

int32_t WordTable::lookup_or_insert(std::vector<int16_t>&& word) {
  if (word.empty()) return 0;
  if (index_.empty() || words_.size() * 10 > index_.size() * 6) rehash();
  uint64_t h = 1469598103934665603ULL;
  for (int16_t x : word) {
    h ^= static_cast<uint16_t>(x);
    h *= 1099511628211ULL;
  }
  const size_t mask = index_.size() - 1;
  size_t pos = h & mask;
  while (index_[pos] >= 0) {
    if (words_[index_[pos]] == word) return index_[pos];
    pos = (pos + 1) & mask;
  }
  const int32_t id = static_cast<int32_t>(words_.size());
  words_.push_back(std::move(word));
  index_[pos] = id;
  return id;
}

int32_t WordTable::append(int32_t w, const std::vector<int16_t>& suffix) {
  if (suffix.empty()) return w;
  std::vector<int16_t> out = words_[w];
  for (int16_t letter : suffix) {
    if (!out.empty() && out.back() == static_cast<int16_t>(-letter))
      out.pop_back();
    else
      out.push_back(letter);
  }
  return lookup_or_insert(std::move(out));
}

int32_t WordTable::inverse(int32_t w) {
  const auto& src = words_[w];
  std::vector<int16_t> out(src.size());
  for (size_t i = 0; i < src.size(); ++i)
    out[i] = static_cast<int16_t>(-src[src.size() - 1 - i]);
  return lookup_or_insert(std::move(out));
}

// --- homotopy labels by elementary collapse -----------------------------------

HomotopyLabels homotopy_labels(const DiscretizedLengthSpace& space,
                               const std::vector<std::array<int, 3>>& faces,
                               int root, WordTable& words) {
  const auto& edges = space.graph.edges();
  const int n = space.size();
  const int ne = static_cast<int>(edges.size());

  std::unordered_map<int64_t, int> edge_id;
  edge_id.reserve(edges.size() * 2);
  for (int i = 0; i < ne; ++i)
    edge_id[static_cast<int64_t>(edges[i].u) * n + edges[i].v] = i;
  auto find_edge = [&](int a, int b) -> int {
    if (a > b) std::swap(a, b);
    auto it = edge_id.find(static_cast<int64_t>(a) * n + b);
    if (it == edge_id.end())
      throw input_error("homotopy_labels: face edge missing from graph");
    return it->second;
  };

  // Face slots in cyclic order with traversal directions.
  const int nf = static_cast<int>(faces.size());
  std::vector<std::array<int, 3>> slot_edge(nf);
  std::vector<std::array<bool, 3>> slot_fwd(nf);
  std::vector<std::array<int, 2>> faces_of(ne, {-1, -1});
  std::vector<int> face_count(ne, 0);
  for (int f = 0; f < nf; ++f) {
    const auto& t = faces[f];
    const int vs[4] = {t[0], t[1], t[2], t[0]};
    for (int s = 0; s < 3; ++s) {
      const int e = find_edge(vs[s], vs[s + 1]);
      slot_edge[f][s] = e;
      slot_fwd[f][s] = vs[s] < vs[s + 1];
      if (face_count[e] >= 2)
        throw input_error("homotopy_labels: edge on more than two faces");
      faces_of[e][face_count[e]++] = f;
    }
  }

  // Spanning tree from the root (shortest-path tree keeps label words short).
  std::vector<int> parent;
  auto d = space.graph.dijkstra(root, kInf, &parent);
  for (int v = 0; v < n; ++v)
    if (d[v] == kInf)
      throw input_error("homotopy_labels: base not connected from root");

  enum : char { kUnresolved = 0, kTree = 1, kDetermined = 2, kGenerator = 3 };
  std::vector<char> status(ne, kUnresolved);
  for (int v = 0; v < n; ++v)
    if (parent[v] >= 0) status[find_edge(parent[v], v)] = kTree;

  std::vector<char> alive(nf, 1);
  std::vector<std::pair<int, int>> collapse_stack;  // (face, edge)
  collapse_stack.reserve(nf);
  std::vector<int> queue;
  for (int e = 0; e < ne; ++e)
    if (face_count[e] == 1 && status[e] == kUnresolved) queue.push_back(e);

  int collapsed = 0;
  while (!queue.empty()) {
    const int e = queue.back();
    queue.pop_back();
    if (status[e] != kUnresolved || face_count[e] != 1) continue;
    int f = -1;
    for (int cand : faces_of[e])
      if (cand >= 0 && alive[cand]) f = cand;
    if (f < 0) continue;
    collapse_stack.emplace_back(f, e);
    status[e] = kDetermined;
    alive[f] = 0;
    ++collapsed;
    for (int s = 0; s < 3; ++s) {
      const int e2 = slot_edge[f][s];
      if (--face_count[e2] == 1 && status[e2] == kUnresolved) queue.push_back(e2);
    }
  }
  if (collapsed != nf)
    throw computation_error(
        "homotopy_labels: complex does not collapse to a graph (closed "
        "surface patch?); fundamental group is not free here");

  HomotopyLabels out;
  out.fwd.assign(ne, words.identity());
  out.rev.assign(ne, words.identity());
  std::vector<char> has_word(ne, 0);
  for (int e = 0; e < ne; ++e) {
    if (status[e] == kTree) has_word[e] = 1;
    if (status[e] == kUnresolved) {
      status[e] = kGenerator;
      const int16_t g = static_cast<int16_t>(++out.generator_count);
      out.fwd[e] = words.single(g);
      out.rev[e] = words.single(static_cast<int16_t>(-g));
      has_word[e] = 1;
    }
  }

  auto slot_word = [&](int f, int s) {
    const int e = slot_edge[f][s];
    return slot_fwd[f][s] ? out.fwd[e] : out.rev[e];
  };

  for (auto it = collapse_stack.rbegin(); it != collapse_stack.rend(); ++it) {
    const auto [f, e] = *it;
    int slot = -1;
    for (int s = 0; s < 3; ++s)
      if (slot_edge[f][s] == e) slot = s;
    for (int s = 0; s < 3; ++s)
      if (s != slot && !has_word[slot_edge[f][s]])
        throw computation_error("homotopy_labels: resolution order broken");
    // Cycle relation w0*w1*w2 = 1 rotated so the unknown comes first:
    // w_slot = (w_next * w_nextnext)^(-1).
    const int32_t rest =
        words.concat(slot_word(f, (slot + 1) % 3), slot_word(f, (slot + 2) % 3));
    const int32_t w = words.inverse(rest);
    if (slot_fwd[f][slot]) {
      out.fwd[e] = w;
      out.rev[e] = words.inverse(w);
    } else {
      out.rev[e] = w;
      out.fwd[e] = words.inverse(w);
    }
    has_word[e] = 1;
  }

  for (int f = 0; f < nf; ++f) {
    int32_t acc = words.identity();
    for (int s = 0; s < 3; ++s) acc = words.concat(acc, slot_word(f, s));
    if (acc != words.identity())
      throw computation_error("homotopy_labels: face relation failed to close");
  }
  return out;
}

// --- truncated unfolding -------------------------------------------------------

int TruncatedCover::base_index_of(int ambient_vertex) const {
  for (int i = 0; i < static_cast<int>(base_to_ambient.size()); ++i)
    if (base_to_ambient[i] == ambient_vertex) return i;
  return -1;
}

int32_t TruncatedCover::transition(int32_t w, int32_t label) {
  if (label == 0) return w;
  const int64_t key = (static_cast<int64_t>(w) << 31) | label;
  const int32_t hit = transitions_.find(key);
  if (hit >= 0) return hit;
  const int32_t result = words.concat(w, label);
  transitions_.find_or_insert(key, result);
  return result;
}

std::vector<int32_t> TruncatedCover::fiber(int base_vertex) const {
  std::vector<int32_t> out;
  for (int32_t s = 0; s < static_cast<int32_t>(proj.size()); ++s)
    if (proj[s] == base_vertex) out.push_back(s);
  return out;
}

std::vector<double> TruncatedCover::lifted_dist(std::span<const int32_t> sources,
                                                double cutoff,
                                                std::vector<int32_t>* nearest) {
  std::vector<double> d(proj.size(), kInf);
  if (nearest) nearest->assign(proj.size(), -1);
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (size_t i = 0; i < sources.size(); ++i) {
    const int32_t s = sources[i];
    if (d[s] > 0.0) {
      d[s] = 0.0;
      if (nearest) (*nearest)[s] = static_cast<int32_t>(i);
      heap.emplace(0.0, s);
    }
  }
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > d[u]) continue;
    for_each_lifted_neighbor(u, [&](int32_t v, double w) {
      const double dv = du + w;
      if (dv > cutoff) return;
      if (dv < d[v]) {
        d[v] = dv;
        if (nearest) (*nearest)[v] = (*nearest)[u];
        heap.emplace(dv, v);
      }
    });
  }
  return d;
}

double TruncatedCover::min_pairwise_distance(std::span<const int32_t> sources) {
  if (sources.size() < 2) return kInf;
  std::vector<int32_t> owner;
  auto d = lifted_dist(sources, kInf, &owner);
  double best = kInf;
  for (int32_t s = 0; s < static_cast<int32_t>(proj.size()); ++s) {
    if (owner[s] < 0) continue;
    for_each_lifted_neighbor(s, [&](int32_t t, double w) {
      if (owner[t] >= 0 && owner[t] != owner[s])
        best = std::min(best, d[s] + w + d[t]);
    });
  }
  return best;
}

int TruncatedCover::greedy_cover_count(double radius, double eps) {
  const int32_t n = static_cast<int32_t>(proj.size());
  std::vector<char> covered(n, 0);
  int count = 0;
  using Item = std::pair<double, int32_t>;
  std::vector<double> local(n, kInf);
  std::vector<int32_t> touched;
  for (int32_t s = 0; s < n; ++s) {
    if (covered[s] || !(dist[s] < radius - kPointTol)) continue;
    ++count;
    // Truncated Dijkstra marking the open eps-ball around s as covered.
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    local[s] = 0.0;
    touched.push_back(s);
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > local[u]) continue;
      covered[u] = 1;
      for_each_lifted_neighbor(u, [&](int32_t v, double w) {
        const double dv = du + w;
        if (dv >= eps - kPointTol) return;
        if (dv < local[v]) {
          if (local[v] == kInf) touched.push_back(v);
          local[v] = dv;
          heap.emplace(dv, v);
        }
      });
    }
    for (int32_t t : touched) local[t] = kInf;
    touched.clear();
  }
  return count;
}

double TruncatedCover::max_root_distance() const {
  double m = 0.0;
  for (double v : dist) m = std::max(m, v);
  return m;
}

double TruncatedCover::projection_radius() const {
  std::vector<double> best(base.size(), kInf);
  for (size_t s = 0; s < proj.size(); ++s)
    best[proj[s]] = std::min(best[proj[s]], dist[s]);
  double m = 0.0;
  for (double v : best) m = std::max(m, v);
  return m;
}

namespace {

// Core Dijkstra unfolding over (vertex, word) states. `mask`, when given,
// restricts exploration to base vertices allowed by it.
TruncatedCover unfold_cover(DiscretizedLengthSpace ball,
                            std::vector<int> back_map,
                            std::vector<std::array<int, 3>> faces,
                            int root_vertex, double r_trunc,
                            const std::vector<char>* mask) {
  TruncatedCover cover;
  cover.base = std::move(ball);
  cover.base_to_ambient = std::move(back_map);
  cover.base_faces = std::move(faces);
  cover.r_trunc = r_trunc;
  cover.labels =
      homotopy_labels(cover.base, cover.base_faces, root_vertex, cover.words);

  const int nb = cover.base.size();
  auto state_key = [nb](int v, int32_t w) {
    return static_cast<int64_t>(w) * nb + v;
  };

  auto add_state = [&](int v, int32_t w, double d) -> int32_t {
    const int32_t id = static_cast<int32_t>(cover.proj.size());
    const int32_t existing = cover.states.find_or_insert(state_key(v, w), id);
    if (existing >= 0) return existing;
    cover.proj.push_back(v);
    cover.word.push_back(w);
    cover.dist.push_back(d);
    return id;
  };

  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  cover.root = add_state(root_vertex, cover.words.identity(), 0.0);
  heap.emplace(0.0, cover.root);

  while (!heap.empty()) {
    auto [du, s] = heap.top();
    heap.pop();
    if (du > cover.dist[s]) continue;
    const int v = cover.proj[s];
    const int32_t w = cover.word[s];
    cover.base.graph.for_each_neighbor(v, [&](int u, double wt, int eid) {
      if (mask && !(*mask)[u]) return;
      const double dv = du + wt;
      if (dv > r_trunc + kPointTol) {
        cover.truncated = true;
        return;
      }
      const auto& e = cover.base.graph.edges()[eid];
      const int32_t lab =
          (v == e.u) ? cover.labels.fwd[eid] : cover.labels.rev[eid];
      const int32_t w2 = cover.transition(w, lab);
      const int32_t t = add_state(u, w2, dv);
      if (dv < cover.dist[t] || cover.dist[t] == dv) {
        if (dv <= cover.dist[t]) {
          cover.dist[t] = dv;
          heap.emplace(dv, t);
        }
      }
    });
  }
  return cover;
}

std::pair<DiscretizedLengthSpace, std::vector<int>> ball_subspace(
    const SurfaceComplex& cx, const DiscretizedLengthSpace& space, int center,
    double r, std::vector<std::array<int, 3>>* faces_out) {
  auto from_center = space.dist_from(center);
  std::vector<int> members = ball_from_dists(from_center, r, BallMode::open);
  if (members.empty())
    throw input_error("cover: empty ball around the chosen center");
  std::vector<int> back;
  auto ball = space.induced_subspace(members, "|ball", &back, true);
  std::vector<int> to_local(space.size(), -1);
  for (int i = 0; i < static_cast<int>(back.size()); ++i) to_local[back[i]] = i;
  faces_out->clear();
  for (const auto& f : cx.faces) {
    const int a = to_local[f[0]], b = to_local[f[1]], c = to_local[f[2]];
    if (a >= 0 && b >= 0 && c >= 0) faces_out->push_back({a, b, c});
  }
  return {std::move(ball), std::move(back)};
}

}  // namespace

TruncatedCover universal_cover_ball(const SurfaceComplex& cx, int center,
                                    double r, double r_trunc) {
  if (!(r > 0) || r_trunc < r)
    throw input_error("universal_cover_ball: need 0 < r <= r_trunc");
  auto space = cx.to_length_space();
  std::vector<std::array<int, 3>> faces;
  auto [ball, back] = ball_subspace(cx, space, center, r, &faces);
  int root_local = -1;
  for (int i = 0; i < static_cast<int>(back.size()); ++i)
    if (back[i] == center) root_local = i;
  return unfold_cover(std::move(ball), std::move(back), std::move(faces),
                      root_local, r_trunc, nullptr);
}

TruncatedCover normal_cover(const SurfaceComplex& cx, int p, double r1,
                            double r2, double r_trunc) {
  if (!(0 < r1) || !(r1 < r2))
    throw input_error("normal_cover: need 0 < r1 < r2");
  auto space = cx.to_length_space();
  std::vector<std::array<int, 3>> faces;
  auto [ball, back] = ball_subspace(cx, space, p, r2, &faces);
  int root_local = -1;
  for (int i = 0; i < static_cast<int>(back.size()); ++i)
    if (back[i] == p) root_local = i;

  // Mask: lifts may only sit over the inner ball B_{r1}(p).
  auto from_p = space.dist_from(p);
  std::vector<char> mask(ball.size(), 0);
  for (int i = 0; i < ball.size(); ++i)
    mask[i] = in_ball(from_p[back[i]], r1, BallMode::open) ? 1 : 0;
  if (!mask[root_local])
    throw input_error("normal_cover: base point not inside B_{r1}");
  return unfold_cover(std::move(ball), std::move(back), std::move(faces),
                      root_local, r_trunc, &mask);
}

// --- experiments ---------------------------------------------------------------

std::vector<SwPackingRow> experiment_sw_packing(int k_min, int k_max,
                                                double mesh_h) {
  if (k_min < 2 || k_max < k_min)
    throw input_error("experiment_sw_packing: bad k range");
  std::vector<SwPackingRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    SwPackingRow row;
    row.k = k;
    row.mesh_h = mesh_h;
    row.r_k = 0.5 * (1.0 + 1.0 / std::cos(M_PI / (2 * k)));

    auto cx = build_polygon_rp2(k, mesh_h);
    const int o = cx.marked.at("o");
    auto cover = universal_cover_ball(cx, o, row.r_k, 4.0 + 2.0 * mesh_h);
    row.base_vertices = cover.base.size();
    row.states = cover.state_count();
    row.truncated = cover.truncated;

    const int o_local = cover.base_index_of(o);
    std::vector<int32_t> lifts;
    for (int32_t s : cover.fiber(o_local))
      if (in_ball(cover.dist[s], 4.0, BallMode::open)) lifts.push_back(s);
    row.lift_count = static_cast<int>(lifts.size());
    row.min_pairwise = cover.min_pairwise_distance(lifts);
    row.cov1 = cover.greedy_cover_count(4.0, 1.0);
    row.cov_half = cover.greedy_cover_count(4.0, 0.5);

    auto ncover = normal_cover(cx, o, 0.5, row.r_k, 2.5);
    row.normal_states = ncover.state_count();
    row.normal_cov1 = ncover.greedy_cover_count(kInf, 1.0);
    row.normal_cov_half = ncover.greedy_cover_count(kInf, 0.5);

    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    rows.push_back(row);
  }
  return rows;
}

std::vector<PetersenRow> experiment_petersen(double mesh_h,
                                             std::vector<double> detour_scales,
                                             double r_trunc) {
  if (r_trunc < 2 * M_PI)
    throw input_error("experiment_petersen: r_trunc must be >= 2*pi");
  std::vector<PetersenRow> rows;
  for (double scale : detour_scales) {
    PetersenRow row;
    row.detour_scale = scale;
    row.mesh_h = mesh_h;

    auto cx = build_glued_sphere(mesh_h, scale);
    const int o = cx.marked.at("o");
    auto cover = universal_cover_ball(cx, o, M_PI / 2.0, r_trunc);
    row.h_actual = cover.base.resolution;
    row.states = cover.state_count();
    row.truncated = cover.truncated;
    row.max_lift_dist = cover.max_root_distance();
    row.bound = M_PI + 2.0 * M_PI * scale + 10.0 * row.h_actual;
    row.within_bound = row.max_lift_dist <= row.bound + kPointTol;
    row.projection_radius = cover.projection_radius();

    const int o_local = cover.base_index_of(o);
    int count = 0;
    for (int32_t s : cover.fiber(o_local))
      if (in_ball(cover.dist[s], 2.0 * M_PI, BallMode::open)) ++count;
    row.lifts_in_2pi = count;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ghlab
