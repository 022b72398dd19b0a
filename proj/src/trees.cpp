#include "ffgeom/trees.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>
#include <unordered_set>

#include "ffgeom/error.hpp"
#include "ffgeom/stats.hpp"

namespace ffgeom {
namespace {

std::uint32_t parse_u32(std::string_view text, const std::string& what) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(errc::parse_error, "bad " + what + " '" + std::string(text) + "'");
  return value;
}

// Induced subtree on a sorted vertex subset, relabeled 1..|subset| in order.
TreeSpec subtree_on(const TreeSpec& tree, const std::vector<std::uint32_t>& vertices,
                    std::uint32_t pin) {
  const auto relabel = [&](std::uint32_t v) {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    return static_cast<std::uint32_t>(it - vertices.begin()) + 1;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& [a, b] : tree.edges)
    if (std::binary_search(vertices.begin(), vertices.end(), a) &&
        std::binary_search(vertices.begin(), vertices.end(), b))
      edges.emplace_back(relabel(a), relabel(b));
  return make_tree_spec(static_cast<std::uint32_t>(vertices.size()), std::move(edges),
                        relabel(pin));
}

std::pair<PointSet, PointSet> split_pool(const PointSet& pool, SplitStrategy strategy) {
  return strategy == SplitStrategy::alternating ? pool.split_alternating() : pool.split_halves();
}

BoundNode bound_recurse(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                        const PointSet& pool, const CertifyParams& params) {
  BoundNode node;
  node.tree = tree;
  node.pin_point = x;
  node.pool = pool.points();

  if (tree.k() == 1) {
    node.tag = BoundNode::Case::base;
    node.value = pinned_nonzero_distances(x, pool).size();
    return node;
  }

  if (tree.degree(tree.pin) == 1) {
    node.tag = BoundNode::Case::deg1;
    const auto [p1, p2] = split_pool(pool, params.split_strategy);
    node.sub_pools = {p1.points(), p2.points()};

    const TreeSpec trimmed = remove_pin_leaf(tree);

    std::uint64_t min_child = 0;
    for (const FieldElem delta : pinned_nonzero_distances(x, p2)) {
      PlanePoint witness{};
      for (const auto& y : p2.points())
        if (distance(ctx, x, y) == delta) {
          witness = y;
          break;
        }
      node.chosen.emplace_back(delta, witness);
      node.children.push_back(bound_recurse(ctx, trimmed, witness, p1, params));
      min_child = node.children.size() == 1 ? node.children.back().value
                                            : std::min(min_child, node.children.back().value);
    }
    node.value = node.chosen.size() * min_child;
    return node;
  }

  // Pin of degree >= 2: cut off the branch through the smallest neighbor.
  node.tag = BoundNode::Case::split;
  const auto [t1, t2] = split_tree_at_pin(tree);

  const auto [q1, q2] = split_pool(pool, params.split_strategy);
  node.sub_pools = {q1.points(), q2.points()};
  node.children.push_back(bound_recurse(ctx, t1, x, q1, params));
  node.children.push_back(bound_recurse(ctx, t2, x, q2, params));
  node.value = node.children[0].value * node.children[1].value;
  return node;
}

}  // namespace

std::uint32_t TreeSpec::degree(std::uint32_t vertex) const {
  std::uint32_t d = 0;
  for (const auto& [a, b] : edges) d += (a == vertex) + (b == vertex);
  return d;
}

std::vector<std::uint32_t> TreeSpec::neighbors(std::uint32_t vertex) const {
  std::vector<std::uint32_t> out;
  for (const auto& [a, b] : edges) {
    if (a == vertex) out.push_back(b);
    if (b == vertex) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreeSpec make_tree_spec(std::uint32_t num_vertices,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                        std::uint32_t pin) {
  if (num_vertices < 2) fail(errc::not_a_tree, "a tree needs at least two vertices");
  for (auto& [a, b] : edges) {
    if (a == b) fail(errc::not_a_tree, "self-loop at vertex " + std::to_string(a));
    if (a < 1 || a > num_vertices || b < 1 || b > num_vertices)
      fail(errc::not_a_tree, "edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    fail(errc::not_a_tree, "duplicate edge");
  if (edges.size() != num_vertices - 1)
    fail(errc::not_a_tree, "a tree on " + std::to_string(num_vertices) + " vertices has " +
                               std::to_string(num_vertices - 1) + " edges, got " +
                               std::to_string(edges.size()));
  // Connectivity by union of components.
  std::vector<std::uint32_t> root(num_vertices + 1);
  for (std::uint32_t v = 1; v <= num_vertices; ++v) root[v] = v;
  const auto find = [&](std::uint32_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (const auto& [a, b] : edges) {
    const std::uint32_t ra = find(a), rb = find(b);
    if (ra == rb) fail(errc::not_a_tree, "cycle through edge " + std::to_string(a) + "-" +
                                             std::to_string(b));
    root[ra] = rb;
  }
  if (pin < 1 || pin > num_vertices)
    fail(errc::bad_pin, "pin " + std::to_string(pin) + " outside 1.." +
                            std::to_string(num_vertices));

  TreeSpec tree;
  tree.num_vertices = num_vertices;
  tree.edges = std::move(edges);
  tree.pin = pin;
  return tree;
}

TreeSpec parse_tree_spec(const std::string& text) {
  std::uint32_t num_vertices = 0, pin = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  bool saw_vertices = false, saw_edges = false, saw_pin = false;

  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    const std::string_view token(text.data() + pos, end - pos);
    pos = end;

    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos)
      fail(errc::parse_error, "expected key=value, got '" + std::string(token) + "'");
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "vertices") {
      num_vertices = parse_u32(value, "vertex count");
      saw_vertices = true;
    } else if (key == "pin") {
      pin = parse_u32(value, "pin");
      saw_pin = true;
    } else if (key == "edges") {
      saw_edges = true;
      std::size_t at = 0;
      while (at <= value.size()) {
        const std::size_t comma = std::min(value.find(',', at), value.size());
        const std::string_view edge = value.substr(at, comma - at);
        const std::size_t dash = edge.find('-');
        if (dash == std::string_view::npos)
          fail(errc::parse_error, "expected <i>-<j>, got '" + std::string(edge) + "'");
        edges.emplace_back(parse_u32(edge.substr(0, dash), "edge endpoint"),
                           parse_u32(edge.substr(dash + 1), "edge endpoint"));
        at = comma + 1;
      }
    } else {
      fail(errc::parse_error, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!saw_vertices || !saw_edges || !saw_pin)
    fail(errc::parse_error, "tree spec needs vertices=, edges=, pin=");
  return make_tree_spec(num_vertices, std::move(edges), pin);
}

std::string tree_spec_to_string(const TreeSpec& tree) {
  std::string out = "vertices=" + std::to_string(tree.num_vertices) + " edges=";
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tree.edges[i].first) + "-" + std::to_string(tree.edges[i].second);
  }
  out += " pin=" + std::to_string(tree.pin);
  return out;
}

TreeSpec remove_pin_leaf(const TreeSpec& tree) {
  if (tree.k() < 2) fail(errc::invalid_argument, "removing the pin needs at least two edges");
  if (tree.degree(tree.pin) != 1)
    fail(errc::invalid_argument, "pin has degree " + std::to_string(tree.degree(tree.pin)) +
                                     ", expected a leaf");
  const std::uint32_t neighbor = tree.neighbors(tree.pin).front();
  std::vector<std::uint32_t> rest;
  for (std::uint32_t v = 1; v <= tree.num_vertices; ++v)
    if (v != tree.pin) rest.push_back(v);
  return subtree_on(tree, rest, neighbor);
}

std::pair<TreeSpec, TreeSpec> split_tree_at_pin(const TreeSpec& tree) {
  if (tree.degree(tree.pin) < 2)
    fail(errc::invalid_argument, "splitting needs a pin of degree >= 2");
  const std::uint32_t first_neighbor = tree.neighbors(tree.pin).front();
  std::vector<bool> in_branch(tree.num_vertices + 1, false);
  std::vector<std::uint32_t> queue{first_neighbor};
  in_branch[first_neighbor] = true;
  while (!queue.empty()) {
    const std::uint32_t v = queue.back();
    queue.pop_back();
    for (const std::uint32_t w : tree.neighbors(v))
      if (w != tree.pin && !in_branch[w]) {
        in_branch[w] = true;
        queue.push_back(w);
      }
  }
  std::vector<std::uint32_t> branch{tree.pin}, remainder;
  for (std::uint32_t v = 1; v <= tree.num_vertices; ++v)
    (in_branch[v] ? branch : remainder).push_back(v);
  std::sort(branch.begin(), branch.end());
  // remainder already contains the pin (never in_branch) and stays sorted.
  return {subtree_on(tree, branch, tree.pin), subtree_on(tree, remainder, tree.pin)};
}

Embedding::Embedding(std::uint32_t num_vertices)
    : slots_(num_vertices, std::pair<PlanePoint, bool>{PlanePoint{}, false}) {
  if (num_vertices == 0) fail(errc::invalid_argument, "embedding needs vertices");
}

void Embedding::assign(std::uint32_t vertex, PlanePoint pt) {
  if (vertex < 1 || vertex > slots_.size())
    fail(errc::invalid_argument, "vertex " + std::to_string(vertex) + " out of range");
  if (slots_[vertex - 1].second)
    fail(errc::invalid_argument, "vertex " + std::to_string(vertex) + " already assigned");
  for (const auto& [other, set] : slots_)
    if (set && other == pt) fail(errc::not_injective, "point already used by another vertex");
  slots_[vertex - 1] = {pt, true};
}

bool Embedding::assigned(std::uint32_t vertex) const {
  return vertex >= 1 && vertex <= slots_.size() && slots_[vertex - 1].second;
}

bool Embedding::complete() const {
  for (const auto& [pt, set] : slots_)
    if (!set) return false;
  return true;
}

PlanePoint Embedding::at(std::uint32_t vertex) const {
  if (!assigned(vertex))
    fail(errc::incomplete_embedding, "vertex " + std::to_string(vertex) + " not assigned");
  return slots_[vertex - 1].first;
}

EdgeLengthVector edge_length_vector(const FieldCtx& ctx, const TreeSpec& tree,
                                    const Embedding& emb) {
  EdgeLengthVector vec;
  vec.entries.reserve(tree.edges.size());
  for (const auto& [a, b] : tree.edges) vec.entries.push_back(distance(ctx, emb.at(a), emb.at(b)));
  return vec;
}

std::uint64_t count_distinct_pinned_trees(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                                          const PointSet& pool, CountMode mode,
                                          std::uint64_t budget) {
  const PointSet clean = pool.without(x);
  const std::uint32_t k = tree.k();
  if (big_pow(BigInt(clean.size()), k) > BigInt(budget))
    fail(errc::too_large, "enumeration of " + std::to_string(clean.size()) + "^" +
                              std::to_string(k) + " embeddings exceeds the budget of " +
                              std::to_string(budget));
  if (clean.size() < k) return 0;
  const auto& pts = clean.points();

  // Vertex order that always closes the edge to an already-placed parent.
  std::vector<std::uint32_t> order{tree.pin};
  std::vector<std::uint32_t> parent(tree.num_vertices + 1, 0);
  std::vector<std::uint32_t> edge_slot(tree.num_vertices + 1, 0);
  std::vector<bool> seen(tree.num_vertices + 1, false);
  seen[tree.pin] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint32_t v = order[head];
    for (const std::uint32_t w : tree.neighbors(v))
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        const std::pair<std::uint32_t, std::uint32_t> key{std::min(v, w), std::max(v, w)};
        edge_slot[w] = static_cast<std::uint32_t>(
            std::lower_bound(tree.edges.begin(), tree.edges.end(), key) - tree.edges.begin());
        order.push_back(w);
      }
  }

  const unsigned bits = std::bit_width(ctx.q() - 1);
  const bool packed = static_cast<std::uint64_t>(bits) * k <= 64;
  std::unordered_set<std::uint64_t> packed_vectors;
  std::set<std::vector<std::uint32_t>> wide_vectors;

  std::vector<PlanePoint> placed(tree.num_vertices + 1);
  placed[tree.pin] = x;
  std::vector<bool> used(pts.size(), false);
  std::vector<std::uint32_t> vec(k, 0);

  const auto dfs = [&](const auto& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      if (packed) {
        std::uint64_t fp = 0;
        for (const std::uint32_t r : vec) fp = fp << bits | r;
        packed_vectors.insert(fp);
      } else {
        wide_vectors.insert(vec);
      }
      return;
    }
    const std::uint32_t v = order[depth];
    const PlanePoint anchor = placed[parent[v]];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      const FieldElem d = distance(ctx, anchor, pts[i]);
      if (mode == CountMode::nonzero && d.rank == 0) continue;
      used[i] = true;
      placed[v] = pts[i];
      vec[edge_slot[v]] = d.rank;
      self(self, depth + 1);
      used[i] = false;
    }
  };
  dfs(dfs, 1);
  return packed ? packed_vectors.size() : wide_vectors.size();
}

LowerBound pinned_tree_lower_bound(const FieldCtx& ctx, const TreeSpec& tree, PlanePoint x,
                                   const PointSet& pool, const CertifyParams& params) {
  const PointSet clean = pool.without(x);
  if (clean.empty()) fail(errc::empty_pool, "lower bound needs a nonempty pool");
  BoundNode trace = bound_recurse(ctx, tree, x, clean, params);
  return {trace.value, std::move(trace)};
}

}  // namespace ffgeom
