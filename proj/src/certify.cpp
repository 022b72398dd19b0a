#include "ffgeom/certify.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "ffgeom/error.hpp"
#include "ffgeom/stats.hpp"
#include "exact_terms.hpp"

namespace ffgeom {
namespace {

using detail::PowerTerm;

// Immutable knobs shared by every node of one certification run.
struct CertRun {
  const FieldCtx& ctx;
  const CertifyParams& params;
  Regime regime;                        // regime actually executed
  std::uint32_t tree_k;                 // edge count of the full tree
  std::optional<PowerTerm> iso_ceiling; // top-level isotropic ceiling (arbitrary)
};

// Both halves cut to exactly floor(n/2) points; the larger alternating half
// loses its lexicographically last point so the two sides always match.
std::pair<PointSet, PointSet> split_even(const PointSet& pool, SplitStrategy strategy) {
  auto [a, b] =
      strategy == SplitStrategy::alternating ? pool.split_alternating() : pool.split_halves();
  const std::size_t half = pool.size() / 2;
  return {a.first_n(half), b.first_n(half)};
}

Threshold local_threshold(const CertRun& run, std::uint64_t n_local) {
  const std::string& rule = run.params.threshold_rule;
  if (rule.rfind("fixed:", 0) == 0) return Threshold::rational(parse_rational(rule.substr(6)));
  if (rule != "default") fail(errc::config_error, "unknown threshold rule '" + rule + "'");
  switch (run.regime) {
    case Regime::medium_prime:
      return Threshold::rational(Rational(run.ctx.p(), 129));
    case Regime::large_prime:
      return Threshold::rational(Rational(run.ctx.p(), 24));
    case Regime::large_q:
      return Threshold::rational(Rational(run.ctx.q(), 24));
    case Regime::arbitrary:
      return Threshold::two_thirds_root(8 * (run.params.K + 1), n_local);
    case Regime::auto_prime:
      break;  // dispatched before any node runs
  }
  fail(errc::config_error, "regime has no threshold");
}

// Premise of one extraction application: pins are drawn from `pins`, their
// distances measured into `measured`.
bool application_premise(const CertRun& run, const PointSet& measured, const PointSet& pins,
                         std::vector<std::string>& notes) {
  const BigInt nm = measured.size(), np = pins.size();
  const std::uint32_t p = run.ctx.p();
  const std::uint64_t q = run.ctx.q();
  switch (run.regime) {
    case Regime::medium_prime: {
      const bool ok = nm == np && BigInt(625) * big_pow(p, 5) <= big_pow(nm, 4) &&
                      big_pow(nm, 3) <= big_pow(p, 4);
      notes.push_back("premise 625p^5 <= n^4 and n^3 <= p^4 at n=" + nm.str() +
                      (ok ? ": holds" : ": out of range"));
      return ok;
    }
    case Regime::large_prime:
    case Regime::large_q: {
      const BigInt c = run.regime == Regime::large_prime ? BigInt(p) : BigInt(q);
      const bool ok = nm >= 4 * c && np >= 8 * c && np * nm * nm >= 64 * big_pow(c, 4);
      notes.push_back("premise |measured| >= 4c, |pins| >= 8c, |pins||measured|^2 >= 64c^4 at c=" +
                      c.str() + (ok ? ": holds" : ": out of range"));
      return ok;
    }
    case Regime::arbitrary: {
      const std::uint64_t iso = max_isotropic_line_count(measured);
      const bool ok = nm == np && BigInt(4) * iso < nm;
      notes.push_back("premise 4*max_isotropic < n with max_isotropic=" + std::to_string(iso) +
                      ", n=" + nm.str() + (ok ? ": holds" : ": out of range"));
      return ok;
    }
    case Regime::auto_prime:
      break;
  }
  fail(errc::config_error, "regime has no premise");
}

// Inheritance check for the arbitrary regime: the half-size ceiling of a
// sub-instance must still dominate the top-level ceiling.
bool inherited_ceiling_ok(const CertRun& run, std::uint64_t half_f, std::uint32_t sub_k,
                          std::vector<std::string>& notes) {
  if (!run.iso_ceiling || sub_k == 0) return true;
  const PowerTerm sub = detail::isotropic_ceiling_term(half_f, sub_k, run.params.K);
  const bool ok = detail::compare_power_terms(sub, *run.iso_ceiling) >= 0;
  notes.push_back("inherited ceiling " + detail::power_term_text(sub) + (ok ? " >= " : " < ") +
                  detail::power_term_text(*run.iso_ceiling));
  return ok;
}

CertNode certify_node(const CertRun& run, const PointSet& E, const PointSet& F,
                      const TreeSpec& tree) {
  CertNode node;
  node.tree_text = tree_spec_to_string(tree);
  node.e_pts = E.points();
  node.f_pts = F.points();

  if (tree.k() == 1) {
    node.tag = CertNode::Case::base;
    node.threshold = local_threshold(run, F.size());
    node.premise_ok = application_premise(run, F, E, node.notes);
    node.extracted = popular_pins(F, E, node.threshold).points();
    return node;
  }

  if (tree.degree(tree.pin) == 1) {
    node.tag = CertNode::Case::deg1;
    const auto [f1, f2] = split_even(F, run.params.split_strategy);
    node.f1_pts = f1.points();
    node.f2_pts = f2.points();
    node.premise_ok =
        inherited_ceiling_ok(run, f1.size(), tree.k() - 1, node.notes);

    node.children.push_back(certify_node(run, f2, f1, remove_pin_leaf(tree)));
    const PointSet f2_prime(E.ctx(), node.children.back().extracted);
    if (f2_prime.empty()) {
      node.notes.push_back("no pins survived the sub-extraction; nothing to block");
      return node;
    }

    node.s = E.size() / f2_prime.size();
    node.block_threshold = local_threshold(run, f2_prime.size());
    std::vector<PlanePoint> survivors;
    for (const PointSet& block : greedy_blocks(E, f2_prime.size())) {
      node.premise_ok &= application_premise(run, f2_prime, block, node.notes);
      const PointSet passed = popular_pins(f2_prime, block, node.block_threshold);
      node.blocks.push_back(block.points());
      node.block_pins.push_back(passed.points());
      survivors.insert(survivors.end(), passed.points().begin(), passed.points().end());
    }
    node.extracted = PointSet(E.ctx(), std::move(survivors)).points();
    return node;
  }

  // Pin of degree >= 2: certify the first branch over (E_i, F1), shrink F2 to
  // the survivors' size, certify the second branch over it, keep the pins
  // that survive both stages; run the whole ladder for each half of E.
  node.tag = CertNode::Case::split;
  const auto [t1, t2] = split_tree_at_pin(tree);
  const auto [e1, e2] = split_even(E, run.params.split_strategy);
  const auto [f1, f2] = split_even(F, run.params.split_strategy);
  node.e1_pts = e1.points();
  node.e2_pts = e2.points();
  node.f1_pts = f1.points();
  node.f2_pts = f2.points();
  node.premise_ok = inherited_ceiling_ok(run, f1.size(), t1.k(), node.notes) &&
                    inherited_ceiling_ok(run, f1.size(), t2.k(), node.notes);

  std::vector<PlanePoint> survivors;
  for (const PointSet& e_half : {e1, e2}) {
    CertNode first = certify_node(run, e_half, f1, t1);
    const PointSet stage_one(E.ctx(), first.extracted);
    node.children.push_back(std::move(first));

    const PointSet f2_sel = f2.first_n(stage_one.size());
    node.chosen_f2.push_back(f2_sel.points());
    CertNode second = certify_node(run, stage_one, f2_sel, t2);
    survivors.insert(survivors.end(), second.extracted.begin(), second.extracted.end());
    node.children.push_back(std::move(second));
  }
  node.extracted = PointSet(E.ctx(), std::move(survivors)).points();
  return node;
}

// Regime dispatch + optional trim of both sets down to floor(p^(4/3)).
struct Dispatch {
  Regime regime;
  bool trimmed = false;
  std::uint64_t trim_size = 0;
  std::vector<std::string> notes;
};

Dispatch dispatch_regime(const CertifyParams& params, const FieldCtx& ctx, std::uint64_t n,
                         std::uint32_t k) {
  Dispatch d{params.regime, false, 0, {}};
  if (params.regime != Regime::auto_prime) return d;
  const BigInt n3 = big_pow(BigInt(n), 3);
  const BigInt p4 = big_pow(BigInt(ctx.p()), 4);
  if (n3 <= p4) {
    d.regime = Regime::medium_prime;
    d.notes.push_back("auto: n^3 <= p^4, medium regime");
  } else if (n3 >= (BigInt(64) << (48 * k)) * p4) {
    d.regime = Regime::large_prime;
    d.notes.push_back("auto: n >= 4*2^16k*p^(4/3), large regime");
  } else {
    d.regime = Regime::medium_prime;
    d.trimmed = true;
    d.trim_size = static_cast<std::uint64_t>(iroot(p4, 3));
    d.notes.push_back("auto: gap range, both sets trimmed to floor(p^(4/3)) = " +
                      std::to_string(d.trim_size));
  }
  return d;
}

// Top-level size hypothesis of the executed regime, evaluated exactly.
bool hypothesis_in_range_for(const CertRun& run, const PointSet& E, const PointSet& F,
                             std::vector<std::string>& notes) {
  const BigInt n = E.size();
  const std::uint32_t k = run.tree_k;
  const BigInt p4 = big_pow(BigInt(run.ctx.p()), 4);
  switch (run.regime) {
    case Regime::medium_prime: {
      const bool ok = (BigInt(625) << (64 * k)) * big_pow(run.ctx.p(), 5) <= big_pow(n, 4) &&
                      big_pow(n, 3) <= p4;
      notes.push_back(std::string("size hypothesis 5*2^16k*p^(5/4) <= n <= p^(4/3): ") +
                      (ok ? "holds" : "out of range"));
      return ok;
    }
    case Regime::large_prime: {
      const bool ok = big_pow(n, 3) >= (BigInt(64) << (48 * k)) * p4;
      notes.push_back(std::string("size hypothesis n >= 4*2^16k*p^(4/3): ") +
                      (ok ? "holds" : "out of range"));
      return ok;
    }
    case Regime::large_q: {
      const bool ok = big_pow(n, 3) >= (BigInt(64) << (48 * k)) * big_pow(BigInt(run.ctx.q()), 4);
      notes.push_back(std::string("size hypothesis n >= 4*2^16k*q^(4/3): ") +
                      (ok ? "holds" : "out of range"));
      return ok;
    }
    case Regime::arbitrary: {
      const PointSet both = E.unite(F);
      const bool char_ok = big_pow(BigInt(both.size()), 3) <= p4;
      notes.push_back(std::string("characteristic restriction |E u F|^3 <= p^4: ") +
                      (char_ok ? "holds" : "out of range"));
      const std::uint64_t iso = max_isotropic_line_count(both);
      const bool iso_ok =
          detail::compare_power_terms({Rational(iso), 1, 0}, *run.iso_ceiling) <= 0;
      notes.push_back("isotropic hypothesis max " + std::to_string(iso) + " <= " +
                      detail::power_term_text(*run.iso_ceiling) +
                      (iso_ok ? ": holds" : ": out of range"));
      return char_ok && iso_ok;
    }
    case Regime::auto_prime:
      break;
  }
  fail(errc::config_error, "regime has no hypothesis");
}

std::uint64_t min_pin_bound(const FieldCtx& ctx, const TreeSpec& tree,
                            const std::vector<PlanePoint>& pins, const PointSet& pool,
                            const CertifyParams& params) {
  std::uint64_t best = 0;
  bool any = false;
  for (const PlanePoint pin : pins) {
    const std::uint64_t value = pool.without(pin).empty()
                                    ? 0
                                    : pinned_tree_lower_bound(ctx, tree, pin, pool, params).value;
    best = any ? std::min(best, value) : value;
    any = true;
  }
  return any ? best : 0;
}

void validate_inputs(const PointSet& E, const PointSet& F, const CertifyParams& params) {
  if (params.K < 4) fail(errc::invalid_argument, "K must be at least 4");
  if (!(E.ctx() == F.ctx())) fail(errc::invalid_argument, "mismatched field contexts");
  if (E.empty() || F.empty()) fail(errc::empty_input, "both point sets must be nonempty");
  if (E.size() != F.size())
    fail(errc::regime_mismatch, "the certifier requires |E| = |F|, got " +
                                    std::to_string(E.size()) + " and " + std::to_string(F.size()));
  if ((params.regime == Regime::medium_prime || params.regime == Regime::large_prime ||
       params.regime == Regime::auto_prime) &&
      E.ctx().e() != 1)
    fail(errc::regime_mismatch, "prime-field regime over an extension field");
}

}  // namespace

bool Threshold::met_by(std::uint64_t count) const {
  if (kind == Kind::rational) return meets_threshold(count, value);
  // count >= n^(2/3) / scale_div  <=>  (scale_div * count)^3 >= n^2.
  return detail::rational_pow(scale_div * count, 3) >= Rational(BigInt(n) * n);
}

std::string Threshold::text() const {
  if (kind == Kind::rational) return rational_to_string(value);
  return std::to_string(n) + "^(2/3)/(" + rational_to_string(scale_div) + ")";
}

Threshold Threshold::rational(Rational value) {
  Threshold t;
  t.kind = Kind::rational;
  t.value = std::move(value);
  return t;
}

Threshold Threshold::two_thirds_root(Rational scale_div, std::uint64_t n) {
  if (scale_div <= 0) fail(errc::invalid_argument, "threshold divisor must be positive");
  Threshold t;
  t.kind = Kind::two_thirds_root;
  t.scale_div = std::move(scale_div);
  t.n = n;
  return t;
}

PointSet popular_pins(const PointSet& measured, const PointSet& pins, const Threshold& threshold) {
  if (!(measured.ctx() == pins.ctx()))
    fail(errc::invalid_argument, "mismatched field contexts");
  std::vector<PlanePoint> out;
  for (const PlanePoint pt : pins.points())
    if (threshold.met_by(pinned_nonzero_distances(pt, measured).size())) out.push_back(pt);
  return {pins.ctx(), std::move(out)};
}

PointSet popular_pins(const PointSet& measured, const PointSet& pins, const Rational& threshold) {
  return popular_pins(measured, pins, Threshold::rational(threshold));
}

std::vector<PointSet> greedy_blocks(const PointSet& E, std::uint64_t block_size) {
  if (block_size < 1 || block_size > E.size())
    fail(errc::bad_block_size, "block size " + std::to_string(block_size) + " outside 1.." +
                                   std::to_string(E.size()));
  const std::uint64_t s = E.size() / block_size;
  std::vector<PointSet> blocks;
  blocks.reserve(s);
  for (std::uint64_t j = 0; j < s; ++j) {
    const auto begin = E.points().begin() + static_cast<std::ptrdiff_t>(j * block_size);
    blocks.emplace_back(E.ctx(), std::vector<PlanePoint>(begin, begin + block_size));
  }
  return blocks;
}

Certificate certify_tree(const PointSet& E, const PointSet& F, const TreeSpec& tree,
                         const CertifyParams& params) {
  validate_inputs(E, F, params);
  const FieldCtx& ctx = E.ctx();

  Certificate cert;
  cert.requested_regime = params.regime;
  cert.params = params;
  cert.p = ctx.p();
  cert.e = ctx.e();
  cert.n_e = E.size();
  cert.n_f = F.size();
  cert.tree = tree;

  const Dispatch dispatch = dispatch_regime(params, ctx, E.size(), tree.k());
  cert.regime = dispatch.regime;
  cert.trimmed = dispatch.trimmed;
  cert.notes = dispatch.notes;
  const PointSet Ew = dispatch.trimmed ? E.first_n(dispatch.trim_size) : E;
  const PointSet Fw = dispatch.trimmed ? F.first_n(dispatch.trim_size) : F;

  CertRun run{ctx, params, cert.regime, tree.k(), std::nullopt};
  if (cert.regime == Regime::arbitrary)
    run.iso_ceiling = detail::isotropic_ceiling_term(Fw.size(), tree.k(), params.K);

  cert.hypothesis_in_range = hypothesis_in_range_for(run, Ew, Fw, cert.notes);
  cert.root = certify_node(run, Ew, Fw, tree);
  cert.pins = cert.root.extracted;
  cert.per_pin_bound = min_pin_bound(ctx, tree, cert.pins, Fw, params);
  cert.sound = true;
  return cert;
}

bool check_certificate(const Certificate& cert, const PointSet& E, const PointSet& F,
                       const TreeSpec& tree) {
  try {
    const FieldCtx& ctx = E.ctx();
    if (!(ctx == F.ctx())) return false;
    if (cert.tree != tree || cert.p != ctx.p() || cert.e != ctx.e()) return false;
    if (cert.n_e != E.size() || cert.n_f != F.size()) return false;
    if (cert.requested_regime != cert.params.regime || !cert.sound) return false;
    validate_inputs(E, F, cert.params);

    const Dispatch dispatch = dispatch_regime(cert.params, ctx, E.size(), tree.k());
    if (dispatch.regime != cert.regime || dispatch.trimmed != cert.trimmed) return false;
    const PointSet Ew = dispatch.trimmed ? E.first_n(dispatch.trim_size) : E;
    const PointSet Fw = dispatch.trimmed ? F.first_n(dispatch.trim_size) : F;

    CertRun run{ctx, cert.params, cert.regime, tree.k(), std::nullopt};
    if (cert.regime == Regime::arbitrary)
      run.iso_ceiling = detail::isotropic_ceiling_term(Fw.size(), tree.k(), cert.params.K);

    // Every recorded pool, block, threshold, and survivor list must agree
    // with an independent re-run of the deterministic recursion.
    if (!(certify_node(run, Ew, Fw, tree) == cert.root)) return false;
    if (cert.pins != cert.root.extracted) return false;

    std::vector<std::string> notes;
    if (cert.hypothesis_in_range != hypothesis_in_range_for(run, Ew, Fw, notes)) return false;
    if (cert.per_pin_bound != min_pin_bound(ctx, tree, cert.pins, Fw, cert.params)) return false;

    // Independent ground truth where enumeration is feasible.
    for (const PlanePoint pin : cert.pins) {
      const PointSet pool = Fw.without(pin);
      if (big_pow(BigInt(pool.size()), tree.k()) > BigInt(cert.params.enumeration_budget))
        continue;
      if (count_distinct_pinned_trees(ctx, tree, pin, Fw, CountMode::nonzero,
                                      cert.params.enumeration_budget) < cert.per_pin_bound)
        return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

// --- JSON serialization -----------------------------------------------------

namespace {

using nlohmann::json;

std::string point_text(const FieldCtx& ctx, PlanePoint pt) {
  return ctx.to_string(pt.x) + "," + ctx.to_string(pt.y);
}

PlanePoint point_from_text(const FieldCtx& ctx, const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) fail(errc::parse_error, "point needs 'x,y', got '" + text + "'");
  return {ctx.parse_elem(text.substr(0, comma)), ctx.parse_elem(text.substr(comma + 1))};
}

json points_json(const FieldCtx& ctx, const std::vector<PlanePoint>& pts) {
  json arr = json::array();
  for (const PlanePoint pt : pts) arr.push_back(point_text(ctx, pt));
  return arr;
}

std::vector<PlanePoint> points_from_json(const FieldCtx& ctx, const json& arr) {
  std::vector<PlanePoint> pts;
  for (const auto& item : arr) pts.push_back(point_from_text(ctx, item.get<std::string>()));
  return pts;
}

json point_lists_json(const FieldCtx& ctx, const std::vector<std::vector<PlanePoint>>& lists) {
  json arr = json::array();
  for (const auto& list : lists) arr.push_back(points_json(ctx, list));
  return arr;
}

std::vector<std::vector<PlanePoint>> point_lists_from_json(const FieldCtx& ctx, const json& arr) {
  std::vector<std::vector<PlanePoint>> lists;
  for (const auto& item : arr) lists.push_back(points_from_json(ctx, item));
  return lists;
}

json threshold_json(const Threshold& t) {
  if (t.kind == Threshold::Kind::rational)
    return {{"kind", "rational"}, {"value", rational_to_string(t.value)}};
  return {{"kind", "two_thirds_root"},
          {"scale_div", rational_to_string(t.scale_div)},
          {"n", std::to_string(t.n)}};
}

std::uint64_t parse_u64_text(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(errc::parse_error, "bad integer '" + text + "'");
  return value;
}

Threshold threshold_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return Threshold::rational(parse_rational(j.at("value")));
  if (kind == "two_thirds_root")
    return Threshold::two_thirds_root(parse_rational(j.at("scale_div")),
                                      parse_u64_text(j.at("n")));
  fail(errc::parse_error, "unknown threshold kind '" + kind + "'");
}

const char* case_name(CertNode::Case tag) {
  switch (tag) {
    case CertNode::Case::base:
      return "base";
    case CertNode::Case::deg1:
      return "deg1";
    case CertNode::Case::split:
      return "split";
  }
  fail(errc::invalid_argument, "bad case tag");
}

CertNode::Case case_from_name(const std::string& name) {
  if (name == "base") return CertNode::Case::base;
  if (name == "deg1") return CertNode::Case::deg1;
  if (name == "split") return CertNode::Case::split;
  fail(errc::parse_error, "unknown case tag '" + name + "'");
}

void flatten_nodes(const FieldCtx& ctx, const CertNode& node, int parent, json& out) {
  const int id = static_cast<int>(out.size());
  json entry{{"id", id},
             {"parent", parent},
             {"case", case_name(node.tag)},
             {"tree", node.tree_text},
             {"e", points_json(ctx, node.e_pts)},
             {"f", points_json(ctx, node.f_pts)},
             {"extracted", points_json(ctx, node.extracted)},
             {"premise_ok", node.premise_ok},
             {"notes", node.notes}};
  if (node.tag == CertNode::Case::base) {
    entry["threshold"] = threshold_json(node.threshold);
  } else if (node.tag == CertNode::Case::deg1) {
    entry["f1"] = points_json(ctx, node.f1_pts);
    entry["f2"] = points_json(ctx, node.f2_pts);
    entry["s"] = std::to_string(node.s);
    entry["blocks"] = point_lists_json(ctx, node.blocks);
    entry["block_pins"] = point_lists_json(ctx, node.block_pins);
    entry["block_threshold"] = threshold_json(node.block_threshold);
  } else {
    entry["e1"] = points_json(ctx, node.e1_pts);
    entry["e2"] = points_json(ctx, node.e2_pts);
    entry["f1"] = points_json(ctx, node.f1_pts);
    entry["f2"] = points_json(ctx, node.f2_pts);
    entry["chosen_f2"] = point_lists_json(ctx, node.chosen_f2);
  }
  out.push_back(std::move(entry));
  for (const CertNode& child : node.children) flatten_nodes(ctx, child, id, out);
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  const FieldCtx ctx = make_field(cert.p, cert.e);
  json recursion = json::array();
  flatten_nodes(ctx, cert.root, -1, recursion);
  const json doc{
      {"schema_version", 1},
      {"regime", regime_name(cert.regime)},
      {"params",
       {{"requested_regime", regime_name(cert.requested_regime)},
        {"K", rational_to_string(cert.params.K)},
        {"threshold_rule", cert.params.threshold_rule},
        {"split_strategy", split_strategy_name(cert.params.split_strategy)},
        {"enumeration_budget", std::to_string(cert.params.enumeration_budget)},
        {"p", std::to_string(cert.p)},
        {"e", std::to_string(cert.e)},
        {"n_E", std::to_string(cert.n_e)},
        {"n_F", std::to_string(cert.n_f)}}},
      {"tree", tree_spec_to_string(cert.tree)},
      {"pins", points_json(ctx, cert.pins)},
      {"recursion", recursion},
      {"bounds",
       {{"per_pin_bound", std::to_string(cert.per_pin_bound)},
        {"pin_count", std::to_string(cert.pins.size())}}},
      {"flags",
       {{"sound", cert.sound},
        {"hypothesis_in_range", cert.hypothesis_in_range},
        {"trimmed", cert.trimmed},
        {"notes", cert.notes}}}};
  return doc.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("schema_version").get<int>() != 1)
      fail(errc::parse_error, "unsupported schema version");

    Certificate cert;
    const json& params = doc.at("params");
    cert.p = static_cast<std::uint32_t>(parse_u64_text(params.at("p")));
    cert.e = static_cast<std::uint32_t>(parse_u64_text(params.at("e")));
    cert.n_e = parse_u64_text(params.at("n_E"));
    cert.n_f = parse_u64_text(params.at("n_F"));
    cert.regime = parse_regime(doc.at("regime"));
    cert.requested_regime = parse_regime(params.at("requested_regime"));
    cert.params.regime = cert.requested_regime;
    cert.params.K = parse_rational(params.at("K"));
    cert.params.threshold_rule = params.at("threshold_rule");
    cert.params.split_strategy = parse_split_strategy(params.at("split_strategy"));
    cert.params.enumeration_budget = parse_u64_text(params.at("enumeration_budget"));
    cert.tree = parse_tree_spec(doc.at("tree"));

    const FieldCtx ctx = make_field(cert.p, cert.e);
    cert.pins = points_from_json(ctx, doc.at("pins"));
    cert.per_pin_bound = parse_u64_text(doc.at("bounds").at("per_pin_bound"));
    const json& flags = doc.at("flags");
    cert.sound = flags.at("sound").get<bool>();
    cert.hypothesis_in_range = flags.at("hypothesis_in_range").get<bool>();
    cert.trimmed = flags.at("trimmed").get<bool>();
    cert.notes = flags.at("notes").get<std::vector<std::string>>();

    const json& recursion = doc.at("recursion");
    if (recursion.empty()) fail(errc::parse_error, "recursion list is empty");
    std::vector<CertNode> nodes(recursion.size());
    std::vector<int> parents(recursion.size());
    for (std::size_t i = 0; i < recursion.size(); ++i) {
      const json& entry = recursion[static_cast<int>(i)];
      if (entry.at("id").get<int>() != static_cast<int>(i))
        fail(errc::parse_error, "node ids must be dense and ordered");
      parents[i] = entry.at("parent").get<int>();
      CertNode& node = nodes[i];
      node.tag = case_from_name(entry.at("case"));
      node.tree_text = entry.at("tree");
      node.e_pts = points_from_json(ctx, entry.at("e"));
      node.f_pts = points_from_json(ctx, entry.at("f"));
      node.extracted = points_from_json(ctx, entry.at("extracted"));
      node.premise_ok = entry.at("premise_ok").get<bool>();
      node.notes = entry.at("notes").get<std::vector<std::string>>();
      if (node.tag == CertNode::Case::base) {
        node.threshold = threshold_from_json(entry.at("threshold"));
      } else if (node.tag == CertNode::Case::deg1) {
        node.f1_pts = points_from_json(ctx, entry.at("f1"));
        node.f2_pts = points_from_json(ctx, entry.at("f2"));
        node.s = parse_u64_text(entry.at("s"));
        node.blocks = point_lists_from_json(ctx, entry.at("blocks"));
        node.block_pins = point_lists_from_json(ctx, entry.at("block_pins"));
        node.block_threshold = threshold_from_json(entry.at("block_threshold"));
      } else {
        node.e1_pts = points_from_json(ctx, entry.at("e1"));
        node.e2_pts = points_from_json(ctx, entry.at("e2"));
        node.f1_pts = points_from_json(ctx, entry.at("f1"));
        node.f2_pts = points_from_json(ctx, entry.at("f2"));
        node.chosen_f2 = point_lists_from_json(ctx, entry.at("chosen_f2"));
      }
    }
    // Reattach children bottom-up; pre-order ids keep sibling order stable.
    for (std::size_t i = nodes.size(); i-- > 1;) {
      const int parent = parents[i];
      if (parent < 0 || parent >= static_cast<int>(i))
        fail(errc::parse_error, "bad parent link");
      auto& siblings = nodes[static_cast<std::size_t>(parent)].children;
      siblings.insert(siblings.begin(), std::move(nodes[i]));
    }
    if (parents[0] != -1) fail(errc::parse_error, "root must have parent -1");
    cert.root = std::move(nodes[0]);
    return cert;
  } catch (const json::exception& ex) {
    fail(errc::parse_error, std::string("bad certificate JSON: ") + ex.what());
  }
}

}  // namespace ffgeom
