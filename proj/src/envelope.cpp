#include "diskgraph/envelope.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

namespace diskgraph {

void LinearEnvelope::insert(const ArcCurve& c) {
  if (!curves_.emplace(c.owner, c).second) {
    throw std::invalid_argument("envelope: duplicate owner");
  }
}

void LinearEnvelope::erase(SiteId owner) {
  if (curves_.erase(owner) == 0) {
    throw std::invalid_argument("envelope: unknown owner");
  }
}

std::optional<EnvelopeHit> LinearEnvelope::ray_shoot(double x) const {
  std::optional<EnvelopeHit> best;
  for (const auto& [owner, c] : curves_) {
    double v = arc_value(c, x);
    if (std::isinf(v)) continue;
    if (!best || v < best->value || (v == best->value && owner < best->owner)) {
      best = EnvelopeHit{owner, v};
    }
  }
  return best;
}

namespace {

using Key = std::tuple<double, double, SiteId>;

Key curve_key(const ArcCurve& c) { return {c.cx, c.cy, c.owner}; }

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lexicographic "right side wins at x": smaller value, then smaller owner;
// two +infinity values never let the right side win.
bool right_beats(double vr, SiteId owr, double vl, SiteId owl) {
  if (vr < vl) return true;
  if (vr > vl) return false;
  if (std::isinf(vr)) return false;
  return owr < owl;
}

std::uint64_t next_priority() {
  static std::mt19937_64 gen(0x5851f42d4c957f2dULL);
  return gen();
}

// Piece of an envelope: one curve visible up to and including `xr` (its
// left end is the previous piece's xr). Queues are treaps in piece order;
// the last piece of any queue has xr = +infinity.
struct QNode {
  QNode* l = nullptr;
  QNode* r = nullptr;
  std::uint64_t prio = 0;
  ArcCurve curve;
  double xr = kInf;
  int cnt = 1;
};

int qcnt(const QNode* n) { return n ? n->cnt : 0; }

void qpull(QNode* n) { n->cnt = 1 + qcnt(n->l) + qcnt(n->r); }

QNode* qmerge(QNode* a, QNode* b) {
  if (!a) return b;
  if (!b) return a;
  if (a->prio > b->prio) {
    a->r = qmerge(a->r, b);
    qpull(a);
    return a;
  }
  b->l = qmerge(a, b->l);
  qpull(b);
  return b;
}

// First k pieces left, rest right.
std::pair<QNode*, QNode*> qsplit(QNode* t, int k) {
  if (!t) return {nullptr, nullptr};
  if (k <= qcnt(t->l)) {
    auto [a, b] = qsplit(t->l, k);
    t->l = b;
    qpull(t);
    return {a, t};
  }
  auto [a, b] = qsplit(t->r, k - qcnt(t->l) - 1);
  t->r = a;
  qpull(t);
  return {t, b};
}

// Number of pieces with xr < x (strict) or <= x.
int qcount_below(const QNode* t, double x, bool strict) {
  int c = 0;
  while (t) {
    bool below = strict ? t->xr < x : t->xr <= x;
    if (below) {
      c += qcnt(t->l) + 1;
      t = t->r;
    } else {
      t = t->l;
    }
  }
  return c;
}

QNode* qkth(QNode* t, int k) {
  while (t) {
    int lc = qcnt(t->l);
    if (k < lc) {
      t = t->l;
    } else if (k == lc) {
      return t;
    } else {
      k -= lc + 1;
      t = t->r;
    }
  }
  return nullptr;
}

QNode* qfirst(QNode* t) {
  while (t && t->l) t = t->l;
  return t;
}

QNode* qlast(QNode* t) {
  while (t && t->r) t = t->r;
  return t;
}

// Envelope value and piece owner at x. The past-the-end case cannot occur
// for finite x because the last piece extends to +infinity.
std::pair<double, SiteId> qeval(QNode* t, double x) {
  if (!t) return {kInf, -1};
  QNode* n = qkth(t, qcount_below(t, x, /*strict=*/true));
  if (!n) return {kInf, -1};
  return {arc_value(n->curve, x), n->curve.owner};
}

// Leftmost piece whose predicate holds, with the preceding breakpoint.
// Requires the predicate monotone over the piece sequence and true for the
// last piece.
struct DescentHit {
  QNode* piece = nullptr;
  double prev_xr = -kInf;
};

template <typename Pred>
DescentHit qfind_first(QNode* t, Pred&& pred) {
  DescentHit hit;
  while (t) {
    if (pred(t)) {
      hit.piece = t;
      t = t->l;
    } else {
      hit.prev_xr = std::max(hit.prev_xr, t->xr);
      t = t->r;
    }
  }
  return hit;
}

// Binary search tree over curves (leaves, sorted by key); every internal
// node keeps what its envelope hides of its children's envelopes plus the
// split position, so the full envelope can be pushed down a path and
// rebuilt back up.
struct TNode {
  TNode* l = nullptr;
  TNode* r = nullptr;
  TNode* p = nullptr;
  bool is_leaf = false;
  ArcCurve curve;  // leaf payload
  Key split_key;   // internal: route key <= split_key to the left child
  int leaves = 1;
  QNode* q = nullptr;       // full subtree envelope, only while exposed
  QNode* residl = nullptr;  // hidden tail of the left child's envelope
  QNode* residr = nullptr;  // hidden head of the right child's envelope
  int k_prefix = 0;         // pieces of q taken from the left child
  double trunc_xr = 0.0;    // original xr of the straddling piece
  bool truncated = false;
};

}  // namespace

struct TreeEnvelope::Impl {
  std::deque<QNode> qpool;
  std::vector<QNode*> qfree;
  std::deque<TNode> tpool;
  std::vector<TNode*> tfree;
  TNode* root = nullptr;
  std::map<SiteId, TNode*> registry;
  std::multiset<double> cxs;
  double common_r = 0.0;
  std::size_t peak_leaves = 0;

  QNode* new_piece(const ArcCurve& c, double xr) {
    QNode* n;
    if (!qfree.empty()) {
      n = qfree.back();
      qfree.pop_back();
    } else {
      n = &qpool.emplace_back();
    }
    *n = QNode{};
    n->prio = next_priority();
    n->curve = c;
    n->xr = xr;
    return n;
  }

  void free_queue(QNode* n) {
    if (!n) return;
    free_queue(n->l);
    free_queue(n->r);
    qfree.push_back(n);
  }

  TNode* new_tnode() {
    TNode* n;
    if (!tfree.empty()) {
      n = tfree.back();
      tfree.pop_back();
    } else {
      n = &tpool.emplace_back();
    }
    *n = TNode{};
    return n;
  }

  void free_tnode(TNode* n) { tfree.push_back(n); }

  // Replaces the rightmost piece's xr (splitting it off keeps the treap
  // augmentation trivially consistent).
  QNode* with_last_xr(QNode* q, double xr) {
    auto [body, last] = qsplit(q, qcnt(q) - 1);
    last->xr = xr;
    qpull(last);
    return qmerge(body, last);
  }

  // x where the right envelope starts to win; -inf if it wins everywhere,
  // +inf if it never does. Relies on the no-gap precondition: the
  // right-wins predicate is then monotone up to the right envelope's last
  // support end, beyond which both envelopes are +infinity.
  double bridge_x(QNode* ql, QNode* qr) {
    if (!qr) return kInf;
    if (!ql) return -kInf;
    const ArcCurve& last_r = qlast(qr)->curve;
    double bmax = last_r.cx + last_r.R;
    // cx + R can round past the true support end (the sum may land in a
    // coarser binade than cx); probing there would see a dead curve and
    // shelve the whole right envelope. Step back inside.
    while (bmax > last_r.cx && arc_value(last_r, bmax) == kInf)
      bmax = std::nextafter(bmax, -kInf);
    auto beats_at = [&](double x) {
      auto [vl, owl] = qeval(ql, x);
      auto [vr, owr] = qeval(qr, x);
      return right_beats(vr, owr, vl, owl);
    };
    if (!beats_at(bmax)) return kInf;
    // Locate the piece of each envelope containing the flip. Breakpoints
    // right of bmax count as past the flip without evaluation (both sides
    // are +infinity there, which would break monotonicity if compared).
    DescentHit hl = qfind_first(ql, [&](QNode* n) {
      if (n->xr > bmax) return true;
      auto [vr, owr] = qeval(qr, n->xr);
      return right_beats(vr, owr, arc_value(n->curve, n->xr), n->curve.owner);
    });
    DescentHit hr = qfind_first(qr, [&](QNode* n) {
      if (n->xr > bmax) return true;
      auto [vl, owl] = qeval(ql, n->xr);
      return right_beats(arc_value(n->curve, n->xr), n->curve.owner, vl, owl);
    });
    const ArcCurve cl = hl.piece->curve;
    const ArcCurve cr = hr.piece->curve;
    double lo = std::max(hl.prev_xr, hr.prev_xr);
    double hi = std::min({hl.piece->xr, hr.piece->xr, bmax});
    if (lo == -kInf) {
      const ArcCurve& fl = qfirst(ql)->curve;
      const ArcCurve& fr = qfirst(qr)->curve;
      lo = std::min(fl.cx - fl.R, fr.cx - fr.R) - 1.0;
    }
    auto pair_beats = [&](double x) {
      return right_beats(arc_value(cr, x), cr.owner, arc_value(cl, x), cl.owner);
    };
    // The two descents can disagree when the same geometry lives on both
    // sides (duplicate curves): exact ties resolve to the left while a
    // recorded breakpoint can win by one ulp, inverting the interval. The
    // right end of the tie region is then the correct boundary.
    if (hi <= lo) return lo;
    // Snap flips that sit exactly on a representable point: the search
    // floor, the right curve's first point, the left curve's last point.
    // Bisection alone would stop an epsilon away and record a breakpoint
    // where the winning curve is still +infinity; later merges evaluating
    // at that breakpoint would then pair up the wrong curves.
    if (pair_beats(lo)) return lo;
    if (cl.cx + cl.R <= lo) return lo;
    double cs = cr.cx - cr.R;
    if (lo < cs && cs < hi) {
      // Below its first point the right curve cannot win, so a win at the
      // point itself is a jump; the point then belongs to the right piece.
      if (pair_beats(cs)) return std::nextafter(cs, -kInf);
      lo = cs;
    }
    double ce = cl.cx + cl.R;
    bool ce_capped = false;
    if (lo < ce && ce <= hi) {
      if (!pair_beats(ce)) return ce;
      hi = ce;
      ce_capped = true;
    }
    for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
      double mid = lo + (hi - lo) / 2;
      if (pair_beats(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    // Right wins at the left curve's very last point: a jump again.
    if (ce_capped && hi == ce) return std::nextafter(ce, -kInf);
    return hi;
  }

  // Children's envelopes -> this node's envelope plus residuals.
  void merge_up(TNode* v) {
    QNode* ql = v->l->q;
    QNode* qr = v->r->q;
    v->l->q = nullptr;
    v->r->q = nullptr;
    double xs = bridge_x(ql, qr);
    QNode *pl, *sl, *pr, *sr;
    v->truncated = false;
    if (xs == kInf) {
      pl = ql;
      sl = nullptr;
      pr = qr;
      sr = nullptr;
    } else if (xs == -kInf) {
      pl = nullptr;
      sl = ql;
      pr = nullptr;
      sr = qr;
    } else {
      int idx = qcount_below(ql, xs, /*strict=*/true);
      std::tie(pl, sl) = qsplit(ql, idx + 1);
      QNode* straddle = qlast(pl);
      if (straddle->xr > xs) {
        v->truncated = true;
        v->trunc_xr = straddle->xr;
        pl = with_last_xr(pl, xs);
      }
      std::tie(pr, sr) = qsplit(qr, qcount_below(qr, xs, /*strict=*/false));
    }
    v->k_prefix = qcnt(pl);
    v->q = qmerge(pl, sr);
    v->residl = sl;
    v->residr = pr;
  }

  // Inverse of merge_up: restore both children's full envelopes.
  void split_down(TNode* v) {
    auto [a, b] = qsplit(v->q, v->k_prefix);
    if (v->truncated) a = with_last_xr(a, v->trunc_xr);
    v->q = nullptr;
    v->truncated = false;
    v->l->q = qmerge(a, v->residl);
    v->r->q = qmerge(v->residr, b);
    v->residl = nullptr;
    v->residr = nullptr;
  }

  bool unbalanced(const TNode* v) const {
    int big = std::max(v->l->leaves, v->r->leaves);
    return 10 * big > 7 * v->leaves;
  }

  void collect_leaves(TNode* v, std::vector<TNode*>& out) {
    if (v->is_leaf) {
      out.push_back(v);
      return;
    }
    collect_leaves(v->l, out);
    collect_leaves(v->r, out);
  }

  void free_subtree_queues(TNode* v) {
    free_queue(v->q);
    free_queue(v->residl);
    free_queue(v->residr);
    v->q = v->residl = v->residr = nullptr;
    if (v->is_leaf) return;
    free_subtree_queues(v->l);
    free_subtree_queues(v->r);
    free_tnode(v);
  }

  TNode* build_balanced(std::vector<TNode*>& ls, int lo, int hi) {
    if (hi - lo == 1) {
      TNode* leaf = ls[static_cast<std::size_t>(lo)];
      leaf->l = leaf->r = nullptr;
      leaf->leaves = 1;
      leaf->q = new_piece(leaf->curve, kInf);
      return leaf;
    }
    int mid = lo + (hi - lo) / 2;
    TNode* v = new_tnode();
    v->l = build_balanced(ls, lo, mid);
    v->r = build_balanced(ls, mid, hi);
    v->l->p = v;
    v->r->p = v;
    v->leaves = v->l->leaves + v->r->leaves;
    v->split_key = curve_key(ls[static_cast<std::size_t>(mid - 1)]->curve);
    merge_up(v);
    return v;
  }

  // Rebuilds the subtree at s (which must be exposed: q held at s, children
  // holding residual state only) into a balanced shape; returns the new
  // subtree root, exposed. The caller re-links it.
  TNode* rebuild(TNode* s) {
    std::vector<TNode*> ls;
    collect_leaves(s, ls);
    TNode* parent = s->p;
    free_subtree_queues(s);
    TNode* fresh = build_balanced(ls, 0, static_cast<int>(ls.size()));
    fresh->p = parent;
    return fresh;
  }

  void relink(TNode* oldc, TNode* newc) {
    TNode* par = newc->p;
    if (!par) {
      root = newc;
    } else if (par->l == oldc) {
      par->l = newc;
    } else {
      par->r = newc;
    }
  }
};

TreeEnvelope::TreeEnvelope() : impl_(std::make_unique<Impl>()) {}
TreeEnvelope::~TreeEnvelope() {
  // Pool-owned memory; nothing to walk.
}

std::size_t TreeEnvelope::size() const { return impl_->registry.size(); }

void TreeEnvelope::insert(const ArcCurve& c) {
  Impl& im = *impl_;
  if (im.registry.count(c.owner)) {
    throw std::invalid_argument("envelope: duplicate owner");
  }
  if (!(c.R > 0)) throw std::invalid_argument("envelope: non-positive radius");
  if (!im.registry.empty() && c.R != im.common_r) {
    throw std::invalid_argument("envelope: mixed arc radii");
  }
  double mn = c.cx, mx = c.cx;
  if (!im.cxs.empty()) {
    mn = std::min(mn, *im.cxs.begin());
    mx = std::max(mx, *im.cxs.rbegin());
  }
  if (mx - mn >= 2 * c.R) {
    throw std::invalid_argument("envelope: curve centers span 2R or more");
  }
  im.common_r = c.R;
  im.cxs.insert(c.cx);

  TNode* leaf = im.new_tnode();
  leaf->is_leaf = true;
  leaf->curve = c;
  leaf->q = im.new_piece(c, kInf);
  im.registry[c.owner] = leaf;

  if (!im.root) {
    im.root = leaf;
    im.peak_leaves = 1;
    return;
  }
  Key k = curve_key(c);
  std::vector<TNode*> path;
  TNode* v = im.root;
  while (!v->is_leaf) {
    im.split_down(v);
    path.push_back(v);
    v = k <= v->split_key ? v->l : v->r;
  }
  TNode* inner = im.new_tnode();
  if (k <= curve_key(v->curve)) {
    inner->l = leaf;
    inner->r = v;
  } else {
    inner->l = v;
    inner->r = leaf;
  }
  inner->split_key = curve_key(inner->l->curve);
  inner->leaves = 2;
  inner->p = v->p;
  if (v->p) {
    (v->p->l == v ? v->p->l : v->p->r) = inner;
  } else {
    im.root = inner;
  }
  v->p = inner;
  leaf->p = inner;
  im.merge_up(inner);

  bool rebuilt = false;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    TNode* node = *it;
    node->leaves += 1;
    if (!rebuilt && im.unbalanced(node)) {
      TNode* fresh = im.rebuild(node);
      im.relink(node, fresh);
      rebuilt = true;
    } else {
      im.merge_up(node);
    }
  }
  im.peak_leaves = std::max(im.peak_leaves, im.registry.size());
}

void TreeEnvelope::erase(SiteId owner) {
  Impl& im = *impl_;
  auto it = im.registry.find(owner);
  if (it == im.registry.end()) {
    throw std::invalid_argument("envelope: unknown owner");
  }
  TNode* leaf = it->second;
  im.registry.erase(it);
  im.cxs.erase(im.cxs.find(leaf->curve.cx));

  if (leaf == im.root) {
    im.free_queue(leaf->q);
    im.free_tnode(leaf);
    im.root = nullptr;
    im.peak_leaves = 0;
    return;
  }
  std::vector<TNode*> path;
  for (TNode* a = leaf->p; a; a = a->p) path.push_back(a);
  std::reverse(path.begin(), path.end());
  for (TNode* v : path) im.split_down(v);

  TNode* par = leaf->p;
  TNode* sib = par->l == leaf ? par->r : par->l;
  sib->p = par->p;
  if (par->p) {
    (par->p->l == par ? par->p->l : par->p->r) = sib;
  } else {
    im.root = sib;
  }
  im.free_queue(leaf->q);
  im.free_tnode(leaf);
  im.free_tnode(par);
  path.pop_back();
  for (auto pit = path.rbegin(); pit != path.rend(); ++pit) {
    (*pit)->leaves -= 1;
    im.merge_up(*pit);
  }
  if (im.root && !im.root->is_leaf &&
      10 * im.registry.size() < 7 * im.peak_leaves) {
    TNode* fresh = im.rebuild(im.root);
    im.root = fresh;
    im.peak_leaves = im.registry.size();
  }
}

std::optional<EnvelopeHit> TreeEnvelope::ray_shoot(double x) const {
  const Impl& im = *impl_;
  if (!im.root) return std::nullopt;
  auto [v, owner] = qeval(im.root->q, x);
  if (std::isinf(v)) return std::nullopt;
  return EnvelopeHit{owner, v};
}

std::vector<std::pair<SiteId, double>> TreeEnvelope::pieces() const {
  std::vector<std::pair<SiteId, double>> out;
  if (!impl_->root) return out;
  auto walk = [&](QNode* n, auto&& self) -> void {
    if (!n) return;
    self(n->l, self);
    out.push_back({n->curve.owner, n->xr});
    self(n->r, self);
  };
  walk(impl_->root->q, walk);
  return out;
}

std::unique_ptr<LowerEnvelope> make_envelope(EnvelopeKind kind) {
  if (kind == EnvelopeKind::kLinear) return std::make_unique<LinearEnvelope>();
  return std::make_unique<TreeEnvelope>();
}

}  // namespace diskgraph
