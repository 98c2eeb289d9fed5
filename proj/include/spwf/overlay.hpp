#pragma once

// Overlay of two embedded objects (closed multicurves or anchored arcs) on
// one complex.  Strand order along each edge is decided by unfolding walks:
// two crossings of an edge are ordered by following both strands until their
// continuations diverge inside a face.  From the joint order we read off
// transverse crossings face by face.  Geometric intersection numbers come
// from iterated bigon removal, a bigon being certified by a null-homotopic
// joint loop; minimality then follows from the bigon criterion.
//
// Object 0 stays fixed; object 1 is rerouted during minimisation.  Slot
// lists carry stable handles so reroutes splice locally.

#include <array>
#include <cassert>
#include "spwf/curves.hpp"

namespace spwf {

struct Strands {
    const Complex* K = nullptr;
    std::vector<Word> comps;      // cyclic component words, or one open word
    bool cyclic = true;
    VertexId from = -1, to = -1;  // arc anchors when !cyclic

    static Strands of_multicurve(const Multicurve& m) {
        Strands s;
        s.K = m.K;
        s.comps = m.comps;
        return s;
    }
    static Strands of_word(const Complex& K, Word w) {
        Strands s;
        s.K = &K;
        s.comps = {std::move(w)};
        return s;
    }
    static Strands of_arc(const ArcWord& a) {
        Strands s;
        s.K = a.K;
        s.comps = {a.word};
        s.cyclic = false;
        s.from = a.from;
        s.to = a.to;
        return s;
    }
    long long size() const {
        long long t = 0;
        for (const auto& w : comps) t += static_cast<long long>(w.size());
        return t;
    }
};

namespace detail {

// Point on a face boundary cycle: slots of boundary dart i live in band 2i,
// the corner at the head of dart i is band 2i+1.
struct CyclePoint {
    int band = 0;
    int offset = 0;
    bool operator<(const CyclePoint& o) const {
        return band != o.band ? band < o.band : offset < o.offset;
    }
    bool operator==(const CyclePoint& o) const { return band == o.band && offset == o.offset; }
};

// Is y strictly inside the counterclockwise open arc (from, to)?
inline bool ccw_between(const CyclePoint& from, const CyclePoint& to, const CyclePoint& y) {
    if (from == to) return false;
    if (from < to) return from < y && y < to;
    return from < y || y < to;
}

}  // namespace detail

class Overlay {
public:
    using Handle = int;

    Overlay(const Complex& K, Strands a, Strands b) : K_(&K), obj_{std::move(a), std::move(b)} {
        for (int o = 0; o < 2; ++o) {
            if (obj_[o].K != K_) throw domain_error("overlay: complex mismatch");
            handles_[o].resize(obj_[o].comps.size());
        }
        build();
    }

    const Complex& complex() const { return *K_; }
    const std::vector<Word>& words(int o) const { return obj_[o].comps; }
    const Strands& object(int o) const { return obj_[o]; }

    struct Crossing {
        int a_comp, a_pos;  // crossing lies inside object-0 chord (a_pos, a_pos+1)
        int b_comp, b_pos;  // and object-1 chord (b_pos, b_pos+1); pos == -1 marks
                            // a leading anchor chord (arcs only)
        FaceId face = -1;
        int sign = 0;       // +1 when (dir of 0, dir of 1) is positively oriented
        int a_order = 0;    // rank along the object-0 chord from its entry point
        int b_order = 0;
    };

    std::vector<Crossing> crossings() const;
    long long crossing_count() const { return static_cast<long long>(crossings().size()); }
    long long signed_crossing_sum() const {
        long long s = 0;
        for (const auto& c : crossings()) s += c.sign;
        return s;
    }

    bool remove_one_bigon();
    void minimize() {
        while (remove_one_bigon()) {}
    }

    // Number of object-0 slots strictly before this object-1 handle on its
    // edge (used to pick sub-edges when cutting along object 0).
    int subedge_of(int comp, int pos) const {
        Handle h = handles_[1][comp][pos];
        const auto& sl = slot_list_[rec_[h].edge];
        int idx = 0;
        for (Handle g : sl) {
            if (g == h) return idx;
            if (rec_[g].owner == 0) ++idx;
        }
        throw domain_error("overlay: handle not on its edge");
    }

    struct SlotRef {
        int owner, comp, pos;
    };
    // Joint slot order along an edge, tail to head of the forward dart.
    std::vector<SlotRef> slot_sequence(EdgeId e) const {
        std::vector<SlotRef> out;
        for (Handle h : slot_list_[e]) {
            const Rec& r = rec_[h];
            out.push_back(SlotRef{r.owner, r.comp, pos_of_handle(h)});
        }
        return out;
    }

private:
    const Complex* K_;
    std::array<Strands, 2> obj_;

    struct Rec {
        int owner, comp;
        EdgeId edge;
    };
    std::vector<Rec> rec_;                       // handle -> record
    std::array<std::vector<std::vector<Handle>>, 2> handles_;  // [owner][comp][pos]
    std::vector<std::vector<Handle>> slot_list_;  // per edge, canonical order

    Handle new_handle(int owner, int comp, EdgeId e) {
        rec_.push_back(Rec{owner, comp, e});
        return static_cast<Handle>(rec_.size()) - 1;
    }

    Dart dart_at(int owner, int comp, int pos) const { return obj_[owner].comps[comp][pos]; }

    int pos_of_handle(Handle h) const {
        const Rec& r = rec_[h];
        const auto& hv = handles_[r.owner][r.comp];
        for (int i = 0; i < static_cast<int>(hv.size()); ++i)
            if (hv[i] == h) return i;
        throw domain_error("overlay: dangling handle");
    }

    int slot_rank(Handle h) const {
        const auto& sl = slot_list_[rec_[h].edge];
        for (int i = 0; i < static_cast<int>(sl.size()); ++i)
            if (sl[i] == h) return i;
        throw domain_error("overlay: handle missing from slot list");
    }

    void build();
    // -1 / +1 order along canonical dart, 0 = fully parallel.
    int compare_crossings(int o1, int c1, int p1, int o2, int c2, int p2) const;
    int unfold_compare(int o1, int c1, int p1, int o2, int c2, int p2, int side) const;

    detail::CyclePoint cycle_point_exit(FaceId f, int owner, int comp, int pos) const;
    detail::CyclePoint cycle_point_enter(FaceId f, int owner, int comp, int pos) const;
    detail::CyclePoint corner_point(FaceId f, VertexId v) const;

    friend struct OverlayTestAccess;
};

// --------------------------------------------------------------------------

inline detail::CyclePoint Overlay::cycle_point_exit(FaceId f, int owner, int comp, int pos) const {
    Dart d = dart_at(owner, comp, pos);
    BoundaryPos bp = K_->locate(d);
    if (bp.face != f) throw domain_error("overlay: exit occurrence not in face");
    Handle h = handles_[owner][comp][pos];
    int canon = slot_rank(h);
    int n = static_cast<int>(slot_list_[d.edge].size());
    int off = d.fwd ? canon : (n - 1 - canon);
    return detail::CyclePoint{2 * bp.index, off};
}

inline detail::CyclePoint Overlay::cycle_point_enter(FaceId f, int owner, int comp, int pos) const {
    Dart d = dart_at(owner, comp, pos).reversed();
    BoundaryPos bp = K_->locate(d);
    if (bp.face != f) throw domain_error("overlay: entry occurrence not in face");
    Handle h = handles_[owner][comp][pos];
    int canon = slot_rank(h);
    int n = static_cast<int>(slot_list_[rec_[h].edge].size());
    int off = d.fwd ? canon : (n - 1 - canon);
    return detail::CyclePoint{2 * bp.index, off};
}

inline detail::CyclePoint Overlay::corner_point(FaceId f, VertexId v) const {
    for (int i = 0; i < K_->face_size(f); ++i)
        if (K_->head_vertex(K_->at(f, i)) == v) return detail::CyclePoint{2 * i + 1, 0};
    throw domain_error("overlay: anchor corner missing from face");
}

inline void Overlay::build() {
    slot_list_.assign(K_->num_edges(), {});
    rec_.clear();
    struct Item {
        int owner, comp, pos;
    };
    std::vector<std::vector<Item>> per_edge(K_->num_edges());
    for (int o = 0; o < 2; ++o)
        for (int c = 0; c < static_cast<int>(obj_[o].comps.size()); ++c) {
            handles_[o][c].assign(obj_[o].comps[c].size(), -1);
            for (int p = 0; p < static_cast<int>(obj_[o].comps[c].size()); ++p)
                per_edge[dart_at(o, c, p).edge].push_back(Item{o, c, p});
        }
    for (EdgeId e = 0; e < K_->num_edges(); ++e) {
        auto& v = per_edge[e];
        std::sort(v.begin(), v.end(), [&](const Item& x, const Item& y) {
            int c = compare_crossings(x.owner, x.comp, x.pos, y.owner, y.comp, y.pos);
            if (c != 0) return c < 0;
            return std::tie(x.owner, x.comp, x.pos) < std::tie(y.owner, y.comp, y.pos);
        });
        for (const Item& it : v) {
            Handle h = new_handle(it.owner, it.comp, e);
            handles_[it.owner][it.comp][it.pos] = h;
            slot_list_[e].push_back(h);
        }
    }
}

inline int Overlay::compare_crossings(int o1, int c1, int p1, int o2, int c2, int p2) const {
    if (o1 == o2 && c1 == c2 && p1 == p2) return 0;
    int c = unfold_compare(o1, c1, p1, o2, c2, p2, 0);
    if (c != 0) return c;
    c = unfold_compare(o1, c1, p1, o2, c2, p2, 1);
    if (c != 0) return c;
    if (o1 == o2) throw domain_error("overlay: parallel strands inside one object");
    return 0;
}

inline int Overlay::unfold_compare(int o1, int c1, int p1, int o2, int c2, int p2,
                                   int side) const {
    Dart d1 = dart_at(o1, c1, p1), d2 = dart_at(o2, c2, p2);
    if (d1.edge != d2.edge) throw domain_error("overlay: comparing different edges");
    EdgeId e = d1.edge;
    Dart E(e, true);
    // Side 0: the face whose boundary contains dart E (entered through the
    // occurrence E).  A stored crossing enters side 0 going forward iff its
    // dart equals E.reversed().
    struct St {
        int comp, pos, dir;
        bool ended = false;
        VertexId end_vertex = -1;
    };
    auto start = [&](int o, int comp, int pos, Dart d) -> St {
        bool fwd_into_side0 = (d == E.reversed());
        int dir = (fwd_into_side0 == (side == 0)) ? +1 : -1;
        return St{comp, pos, dir, false, -1};
    };
    St s1 = start(o1, c1, p1, d1);
    St s2 = start(o2, c2, p2, d2);
    int own[2] = {o1, o2};
    St st[2] = {s1, s2};

    Dart entry = side == 0 ? E : E.reversed();
    const bool flip = !entry.fwd;  // entry-traversal order vs canonical order;
                                   // invariant along the walk (nesting and the
                                   // side change each reverse once per step)
    long long guard = 2 * (obj_[o1].size() + obj_[o2].size()) + 8;

    while (guard-- > 0) {
        FaceId f = K_->face_of(entry);
        struct Tgt {
            bool corner = false;
            int band = -1;
            int ncomp = 0, npos = 0;
        };
        Tgt t[2];
        for (int i = 0; i < 2; ++i) {
            const Strands& s = obj_[own[i]];
            const Word& w = s.comps[st[i].comp];
            int n = static_cast<int>(w.size());
            int q = st[i].pos + st[i].dir;
            if (s.cyclic) {
                q = ((q % n) + n) % n;
            } else if (q < 0 || q >= n) {
                VertexId v = q < 0 ? s.from : s.to;
                for (int bi = 0; bi < K_->face_size(f); ++bi)
                    if (K_->head_vertex(K_->at(f, bi)) == v) {
                        t[i].corner = true;
                        t[i].band = 2 * bi + 1;
                        break;
                    }
                if (!t[i].corner) throw domain_error("overlay: anchor not on walk face");
                continue;
            }
            Dart nd = w[q];
            Dart exit_occ = st[i].dir == +1 ? nd : nd.reversed();
            BoundaryPos bp = K_->locate(exit_occ);
            if (bp.face != f) throw domain_error("overlay: walk left the face");
            t[i].band = 2 * bp.index;
            t[i].ncomp = st[i].comp;
            t[i].npos = q;
        }
        if (t[0].band != t[1].band || t[0].corner != t[1].corner) {
            BoundaryPos ep = K_->locate(entry);
            int n2 = 2 * K_->face_size(f);
            auto key = [&](int band) { return (((band - 2 * ep.index) % n2) + n2) % n2; };
            bool first_ccw_is_0 = key(t[0].band) < key(t[1].band);
            // earlier ccw target => attaches later along the entry traversal
            bool strand0_later_in_traversal = first_ccw_is_0;
            bool strand0_less_canonical = flip ? strand0_later_in_traversal
                                               : !strand0_later_in_traversal;
            return strand0_less_canonical ? -1 : +1;
        }
        if (t[0].corner) return 0;  // both end at the same anchor corner
        // same exit occurrence: cross it and continue
        Dart crossed = K_->at(f, t[0].band / 2);
        entry = crossed.reversed();
        for (int i = 0; i < 2; ++i) {
            st[i].comp = t[i].ncomp;
            st[i].pos = t[i].npos;
        }
    }
    throw domain_error("overlay: unfolding walk failed to diverge");
}

// --------------------------------------------------------------------------

inline std::vector<Overlay::Crossing> Overlay::crossings() const {
    struct FChord {
        int owner, comp, pos_in;  // chord between word positions pos_in, pos_in+1;
                                  // pos_in == -1: leading anchor chord of an arc
        detail::CyclePoint p1, p2;
    };
    std::vector<std::vector<FChord>> per_face(K_->num_faces());

    for (int o = 0; o < 2; ++o) {
        const Strands& s = obj_[o];
        for (int c = 0; c < static_cast<int>(s.comps.size()); ++c) {
            const Word& w = s.comps[c];
            int n = static_cast<int>(w.size());
            if (n == 0) continue;
            int last = s.cyclic ? n : n - 1;
            for (int p = 0; p < last; ++p) {
                int q = (p + 1) % n;
                FaceId f = face_entered(*K_, w[p]);
                FChord ch{o, c, p, cycle_point_enter(f, o, c, p), cycle_point_exit(f, o, c, q)};
                per_face[f].push_back(ch);
            }
            if (!s.cyclic) {
                FaceId f0 = K_->face_of(w[0]);
                per_face[f0].push_back(
                    FChord{o, c, -1, corner_point(f0, s.from), cycle_point_exit(f0, o, c, 0)});
                FaceId f1 = face_entered(*K_, w[n - 1]);
                per_face[f1].push_back(FChord{o, c, n - 1, cycle_point_enter(f1, o, c, n - 1),
                                              corner_point(f1, s.to)});
            }
        }
    }

    std::vector<Crossing> out;
    for (FaceId f = 0; f < K_->num_faces(); ++f) {
        const auto& chords = per_face[f];
        for (const FChord& A : chords) {
            if (A.owner != 0) continue;
            for (const FChord& B : chords) {
                if (B.owner != 1) continue;
                bool cross = detail::ccw_between(A.p1, A.p2, B.p1) !=
                             detail::ccw_between(A.p1, A.p2, B.p2);
                if (!cross) continue;
                Crossing x;
                x.face = f;
                x.a_comp = A.comp;
                x.a_pos = A.pos_in;
                x.b_comp = B.comp;
                x.b_pos = B.pos_in;
                x.sign = detail::ccw_between(A.p2, A.p1, B.p2) ? +1 : -1;
                out.push_back(x);
            }
        }
        // rank crossings along each chord from its entry point
        auto rank_along = [&](bool along_a) {
            std::vector<int> idx;
            for (int i = 0; i < static_cast<int>(out.size()); ++i)
                if (out[i].face == f) idx.push_back(i);
            // group by chord
            for (int i : idx) {
                int cnt = 0;
                for (int j : idx) {
                    if (i == j) continue;
                    bool same_chord = along_a
                                          ? (out[i].a_comp == out[j].a_comp &&
                                             out[i].a_pos == out[j].a_pos)
                                          : (out[i].b_comp == out[j].b_comp &&
                                             out[i].b_pos == out[j].b_pos);
                    if (!same_chord) continue;
                    // find the chords' data
                    const FChord* me = nullptr;
                    const FChord* other_i = nullptr;
                    const FChord* other_j = nullptr;
                    for (const FChord& C : chords) {
                        if (along_a && C.owner == 0 && C.comp == out[i].a_comp &&
                            C.pos_in == out[i].a_pos)
                            me = &C;
                        if (!along_a && C.owner == 1 && C.comp == out[i].b_comp &&
                            C.pos_in == out[i].b_pos)
                            me = &C;
                        if (along_a && C.owner == 1 && C.comp == out[i].b_comp &&
                            C.pos_in == out[i].b_pos)
                            other_i = &C;
                        if (along_a && C.owner == 1 && C.comp == out[j].b_comp &&
                            C.pos_in == out[j].b_pos)
                            other_j = &C;
                        if (!along_a && C.owner == 0 && C.comp == out[i].a_comp &&
                            C.pos_in == out[i].a_pos)
                            other_i = &C;
                        if (!along_a && C.owner == 0 && C.comp == out[j].a_comp &&
                            C.pos_in == out[j].a_pos)
                            other_j = &C;
                    }
                    if (!me || !other_i || !other_j) throw domain_error("overlay: chord lookup");
                    // endpoint of the other chord inside (me->p1, me->p2):
                    auto inner = [&](const FChord* o) {
                        return detail::ccw_between(me->p1, me->p2, o->p1) ? o->p1 : o->p2;
                    };
                    detail::CyclePoint qi = inner(other_i), qj = inner(other_j);
                    // ccw order from me->p1 decides rank
                    int n2 = 2 * K_->face_size(f);
                    auto key = [&](const detail::CyclePoint& p) {
                        int rel = (((p.band - me->p1.band) % n2) + n2) % n2;
                        if (rel == 0 && p.offset <= me->p1.offset) rel = n2;  // wrapped
                        return std::pair<int, int>(rel, p.offset);
                    };
                    if (key(qj) < key(qi)) ++cnt;
                }
                (along_a ? out[i].a_order : out[i].b_order) = cnt;
            }
        };
        rank_along(true);
        rank_along(false);
    }
    return out;
}

// --------------------------------------------------------------------------

namespace detail {

// Letters of a word strictly between chord positions p and q walking
// forward: indices p+1 .. q inclusive (cyclic when `cyclic`).  Chord
// position -1 denotes the leading anchor chord of an arc.  `full_when_equal`
// distinguishes the wrap pair on a single chord (whole cycle) from two
// consecutive crossings on one chord (empty path).
inline std::vector<int> between_indices(int n, int p, int q, bool cyclic, bool full_when_equal) {
    std::vector<int> idx;
    if (n == 0) return idx;
    if (!cyclic) {
        for (int i = p + 1; i <= q; ++i) idx.push_back(i);
        return idx;
    }
    p = ((p % n) + n) % n;
    q = ((q % n) + n) % n;
    if (p == q && !full_when_equal) return idx;
    int i = (p + 1) % n;
    while (true) {
        idx.push_back(i);
        if (i == q) break;
        i = (i + 1) % n;
    }
    return idx;
}

}  // namespace detail

inline bool Overlay::remove_one_bigon() {
    auto xs = crossings();
    if (xs.empty()) return false;
    int m = static_cast<int>(xs.size());

    // traversal order of crossings along each object
    auto order_key = [&](const Crossing& c, bool along_a) {
        return along_a ? std::tuple<int, int, int>(c.a_comp, c.a_pos, c.a_order)
                       : std::tuple<int, int, int>(c.b_comp, c.b_pos, c.b_order);
    };
    std::vector<int> seq_a(m), seq_b(m);
    for (int i = 0; i < m; ++i) seq_a[i] = seq_b[i] = i;
    std::sort(seq_a.begin(), seq_a.end(),
              [&](int i, int j) { return order_key(xs[i], true) < order_key(xs[j], true); });
    std::sort(seq_b.begin(), seq_b.end(),
              [&](int i, int j) { return order_key(xs[i], false) < order_key(xs[j], false); });
    std::vector<int> rank_b(m);
    for (int r = 0; r < m; ++r) rank_b[seq_b[r]] = r;

    auto comp_range_b = [&](int comp) {
        int lo = m, hi = -1;
        for (int r = 0; r < m; ++r) {
            if (xs[seq_b[r]].b_comp == comp) {
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
        return std::pair<int, int>(lo, hi);
    };

    for (int r = 0; r < m; ++r) {
        int xi = seq_a[r];
        // forward successor along object 0 within the same component
        int rn = -1;
        bool a_wrapped = false;
        if (r + 1 < m && xs[seq_a[r + 1]].a_comp == xs[xi].a_comp) {
            rn = r + 1;
        } else if (obj_[0].cyclic) {
            for (int r3 = 0; r3 < m; ++r3)
                if (xs[seq_a[r3]].a_comp == xs[xi].a_comp) { rn = r3; break; }
            a_wrapped = true;
            if (rn == r) rn = -1;
        }
        if (rn < 0) continue;
        int yi = seq_a[rn];
        const Crossing& X = xs[xi];
        const Crossing& Y = xs[yi];
        if (Y.b_comp != X.b_comp) continue;

        // adjacency along object 1
        bool b_fwd_xy = false, b_fwd_yx = false, b_wrap_xy = false, b_wrap_yx = false;
        {
            int rx = rank_b[xi], ry = rank_b[yi];
            auto [lo, hi] = comp_range_b(X.b_comp);
            auto succ = [&](int rr) {
                if (rr < hi) return rr + 1;
                return obj_[1].cyclic ? lo : -1;
            };
            if (succ(rx) == ry) { b_fwd_xy = true; b_wrap_xy = (rx == hi); }
            if (succ(ry) == rx) { b_fwd_yx = true; b_wrap_yx = (ry == hi); }
        }
        if (!b_fwd_xy && !b_fwd_yx) continue;

        const Word& wa = obj_[0].comps[X.a_comp];
        const Word& wb = obj_[1].comps[X.b_comp];
        int na = static_cast<int>(wa.size()), nb = static_cast<int>(wb.size());
        auto a_idx =
            detail::between_indices(na, X.a_pos, Y.a_pos, obj_[0].cyclic,
                                    a_wrapped && X.a_pos == Y.a_pos);

        for (int variant = 0; variant < 2; ++variant) {
            if (variant == 0 && !b_fwd_xy) continue;
            if (variant == 1 && !b_fwd_yx) continue;
            std::vector<int> b_idx =
                variant == 0
                    ? detail::between_indices(nb, X.b_pos, Y.b_pos, obj_[1].cyclic,
                                              b_wrap_xy && X.b_pos == Y.b_pos)
                    : detail::between_indices(nb, Y.b_pos, X.b_pos, obj_[1].cyclic,
                                              b_wrap_yx && X.b_pos == Y.b_pos);

            // loop word: a-path x->y, then b-path back
            Word loop;
            for (int i : a_idx) loop.push_back(wa[i]);
            if (variant == 0) {
                for (auto it = b_idx.rbegin(); it != b_idx.rend(); ++it)
                    loop.push_back(wb[*it].reversed());
            } else {
                for (int i : b_idx) loop.push_back(wb[i]);
            }
            Word red = remove_returns(loop, true);
            bool trivial = red.empty() || is_free_vertex_link(*K_, red);
            if (!trivial) continue;

            // --- bigon found: reroute object 1 along the a-path ---
            // side of the surviving b approach relative to a's direction,
            // measured at the crossing whose incoming b-chord survives
            const Crossing& S = variant == 0 ? X : Y;
            FaceId f_side = S.face;
            auto a_chord_in = [&](const Crossing& C) {
                return C.a_pos == -1 ? corner_point(C.face, obj_[0].from)
                                     : cycle_point_enter(C.face, 0, C.a_comp, C.a_pos);
            };
            auto a_chord_out = [&](const Crossing& C) {
                if (!obj_[0].cyclic && C.a_pos == na - 1)
                    return corner_point(C.face, obj_[0].to);
                return cycle_point_exit(C.face, 0, C.a_comp, (C.a_pos + 1) % na);
            };
            detail::CyclePoint A1 = a_chord_in(S), A2 = a_chord_out(S);
            detail::CyclePoint q_in =
                S.b_pos == -1 ? corner_point(f_side, obj_[1].from)
                              : cycle_point_enter(f_side, 1, S.b_comp, S.b_pos);
            bool right_of_a = detail::ccw_between(A1, A2, q_in);

            std::vector<Dart> new_letters;
            std::vector<int> anchor_pos;
            if (variant == 0) {
                for (int i : a_idx) {
                    new_letters.push_back(wa[i]);
                    anchor_pos.push_back(i);
                }
            } else {
                for (auto it = a_idx.rbegin(); it != a_idx.rend(); ++it) {
                    new_letters.push_back(wa[*it].reversed());
                    anchor_pos.push_back(*it);
                }
            }

            auto& bw = obj_[1].comps[X.b_comp];
            auto& bh = handles_[1][X.b_comp];
            std::vector<int> removed = b_idx;
            std::sort(removed.begin(), removed.end());
            for (int i : b_idx) {
                Handle h = bh[i];
                auto& sl = slot_list_[rec_[h].edge];
                sl.erase(std::find(sl.begin(), sl.end(), h));
            }

            Word nw;
            std::vector<Handle> nh;
            auto push_new_block = [&]() {
                for (size_t k = 0; k < new_letters.size(); ++k) {
                    Dart L = new_letters[k];
                    Handle ha = handles_[0][X.a_comp][anchor_pos[k]];
                    Dart Xa = wa[anchor_pos[k]];
                    Handle h = new_handle(1, X.b_comp, L.edge);
                    auto& sl = slot_list_[L.edge];
                    auto it = std::find(sl.begin(), sl.end(), ha);
                    if (it == sl.end()) throw domain_error("overlay: anchor slot missing");
                    bool left = !right_of_a;
                    bool after = left == Xa.fwd;
                    if (after) ++it;
                    sl.insert(it, h);
                    nw.push_back(L);
                    nh.push_back(h);
                }
            };
            if (!obj_[1].cyclic) {
                int s = removed.empty() ? -1 : removed.front();
                int t = removed.empty() ? -2 : removed.back();
                int insert_after = variant == 0 ? S.b_pos : S.b_pos;
                for (int i = 0; i <= (removed.empty() ? insert_after : s - 1); ++i) {
                    nw.push_back(bw[i]);
                    nh.push_back(bh[i]);
                }
                if (removed.empty() && insert_after == -1) {
                    // nothing pushed yet
                }
                push_new_block();
                for (int i = (removed.empty() ? insert_after + 1 : t + 1); i < nb; ++i) {
                    nw.push_back(bw[i]);
                    nh.push_back(bh[i]);
                }
            } else {
                // cyclic: removed is the cyclic interval (first..last) in
                // traversal order; rebuild starting with the new block, then
                // the kept letters in cyclic order after the interval end.
                int start_kept;
                if (removed.empty()) {
                    start_kept = (variant == 0 ? (X.b_pos + 1) : (Y.b_pos + 1));
                    start_kept = ((start_kept % nb) + nb) % nb;
                } else {
                    int first_removed = variant == 0 ? ((X.b_pos + 1) % nb + nb) % nb
                                                     : ((Y.b_pos + 1) % nb + nb) % nb;
                    int last_removed =
                        (first_removed + static_cast<int>(removed.size()) - 1) % nb;
                    start_kept = (last_removed + 1) % nb;
                }
                push_new_block();
                int kept = nb - static_cast<int>(removed.size());
                std::vector<bool> is_removed(nb, false);
                for (int i : removed) is_removed[i] = true;
                int i = start_kept;
                for (int cnt = 0; cnt < kept;) {
                    if (!is_removed[i]) {
                        nw.push_back(bw[i]);
                        nh.push_back(bh[i]);
                        ++cnt;
                    }
                    i = (i + 1) % nb;
                }
            }
            bw = std::move(nw);
            bh = std::move(nh);
            return true;
        }
    }
    return false;
}

// --------------------------------------------------------------------------
// public helpers

inline long long geometric_intersection_words(const Complex& K, const Word& a, const Word& b) {
    if (same_unoriented_cycle(a, b)) return 0;  // i(x, x) = 0
    Overlay ov(K, Strands::of_word(K, a), Strands::of_word(K, b));
    ov.minimize();
    return ov.crossing_count();
}

inline long long algebraic_intersection_words(const Complex& K, const Word& a, const Word& b) {
    if (same_unoriented_cycle(a, b)) return 0;
    Overlay ov(K, Strands::of_word(K, a), Strands::of_word(K, b));
    return ov.signed_crossing_sum();
}

}  // namespace spwf
