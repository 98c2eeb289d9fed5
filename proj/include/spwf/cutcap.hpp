#pragma once

// Cutting a surface along an embedded system of curves and capping the
// scars.  The refined complex turns the system into a cycle of edges; the
// cut duplicates those edges, caps glue marked cones onto the scars, and a
// pipeline of elementary moves brings each piece back to standard form.
// Curves disjoint from the system travel down (projection) and back up
// (lift) through the same data.

#include "spwf/moves.hpp"
#include "spwf/overlay.hpp"

namespace spwf {

// Refinement of a complex along an embedded multicurve.  Sub-edge ids are
// fresh; chord edges (the arcs of the system inside faces) come after them.
struct Refinement {
    const Complex* base = nullptr;
    Complex refined;
    Multicurve system;                              // the refining system (canonical words)
    std::vector<std::vector<EdgeId>> sub;           // sub[e][i]: i-th sub-edge of e
    std::vector<std::vector<EdgeId>> chord;         // chord[comp][pos]: edge of the arc
                                                    // entered after crossing system word pos
    // slots[e]: for each crossing of e by the system, (comp, pos), ordered
    std::vector<std::vector<std::pair<int, int>>> slots;

    // Maps a word disjoint from the system, using the positions recorded in
    // `ov` (an overlay with the system as object 0 and the word's object as
    // object 1, minimized to zero crossings).
    Word transport(const Overlay& ov, int comp) const {
        const Word& w = ov.words(1)[comp];
        Word out;
        for (int p = 0; p < static_cast<int>(w.size()); ++p) {
            int k = ov.subedge_of(comp, p);
            out.push_back(Dart(sub[w[p].edge][k], w[p].fwd));
        }
        return out;
    }
};

inline Refinement refine_along(const Complex& K, const Multicurve& sys,
                               const Overlay& placed) {
    // `placed` must have the system as object 0 (its own canonical placement
    // decides the slot order; object 1 is arbitrary and ignored here).
    Refinement R;
    R.base = &K;
    R.system = sys;
    int ne = K.num_edges();
    R.sub.assign(ne, {});
    R.slots.assign(ne, {});
    int next_edge = 0;
    for (EdgeId e = 0; e < ne; ++e) {
        if (K.is_ghost(e)) continue;
        auto seq = placed.slot_sequence(e);
        for (const auto& s : seq)
            if (s.owner == 0) R.slots[e].push_back({s.comp, s.pos});
        int k = static_cast<int>(R.slots[e].size());
        for (int i = 0; i <= k; ++i) R.sub[e].push_back(next_edge++);
    }
    R.chord.assign(sys.comps.size(), {});
    for (size_t c = 0; c < sys.comps.size(); ++c)
        R.chord[c].assign(sys.comps[c].size(), -1);
    // chord edges: one per word position (the arc after crossing position p)
    for (size_t c = 0; c < sys.comps.size(); ++c)
        for (size_t p = 0; p < sys.comps[c].size(); ++p) R.chord[c][p] = next_edge++;

    // face boundaries in the refined complex, before chord insertion
    std::vector<std::vector<Dart>> faces;
    struct CornerRef {
        int face, index;
    };  // corner between boundary darts index-1 and index
    // map (comp,pos) -> the two corners of its junction vertex per face side
    // are found on the fly below.
    for (FaceId f = 0; f < K.num_faces(); ++f) {
        std::vector<Dart> nb;
        for (const Dart& d : K.faces[f]) {
            const auto& s = R.sub[d.edge];
            if (d.fwd)
                for (EdgeId se : s) nb.push_back(Dart(se, true));
            else
                for (auto it = s.rbegin(); it != s.rend(); ++it) nb.push_back(Dart(*it, false));
        }
        faces.push_back(nb);
    }

    // Split faces along the system's arcs.  The arc after crossing (c,p)
    // runs from the junction of (c,p) to the junction of (c,p+1) inside the
    // face it enters.  A junction of (c,p) on its edge e at slot index i is
    // the corner between sub-darts i and i+1 of the matching occurrence.
    auto slot_index = [&](int c, int p) {
        const Word& w = sys.comps[c];
        EdgeId e = w[p].edge;
        for (int i = 0; i < static_cast<int>(R.slots[e].size()); ++i)
            if (R.slots[e][i] == std::make_pair(c, p)) return i;
        throw domain_error("refine_along: crossing not on its edge");
    };
    // Work on a growing face list; locate corners by scanning.
    auto find_corner = [&](int c, int p, bool entering) -> CornerRef {
        // entering: the junction seen from the face the arc runs in, i.e.
        // the face containing the occurrence crossed into (dart reversed);
        // !entering: the occurrence crossed out of.
        const Word& w = sys.comps[c];
        Dart occ = entering ? w[p].reversed() : w[p];
        int i = slot_index(c, p);
        // sub-dart just before the junction along the occurrence traversal:
        // occurrence fwd: sub i (0-based), corner between sub i and i+1.
        // occurrence bwd: traversal passes sub k-1-i... we search by darts.
        EdgeId e = w[p].edge;
        Dart before = occ.fwd ? Dart(R.sub[e][i], true) : Dart(R.sub[e][i + 1], false);
        for (int ff = 0; ff < static_cast<int>(faces.size()); ++ff)
            for (int t = 0; t < static_cast<int>(faces[ff].size()); ++t)
                if (faces[ff][t] == before)
                    return CornerRef{ff, (t + 1) % static_cast<int>(faces[ff].size())};
        throw domain_error("refine_along: junction corner not found");
    };

    for (size_t c = 0; c < sys.comps.size(); ++c) {
        const Word& w = sys.comps[c];
        int n = static_cast<int>(w.size());
        for (int p = 0; p < n; ++p) {
            int q = (p + 1) % n;
            CornerRef c1 = find_corner(c, p, true);
            CornerRef c2 = find_corner(c, q, false);
            if (c1.face != c2.face) throw domain_error("refine_along: chord spans faces");
            int f = c1.face;
            int i = c1.index, j = c2.index;
            int L = static_cast<int>(faces[f].size());
            EdgeId ch = R.chord[c][p];
            // split: side A = darts i..j-1 (cyclic) + chord back; side B = rest
            std::vector<Dart> A, B;
            for (int t = i; t != j; t = (t + 1) % L) A.push_back(faces[f][t]);
            A.push_back(Dart(ch, true));
            for (int t = j; t != i; t = (t + 1) % L) B.push_back(faces[f][t]);
            B.push_back(Dart(ch, false));
            if (A.size() < 1 || B.size() < 1) throw domain_error("refine_along: empty side");
            faces[f] = A;
            faces.push_back(B);
        }
    }

    R.refined.faces = faces;
    R.refined.finalize();
    return R;
}

// One capped piece of a cut, carrying its simplification pipeline and the
// data needed to lift words back across the scar.
struct CapPiece {
    Complex capped0;          // plain-capped piece before simplification
    Pipeline pipe;            // from capped0 (cones added) to standard form
    std::vector<int> edge_map;      // refined-edge -> piece edge (-1 if absent)
    struct Ring {
        int mark;                        // label of the cap mark
        std::vector<Dart> cap_boundary;  // cap face boundary darts in capped0
    };
    std::vector<Ring> rings;

    explicit CapPiece(Complex K) : capped0(K), pipe(std::move(K)) {}
};

// Builds the cut-and-cap of a complex along an embedded system.  Marks of
// the base complex survive; each cap gets a fresh mark label.  For a single
// non-separating curve the two cap marks are `mark1` and `mark2` (the side
// containing the chord darts (q,true) gets mark2).
class CutCap {
public:
    CutCap(const Complex& K, Multicurve sys, const std::vector<int>& cap_marks)
        : base_(&K), system_(std::move(sys)) {
        build(cap_marks);
    }

    const Refinement& refinement() const { return refinement_; }
    int piece_count() const { return static_cast<int>(pieces_.size()); }
    const CapPiece& piece(int i) const { return pieces_[i]; }
    const Complex& piece_complex(int i) const { return pieces_[i].pipe.complex(); }
    const Multicurve& system() const { return system_; }

    // Projection: word (curve, cyclic) upstairs, disjoint from the system.
    // Returns (piece index, canonical multicurve downstairs).
    std::pair<int, Multicurve> project(const Word& w) const {
        for (size_t c = 0; c < system_.comps.size(); ++c)
            if (same_unoriented_cycle(w, system_.comps[c]))
                throw domain_error("cutcap: projecting a system-parallel curve");
        Overlay ov(*base_, Strands::of_multicurve(system_), Strands::of_word(*base_, w));
        ov.minimize();
        if (ov.crossing_count() != 0)
            throw domain_error("cutcap: curve meets the cut system");
        Word rw = refinement_.transport(ov, 0);
        auto [pi, local] = to_piece(rw);
        Word down = pieces_[pi].pipe.forward(local);
        return {pi, normalize_multicurve(pieces_[pi].pipe.complex(), {down})};
    }

    // Lift: canonical single-curve word downstairs on piece pi.  Mark-link
    // curves of cap marks lift to the corresponding system component.
    Word lift(int pi, const Word& w) const {
        const CapPiece& P = pieces_[pi];
        const Complex& Kp = P.pipe.complex();
        for (const auto& ring : P.rings) {
            auto v = Kp.vertex_with_mark(ring.mark);
            if (v && Kp.vertex_degree(*v) == static_cast<int>(w.size()) &&
                same_unoriented_cycle(w, vertex_link_word(Kp, *v))) {
                int comp = ring_component(ring.mark);
                return system_.comps[comp];
            }
        }
        Word cw = P.pipe.backward(w);
        cw = pull_off_caps(pi, std::move(cw));
        // back to refined-edge ids, then to base edges
        Word rw;
        for (const Dart& d : cw) {
            EdgeId re = piece_to_refined_[pi][d.edge];
            if (re < 0) throw domain_error("cutcap: lift crosses a scar");
            rw.push_back(Dart(re, d.fwd));
        }
        Word up;
        for (const Dart& d : rw) up.push_back(Dart(parent_edge_[d.edge], d.fwd));
        Multicurve m = normalize_multicurve(*base_, {up});
        if (m.comps.size() != 1) throw domain_error("cutcap: lift not a single curve");
        return m.comps[0];
    }

private:
    const Complex* base_;
    Multicurve system_;
    Refinement refinement_;
    std::vector<CapPiece> pieces_;
    std::vector<std::vector<EdgeId>> piece_to_refined_;  // piece edge -> refined edge
    std::vector<EdgeId> parent_edge_;                    // refined edge -> base edge (-1: chord)
    std::map<int, int> ring_comp_;                       // cap mark -> system component

    int ring_component(int mark) const { return ring_comp_.at(mark); }

    std::pair<int, Word> to_piece(const Word& rw) const {
        if (rw.empty()) throw domain_error("cutcap: empty word has no piece");
        for (int pi = 0; pi < piece_count(); ++pi) {
            const auto& em = pieces_[pi].edge_map;
            if (em[rw[0].edge] < 0) continue;
            Word out;
            for (const Dart& d : rw) {
                EdgeId m = em[d.edge];
                if (m < 0) throw domain_error("cutcap: word crosses pieces");
                out.push_back(Dart(m, d.fwd));
            }
            return {pi, out};
        }
        throw domain_error("cutcap: word in no piece");
    }

    Word pull_off_caps(int pi, Word w) const;
    void build(const std::vector<int>& cap_marks);
};

inline void CutCap::build(const std::vector<int>& cap_marks) {
    if (cap_marks.size() != 2 * system_.comps.size())
        throw domain_error("cutcap: need two cap marks per component");
    // self-placement of the system
    Strands sys_s = Strands::of_multicurve(system_);
    Strands empty;
    empty.K = base_;
    Overlay self(*base_, sys_s, empty);
    refinement_ = refine_along(*base_, system_, self);

    const Complex& R = refinement_.refined;
    parent_edge_.assign(R.num_edges(), -1);
    for (EdgeId e = 0; e < static_cast<int>(refinement_.sub.size()); ++e)
        for (EdgeId se : refinement_.sub[e]) parent_edge_[se] = e;

    // ---- cut: duplicate chord edges ----
    Complex C = R;
    int next_edge = R.num_edges();
    std::vector<std::vector<EdgeId>> chord2(system_.comps.size());
    for (size_t c = 0; c < system_.comps.size(); ++c) {
        for (size_t p = 0; p < system_.comps[c].size(); ++p) {
            EdgeId q = refinement_.chord[c][p];
            EdgeId q2 = next_edge++;
            chord2[c].push_back(q2);
            BoundaryPos bp = C.locate(Dart(q, false));
            C.faces[bp.face][bp.index] = Dart(q2, false);
        }
    }
    // ---- caps ----
    // ring 1 (mark cap_marks[2c+0]): darts (q_p, false) in word order;
    // ring 2 (mark cap_marks[2c+1]): darts (q2_p, true) in reverse order.
    struct RingSpec {
        int mark;
        std::vector<Dart> bd;
        int comp;
    };
    std::vector<RingSpec> ringspecs;
    for (size_t c = 0; c < system_.comps.size(); ++c) {
        int L = static_cast<int>(system_.comps[c].size());
        RingSpec r1, r2;
        r1.mark = cap_marks[2 * c];
        r2.mark = cap_marks[2 * c + 1];
        r1.comp = r2.comp = static_cast<int>(c);
        for (int p = 0; p < L; ++p) r1.bd.push_back(Dart(refinement_.chord[c][p], false));
        for (int p = L - 1; p >= 0; --p) r2.bd.push_back(Dart(chord2[c][p], true));
        ringspecs.push_back(r1);
        ringspecs.push_back(r2);
        ring_comp_[r1.mark] = static_cast<int>(c);
        ring_comp_[r2.mark] = static_cast<int>(c);
    }
    std::vector<FaceId> capfaces;
    for (const auto& rs : ringspecs) {
        C.faces.push_back(rs.bd);
        capfaces.push_back(C.num_faces() - 1 + 0);
    }
    // carry base marks through: anchor them before finalize
    std::vector<std::pair<Dart, int>> base_marks;
    {
        for (VertexId v : R.marked_vertices()) {
            for (const Dart& d : R.vertex_star(v)) {
                bool is_chord = parent_edge_[d.edge] < 0;
                if (!is_chord) {
                    base_marks.push_back({d, R.mark_label(v)});
                    break;
                }
            }
        }
    }
    C.finalize();
    for (auto& [d, lab] : base_marks) C.set_mark(C.head_vertex(d), lab);

    // ---- split into connected pieces ----
    int nF = C.num_faces();
    std::vector<int> comp_of(nF, -1);
    int ncomp = 0;
    for (FaceId f = 0; f < nF; ++f) {
        if (comp_of[f] >= 0) continue;
        std::vector<FaceId> stack = {f};
        comp_of[f] = ncomp;
        while (!stack.empty()) {
            FaceId g = stack.back();
            stack.pop_back();
            for (const Dart& d : C.faces[g]) {
                FaceId h = C.face_of(d.reversed());
                if (comp_of[h] < 0) {
                    comp_of[h] = ncomp;
                    stack.push_back(h);
                }
            }
        }
        ++ncomp;
    }

    piece_to_refined_.assign(ncomp, {});
    for (int pc = 0; pc < ncomp; ++pc) {
        std::vector<EdgeId> emap(C.num_edges(), -1);
        std::vector<EdgeId> inv;
        Complex P;
        for (FaceId f = 0; f < nF; ++f) {
            if (comp_of[f] != pc) continue;
            std::vector<Dart> nb;
            for (const Dart& d : C.faces[f]) {
                if (emap[d.edge] < 0) {
                    emap[d.edge] = static_cast<int>(inv.size());
                    inv.push_back(d.edge);
                }
                nb.push_back(Dart(emap[d.edge], d.fwd));
            }
            P.faces.push_back(nb);
        }
        P.finalize();
        // restore marks on the piece
        for (VertexId v : C.marked_vertices()) {
            for (const Dart& d : C.vertex_star(v)) {
                if (emap[d.edge] >= 0) {
                    P.set_mark(P.head_vertex(Dart(emap[d.edge], d.fwd)), C.mark_label(v));
                    break;
                }
            }
        }
        CapPiece piece(P);
        // edge_map from refined edges (duplicated chords map from both ids)
        piece.edge_map.assign(C.num_edges(), -1);
        for (EdgeId e = 0; e < C.num_edges(); ++e)
            if (emap[e] >= 0) piece.edge_map[e] = emap[e];
        // rings on this piece
        for (size_t ri = 0; ri < ringspecs.size(); ++ri) {
            if (comp_of[capfaces[ri]] != pc) continue;
            CapPiece::Ring ring;
            ring.mark = ringspecs[ri].mark;
            for (const Dart& d : ringspecs[ri].bd)
                ring.cap_boundary.push_back(Dart(emap[d.edge], d.fwd));
            piece.rings.push_back(ring);
        }
        // local->refined table (chord copies map to their original chords)
        std::vector<EdgeId> p2r(inv.size(), -1);
        std::map<EdgeId, EdgeId> copy_orig;
        for (size_t c = 0; c < system_.comps.size(); ++c)
            for (size_t p = 0; p < chord2[c].size(); ++p)
                copy_orig[chord2[c][p]] = refinement_.chord[c][p];
        for (size_t i = 0; i < inv.size(); ++i) {
            EdgeId ce = inv[i];
            p2r[i] = copy_orig.count(ce) ? copy_orig[ce] : ce;
        }
        piece_to_refined_[pc] = p2r;

        // ---- simplify: cone the caps, merge vertices, triangulate ----
        for (const auto& ring : piece.rings) {
            // the cap face is the one whose boundary equals ring.cap_boundary
            FaceId cf = piece.pipe.complex().face_of(ring.cap_boundary[0]);
            piece.pipe.cone_split(cf, ring.mark);
        }
        piece.pipe.merge_free_vertices();
        piece.pipe.make_triangulated();
        if (!piece.pipe.complex().standard_form())
            throw domain_error("cutcap: piece failed to reach standard form");
        pieces_.push_back(std::move(piece));
    }
}

// Rewrites excursions into the plain cap faces of piece pi as paths around
// the outside of the ring (fixed side, so the lift is deterministic).
inline Word CutCap::pull_off_caps(int pi, Word w) const {
    const CapPiece& P = pieces_[pi];
    const Complex& K = P.capped0;
    bool any = true;
    while (any) {
        any = false;
        for (const auto& ring : P.rings) {
            FaceId cf = K.face_of(ring.cap_boundary[0]);
            int L = static_cast<int>(ring.cap_boundary.size());
            int n = static_cast<int>(w.size());
            int hit = -1;
            for (int i = 0; i < n; ++i)
                if (face_entered(K, w[i]) == cf) { hit = i; break; }
            if (hit < 0) continue;
            const Dart X = w[hit];
            const Dart Y = w[(hit + 1) % n];
            int a = -1, b = -1;
            for (int t = 0; t < L; ++t) {
                if (ring.cap_boundary[t] == X.reversed()) a = t;
                if (ring.cap_boundary[t] == Y) b = t;
            }
            if (a < 0 || b < 0) throw domain_error("pull_off: bad excursion");
            // outside path from the crossing of X to the crossing of Y,
            // walking the cap boundary order upward from a to b
            Word path;
            FaceId at = K.face_of(X);
            int t = a;
            while (t != b) {
                int t2 = (t + 1) % L;
                VertexId v = K.head_vertex(ring.cap_boundary[t]);
                Word link = vertex_link_word(K, v);
                int m = static_cast<int>(link.size());
                // locate the inside gap: consecutive link letters crossing
                // the two ring edges with the gap lying in the cap face
                int sstar = -1;
                for (int s = 0; s < m; ++s) {
                    EdgeId e1 = link[s].edge, e2 = link[(s + 1) % m].edge;
                    bool pair = (e1 == ring.cap_boundary[t].edge &&
                                 e2 == ring.cap_boundary[t2].edge) ||
                                (e2 == ring.cap_boundary[t].edge &&
                                 e1 == ring.cap_boundary[t2].edge);
                    if (pair && face_entered(K, link[s]) == cf) { sstar = s; break; }
                }
                if (sstar < 0) throw domain_error("pull_off: inside gap not found");
                Word cand;
                for (int k = 0; k < m - 2; ++k) cand.push_back(link[(sstar + 2 + k) % m]);
                Word use = cand;
                if (use.empty()) { t = t2; continue; }
                if (K.face_of(use.front()) != at) use = reversed_word(cand);
                if (!use.empty() && K.face_of(use.front()) != at)
                    throw domain_error("pull_off: detour does not chain");
                for (const Dart& d : use) path.push_back(d);
                if (!use.empty()) at = face_entered(K, use.back());
                t = t2;
            }
            // splice: drop X and Y, insert path between their neighbours
            Word nw;
            int j = (hit + 2) % n;  // first letter kept after Y
            for (int cnt = 0; cnt < n - 2; ++cnt) {
                nw.push_back(w[j]);
                j = (j + 1) % n;
            }
            for (const Dart& d : path) nw.push_back(d);
            w = std::move(nw);
            any = true;
        }
    }
    return w;
}

}  // namespace spwf
