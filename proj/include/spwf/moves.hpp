#pragma once

// Elementary surgeries on complexes with two-way word transport.  Each step
// rewrites crossing words so that isotopy classes are preserved under the
// homeomorphism the step realizes.  Pipelines compose steps; cut-and-cap and
// stabilization are built on top of these.

#include <functional>
#include "spwf/curves.hpp"

namespace spwf {

class Pipeline {
public:
    explicit Pipeline(Complex K) : K_(std::move(K)) {}

    const Complex& complex() const { return K_; }
    Complex& complex_mutable() { return K_; }

    Word forward(Word w, bool cyclic = true) const {
        for (const auto& s : steps_) w = s.fwd(std::move(w), cyclic);
        return w;
    }
    Word backward(Word w, bool cyclic = true) const {
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
            w = (*it).bwd(std::move(w), cyclic);
        return w;
    }

    // ---- elementary steps ------------------------------------------------

    // Splits face f by a cone on a new vertex carrying `mark_label`
    // (negative: free vertex).  Returns the spoke edges, indexed by the
    // boundary position whose head corner they start at.
    std::vector<EdgeId> cone_split(FaceId f, int mark_label);

    // Contracts edge q; the vertex at the `tail_dies` end of dart (q,true)
    // is slid into the other end.  The dying vertex must be free and the
    // edge must not be a loop.
    void contract_edge(EdgeId q, bool head_dies);

    // Removes edge q, merging the two distinct faces adjacent to it.
    void remove_edge(EdgeId q);

    // Splits face f by a new edge between the corners at the tails of
    // boundary darts i and j (i < j); returns the new edge.
    EdgeId insert_diagonal(FaceId f, int i, int j);

    // Triangulates every face with more than three sides and removes
    // monogons and bigons.
    void make_triangulated();

    // Contracts free vertices into one (a spanning tree of contractions).
    void merge_free_vertices();

    // Replay marks after a structural edit: marks are tracked by anchor
    // darts into their vertices.
    struct MarkAnchor {
        Dart into;
        int label;
    };

private:
    Complex K_;
    struct Step {
        std::function<Word(Word, bool)> fwd, bwd;
    };
    std::vector<Step> steps_;

    std::vector<MarkAnchor> save_marks(const std::vector<EdgeId>& avoid = {}) const {
        std::vector<MarkAnchor> out;
        for (VertexId v : K_.marked_vertices()) {
            Dart anchor(-1, true);
            for (const Dart& d : K_.vertex_star(v)) {
                bool bad = false;
                for (EdgeId e : avoid) bad |= (d.edge == e);
                if (!bad) { anchor = d; break; }
            }
            if (anchor.edge < 0) throw domain_error("save_marks: no safe anchor dart");
            out.push_back(MarkAnchor{anchor, K_.mark_label(v)});
        }
        return out;
    }
    void restore_marks(const std::vector<MarkAnchor>& marks) {
        for (const auto& m : marks) K_.set_mark(K_.head_vertex(m.into), m.label);
    }

    friend class CapBuilder;
    friend class TubeBuilder;

public:
    void push_step(std::function<Word(Word, bool)> fwd, std::function<Word(Word, bool)> bwd) {
        steps_.push_back(Step{std::move(fwd), std::move(bwd)});
    }
};

// ---------------------------------------------------------------------------

inline std::vector<EdgeId> Pipeline::cone_split(FaceId f, int mark_label) {
    auto marks = save_marks();
    std::vector<Dart> bd = K_.faces[f];
    int L = static_cast<int>(bd.size());
    int base = K_.num_edges();
    std::vector<EdgeId> spokes(L);
    for (int i = 0; i < L; ++i) spokes[i] = base + i;

    // Triangle T_i = [bd[i], spoke at head(bd[i]) toward m, spoke at
    // tail(bd[i]) away from m].
    std::vector<std::vector<Dart>> tris(L);
    for (int i = 0; i < L; ++i) {
        tris[i] = {bd[i], Dart(spokes[i], true), Dart(spokes[(i - 1 + L) % L], false)};
    }
    K_.faces[f] = tris[0];
    std::vector<FaceId> new_faces = {f};
    for (int i = 1; i < L; ++i) {
        K_.faces.push_back(tris[i]);
        new_faces.push_back(static_cast<FaceId>(K_.faces.size()) - 1);
    }
    K_.finalize();
    restore_marks(marks);
    VertexId m = K_.head_vertex(Dart(spokes[0], true));
    if (mark_label >= 0) K_.set_mark(m, mark_label);

    // forward: route every passage through f around the cone, crossing the
    // cheaper side (0 or 1 spokes).  The old face is recorded by its
    // boundary darts: a passage is a consecutive pair (X, Y) with
    // X.reversed(), Y both among bd.
    std::map<std::pair<int, bool>, int> pos_of;  // dart -> boundary index
    for (int i = 0; i < L; ++i) pos_of[{bd[i].edge, bd[i].fwd}] = i;
    auto idx_of = [pos_of](const Dart& d) -> int {
        auto it = pos_of.find({d.edge, d.fwd});
        return it == pos_of.end() ? -1 : it->second;
    };
    auto fwd = [idx_of, spokes, L](Word w, bool cyclic) -> Word {
        if (w.empty()) return w;
        Word out;
        int n = static_cast<int>(w.size());
        int last = cyclic ? n : n - 1;
        for (int i = 0; i < n; ++i) {
            out.push_back(w[i]);
            if (i >= last) continue;
            const Dart& X = w[i];
            const Dart& Y = w[(i + 1) % n];
            int p = idx_of(X.reversed());
            int q = idx_of(Y);
            if (p < 0 || q < 0) continue;
            // passage through the old face from boundary p to boundary q
            int ahead = ((q - p) % L + L) % L;
            if (ahead == 0) continue;  // stays inside one cone triangle
            if (ahead == 1) {
                out.push_back(Dart(spokes[p], true));
            } else if (ahead == L - 1) {
                out.push_back(Dart(spokes[(p - 1 + L) % L], false));
            } else {
                // route the shorter way around the cone
                if (ahead <= L - ahead) {
                    for (int t = 0; t < ahead; ++t)
                        out.push_back(Dart(spokes[(p + t) % L], true));
                } else {
                    for (int t = 0; t < L - ahead; ++t)
                        out.push_back(Dart(spokes[(p - 1 - t + L) % L], false));
                }
            }
        }
        return out;
    };
    // backward: forget the cone; drop spoke crossings.
    std::vector<EdgeId> spoke_copy = spokes;
    auto bwd = [spoke_copy](Word w, bool) -> Word {
        Word out;
        for (const Dart& d : w) {
            bool is_spoke = false;
            for (EdgeId s : spoke_copy) is_spoke |= (d.edge == s);
            if (!is_spoke) out.push_back(d);
        }
        return out;
    };
    push_step(fwd, bwd);
    return spokes;
}

inline void Pipeline::contract_edge(EdgeId q, bool head_dies) {
    Dart into = head_dies ? Dart(q, true) : Dart(q, false);
    VertexId u = K_.head_vertex(into);
    if (K_.is_marked(u)) throw domain_error("contract_edge: dying vertex is marked");
    if (K_.tail_vertex(into) == u) throw domain_error("contract_edge: loop edge");

    // Detour: the link of u with its q-crossing removed, matched to the
    // direction of the strand.
    Word link = vertex_link_word(K_, u);
    int t = -1;
    for (int i = 0; i < static_cast<int>(link.size()); ++i)
        if (link[i].edge == q) t = i;
    if (t < 0) throw domain_error("contract_edge: q missing from link");
    Word det;  // the link path from just-after q around to just-before q
    for (size_t i = 1; i < link.size(); ++i) det.push_back(link[(t + i) % link.size()]);
    Dart link_q = link[t];

    EdgeId qq = q;
    auto fwd = [qq, det, link_q](Word w, bool) -> Word {
        Word out;
        for (const Dart& d : w) {
            if (d.edge != qq) {
                out.push_back(d);
                continue;
            }
            if (d == link_q) {
                // strand crosses like the link does; the link path runs
                // opposite to the strand, so insert it reversed
                Word r = reversed_word(det);
                out.insert(out.end(), r.begin(), r.end());
            } else {
                out.insert(out.end(), det.begin(), det.end());
            }
        }
        return out;
    };
    auto bwd = [](Word w, bool) -> Word { return w; };

    auto marks = save_marks({q});
    for (auto& f : K_.faces) {
        std::vector<Dart> nb;
        for (const Dart& d : f)
            if (d.edge != q) nb.push_back(d);
        f = nb;
    }
    // drop empty faces (a monogon whose only side was q cannot occur: q is
    // not a loop, so faces keep at least one dart)
    for (const auto& f : K_.faces)
        if (f.empty()) throw domain_error("contract_edge: face vanished");
    K_.finalize();
    restore_marks(marks);
    push_step(fwd, bwd);
}

inline void Pipeline::remove_edge(EdgeId q) {
    BoundaryPos p1 = K_.locate(Dart(q, true));
    BoundaryPos p2 = K_.locate(Dart(q, false));
    if (p1.face == p2.face) throw domain_error("remove_edge: same face on both sides");

    // record the merge for the backward rule
    std::vector<Dart> F1 = K_.faces[p1.face];
    std::vector<Dart> F2 = K_.faces[p2.face];
    int n1 = static_cast<int>(F1.size()), n2 = static_cast<int>(F2.size());

    // merged boundary: F1 around from after (q,true), then F2 around from
    // after (q,false)
    std::vector<Dart> merged;
    std::vector<int> group;  // 1 or 2 per merged dart
    for (int i = 1; i < n1; ++i) {
        merged.push_back(F1[(p1.index + i) % n1]);
        group.push_back(1);
    }
    for (int i = 1; i < n2; ++i) {
        merged.push_back(F2[(p2.index + i) % n2]);
        group.push_back(2);
    }
    if (merged.empty()) throw domain_error("remove_edge: degenerate merge");

    auto marks = save_marks({q});
    FaceId keep = p1.face, drop = p2.face;
    K_.faces[keep] = merged;
    K_.faces.erase(K_.faces.begin() + drop);
    K_.finalize();
    restore_marks(marks);

    EdgeId qq = q;
    auto fwd = [qq](Word w, bool) -> Word {
        Word out;
        for (const Dart& d : w)
            if (d.edge != qq) out.push_back(d);
        return out;
    };
    // backward: a passage through the merged face crossing between the two
    // groups needs the q-letter restored; direction: group1 -> group2 exits
    // F1 through (q,true).
    std::map<std::pair<int, bool>, int> grp;
    for (size_t i = 0; i < merged.size(); ++i) grp[{merged[i].edge, merged[i].fwd}] = group[i];
    auto bwd = [grp, qq](Word w, bool cyclic) -> Word {
        if (w.empty()) return w;
        auto side = [grp](const Dart& d) -> int {
            auto it = grp.find({d.edge, d.fwd});
            return it == grp.end() ? 0 : it->second;
        };
        Word out;
        int n = static_cast<int>(w.size());
        int last = cyclic ? n : n - 1;
        for (int i = 0; i < last; ++i) {
            out.push_back(w[i]);
            int a = side(w[i].reversed());
            int b = side(w[(i + 1) % n]);
            if (a == 1 && b == 2)
                out.push_back(Dart(qq, true));
            else if (a == 2 && b == 1)
                out.push_back(Dart(qq, false));
        }
        if (!cyclic && n > 0) out.push_back(w[n - 1]);
        return out;
    };
    push_step(fwd, bwd);
}

inline EdgeId Pipeline::insert_diagonal(FaceId f, int i, int j) {
    if (i >= j) throw domain_error("insert_diagonal: need i < j");
    std::vector<Dart> bd = K_.faces[f];
    int n = static_cast<int>(bd.size());
    EdgeId q = K_.num_edges();
    // F1 = darts i..j-1 + (q toward corner i); F2 = darts j..i-1 + (q back)
    std::vector<Dart> F1, F2;
    for (int t = i; t < j; ++t) F1.push_back(bd[t]);
    F1.push_back(Dart(q, true));
    for (int t = j; t < n + i; ++t) F2.push_back(bd[t % n]);
    F2.push_back(Dart(q, false));

    auto marks = save_marks();
    K_.faces[f] = F1;
    K_.faces.push_back(F2);
    K_.finalize();
    restore_marks(marks);

    std::map<std::pair<int, bool>, int> pos;
    for (int t = 0; t < n; ++t) pos[{bd[t].edge, bd[t].fwd}] = t;
    auto in_F1 = [pos, i, j](const Dart& d) -> int {
        auto it = pos.find({d.edge, d.fwd});
        if (it == pos.end()) return 0;
        return (i <= it->second && it->second < j) ? 1 : 2;
    };
    EdgeId qq = q;
    auto fwd = [in_F1, qq](Word w, bool cyclic) -> Word {
        if (w.empty()) return w;
        Word out;
        int n2 = static_cast<int>(w.size());
        int last = cyclic ? n2 : n2 - 1;
        for (int k = 0; k < last; ++k) {
            out.push_back(w[k]);
            int a = in_F1(w[k].reversed());
            int b = in_F1(w[(k + 1) % n2]);
            if (a == 1 && b == 2)
                out.push_back(Dart(qq, true));
            else if (a == 2 && b == 1)
                out.push_back(Dart(qq, false));
        }
        if (!cyclic && n2 > 0) out.push_back(w[n2 - 1]);
        return out;
    };
    auto bwd = [qq](Word w, bool) -> Word {
        Word out;
        for (const Dart& d : w)
            if (d.edge != qq) out.push_back(d);
        return out;
    };
    push_step(fwd, bwd);
    return q;
}

inline void Pipeline::make_triangulated() {
    // monogons and bigons first
    bool changed = true;
    while (changed) {
        changed = false;
        for (FaceId f = 0; f < K_.num_faces() && !changed; ++f) {
            int n = K_.face_size(f);
            if (n > 2) continue;
            for (int i = 0; i < n && !changed; ++i) {
                Dart d = K_.at(f, i);
                if (K_.locate(d.reversed()).face != f) {
                    remove_edge(d.edge);
                    changed = true;
                }
            }
            if (!changed && n <= 2)
                throw domain_error("make_triangulated: sphere-like small face");
        }
    }
    for (FaceId f = 0; f < K_.num_faces(); ++f) {
        while (K_.face_size(f) > 3) {
            insert_diagonal(f, 0, 2);
        }
    }
}

inline void Pipeline::merge_free_vertices() {
    // contract non-loop edges joining distinct free vertices until one is left
    bool progress = true;
    while (static_cast<int>(K_.free_vertices().size()) > 1 && progress) {
        progress = false;
        for (EdgeId e = 0; e < K_.num_edges() && !progress; ++e) {
            Dart d(e, true);
            VertexId h = K_.head_vertex(d), t = K_.tail_vertex(d);
            if (h == t) continue;
            if (K_.is_marked(h) && K_.is_marked(t)) continue;
            // contract towards a marked end if there is one
            bool head_dies = !K_.is_marked(h);
            contract_edge(e, head_dies);
            progress = true;
        }
    }
    if (static_cast<int>(K_.free_vertices().size()) > 1)
        throw domain_error("merge_free_vertices: stuck");
}

}  // namespace spwf
