#pragma once

// Combinatorial model of a closed oriented surface: polygonal faces glued
// along edges in pairs.  Every face boundary is a cyclic list of directed
// edges, the face lying on the left of each one.  Vertices are the orbits
// of the corner rotation and carry a type (free or marked).  All curve
// calculus in this library runs on top of this structure.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace spwf {

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

using EdgeId = int;
using FaceId = int;
using VertexId = int;

// A directed edge: edge id plus direction flag (true = forward).
struct Dart {
    EdgeId edge = -1;
    bool fwd = true;

    Dart() = default;
    Dart(EdgeId e, bool f) : edge(e), fwd(f) {}
    Dart reversed() const { return Dart(edge, !fwd); }
    bool operator==(const Dart& o) const { return edge == o.edge && fwd == o.fwd; }
    bool operator!=(const Dart& o) const { return !(*this == o); }
    bool operator<(const Dart& o) const {
        return edge != o.edge ? edge < o.edge : fwd < o.fwd;
    }
};

// Position of a dart inside a face boundary.
struct BoundaryPos {
    FaceId face = -1;
    int index = -1;  // position in faces[face]
    bool operator==(const BoundaryPos& o) const { return face == o.face && index == o.index; }
};

class Complex {
public:
    // faces[f] = cyclic list of darts, counterclockwise, face on the left.
    std::vector<std::vector<Dart>> faces;

    Complex() = default;

    int num_edges() const { return n_edges_; }
    int num_faces() const { return static_cast<int>(faces.size()); }
    int num_vertices() const { return n_vertices_; }

    // Call after editing `faces`; recomputes the edge count, the dart
    // location table and the vertex orbits.  Throws if some dart is missing
    // or duplicated.  Edges absent from every face boundary are ghosts
    // (left over from surgeries) and are skipped.
    void finalize() {
        n_edges_ = 0;
        for (const auto& f : faces)
            for (const Dart& d : f) n_edges_ = std::max(n_edges_, d.edge + 1);
        pos_.assign(static_cast<size_t>(n_edges_) * 2, BoundaryPos{});
        std::vector<int> seen(static_cast<size_t>(n_edges_) * 2, 0);
        for (FaceId f = 0; f < num_faces(); ++f) {
            if (faces[f].empty()) throw domain_error("complex: empty face");
            for (int i = 0; i < static_cast<int>(faces[f].size()); ++i) {
                const Dart& d = faces[f][i];
                size_t k = dart_key(d);
                if (seen[k]++) throw domain_error("complex: dart appears twice");
                pos_[k] = BoundaryPos{f, i};
            }
        }
        ghost_.assign(n_edges_, false);
        int live = 0;
        for (EdgeId e = 0; e < n_edges_; ++e) {
            int c = seen[2 * e] + seen[2 * e + 1];
            if (c == 0)
                ghost_[e] = true;
            else if (c == 2 && seen[2 * e] == 1)
                ++live;
            else
                throw domain_error("complex: half-matched edge");
        }
        n_live_edges_ = live;
        build_vertices();
        if (static_cast<int>(marked_.size()) != n_vertices_) marked_.assign(n_vertices_, -1);
    }

    bool is_ghost(EdgeId e) const { return ghost_[e]; }
    int num_live_edges() const { return n_live_edges_; }

    size_t dart_key(const Dart& d) const { return static_cast<size_t>(d.edge) * 2 + (d.fwd ? 0 : 1); }

    BoundaryPos locate(const Dart& d) const { return pos_[dart_key(d)]; }

    Dart at(FaceId f, int i) const {
        const auto& b = faces[f];
        int n = static_cast<int>(b.size());
        return b[((i % n) + n) % n];
    }
    int face_size(FaceId f) const { return static_cast<int>(faces[f].size()); }

    // The face a curve enters when it crosses `d` "leftward": crossing the
    // dart d means leaving the face containing d and entering the face
    // containing d.reversed().
    FaceId face_of(const Dart& d) const { return locate(d).face; }

    // Corner rotation.  Corners are identified with darts pointing *into*
    // the vertex: the corner after dart d (inside face_of(d), between d and
    // the next boundary dart).  Rotating around the vertex:
    //   next_at_vertex(d) = reverse(dart following d in its face).
    Dart next_at_vertex(const Dart& d) const {
        BoundaryPos p = locate(d);
        return at(p.face, p.index + 1).reversed();
    }

    VertexId head_vertex(const Dart& d) const { return vertex_of_corner_[dart_key(d)]; }
    VertexId tail_vertex(const Dart& d) const { return head_vertex(d.reversed()); }

    bool is_marked(VertexId v) const { return marked_[v] >= 0; }
    int mark_label(VertexId v) const { return marked_[v]; }
    void set_mark(VertexId v, int label) { marked_[v] = label; }
    void clear_mark(VertexId v) { marked_[v] = -1; }

    std::vector<VertexId> marked_vertices() const {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < n_vertices_; ++v)
            if (marked_[v] >= 0) out.push_back(v);
        return out;
    }
    std::vector<VertexId> free_vertices() const {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < n_vertices_; ++v)
            if (marked_[v] < 0) out.push_back(v);
        return out;
    }

    std::optional<VertexId> vertex_with_mark(int label) const {
        for (VertexId v = 0; v < n_vertices_; ++v)
            if (marked_[v] == label) return v;
        return std::nullopt;
    }

    int euler_characteristic() const { return n_vertices_ - n_live_edges_ + num_faces(); }

    int genus() const {
        int chi = euler_characteristic();
        if ((2 - chi) % 2 != 0) throw domain_error("complex: odd euler defect");
        return (2 - chi) / 2;
    }

    // The darts into vertex v, in rotation order.
    std::vector<Dart> vertex_star(VertexId v) const {
        for (int k = 0; k < n_edges_ * 2; ++k) {
            if (ghost_[k / 2] || vertex_of_corner_[k] != v) continue;
            Dart d(k / 2, k % 2 == 0);
            std::vector<Dart> star;
            Dart cur = d;
            do {
                star.push_back(cur);
                cur = next_at_vertex(cur);
            } while (cur != d);
            return star;
        }
        throw domain_error("complex: vertex without corners");
    }

    int vertex_degree(VertexId v) const { return static_cast<int>(vertex_star(v).size()); }

    bool all_faces_triangles() const {
        for (const auto& f : faces)
            if (f.size() != 3) return false;
        return true;
    }

    // Standard-form predicate: triangulated, exactly one free vertex.
    bool standard_form() const {
        return all_faces_triangles() && static_cast<int>(free_vertices().size()) == 1;
    }

    bool operator==(const Complex& o) const {
        return faces == o.faces && marked_ == o.marked_;
    }

private:
    int n_edges_ = 0;
    int n_live_edges_ = 0;
    int n_vertices_ = 0;
    std::vector<BoundaryPos> pos_;
    std::vector<bool> ghost_;
    std::vector<VertexId> vertex_of_corner_;  // indexed by dart_key of the dart into the vertex
    std::vector<int> marked_;                 // vertex -> mark label (-1 = free)

    void build_vertices() {
        // Marks are re-applied by callers after surgery (vertex ids change);
        // here we only rebuild the orbits.
        vertex_of_corner_.assign(static_cast<size_t>(n_edges_) * 2, -1);
        n_vertices_ = 0;
        for (int k = 0; k < n_edges_ * 2; ++k) {
            if (ghost_[k / 2]) continue;
            if (vertex_of_corner_[k] >= 0) continue;
            Dart d(k / 2, k % 2 == 0);
            Dart cur = d;
            do {
                vertex_of_corner_[dart_key(cur)] = n_vertices_;
                cur = next_at_vertex(cur);
            } while (cur != d);
            ++n_vertices_;
        }
        marked_.assign(n_vertices_, -1);
    }
};

// Builds a complex from a polygon gluing scheme: `sides` lists, for the
// single polygon boundary walked counterclockwise, a signed label per side;
// two sides with the same absolute label are glued, orientation-reversing
// when the signs differ.  (The usual a b a^-1 b^-1 schemes have opposite
// signs on the two occurrences.)  Diagonals triangulating the polygon are
// added as a fan from corner 0.  All polygon corners become vertices of the
// quotient; for the canonical 4g-gon scheme they all map to one vertex.
Complex fan_polygon_complex(const std::vector<int>& sides);

inline Complex fan_polygon_complex(const std::vector<int>& sides) {
    int n = static_cast<int>(sides.size());
    if (n < 3) throw domain_error("fan_polygon_complex: need at least 3 sides");
    std::map<int, int> label_edge;  // |label| -> edge id
    std::map<int, int> label_count;
    int next_edge = 0;
    // Boundary darts: side i gets dart over edge label_edge[|label|].
    // Direction: the first occurrence of a label is traversed forward, the
    // second occurrence forward if the sign matches the first, else backward.
    std::map<int, int> first_sign;
    std::vector<Dart> boundary(n);
    for (int i = 0; i < n; ++i) {
        int lab = sides[i];
        int a = std::abs(lab);
        if (!label_edge.count(a)) {
            label_edge[a] = next_edge++;
            first_sign[a] = lab > 0 ? 1 : -1;
            boundary[i] = Dart(label_edge[a], true);
        } else {
            int sgn = lab > 0 ? 1 : -1;
            boundary[i] = Dart(label_edge[a], sgn == first_sign[a]);
        }
        if (++label_count[a] > 2) throw domain_error("fan_polygon_complex: label used 3 times");
    }
    for (auto& [a, c] : label_count)
        if (c != 2) throw domain_error("fan_polygon_complex: unmatched label");

    // Fan diagonals from corner 0 to corners 2..n-2.  Triangle i has corners
    // (0, i, i+1): darts (diag_i forward from 0 to i is traversed at position
    // 0 of the triangle as 0->i, then side i, then diagonal i+1 reversed).
    int n_diag = n - 3;
    std::vector<int> diag_edge(n, -1);
    for (int i = 2; i <= n - 2; ++i) diag_edge[i] = next_edge++;
    Complex K;
    for (int i = 1; i <= n - 2; ++i) {
        std::vector<Dart> tri;
        if (i == 1)
            tri.push_back(boundary[0]);
        else
            tri.push_back(Dart(diag_edge[i], true));
        tri.push_back(boundary[i]);
        if (i == n - 2)
            tri.push_back(boundary[n - 1]);
        else
            tri.push_back(Dart(diag_edge[i + 1], false));
        K.faces.push_back(tri);
    }
    (void)n_diag;
    K.finalize();
    return K;
}

}  // namespace spwf
