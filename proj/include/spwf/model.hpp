#pragma once

// Standard models: the canonical genus-g surface is the fan-triangulated
// 4g-gon with boundary word a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1.  Atlas
// curves are written as chord words in the polygon.

#include "spwf/curves.hpp"

namespace spwf {

struct FanPolygon {
    Complex K;
    std::vector<Dart> boundary;   // side i as traversed ccw (its polygon dart)
    std::vector<EdgeId> diag;     // diag[j]: edge of the fan diagonal to corner j (j=2..n-2), else -1
    int n = 0;                    // number of polygon sides
};

inline FanPolygon build_fan_polygon(const std::vector<int>& sides) {
    FanPolygon P;
    P.n = static_cast<int>(sides.size());
    P.K = fan_polygon_complex(sides);
    // Reconstruct the side darts and diagonals the same way the builder does.
    std::map<int, int> label_edge;
    std::map<int, int> first_sign;
    int next_edge = 0;
    P.boundary.resize(P.n);
    for (int i = 0; i < P.n; ++i) {
        int lab = sides[i];
        int a = std::abs(lab);
        if (!label_edge.count(a)) {
            label_edge[a] = next_edge++;
            first_sign[a] = lab > 0 ? 1 : -1;
            P.boundary[i] = Dart(label_edge[a], true);
        } else {
            int sgn = lab > 0 ? 1 : -1;
            P.boundary[i] = Dart(label_edge[a], sgn == first_sign[a]);
        }
    }
    P.diag.assign(P.n, -1);
    for (int j = 2; j <= P.n - 2; ++j) P.diag[j] = next_edge++;
    return P;
}

// Crossings of a chord from the interior of side p to the interior of side
// q, in traversal order (fan diagonals only; the boundary crossing is the
// caller's business).
inline Word chord_word(const FanPolygon& P, int p, int q) {
    Word w;
    if (p == q) return w;
    if (p < q) {
        for (int j = std::max(p + 1, 2); j <= std::min(q, P.n - 2); ++j)
            w.push_back(Dart(P.diag[j], false));
    } else {
        for (int j = std::min(p, P.n - 2); j >= std::max(q + 1, 2); --j)
            w.push_back(Dart(P.diag[j], true));
    }
    return w;
}

// Glued partner of a polygon side (the other occurrence of its edge).
inline int partner_side(const FanPolygon& P, int s) {
    for (int t = 0; t < P.n; ++t)
        if (t != s && P.boundary[t].edge == P.boundary[s].edge) return t;
    throw domain_error("partner_side: unmatched side");
}

// Closed curve visiting polygon sides: segments[i] = (entry side, exit side);
// after exiting through side `exit`, the curve re-enters at partner(exit),
// which must equal segments[i+1].entry.
inline Word polygon_loop(const FanPolygon& P, const std::vector<std::pair<int, int>>& segments) {
    Word w;
    int m = static_cast<int>(segments.size());
    for (int i = 0; i < m; ++i) {
        auto [in, out] = segments[i];
        Word ch = chord_word(P, in, out);
        w.insert(w.end(), ch.begin(), ch.end());
        w.push_back(P.boundary[out]);
        int nxt = segments[(i + 1) % m].first;
        if (partner_side(P, out) != nxt)
            throw domain_error("polygon_loop: segment gluing mismatch");
    }
    validate_cyclic_word(P.K, w);
    return w;
}

}  // namespace spwf
