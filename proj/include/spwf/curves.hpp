#pragma once

// Curve and arc words.  A closed curve transverse to the 1-skeleton is
// recorded as the cyclic sequence of darts it crosses: crossing dart d means
// leaving the face containing d through that boundary occurrence and
// entering the face containing d.reversed().  An embedded curve avoiding
// all vertices is determined up to isotopy by this word; isotopy classes
// get a unique normal word (no returns, no free-vertex linking components),
// whose edge-crossing counts are the normal coordinates.

#include <list>
#include "spwf/complex.hpp"

namespace spwf {

using Word = std::vector<Dart>;

inline FaceId face_entered(const Complex& K, const Dart& d) { return K.face_of(d.reversed()); }

// Face the strand sits in between crossings w[i] and w[i+1].
inline FaceId face_between(const Complex& K, const Dart& a, const Dart& b) {
    FaceId f = face_entered(K, a);
    if (K.face_of(b) != f) throw domain_error("word: inconsistent consecutive crossings");
    return f;
}

inline void validate_cyclic_word(const Complex& K, const Word& w) {
    int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) (void)face_between(K, w[i], w[(i + 1) % n]);
}

inline Word reversed_word(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->reversed());
    return r;
}

// Removes returns: adjacent pairs (d, d.reversed()).  `cyclic` also cancels
// across the wrap-around.  Valid for embedded words; each removal is an
// isotopy across an edge.
inline Word remove_returns(Word w, bool cyclic) {
    std::vector<Dart> st;
    st.reserve(w.size());
    for (const Dart& d : w) {
        if (!st.empty() && st.back() == d.reversed())
            st.pop_back();
        else
            st.push_back(d);
    }
    if (cyclic) {
        size_t lo = 0, hi = st.size();
        while (hi - lo >= 2 && st[lo] == st[hi - 1].reversed()) { ++lo; --hi; }
        st = std::vector<Dart>(st.begin() + lo, st.begin() + hi);
    }
    return st;
}

// Crossing word of the boundary of a small disk around vertex v, walked in
// the rotation order produced by Complex::next_at_vertex.  Crossing darts
// follow the exit convention above.
inline Word vertex_link_word(const Complex& K, VertexId v) {
    Word out;
    auto star = K.vertex_star(v);
    for (const Dart& into : star) {
        BoundaryPos p = K.locate(into);
        out.push_back(K.at(p.face, p.index + 1));
    }
    return out;
}

inline bool cyclic_words_equal(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    int n = static_cast<int>(a.size());
    for (int r = 0; r < n; ++r) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = a[i] == b[(i + r) % n];
        if (ok) return true;
    }
    return false;
}

inline bool same_unoriented_cycle(const Word& a, const Word& b) {
    return cyclic_words_equal(a, b) || cyclic_words_equal(a, reversed_word(b));
}

// True when the cyclic word is the linking circle of some free vertex.
inline bool is_free_vertex_link(const Complex& K, const Word& w) {
    if (w.empty()) return false;
    for (VertexId v : K.free_vertices()) {
        if (K.vertex_degree(v) != static_cast<int>(w.size())) continue;
        if (same_unoriented_cycle(w, vertex_link_word(K, v))) return true;
    }
    return false;
}

// A multicurve on a complex: list of component cyclic words, each reduced.
// On a standard-form complex the reduced words are canonical per isotopy
// class, so coordinate vectors (and the words themselves up to rotation and
// reversal) decide equality.
struct Multicurve {
    const Complex* K = nullptr;
    std::vector<Word> comps;

    std::vector<long long> coords() const {
        std::vector<long long> c(K->num_edges(), 0);
        for (const auto& w : comps)
            for (const Dart& d : w) ++c[d.edge];
        return c;
    }
    bool empty() const { return comps.empty(); }
    long long total_weight() const {
        long long t = 0;
        for (const auto& w : comps) t += static_cast<long long>(w.size());
        return t;
    }
};

// Normalizes component words of an embedded multicurve: removes returns,
// drops null components and free-vertex linking components.
inline Multicurve normalize_multicurve(const Complex& K, std::vector<Word> comps) {
    Multicurve out;
    out.K = &K;
    for (Word& w : comps) {
        Word r = remove_returns(std::move(w), true);
        if (r.empty()) continue;
        if (is_free_vertex_link(K, r)) continue;
        validate_cyclic_word(K, r);
        out.comps.push_back(std::move(r));
    }
    return out;
}

// An arc anchored at two marked vertices.  word[0] exits the face incident
// to `from`; the last crossing enters the face incident to `to`.  An empty
// word is a short arc inside one face shared by both anchors (not used by
// the standard constructions).
struct ArcWord {
    const Complex* K = nullptr;
    VertexId from = -1, to = -1;
    Word word;

    void validate() const {
        if (word.empty()) return;
        for (size_t i = 0; i + 1 < word.size(); ++i) (void)face_between(*K, word[i], word[i + 1]);
        if (!face_touches_vertex(*K, K->face_of(word.front()), from))
            throw domain_error("arc: start face misses anchor");
        if (!face_touches_vertex(*K, face_entered(*K, word.back()), to))
            throw domain_error("arc: end face misses anchor");
    }

    static bool face_touches_vertex(const Complex& K, FaceId f, VertexId v) {
        for (int i = 0; i < K.face_size(f); ++i)
            if (K.head_vertex(K.at(f, i)) == v) return true;
        return false;
    }

    ArcWord reduced() const {
        ArcWord a = *this;
        a.word = remove_returns(a.word, false);
        a.validate();
        return a;
    }

    ArcWord reversed() const {
        ArcWord a;
        a.K = K;
        a.from = to;
        a.to = from;
        a.word = reversed_word(word);
        return a;
    }
};

}  // namespace spwf
