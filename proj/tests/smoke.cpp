// Early development driver; superseded by the Catch2 suites.
#include <iostream>

#include "spwf/model.hpp"
#include "spwf/overlay.hpp"
#include "spwf/twist.hpp"

using namespace spwf;

static int failures = 0;
#define CHECK_EQ(a, b)                                                              \
    do {                                                                            \
        auto va = (a);                                                              \
        auto vb = (b);                                                              \
        if (!(va == vb)) {                                                          \
            std::cerr << "FAIL " << __LINE__ << ": " << #a << " = " << va           \
                      << ", expected " << vb << "\n";                               \
            ++failures;                                                             \
        }                                                                           \
    } while (0)

static Multicurve canon(const Complex& K, Word w) {
    return normalize_multicurve(K, {std::move(w)});
}

static long long gi(const Complex& K, const Word& a, const Word& b) {
    Overlay ov(K, Strands::of_word(K, a), Strands::of_word(K, b));
    ov.minimize();
    return ov.crossing_count();
}

static Word twist1(const Complex& K, const Word& a, const Word& c, int k) {
    auto ws = twisted_words(K, Strands::of_word(K, a), c, k);
    Multicurve m = normalize_multicurve(K, ws);
    if (m.comps.size() != 1) throw domain_error("twist1: disconnected result");
    return m.comps[0];
}

int main() {
    // ---- torus ----
    FanPolygon T = build_fan_polygon({1, 2, -1, -2});
    CHECK_EQ(T.K.genus(), 1);
    CHECK_EQ(T.K.num_vertices(), 1);
    CHECK_EQ(T.K.num_edges(), 3);
    CHECK_EQ(T.K.num_faces(), 2);

    Word alpha = polygon_loop(T, {{0, 2}});
    Word beta = polygon_loop(T, {{1, 3}});
    CHECK_EQ(gi(T.K, alpha, beta), 1);
    CHECK_EQ(gi(T.K, beta, alpha), 1);

    // vertex link is trivial
    Word link = vertex_link_word(T.K, 0);
    CHECK_EQ(is_free_vertex_link(T.K, link), true);
    CHECK_EQ(canon(T.K, link).empty(), true);

    // twists: t_beta^k(alpha) crosses alpha k times, beta once
    for (int k = 1; k <= 4; ++k) {
        Word tk = alpha;
        for (int i = 0; i < k; ++i) tk = twist1(T.K, tk, beta, 1);
        CHECK_EQ(gi(T.K, tk, alpha), (long long)k);
        CHECK_EQ(gi(T.K, tk, beta), 1);
        Word back = tk;
        for (int i = 0; i < k; ++i) back = twist1(T.K, back, beta, -1);
        CHECK_EQ(same_unoriented_cycle(back, alpha), true);
        Word tk2 = twist1(T.K, alpha, beta, k);
        CHECK_EQ(gi(T.K, tk2, alpha), (long long)k);
        CHECK_EQ(same_unoriented_cycle(tk2, tk), true);
    }

    // algebraic intersection: +/-1 and antisymmetric
    long long s = algebraic_intersection_words(T.K, alpha, beta);
    CHECK_EQ(std::abs(s), 1);
    CHECK_EQ(algebraic_intersection_words(T.K, beta, alpha), -s);

    // ---- genus 2 ----
    FanPolygon G = build_fan_polygon({1, 2, -1, -2, 3, 4, -3, -4});
    CHECK_EQ(G.K.genus(), 2);
    CHECK_EQ(G.K.num_vertices(), 1);

    Word a1 = polygon_loop(G, {{0, 2}});
    Word b1 = polygon_loop(G, {{1, 3}});
    Word a2 = polygon_loop(G, {{4, 6}});
    Word b2 = polygon_loop(G, {{5, 7}});
    Word conn = polygon_loop(G, {{2, 4}, {6, 0}});

    CHECK_EQ(gi(G.K, a1, b1), 1);
    CHECK_EQ(gi(G.K, a2, b2), 1);
    CHECK_EQ(gi(G.K, a1, b2), 0);
    CHECK_EQ(gi(G.K, a1, a2), 0);
    CHECK_EQ(gi(G.K, b1, b2), 0);
    CHECK_EQ(gi(G.K, conn, b1), 1);
    CHECK_EQ(gi(G.K, conn, b2), 1);
    CHECK_EQ(gi(G.K, conn, a1), 0);
    CHECK_EQ(gi(G.K, conn, a2), 0);
    CHECK_EQ(gi(G.K, a1, conn), 0);
    CHECK_EQ(gi(G.K, b1, conn), 1);

    // braid relation on the filling set: T_a T_b T_a = T_b T_a T_b when
    // i(a,b)=1, tested by action on several curves
    for (const Word* probe : {&a1, &b1, &a2, &b2, &conn}) {
        Word lhs = twist1(G.K, *probe, a1, 1);
        lhs = twist1(G.K, lhs, b1, 1);
        lhs = twist1(G.K, lhs, a1, 1);
        Word rhs = twist1(G.K, *probe, b1, 1);
        rhs = twist1(G.K, rhs, a1, 1);
        rhs = twist1(G.K, rhs, b1, 1);
        CHECK_EQ(same_unoriented_cycle(lhs, rhs), true);
    }

    // twist inequality spot check: |i(t_c^k(a), b) - k i(a,c) i(c,b)| <= i(a,b)
    {
        Word tk = twist1(G.K, conn, b1, 3);
        long long lhs = gi(G.K, tk, a1);
        CHECK_EQ(std::abs(lhs - 3 * 1 * 1) <= 0, true);
    }

    std::cout << (failures ? "FAILURES: " : "all ok ") << failures << "\n";
    return failures ? 1 : 0;
}
