#pragma once

// Integer homology helpers: Smith normal form and presentations of
// finitely generated abelian groups given by generator matrices.

#include <cstdlib>
#include <numeric>
#include "spwf/complex.hpp"

namespace spwf {

// Smith normal form of an integer matrix (destructive, returns the
// diagonal invariant factors d_1 | d_2 | ...).  Sizes here are tiny, so the
// classical pivoting algorithm is plenty.
inline std::vector<long long> smith_invariants(std::vector<std::vector<long long>> M) {
    int rows = static_cast<int>(M.size());
    int cols = rows ? static_cast<int>(M[0].size()) : 0;
    std::vector<long long> out;
    int r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // find a nonzero pivot
        int pr = -1, pc = -1;
        long long best = 0;
        for (int i = r0; i < rows; ++i)
            for (int j = c0; j < cols; ++j)
                if (M[i][j] != 0 && (best == 0 || std::abs(M[i][j]) < std::abs(best))) {
                    best = M[i][j];
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        std::swap(M[pr], M[r0]);
        for (int i = 0; i < rows; ++i) std::swap(M[i][pc], M[i][c0]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = r0 + 1; i < rows; ++i) {
                long long q = M[i][c0] / M[r0][c0];
                if (q != 0)
                    for (int j = c0; j < cols; ++j) M[i][j] -= q * M[r0][j];
                if (M[i][c0] != 0) {
                    std::swap(M[i], M[r0]);
                    clean = false;
                }
            }
            for (int j = c0 + 1; j < cols; ++j) {
                long long q = M[r0][j] / M[r0][c0];
                if (q != 0)
                    for (int i = r0; i < rows; ++i) M[i][j] -= q * M[i][c0];
                if (M[r0][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(M[i][j], M[i][c0]);
                    clean = false;
                }
            }
        }
        out.push_back(std::abs(M[r0][c0]));
        ++r0;
        ++c0;
    }
    // enforce divisibility
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < out.size(); ++i)
            for (size_t j = i + 1; j < out.size(); ++j) {
                if (out[j] % out[i] == 0) continue;
                long long g = std::gcd(out[i], out[j]);
                long long l = out[i] / g * out[j];
                out[i] = g;
                out[j] = l;
                changed = true;
            }
    }
    return out;
}

// Z^n modulo the span of the given columns: rank and invariant factors > 1.
struct AbelianGroup {
    int rank = 0;
    std::vector<long long> torsion;  // invariant factors > 1

    bool operator==(const AbelianGroup& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    bool is_free_of_rank(int r) const { return rank == r && torsion.empty(); }
};

inline AbelianGroup quotient_group(int n, const std::vector<std::vector<long long>>& columns) {
    std::vector<std::vector<long long>> M(n, std::vector<long long>(columns.size(), 0));
    for (size_t j = 0; j < columns.size(); ++j) {
        if (static_cast<int>(columns[j].size()) != n)
            throw domain_error("quotient_group: column size mismatch");
        for (int i = 0; i < n; ++i) M[i][j] = columns[j][i];
    }
    auto d = smith_invariants(std::move(M));
    AbelianGroup g;
    int nonzero = 0;
    for (long long v : d)
        if (v != 0) {
            ++nonzero;
            if (v > 1) g.torsion.push_back(v);
        }
    g.rank = n - nonzero;
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

}  // namespace spwf
