#pragma once

// Dehn twist action on curve and arc words by annulus insertion: every
// crossing of the target with the twisting curve is rerouted around a full
// copy of the twisting curve, |k| times, in the direction dictated by the
// crossing sign, the exponent and the fixed (right-handed) convention.
// Minimal position is not needed: rerouting any transverse representative
// realizes the twist homeomorphism, and normalization does the rest.

#include "spwf/overlay.hpp"

namespace spwf {

// Global handedness convention; the verified relations hold under either
// choice applied uniformly.
constexpr int twist_handedness = +1;

// Inserts the detours into the words of `target` (curve or arc).  `c` must
// be a single reduced closed curve word, not parallel to any target
// component.
inline std::vector<Word> twisted_words(const Complex& K, const Strands& target, const Word& c,
                                       int k) {
    if (k == 0) return target.comps;
    int nc = static_cast<int>(c.size());
    if (nc == 0) throw domain_error("twist: trivial twisting curve");

    // Components isotopic to c are fixed by the twist; they would also break
    // the unfolding comparator (fully parallel strands), so set them aside.
    std::vector<int> kept_index;
    Strands moving = target;
    moving.comps.clear();
    std::vector<Word> fixed(target.comps.size());
    for (int i = 0; i < static_cast<int>(target.comps.size()); ++i) {
        if (target.cyclic && same_unoriented_cycle(target.comps[i], c)) {
            fixed[i] = target.comps[i];
        } else {
            kept_index.push_back(i);
            moving.comps.push_back(target.comps[i]);
        }
    }
    if (moving.comps.empty()) return target.comps;

    Overlay ov(K, Strands::of_word(K, c), moving);
    auto xs = ov.crossings();

    struct Ins {
        int phase;  // crossing sits inside c-chord (phase, phase+1)
        int sign;
        int order;
    };
    std::map<std::pair<int, int>, std::vector<Ins>> per_chord;  // (target comp, chord) ->
    for (const auto& x : xs)
        per_chord[{x.b_comp, x.b_pos}].push_back(Ins{x.a_pos, x.sign, x.b_order});
    for (auto& [key, v] : per_chord)
        std::sort(v.begin(), v.end(), [](const Ins& p, const Ins& q) { return p.order < q.order; });

    std::vector<Word> out_moving;
    for (int comp = 0; comp < static_cast<int>(moving.comps.size()); ++comp) {
        const Word& w = moving.comps[comp];
        int n = static_cast<int>(w.size());
        Word nw;
        auto insert_detours = [&](int chord_pos) {
            auto it = per_chord.find({comp, chord_pos});
            if (it == per_chord.end()) return;
            for (const Ins& ins : it->second) {
                int dir = twist_handedness * ins.sign * (k > 0 ? 1 : -1);
                int reps = k > 0 ? k : -k;
                for (int rep = 0; rep < reps; ++rep) {
                    if (dir > 0) {
                        for (int j = 1; j <= nc; ++j) nw.push_back(c[(ins.phase + j) % nc]);
                    } else {
                        for (int j = 0; j < nc; ++j)
                            nw.push_back(c[((ins.phase - j) % nc + nc) % nc].reversed());
                    }
                }
            }
        };
        if (!moving.cyclic) insert_detours(-1);
        for (int p = 0; p < n; ++p) {
            nw.push_back(w[p]);
            insert_detours(p);
        }
        out_moving.push_back(std::move(nw));
    }
    std::vector<Word> out = fixed;
    for (size_t j = 0; j < kept_index.size(); ++j) out[kept_index[j]] = std::move(out_moving[j]);
    return out;
}

}  // namespace spwf
