#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "knotoid/diagram.hpp"

namespace knotoid {
namespace surgery {

// Assembles a DiagramSpec site by site while recording, for every surviving
// half-edge of the source diagram, the (label, occurrence) pair it receives.
// finish() rebuilds the diagram and re-identifies the planar outer face from
// any surviving boundary half.
class SpecEmitter {
public:
    explicit SpecEmitter(const Diagram& d) : d_(d), site_of_(d.half_count(), {-1, -1}) {}

    // One crossing slot or endpoint site. `old_half` links the site back to a
    // half-edge of the source diagram (-1 for newly created edges).
    int site(int label, bool is_tail, int old_half = -1) {
        int o = occ_[label]++;
        if (is_tail) spec_.explicit_tails[label] = o;
        if (old_half >= 0) site_of_[old_half] = {label, o};
        return label;
    }

    void add_crossing(const std::array<int, 4>& labels, const std::array<int, 4>& tails,
                      const std::array<int, 4>& old_halves, bool over_even) {
        CrossingSpec cs;
        for (int s = 0; s < 4; ++s)
            cs.edges[s] = site(labels[s], tails[s] != 0, old_halves[s]);
        cs.over_even = over_even;
        spec_.crossings.push_back(cs);
    }

    void add_endpoints(int leg_label, int head_label, int old_leg_half, int old_head_half) {
        spec_.leg_edge = site(leg_label, true, old_leg_half);
        spec_.head_edge = site(head_label, false, old_head_half);
    }

    DiagramSpec& spec() { return spec_; }

    // Rebuild; when the source is planar the outer face is recovered from the
    // first old outer-boundary half that survived into the new spec.
    Diagram finish() {
        spec_.plane = false;
        Diagram out = Diagram::from_spec(spec_);
        if (d_.surface().is_plane()) {
            std::optional<int> found;
            for (int h : d_.faces()[d_.surface().outer]) {
                auto [label, o] = site_of_[h];
                if (label < 0) continue;
                found = spec_half_of(spec_, label, o);
                break;
            }
            if (!found)
                throw Error(ErrorCode::BadArgument,
                            "surgery consumed the outer face");
            out = out.with_surface(Surface::plane(out.face(*found)));
        }
        return out;
    }

    // Rebuild on the sphere regardless of the source surface.
    Diagram finish_on_sphere() {
        spec_.plane = false;
        return Diagram::from_spec(spec_);
    }

private:
    const Diagram& d_;
    DiagramSpec spec_;
    std::map<int, int> occ_;
    std::vector<std::pair<int, int>> site_of_;
};

// Label manager for splices: edges start at label e+1 and merge via
// union-find when their ends are spliced together.
class LabelMerge {
public:
    int find(int label) const {
        while (true) {
            auto it = alias_.find(label);
            if (it == alias_.end()) return label;
            label = it->second;
        }
    }
    int of_edge(int e) const { return find(e + 1); }
    // Join the edges of two half-edge ends; throws when they are already one
    // edge (the splice would close a vertex-free circle).
    void splice(const Diagram& d, int h1, int h2) {
        if (d.tail(h1) == d.tail(h2))
            throw Error(ErrorCode::BadArgument, "splice joins equal strand directions");
        int a = find(Diagram::edge_of(h1) + 1);
        int b = find(Diagram::edge_of(h2) + 1);
        if (a == b) throw Error(ErrorCode::BadArgument, "splice closes a vertex-free circle");
        alias_[b] = a;
    }

private:
    std::map<int, int> alias_;
};

// Remove `removed` crossings, splicing their half-edges pairwise; all other
// structure is copied. Surface tracking as in SpecEmitter::finish.
inline Diagram splice_out(const Diagram& d, const std::set<int>& removed,
                          const std::vector<std::pair<int, int>>& pairs) {
    LabelMerge lm;
    for (auto [h1, h2] : pairs) lm.splice(d, h1, h2);
    SpecEmitter em(d);
    for (int v = 0; v < d.vertex_count(); ++v) {
        if (d.kind(v) != VertexKind::Crossing || removed.count(v)) continue;
        const auto& sl = d.vertex_halves(v);
        std::array<int, 4> labels, tails, olds;
        for (int s = 0; s < 4; ++s) {
            labels[s] = lm.of_edge(Diagram::edge_of(sl[s]));
            tails[s] = d.tail(sl[s]);
            olds[s] = sl[s];
        }
        em.add_crossing(labels, tails, olds, d.over_even(v));
    }
    if (!d.is_closed())
        em.add_endpoints(lm.of_edge(Diagram::edge_of(d.leg_half())),
                         lm.of_edge(Diagram::edge_of(d.head_half())), d.leg_half(),
                         d.head_half());
    if (em.spec().crossings.empty() && !em.spec().leg_edge) {
        if (d.surface().is_plane())
            throw Error(ErrorCode::BadArgument, "surgery consumed the outer face");
        return Diagram::free_loop_diagram(1, Surface::sphere());
    }
    return em.finish();
}

// Toggle which strand passes over at crossing v.
inline Diagram flip_crossing(const Diagram& d, int v) {
    if (v < 0 || v >= d.vertex_count() || d.kind(v) != VertexKind::Crossing)
        throw Error(ErrorCode::BadArgument, "not a crossing");
    SpecEmitter em(d);
    for (int w = 0; w < d.vertex_count(); ++w) {
        if (d.kind(w) != VertexKind::Crossing) continue;
        const auto& sl = d.vertex_halves(w);
        std::array<int, 4> labels, tails, olds;
        for (int s = 0; s < 4; ++s) {
            labels[s] = Diagram::edge_of(sl[s]) + 1;
            tails[s] = d.tail(sl[s]);
            olds[s] = sl[s];
        }
        em.add_crossing(labels, tails, olds, w == v ? !d.over_even(w) : d.over_even(w));
    }
    if (!d.is_closed())
        em.add_endpoints(Diagram::edge_of(d.leg_half()) + 1,
                         Diagram::edge_of(d.head_half()) + 1, d.leg_half(), d.head_half());
    return em.finish();
}

// Oriented smoothing at crossing v: each inflow joins the adjacent outflow of
// the other passage.
inline Diagram smooth_crossing_oriented(const Diagram& d, int v) {
    if (v < 0 || v >= d.vertex_count() || d.kind(v) != VertexKind::Crossing)
        throw Error(ErrorCode::BadArgument, "not a crossing");
    const auto& sl = d.vertex_halves(v);
    std::vector<int> ins, outs;
    for (int s = 0; s < 4; ++s) (d.tail(sl[s]) ? outs : ins).push_back(sl[s]);
    auto adjacent = [&](int a, int b) {
        int k = (d.slot_of(a) - d.slot_of(b) + 4) % 4;
        return k == 1 || k == 3;
    };
    int out0 = adjacent(ins[0], outs[0]) ? outs[0] : outs[1];
    int out1 = (out0 == outs[0]) ? outs[1] : outs[0];
    return splice_out(d, {v}, {{ins[0], out0}, {ins[1], out1}});
}

}  // namespace surgery
}  // namespace knotoid
