#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotoid/diagram.hpp"
#include "knotoid/invariants.hpp"
#include "knotoid/surgery.hpp"

namespace knotoid {

enum class MoveKind { R1Add, R1Remove, R2Add, R2Remove, R3, OmegaMinus, OmegaPlus };

inline const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::R1Add: return "R1_add";
        case MoveKind::R1Remove: return "R1_remove";
        case MoveKind::R2Add: return "R2_add";
        case MoveKind::R2Remove: return "R2_remove";
        case MoveKind::R3: return "R3";
        case MoveKind::OmegaMinus: return "omega_minus";
        case MoveKind::OmegaPlus: return "omega_plus";
    }
    return "?";
}

struct MoveInstance {
    MoveKind kind;
    size_t stamp = 0;     // hash of the source diagram's canonical code
    int h = -1;           // R1Add: side half; R2Add: hx
    int h2 = -1;          // R2Add: hy
    bool flag = false;    // R1Add: positive crossing; R2Add: x over; Omega: at leg
    int vertex = -1;      // R1Remove: the crossing
    int face = -1;        // R2Remove: bigon face; R3: triangle face
    int mover = -1;       // R3: index of the moving side in the face cycle
    int outer_pick = -1;  // R2Add into the outer face: 0 = left of hx, 1 = left of hy
};

namespace detail_moves {

// -----------------------------------------------------------------------
// Generic reassembly for insertion moves. New crossings are positioned on
// old edges by ordered "marks"; edges made of entirely new material are
// "links" between new crossing slots. Final edges are recovered by walking
// the strands, passing straight through removed crossings.
// -----------------------------------------------------------------------
struct Site {
    int type;  // 0 = old crossing slot, 1 = leg, 2 = head, 3 = new crossing slot
    int a = 0, b = 0;
    bool operator<(const Site& o) const {
        return std::tie(type, a, b) < std::tie(o.type, o.a, o.b);
    }
    bool operator==(const Site& o) const {
        return type == o.type && a == o.a && b == o.b;
    }
};

class Assembler {
public:
    explicit Assembler(const Diagram& d) : d_(d) {}

    void remove_crossing(int v) { removed_.insert(v); }

    int add_crossing(bool over_even) {
        news_.push_back(over_even);
        return static_cast<int>(news_.size()) - 1;
    }

    struct Mark {
        std::pair<int, int> lo;  // (new crossing, slot) arriving from the 2e end
        std::pair<int, int> hi;  // arriving from the other end
    };
    // Marks must be appended in order from the 2e end of the edge.
    void add_mark(int edge, Mark m) { marks_[edge].push_back(m); }

    struct Link {
        std::pair<int, int> a, b;  // (new crossing, slot)
        bool tail_at_a;
    };
    void add_link(Link l) { links_.push_back(l); }

    void prefer_outer_half(int old_half) { preferred_outer_ = old_half; }

    Diagram build() {
        // Collect all sites.
        std::vector<Site> sites;
        for (int v = 0; v < d_.vertex_count(); ++v) {
            if (removed_.count(v)) continue;
            if (d_.kind(v) == VertexKind::Crossing)
                for (int s = 0; s < 4; ++s) sites.push_back({0, v, s});
        }
        if (!d_.is_closed()) {
            sites.push_back({1, 0, 0});
            sites.push_back({2, 0, 0});
        }
        for (int c = 0; c < static_cast<int>(news_.size()); ++c)
            for (int s = 0; s < 4; ++s) sites.push_back({3, c, s});

        struct FinalEdge {
            Site a, b;
            bool tail_at_a = true;
        };
        std::vector<FinalEdge> edges;
        std::map<Site, std::pair<int, bool>> edge_at;  // site -> (edge, is 'a' end)
        for (const Site& s : sites) {
            if (edge_at.count(s)) continue;
            auto [other, flows] = walk(s);
            FinalEdge fe{s, other, flows};
            int id = static_cast<int>(edges.size());
            if (edge_at.count(other) || (other == s))
                throw Error(ErrorCode::BadArgument, "walk produced an inconsistent edge");
            edge_at[s] = {id, true};
            edge_at[other] = {id, false};
            edges.push_back(fe);
        }

        surgery::SpecEmitter em(d_);
        auto site_info = [&](const Site& s, int old_half) {
            auto [id, is_a] = edge_at.at(s);
            bool is_tail = (edges[id].tail_at_a == is_a);
            return std::tuple<int, bool, int>(id + 1, is_tail, old_half);
        };
        for (int v = 0; v < d_.vertex_count(); ++v) {
            if (d_.kind(v) != VertexKind::Crossing || removed_.count(v)) continue;
            std::array<int, 4> labels, tails, olds;
            for (int s = 0; s < 4; ++s) {
                auto [label, is_tail, oh] = site_info({0, v, s}, d_.vertex_halves(v)[s]);
                labels[s] = label;
                tails[s] = is_tail;
                olds[s] = oh;
            }
            em.add_crossing(labels, tails, olds, d_.over_even(v));
        }
        for (int c = 0; c < static_cast<int>(news_.size()); ++c) {
            std::array<int, 4> labels, tails, olds;
            for (int s = 0; s < 4; ++s) {
                auto [label, is_tail, oh] = site_info({3, c, s}, -1);
                labels[s] = label;
                tails[s] = is_tail;
                olds[s] = oh;
            }
            em.add_crossing(labels, tails, olds, news_[c]);
        }
        if (!d_.is_closed()) {
            auto [ll, lt, lo] = site_info({1, 0, 0}, d_.leg_half());
            auto [hl, ht, ho] = site_info({2, 0, 0}, d_.head_half());
            (void)lt;
            (void)ht;
            em.add_endpoints(ll, hl, lo, ho);
        }
        if (!d_.surface().is_plane()) return em.finish_on_sphere();
        // Outer recovery with optional preference.
        DiagramSpec& spec = em.spec();
        spec.plane = false;
        Diagram out = Diagram::from_spec(spec);
        std::vector<int> candidates;
        if (preferred_outer_ >= 0) candidates.push_back(preferred_outer_);
        for (int h : d_.faces()[d_.surface().outer]) candidates.push_back(h);
        for (int h : candidates) {
            int v = d_.vertex(h);
            if (removed_.count(v)) continue;
            Site s{0, v, d_.slot_of(h)};
            if (d_.kind(v) == VertexKind::Leg) s = {1, 0, 0};
            if (d_.kind(v) == VertexKind::Head) s = {2, 0, 0};
            auto it = edge_at.find(s);
            if (it == edge_at.end()) continue;
            // The new half at this site: label = edge id + 1; occurrence from
            // the emitted spec via simulation.
            int label = it->second.first + 1;
            // locate which occurrence this site received: rebuild the scan
            int occ = -1, count = 0;
            {
                // crossings (old surviving then new), then endpoints, in the
                // same slot order used above
                int seen = 0;
                auto scan_site = [&](const Site& cand) {
                    auto jt = edge_at.find(cand);
                    if (jt == edge_at.end() || jt->second.first + 1 != label) return;
                    if (cand == s) occ = seen;
                    ++seen;
                };
                for (int v2 = 0; v2 < d_.vertex_count(); ++v2) {
                    if (d_.kind(v2) != VertexKind::Crossing || removed_.count(v2)) continue;
                    for (int s2 = 0; s2 < 4; ++s2) scan_site({0, v2, s2});
                }
                for (int c = 0; c < static_cast<int>(news_.size()); ++c)
                    for (int s2 = 0; s2 < 4; ++s2) scan_site({3, c, s2});
                scan_site({1, 0, 0});
                scan_site({2, 0, 0});
                count = seen;
            }
            if (occ < 0 || count != 2) continue;
            int nh = spec_half_of(spec, label, occ);
            return out.with_surface(Surface::plane(out.face(nh)));
        }
        throw Error(ErrorCode::BadArgument, "surgery consumed the outer face");
    }

private:
    // Walk from a site to the other end of its final edge. Returns the
    // terminal site and whether the strand flows from the start site.
    std::pair<Site, bool> walk(const Site& start) {
        std::optional<bool> flows;
        // Resolve the initial motion.
        if (start.type == 3) {
            // link?
            for (const Link& l : links_) {
                std::pair<int, int> key{start.a, start.b};
                if (l.a == key) return {{3, l.b.first, l.b.second}, l.tail_at_a};
                if (l.b == key) return {{3, l.a.first, l.a.second}, !l.tail_at_a};
            }
        }
        // Motion state: on edge `e`, between marks, moving toward low or high
        // end; or arriving at a new crossing / old vertex.
        int e = -1;
        bool toward_high = true;
        int mark_index = -1;  // index of the next mark boundary handled in step()
        // Initialize.
        if (start.type == 0 || start.type == 1 || start.type == 2) {
            int h;
            if (start.type == 0)
                h = d_.vertex_halves(start.a)[start.b];
            else if (start.type == 1)
                h = d_.leg_half();
            else
                h = d_.head_half();
            e = Diagram::edge_of(h);
            toward_high = (h == 2 * e);
            mark_index = toward_high ? 0 : static_cast<int>(marks_[e].size()) - 1;
            flows = (d_.tail(h) == true);
        } else {
            // new crossing slot positioned at a mark
            auto loc = locate_mark(start.a, start.b);
            e = loc.edge;
            // lo entry faces the low side: walking continues toward low
            toward_high = !loc.is_lo_entry;
            mark_index = loc.index + (toward_high ? 1 : -1);
            // direction: moving toward high means traversing in 2e->twin
            // direction; strand flows with us iff tail(2e) when toward_high
            flows = toward_high ? d_.tail(2 * e) : d_.tail(2 * e + 1);
        }
        int guard = 0;
        while (true) {
            if (++guard > 4 * d_.half_count() + 16)
                throw Error(ErrorCode::BadArgument, "walk does not terminate");
            auto& ms = marks_[e];
            if (toward_high ? (mark_index < static_cast<int>(ms.size())) : (mark_index >= 0)) {
                const Mark& m = ms[mark_index];
                auto [c, s] = toward_high ? m.lo : m.hi;
                return {{3, c, s}, flows.value()};
            }
            // reached the vertex at this end
            int arrive_half = toward_high ? 2 * e + 1 : 2 * e;
            int v = d_.vertex(arrive_half);
            if (!removed_.count(v)) {
                if (d_.kind(v) == VertexKind::Leg) return {{1, 0, 0}, flows.value()};
                if (d_.kind(v) == VertexKind::Head) return {{2, 0, 0}, flows.value()};
                return {{0, v, d_.slot_of(arrive_half)}, flows.value()};
            }
            // pass straight through the removed crossing
            int out = d_.vertex_halves(v)[(d_.slot_of(arrive_half) + 2) % 4];
            e = Diagram::edge_of(out);
            toward_high = (out == 2 * e);
            mark_index = toward_high ? 0 : static_cast<int>(marks_[e].size()) - 1;
        }
    }

    struct MarkLoc {
        int edge;
        int index;
        bool is_lo_entry;
    };
    MarkLoc locate_mark(int crossing, int slot) {
        for (auto& [e, ms] : marks_)
            for (int i = 0; i < static_cast<int>(ms.size()); ++i) {
                if (ms[i].lo == std::pair<int, int>{crossing, slot}) return {e, i, true};
                if (ms[i].hi == std::pair<int, int>{crossing, slot}) return {e, i, false};
            }
        throw Error(ErrorCode::BadArgument, "new crossing slot is not attached");
    }

    const Diagram& d_;
    std::set<int> removed_;
    std::vector<bool> news_;
    std::map<int, std::vector<Mark>> marks_;
    std::vector<Link> links_;
    int preferred_outer_ = -1;
};

inline size_t code_stamp(const Diagram& d) {
    return std::hash<std::string>{}(d.canonical_code());
}

// ---- individual surgeries -------------------------------------------------

inline Diagram apply_r1_add(const Diagram& d, int h, bool positive) {
    int e = Diagram::edge_of(h);
    bool left_side = d.tail(h);  // loop face = face_of[h], left of the strand
    Assembler as(d);
    // Right curl slots (CCW): (e_a, loopB, loopA, e_b); passage (e_a, loopA)
    // is slots {0,2}. A positive crossing has that passage over for the
    // right curl and under for the left curl.
    bool over_even = left_side ? !positive : positive;
    int X = as.add_crossing(over_even);
    int eb_slot = left_side ? 1 : 3;
    int la_slot = 2;
    int lb_slot = left_side ? 3 : 1;
    // mark: ea faces the tail end of e
    bool tail_is_low = (d.tail_half_of_edge(e) == 2 * e);
    Assembler::Mark m;
    if (tail_is_low)
        m = {{X, 0}, {X, eb_slot}};
    else
        m = {{X, eb_slot}, {X, 0}};
    as.add_mark(e, m);
    as.add_link({{X, la_slot}, {X, lb_slot}, true});
    return as.build();
}

inline Diagram apply_r2_add(const Diagram& d, int hx, int hy, bool x_over, int outer_pick) {
    if (d.face(hx) != d.face(hy) || Diagram::edge_of(hx) == Diagram::edge_of(hy) || hx == hy)
        throw Error(ErrorCode::BadArgument, "invalid finger site");
    int ex = Diagram::edge_of(hx), ey = Diagram::edge_of(hy);
    Assembler as(d);
    // C1 slots CCW: (Xt, Yb, Xa, Ym); C2: (Xt, Ym, Xb, Ya). The X strand
    // occupies slots {0,2} at both.
    int C1 = as.add_crossing(x_over);
    int C2 = as.add_crossing(x_over);
    // Portal on the fingered edge: from hx's vertex side the walk meets C1
    // at slot 2 (Xa); from the other side C2 at slot 2 (Xb).
    bool hx_low = (hx == 2 * ex);
    as.add_mark(ex, hx_low ? Assembler::Mark{{C1, 2}, {C2, 2}}
                           : Assembler::Mark{{C2, 2}, {C1, 2}});
    // Marks on the crossed edge, ordered from hy's vertex: C2 (Ya side slot
    // 3, Ym side slot 1) then C1 (Ym side slot 3, Yb side slot 1).
    bool hy_low = (hy == 2 * ey);
    if (hy_low) {
        as.add_mark(ey, {{C2, 3}, {C2, 1}});
        as.add_mark(ey, {{C1, 3}, {C1, 1}});
    } else {
        as.add_mark(ey, {{C1, 1}, {C1, 3}});
        as.add_mark(ey, {{C2, 1}, {C2, 3}});
    }
    // Finger tip: C1 slot 0 to C2 slot 0; it carries the X strand, flowing
    // C1 -> C2 when X flows away from hx's vertex.
    bool fx = d.tail(hx);
    as.add_link({{C1, 0}, {C2, 0}, fx});
    if (d.surface().is_plane() && d.face(hx) == d.surface().outer) {
        if (outer_pick != 0 && outer_pick != 1)
            throw Error(ErrorCode::BadArgument, "finger into the outer face needs a side pick");
        as.prefer_outer_half(outer_pick == 0 ? hx : hy);
    }
    return as.build();
}

inline Diagram apply_r3(const Diagram& d, int face, int mover) {
    const auto& cyc = d.faces().at(face);
    if (cyc.size() != 3) throw Error(ErrorCode::BadArgument, "not a triangle face");
    int bm = cyc[mover % 3], bn = cyc[(mover + 1) % 3], bp = cyc[(mover + 2) % 3];
    int Ca = d.vertex(bm), Cb = d.vertex(bn), Cc = d.vertex(bp);
    for (int v : {Ca, Cb, Cc})
        if (d.kind(v) != VertexKind::Crossing)
            throw Error(ErrorCode::BadArgument, "triangle corner is not a crossing");
    if (Ca == Cb || Cb == Cc || Ca == Cc)
        throw Error(ErrorCode::BadArgument, "degenerate triangle");
    int Em = Diagram::edge_of(bm), Ep = Diagram::edge_of(bp), En = Diagram::edge_of(bn);
    if (Em == Ep || Em == En || Ep == En)
        throw Error(ErrorCode::BadArgument, "degenerate triangle");
    if (d.is_over(bm) != d.is_over(Diagram::twin(bm)))
        throw Error(ErrorCode::BadArgument, "moving strand must be uniformly over or under");
    bool mover_over = d.is_over(bm);
    auto opp = [&](int h) {
        return d.vertex_halves(d.vertex(h))[(d.slot_of(h) + 2) % 4];
    };
    // beyond-corner legs
    int yc = opp(bp);                 // far leg of the strand through Cc & Ca
    int zc = opp(Diagram::twin(bn));  // far leg of the strand through Cb & Cc
    Assembler as(d);
    as.remove_crossing(Ca);
    as.remove_crossing(Cb);
    // New crossings, both adjacent to Cc on the far legs:
    //   P = X x S_prev on yc's edge, slots CCW (YO, XM, YI, X_legCb);
    //   N = X x S_next on zc's edge, slots CCW (ZO, X_legCa, ZI, XM).
    // The moving strand runs legCa - N - middle - P - legCb and sits at the
    // odd slots of both, so over_even = !mover_over keeps X's over-ness.
    int P = as.add_crossing(!mover_over);
    int N = as.add_crossing(!mover_over);
    // Marks on the far legs, each anchored at its Cc end. The two legs may be
    // one edge (a loop at Cc); marks must then be added in order from the low
    // end of that edge.
    {
        int eyc = Diagram::edge_of(yc);
        int ezc = Diagram::edge_of(zc);
        bool yc_low = (yc == 2 * eyc);
        bool zc_low = (zc == 2 * ezc);
        Assembler::Mark mp = yc_low ? Assembler::Mark{{P, 2}, {P, 0}}
                                    : Assembler::Mark{{P, 0}, {P, 2}};
        Assembler::Mark mn = zc_low ? Assembler::Mark{{N, 2}, {N, 0}}
                                    : Assembler::Mark{{N, 0}, {N, 2}};
        if (eyc != ezc) {
            as.add_mark(eyc, mp);
            as.add_mark(ezc, mn);
        } else if (yc_low) {
            as.add_mark(eyc, mp);
            as.add_mark(eyc, mn);
        } else {
            as.add_mark(eyc, mn);
            as.add_mark(eyc, mp);
        }
    }
    // Marks on Em (the moving strand's passages), ordered from the Ca end:
    // first N (its legCa piece sits at slot 1), then P (reached through the
    // XM piece, which sits at slot 1 of P and slot 3 of N).
    {
        bool ca_low = (bm == 2 * Em);
        if (ca_low) {
            as.add_mark(Em, {{N, 1}, {N, 3}});
            as.add_mark(Em, {{P, 1}, {P, 3}});
        } else {
            as.add_mark(Em, {{P, 3}, {P, 1}});
            as.add_mark(Em, {{N, 3}, {N, 1}});
        }
    }
    return as.build();
}

}  // namespace detail_moves

// ---------------------------------------------------------------------------
// Public move API
// ---------------------------------------------------------------------------

inline Diagram apply_move(const Diagram& d, const MoveInstance& m);

inline std::vector<MoveInstance> enumerate_moves(const Diagram& d,
                                                 const std::set<MoveKind>& kinds) {
    std::vector<MoveInstance> out;
    if (d.is_free_loops_only()) return out;
    size_t stamp = detail_moves::code_stamp(d);
    auto try_add = [&](MoveInstance m) {
        m.stamp = stamp;
        try {
            apply_move(d, m);
            out.push_back(m);
        } catch (const Error&) {
        }
    };
    bool plane = d.surface().is_plane();
    if (kinds.count(MoveKind::R1Add)) {
        for (int h = 0; h < d.half_count(); ++h)
            for (bool pos : {false, true}) {
                MoveInstance m;
                m.kind = MoveKind::R1Add;
                m.h = h;
                m.flag = pos;
                try_add(m);
            }
    }
    if (kinds.count(MoveKind::R1Remove)) {
        for (int v = 0; v < d.vertex_count(); ++v) {
            if (d.kind(v) != VertexKind::Crossing) continue;
            // loop edge at adjacent slots with an empty loop face
            const auto& sl = d.vertex_halves(v);
            bool qualifies = false;
            for (int s = 0; s < 4 && !qualifies; ++s) {
                int h = sl[s];
                int t = Diagram::twin(h);
                if (d.vertex(t) != v) continue;
                int ds = (d.slot_of(t) - d.slot_of(h) + 4) % 4;
                if (ds != 1 && ds != 3) continue;
                for (int g : {h, t})
                    if (d.faces()[d.face(g)].size() == 1) {
                        if (plane && d.face(g) == d.surface().outer) continue;
                        qualifies = true;
                    }
            }
            if (qualifies) {
                MoveInstance m;
                m.kind = MoveKind::R1Remove;
                m.vertex = v;
                try_add(m);
            }
        }
    }
    if (kinds.count(MoveKind::R2Add)) {
        for (int f = 0; f < d.face_count(); ++f) {
            const auto& cyc = d.faces()[f];
            for (int hx : cyc)
                for (int hy : cyc) {
                    if (hx == hy || Diagram::edge_of(hx) == Diagram::edge_of(hy)) continue;
                    for (bool x_over : {false, true}) {
                        if (plane && f == d.surface().outer) {
                            for (int pick : {0, 1}) {
                                MoveInstance m;
                                m.kind = MoveKind::R2Add;
                                m.h = hx;
                                m.h2 = hy;
                                m.flag = x_over;
                                m.outer_pick = pick;
                                try_add(m);
                            }
                        } else {
                            MoveInstance m;
                            m.kind = MoveKind::R2Add;
                            m.h = hx;
                            m.h2 = hy;
                            m.flag = x_over;
                            try_add(m);
                        }
                    }
                }
        }
    }
    if (kinds.count(MoveKind::R2Remove)) {
        for (int f = 0; f < d.face_count(); ++f) {
            const auto& cyc = d.faces()[f];
            if (cyc.size() != 2) continue;
            if (plane && f == d.surface().outer) continue;
            MoveInstance m;
            m.kind = MoveKind::R2Remove;
            m.face = f;
            try_add(m);
        }
    }
    if (kinds.count(MoveKind::R3)) {
        for (int f = 0; f < d.face_count(); ++f) {
            if (d.faces()[f].size() != 3) continue;
            if (plane && f == d.surface().outer) continue;
            for (int mv = 0; mv < 3; ++mv) {
                MoveInstance m;
                m.kind = MoveKind::R3;
                m.face = f;
                m.mover = mv;
                try_add(m);
            }
        }
    }
    if ((kinds.count(MoveKind::OmegaMinus) || kinds.count(MoveKind::OmegaPlus)) &&
        !d.is_closed()) {
        for (bool at_leg : {true, false}) {
            int p = at_leg ? d.leg_half() : d.head_half();
            int far = Diagram::twin(p);
            if (d.kind(d.vertex(far)) != VertexKind::Crossing) continue;
            bool over = d.is_over(far);
            MoveKind k = over ? MoveKind::OmegaPlus : MoveKind::OmegaMinus;
            if (!kinds.count(k)) continue;
            MoveInstance m;
            m.kind = k;
            m.flag = at_leg;
            try_add(m);
        }
    }
    return out;
}

inline Diagram apply_move(const Diagram& d, const MoveInstance& m) {
    if (m.stamp != 0 && m.stamp != detail_moves::code_stamp(d))
        throw Error(ErrorCode::StaleMove, "move was enumerated on a different diagram");
    switch (m.kind) {
        case MoveKind::R1Add:
            return detail_moves::apply_r1_add(d, m.h, m.flag);
        case MoveKind::R2Add:
            return detail_moves::apply_r2_add(d, m.h, m.h2, m.flag, m.outer_pick);
        case MoveKind::R3:
            return detail_moves::apply_r3(d, m.face, m.mover);
        case MoveKind::R1Remove: {
            int v = m.vertex;
            if (v < 0 || v >= d.vertex_count() || d.kind(v) != VertexKind::Crossing)
                throw Error(ErrorCode::BadArgument, "bad curl crossing");
            const auto& sl = d.vertex_halves(v);
            // verify the curl and the empty loop face
            bool ok = false;
            for (int s = 0; s < 4 && !ok; ++s) {
                int h = sl[s], t = Diagram::twin(h);
                if (d.vertex(t) != v) continue;
                int ds = (d.slot_of(t) - d.slot_of(h) + 4) % 4;
                if (ds != 1 && ds != 3) continue;
                for (int g : {h, t})
                    if (d.faces()[d.face(g)].size() == 1 &&
                        !(d.surface().is_plane() && d.face(g) == d.surface().outer))
                        ok = true;
            }
            if (!ok) throw Error(ErrorCode::BadArgument, "not a removable curl");
            return surgery::splice_out(d, {v}, {{sl[0], sl[2]}, {sl[1], sl[3]}});
        }
        case MoveKind::R2Remove: {
            const auto& cyc = d.faces().at(m.face);
            if (cyc.size() != 2) throw Error(ErrorCode::BadArgument, "not a bigon");
            int p = cyc[0], q = cyc[1];
            if (Diagram::edge_of(p) == Diagram::edge_of(q))
                throw Error(ErrorCode::BadArgument, "bigon bounded by one edge");
            int Ca = d.vertex(p), Cb = d.vertex(q);
            if (Ca == Cb || d.kind(Ca) != VertexKind::Crossing ||
                d.kind(Cb) != VertexKind::Crossing)
                throw Error(ErrorCode::BadArgument, "degenerate bigon");
            bool strand_p_over = d.is_over(p) && d.is_over(Diagram::twin(p));
            bool strand_q_over = d.is_over(q) && d.is_over(Diagram::twin(q));
            if (!strand_p_over && !strand_q_over)
                throw Error(ErrorCode::BadArgument, "bigon is not a pushed-under finger");
            if (d.surface().is_plane() && m.face == d.surface().outer)
                throw Error(ErrorCode::BadArgument, "bigon at infinity");
            const auto& sa = d.vertex_halves(Ca);
            const auto& sb = d.vertex_halves(Cb);
            return surgery::splice_out(
                d, {Ca, Cb},
                {{sa[0], sa[2]}, {sa[1], sa[3]}, {sb[0], sb[2]}, {sb[1], sb[3]}});
        }
        case MoveKind::OmegaMinus:
        case MoveKind::OmegaPlus: {
            int p = m.flag ? d.leg_half() : d.head_half();
            int far = Diagram::twin(p);
            int v = d.vertex(far);
            if (d.kind(v) != VertexKind::Crossing)
                throw Error(ErrorCode::BadArgument, "endpoint strand reaches no crossing");
            bool over = d.is_over(far);
            if (over != (m.kind == MoveKind::OmegaPlus))
                throw Error(ErrorCode::BadArgument, "endpoint passage has the wrong side");
            const auto& sl = d.vertex_halves(v);
            return surgery::splice_out(d, {v}, {{sl[0], sl[2]}, {sl[1], sl[3]}});
        }
    }
    throw Error(ErrorCode::BadArgument, "unknown move");
}

// Test/tool helper: thread a new circle across an edge (two new crossings).
// Changes the multi-knotoid; not a Reidemeister move.
inline Diagram insert_circle_across(const Diagram& d, int h, bool circle_over) {
    using detail_moves::Assembler;
    int e = Diagram::edge_of(h);
    Assembler as(d);
    int C1 = as.add_crossing(circle_over);
    int C2 = as.add_crossing(circle_over);
    bool h_low = (h == 2 * e);
    if (h_low) {
        as.add_mark(e, {{C2, 3}, {C2, 1}});
        as.add_mark(e, {{C1, 3}, {C1, 1}});
    } else {
        as.add_mark(e, {{C1, 1}, {C1, 3}});
        as.add_mark(e, {{C2, 1}, {C2, 3}});
    }
    as.add_link({{C1, 0}, {C2, 0}, true});
    as.add_link({{C2, 2}, {C1, 2}, true});
    return as.build();
}

// ---------------------------------------------------------------------------
// Bounded equivalence search
// ---------------------------------------------------------------------------

struct SearchBudget {
    int max_crossings = -1;  // default: max(cr1, cr2) + 2
    long max_nodes = 1000000;
};

struct PathStep {
    std::string move;  // move kind, or "start"
    std::string pd;    // diagram after the step
};

struct SearchVerdict {
    enum Kind { Equivalent, Distinct, Inconclusive } kind = Inconclusive;
    std::vector<PathStep> path;  // for Equivalent: d1 ... d2
    std::string witness;         // for Distinct
};

namespace detail_moves {

inline std::optional<std::string> invariant_witness(const Diagram& a, const Diagram& b) {
    auto nb_a = normalized_bracket(a), nb_b = normalized_bracket(b);
    if (nb_a != nb_b)
        return "normalized bracket: " + nb_a.to_string() + " vs " + nb_b.to_string();
    auto eb_a = extended_bracket(a), eb_b = extended_bracket(b);
    if (eb_a != eb_b)
        return "extended bracket: " + eb_a.to_string() + " vs " + eb_b.to_string();
    if (a.surface().is_plane()) {
        auto pb_a = planar_bracket(a), pb_b = planar_bracket(b);
        if (pb_a != pb_b)
            return "planar bracket: " + pb_a.to_string() + " vs " + pb_b.to_string();
    }
    return std::nullopt;
}

}  // namespace detail_moves

inline SearchVerdict search_equivalent(const Diagram& d1, const Diagram& d2,
                                       SearchBudget budget = {}) {
    if (d1.surface().kind != d2.surface().kind)
        throw Error(ErrorCode::IncompatibleSurfaces, "search needs matching surface kinds");
    SearchVerdict verdict;
    if (auto w = detail_moves::invariant_witness(d1, d2)) {
        verdict.kind = SearchVerdict::Distinct;
        verdict.witness = *w;
        return verdict;
    }
    if (budget.max_crossings < 0)
        budget.max_crossings = std::max(d1.crossing_count(), d2.crossing_count()) + 2;
    const std::set<MoveKind> kinds = {MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add,
                                      MoveKind::R2Remove, MoveKind::R3};
    struct NodeInfo {
        std::string parent;  // canonical code
        std::string move;
        std::string pd;
    };
    // two frontiers keyed by canonical code
    std::map<std::string, NodeInfo> seen[2];
    std::deque<std::pair<std::string, Diagram>> frontier[2];
    std::string c1 = d1.canonical_code(), c2 = d2.canonical_code();
    seen[0][c1] = {"", "start", d1.render()};
    seen[1][c2] = {"", "start", d2.render()};
    frontier[0].push_back({c1, d1});
    frontier[1].push_back({c2, d2});
    long nodes = 0;
    auto build_path = [&](const std::string& meet) {
        std::vector<PathStep> fwd, bwd;
        for (std::string c = meet; !c.empty();) {
            const NodeInfo& n = seen[0][c];
            fwd.push_back({n.move, n.pd});
            c = n.parent;
        }
        std::reverse(fwd.begin(), fwd.end());
        for (std::string c = meet; !c.empty();) {
            const NodeInfo& n = seen[1][c];
            if (c != meet) bwd.push_back({n.move + " (reversed)", n.pd});
            c = n.parent;
        }
        verdict.kind = SearchVerdict::Equivalent;
        verdict.path = fwd;
        for (auto& s : bwd) verdict.path.push_back(s);
    };
    if (seen[1].count(c1)) {
        build_path(c1);
        return verdict;
    }
    while ((!frontier[0].empty() || !frontier[1].empty()) && nodes < budget.max_nodes) {
        int side = (frontier[0].size() <= frontier[1].size() && !frontier[0].empty()) ? 0 : 1;
        if (frontier[side].empty()) side ^= 1;
        auto [code, diag] = frontier[side].front();
        frontier[side].pop_front();
        auto instances = enumerate_moves(diag, kinds);
        for (const auto& inst : instances) {
            if (++nodes > budget.max_nodes) break;
            Diagram next = apply_move(diag, inst);
            if (next.crossing_count() > budget.max_crossings) continue;
            std::string nc = next.canonical_code();
            if (seen[side].count(nc)) continue;
            seen[side][nc] = {code, move_kind_name(inst.kind), next.render()};
            if (seen[side ^ 1].count(nc)) {
                build_path(nc);
                return verdict;
            }
            frontier[side].push_back({nc, next});
        }
    }
    verdict.kind = SearchVerdict::Inconclusive;
    return verdict;
}

// Replays an Equivalent path: every consecutive pair must be joined by one
// enumerated move (in either direction).
inline bool replay_path(const SearchVerdict& v) {
    if (v.kind != SearchVerdict::Equivalent || v.path.empty()) return false;
    const std::set<MoveKind> kinds = {MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add,
                                      MoveKind::R2Remove, MoveKind::R3};
    for (size_t i = 0; i + 1 < v.path.size(); ++i) {
        Diagram a = Diagram::parse(v.path[i].pd);
        Diagram b = Diagram::parse(v.path[i + 1].pd);
        std::string cb = b.canonical_code(), ca = a.canonical_code();
        bool linked = false;
        for (const auto& inst : enumerate_moves(a, kinds))
            if (apply_move(a, inst).canonical_code() == cb) {
                linked = true;
                break;
            }
        if (!linked)
            for (const auto& inst : enumerate_moves(b, kinds))
                if (apply_move(b, inst).canonical_code() == ca) {
                    linked = true;
                    break;
                }
        if (!linked) return false;
    }
    return true;
}

}  // namespace knotoid
