#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "knotoid/diagram.hpp"
#include "knotoid/moves.hpp"
#include "knotoid/poly.hpp"
#include "knotoid/surgery.hpp"

namespace knotoid {

// Element of the annulus skein algebra: a polynomial in the generators z_r
// (r a nonzero integer) with coefficients in Z[q^

// {+-1}, z^{+-1}]. The empty monomial is the unit; z_0 is not a generator
// but the scalar (q - q^-1) z^-1.
class AnnulusElement {
public:
    using Monomial = std::vector<int>;  // sorted generator indices, none zero

    AnnulusElement() = default;

    static AnnulusElement zero() { return AnnulusElement(); }
    static AnnulusElement unit() { return scalar(LaurentPoly::one()); }
    static AnnulusElement scalar(const LaurentPoly& c) {
        AnnulusElement e;
        if (!c.is_zero()) e.terms_[{}] = c;
        return e;
    }
    static AnnulusElement generator(int r) {
        if (r == 0) throw Error(ErrorCode::BadArgument, "z_0 is a scalar, not a generator");
        AnnulusElement e;
        e.terms_[{r}] = LaurentPoly::one();
        return e;
    }
    // The scalar value of a null-winding circle: (q - q^-1) z^-1.
    static LaurentPoly null_loop_scalar() { return (poly_q(1) - poly_q(-1)) * poly_z(-1); }

    const std::map<Monomial, LaurentPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_scalar() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    LaurentPoly scalar_value() const {
        if (terms_.empty()) return LaurentPoly::zero();
        if (!is_scalar()) throw Error(ErrorCode::BadArgument, "element has generators");
        return terms_.begin()->second;
    }

    AnnulusElement& operator+=(const AnnulusElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    friend AnnulusElement operator+(AnnulusElement a, const AnnulusElement& b) { return a += b; }

    friend AnnulusElement operator*(const AnnulusElement& a, const AnnulusElement& b) {
        AnnulusElement r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, ca * cb);
            }
        return r;
    }
    AnnulusElement& operator*=(const AnnulusElement& o) { return *this = *this * o; }
    friend AnnulusElement operator*(const LaurentPoly& c, AnnulusElement e) {
        AnnulusElement r;
        for (const auto& [m, coeff] : e.terms_) r.add_term(m, c * coeff);
        return r;
    }

    bool operator==(const AnnulusElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AnnulusElement& o) const { return !(*this == o); }

    // Collapse every generator by a ring map z_r -> value(r); used for the
    // bracket-consistency check on knot-type inputs (where no generator
    // survives anyway).
    LaurentPoly substitute_generators(const std::function<LaurentPoly(int)>& value) const {
        LaurentPoly out;
        for (const auto& [m, c] : terms_) {
            LaurentPoly t = c;
            for (int r : m) t *= value(r);
            out += t;
        }
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.to_string() << ")";
            for (size_t i = 0; i < m.size();) {
                size_t j = i;
                while (j < m.size() && m[j] == m[i]) ++j;
                os << " z_" << m[i];
                if (j - i > 1) os << "^" << (j - i);
                i = j;
            }
        }
        return os.str();
    }

private:
    void add_term(const Monomial& m, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    std::map<Monomial, LaurentPoly> terms_;
};

struct SkeinBudget {
    long max_nodes = 100000;       // recursion nodes
    long max_normalize = 20000;    // normalization search nodes per base case
};

namespace detail_skein {

// Traverses components in base order (segment first, circles by first
// encounter) and reports each crossing's classification.
struct TraversalInfo {
    // component order: indices into {0 = segment, 1.. = circle_halves order}
    std::vector<int> comp_order;
    // first bad crossing in walk order, or -1
    int first_bad = -1;
};

inline TraversalInfo analyze(const Diagram& d) {
    TraversalInfo info;
    int n_comp = 1 + static_cast<int>(d.circle_halves().size());
    // component of each half
    std::vector<int> comp_of(d.half_count(), -1);
    auto mark = [&](const std::vector<int>& halves, int c) {
        for (int g : halves) {
            comp_of[g] = c;
            comp_of[Diagram::twin(g)] = c;
        }
    };
    if (!d.is_closed()) mark(d.segment_halves(), 0);
    for (size_t i = 0; i < d.circle_halves().size(); ++i)
        mark(d.circle_halves()[i], static_cast<int>(i) + 1);
    // order components by first encounter
    std::vector<int> order_of_comp(n_comp, -1);
    std::vector<int> queue;
    order_of_comp[0] = 0;
    queue.push_back(0);
    info.comp_order.push_back(0);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int c = queue[qi];
        const auto& halves = c == 0 ? d.segment_halves() : d.circle_halves()[c - 1];
        for (int g : halves) {
            int arriving = Diagram::twin(g);
            int v = d.vertex(arriving);
            if (d.kind(v) != VertexKind::Crossing) continue;
            const auto& sl = d.vertex_halves(v);
            int other = sl[(d.slot_of(arriving) + 1) % 4];  // the other passage
            int oc = comp_of[other];
            if (order_of_comp[oc] == -1) {
                order_of_comp[oc] = static_cast<int>(info.comp_order.size());
                info.comp_order.push_back(oc);
                queue.push_back(oc);
            }
        }
    }
    // walk in order, recording first visits and badness
    std::vector<int> first_visit_comp(d.vertex_count(), -1);
    std::vector<uint8_t> first_visit_over(d.vertex_count(), 0);
    auto comp_rank = [&](int c) { return order_of_comp[c]; };
    for (int c : info.comp_order) {
        const auto& hs = (c == 0) ? d.segment_halves() : d.circle_halves()[c - 1];
        for (int g : hs) {
            int arriving = Diagram::twin(g);
            int v = d.vertex(arriving);
            if (d.kind(v) != VertexKind::Crossing) continue;
            const auto& sl = d.vertex_halves(v);
            int other = sl[(d.slot_of(arriving) + 1) % 4];
            int oc = comp_of[other];
            bool over = d.is_over(arriving);
            if (first_visit_comp[v] == -1) {
                first_visit_comp[v] = c;
                first_visit_over[v] = over;
                bool good;
                if (oc == c) {
                    // self-crossing: decided at the second visit unless the
                    // rule is already determined by the first visit
                    // segment: first visit under; circle: first visit over
                    good = (c == 0 && !d.is_closed()) ? !over : over;
                } else if (comp_rank(oc) > comp_rank(c)) {
                    // first component visiting wins: earlier over later,
                    // except the segment which is over everything
                    good = over;
                } else {
                    good = !over;
                }
                if (!good && info.first_bad == -1) info.first_bad = v;
            }
        }
    }
    return info;
}

}  // namespace detail_skein

class SkeinEngine {
public:
    explicit SkeinEngine(SkeinBudget budget = {}) : budget_(budget) {}

    AnnulusElement evaluate(const Diagram& input) {
        Diagram d = input.surface().is_plane() ? input.with_surface(Surface::sphere()) : input;
        if (d.is_closed())
            throw Error(ErrorCode::NotKnotoid, "the invariant needs a segment component");
        return eval(d);
    }

    long nodes_used() const { return nodes_; }

private:
    AnnulusElement eval(const Diagram& d) {
        if (++nodes_ > budget_.max_nodes)
            throw Error(ErrorCode::RecursionBudgetExceeded,
                        "skein recursion exceeded " + std::to_string(budget_.max_nodes) +
                            " nodes");
        std::string code = d.canonical_code();
        auto it = memo_.find(code);
        if (it != memo_.end()) return it->second;
        detail_skein::TraversalInfo info = detail_skein::analyze(d);
        AnnulusElement result;
        if (info.first_bad == -1) {
            result = base_case(d);
        } else {
            int v = info.first_bad;
            int sign = d.crossing_sign(v);
            Diagram switched = surgery::flip_crossing(d, v);
            AnnulusElement smoothed = eval_smoothed(d, v);
            if (sign > 0) {
                // K+ = q^-2 K- + q^-1 z K0
                result = poly_q(-2) * eval(switched) + (poly_q(-1) * poly_z(1)) * smoothed;
            } else {
                // K- = q^2 K+ - q z K0
                result = poly_q(2) * eval(switched) +
                         (LaurentPoly::constant(-1) * poly_q(1) * poly_z(1)) * smoothed;
            }
        }
        memo_.emplace(std::move(code), result);
        return result;
    }

    // Oriented smoothing with split handling: a disconnected result factors
    // as (piece with the segment) times the closed piece's scalar class.
    AnnulusElement eval_smoothed(const Diagram& d, int v) {
        const auto& sl = d.vertex_halves(v);
        std::vector<int> ins, outs;
        for (int s = 0; s < 4; ++s) (d.tail(sl[s]) ? outs : ins).push_back(sl[s]);
        auto adjacent = [&](int a, int b) {
            int k = (d.slot_of(a) - d.slot_of(b) + 4) % 4;
            return k == 1 || k == 3;
        };
        int out0 = adjacent(ins[0], outs[0]) ? outs[0] : outs[1];
        int out1 = (out0 == outs[0]) ? outs[1] : outs[0];
        std::vector<std::pair<int, int>> pairs = {{ins[0], out0}, {ins[1], out1}};
        // A splice joining the two ends of a one-edge loop leaves a free
        // null-winding circle worth the z_0 scalar.
        LaurentPoly scalar = LaurentPoly::one();
        std::vector<std::pair<int, int>> real_pairs;
        std::set<int> drop_edges;
        for (auto [a, b] : pairs) {
            if (Diagram::edge_of(a) == Diagram::edge_of(b)) {
                scalar *= AnnulusElement::null_loop_scalar();
                drop_edges.insert(Diagram::edge_of(a));
            } else {
                real_pairs.push_back({a, b});
            }
        }
        // Emit with the crossing removed; detect a split into two pieces.
        surgery::LabelMerge lm;
        for (auto [a, b] : real_pairs) lm.splice(d, a, b);
        // Piece assignment: vertices connected through surviving edges.
        // Edges are merged classes; build adjacency via labels.
        std::map<int, std::vector<int>> label_vertices;
        for (int w = 0; w < d.vertex_count(); ++w) {
            if (w == v) continue;
            for (int h : d.vertex_halves(w)) {
                if (drop_edges.count(Diagram::edge_of(h))) continue;
                label_vertices[lm.of_edge(Diagram::edge_of(h))].push_back(w);
            }
        }
        std::map<int, int> piece;  // vertex -> 0/1
        {
            std::vector<int> stack;
            for (auto& [label, vs] : label_vertices)
                for (int w : vs) piece[w] = -1;
            // start from any endpoint (the segment piece)
            int start = -1;
            for (int w = 0; w < d.vertex_count(); ++w)
                if (w != v && d.kind(w) != VertexKind::Crossing) start = w;
            if (start == -1) {
                // no endpoints among survivors: impossible (segment exists)
                throw Error(ErrorCode::BadArgument, "smoothing lost the endpoints");
            }
            piece[start] = 0;
            stack.push_back(start);
            while (!stack.empty()) {
                int w = stack.back();
                stack.pop_back();
                for (int h : d.vertex_halves(w)) {
                    if (drop_edges.count(Diagram::edge_of(h))) continue;
                    int label = lm.of_edge(Diagram::edge_of(h));
                    for (int u : label_vertices[label])
                        if (piece[u] == -1) {
                            piece[u] = 0;
                            stack.push_back(u);
                        }
                }
            }
        }
        // At most two pieces can result from one smoothing, so everything
        // unreachable from the endpoints is the closed piece.
        bool split = false;
        for (auto& [w, p] : piece)
            if (p == -1) {
                p = 1;
                split = true;
            }
        // Build spec(s).
        auto emit_piece = [&](int which) {
            surgery::SpecEmitter em(d);
            for (int w = 0; w < d.vertex_count(); ++w) {
                if (w == v || d.kind(w) != VertexKind::Crossing) continue;
                if (split && piece.at(w) != which) continue;
                std::array<int, 4> labels, tails, olds;
                const auto& s2 = d.vertex_halves(w);
                for (int s = 0; s < 4; ++s) {
                    labels[s] = lm.of_edge(Diagram::edge_of(s2[s]));
                    tails[s] = d.tail(s2[s]);
                    olds[s] = s2[s];
                }
                em.add_crossing(labels, tails, olds, d.over_even(w));
            }
            if (which == 0)
                em.add_endpoints(lm.of_edge(Diagram::edge_of(d.leg_half())),
                                 lm.of_edge(Diagram::edge_of(d.head_half())), d.leg_half(),
                                 d.head_half());
            return em.finish_on_sphere();
        };
        if (!split) {
            // the piece map covered every vertex; single diagram
            Diagram whole = emit_piece(0);
            return scalar * eval(whole);
        }
        // correct the flood for piece 1 (all unreached vertices)
        Diagram m_piece = emit_piece(0);
        Diagram l_piece = emit_piece(1);
        AnnulusElement l_value = closed_piece_value(l_piece);
        return scalar * (l_value * eval(m_piece));
    }

    // Class of a closed piece detached from the segment: it lies in a disk,
    // so its value is the scalar obtained by probing it with a trivial
    // segment hooked over one edge.
    AnnulusElement closed_piece_value(const Diagram& l) {
        Diagram probed = attach_probe_segment(l);
        AnnulusElement val = eval(probed);
        if (!val.is_scalar())
            throw Error(ErrorCode::BadArgument, "detached piece produced winding generators");
        return val;
    }

    static Diagram attach_probe_segment(const Diagram& l) {
        // Pick edge 0; the segment dives over it twice (both new crossings
        // have the segment over, so they are permanently ascending-good).
        int e = 0;
        DiagramSpec spec;
        int E = l.edge_count();
        int e_mid = E + 1, e_hi = E + 2, sA = E + 3, sM = E + 4, sB = E + 5;
        std::map<int, int> tails;
        std::map<int, int> occ;
        auto site = [&](int label, bool is_tail) {
            int o = occ[label]++;
            if (is_tail) tails[label] = o;
            return label;
        };
        // old crossings; edge e splits into (e+1, e_mid, e_hi) from the 2e end
        auto label_at = [&](int h) {
            if (Diagram::edge_of(h) != e) return Diagram::edge_of(h) + 1;
            return h == 2 * e ? e + 1 : e_hi;
        };
        for (int w = 0; w < l.vertex_count(); ++w) {
            CrossingSpec cs;
            const auto& sl = l.vertex_halves(w);
            for (int s = 0; s < 4; ++s) cs.edges[s] = site(label_at(sl[s]), l.tail(sl[s]));
            cs.over_even = l.over_even(w);
            spec.crossings.push_back(cs);
        }
        // new crossings: C1 (lower, near the 2e end), C2
        bool up = l.tail(2 * e);  // strand flows from the 2e end upward
        // C1 CCW: (sM, e_mid, sA, e_lo);  C2 CCW: (sM, e_hi, sB, e_mid)
        {
            CrossingSpec c1;
            c1.edges[0] = site(sM, true);
            c1.edges[1] = site(e_mid, up);
            c1.edges[2] = site(sA, false);
            c1.edges[3] = site(e + 1, !up);
            c1.over_even = true;  // segment over
            spec.crossings.push_back(c1);
            CrossingSpec c2;
            c2.edges[0] = site(sM, false);
            c2.edges[1] = site(e_hi, up);
            c2.edges[2] = site(sB, true);
            c2.edges[3] = site(e_mid, !up);
            c2.over_even = true;
            spec.crossings.push_back(c2);
        }
        spec.leg_edge = sA;
        site(sA, true);
        spec.head_edge = sB;
        site(sB, false);
        spec.explicit_tails = tails;
        spec.plane = false;
        return Diagram::from_spec(spec);
    }

    // ---- base case ---------------------------------------------------------

    // Winding of each circle: signed crossings with the shortcut.
    static std::vector<int> windings(const Diagram& d) {
        ShortcutPath a = d.shortcut();
        std::vector<int> r;
        for (const auto& cyc : d.circle_halves()) {
            int w = 0;
            for (int h : a.halves) {
                int e = Diagram::edge_of(h);
                for (int g : cyc)
                    if (Diagram::edge_of(g) == e) {
                        w += (g == h) ? 1 : -1;
                        break;
                    }
            }
            r.push_back(w);
        }
        return r;
    }

    // Remove a circle hooked onto one other component by a single same-over
    // clasp pair; contributes the z_0 scalar.
    std::optional<Diagram> pluck_parked_circle(const Diagram& d) {
        for (size_t ci = 0; ci < d.circle_halves().size(); ++ci) {
            const auto& cyc = d.circle_halves()[ci];
            // crossings touching this circle
            std::set<int> edges;
            for (int g : cyc) edges.insert(Diagram::edge_of(g));
            std::vector<int> crossings;
            bool self_crossing = false;
            for (int vtx = 0; vtx < d.vertex_count(); ++vtx) {
                if (d.kind(vtx) != VertexKind::Crossing) continue;
                const auto& sl = d.vertex_halves(vtx);
                int touch = 0;
                for (int s = 0; s < 4; ++s)
                    if (edges.count(Diagram::edge_of(sl[s]))) ++touch;
                if (touch == 4) self_crossing = true;
                else if (touch > 0) crossings.push_back(vtx);
            }
            if (self_crossing || crossings.size() != 2) continue;
            // both crossings with the same over-ness for the circle strand
            bool over0 = false, over1 = false, first = true;
            bool uniform = true;
            for (int vtx : crossings) {
                const auto& sl = d.vertex_halves(vtx);
                for (int s = 0; s < 4; ++s)
                    if (edges.count(Diagram::edge_of(sl[s]))) {
                        bool ov = d.is_over(sl[s]);
                        if (first) {
                            over0 = ov;
                            first = false;
                        } else {
                            over1 = ov;
                        }
                        break;
                    }
            }
            uniform = (over0 == over1);
            if (!uniform) continue;
            // splice the other strand through both crossings and drop the
            // circle's edges
            surgery::LabelMerge lm;
            bool ok = true;
            std::set<int> removed = {crossings[0], crossings[1]};
            try {
                for (int vtx : crossings) {
                    const auto& sl = d.vertex_halves(vtx);
                    // the other strand occupies the passage not on the circle
                    int a = -1;
                    for (int s = 0; s < 4; ++s)
                        if (!edges.count(Diagram::edge_of(sl[s]))) {
                            a = sl[s];
                            break;
                        }
                    int b = d.vertex_halves(vtx)[(d.slot_of(a) + 2) % 4];
                    lm.splice(d, a, b);
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) continue;
            surgery::SpecEmitter em(d);
            for (int w = 0; w < d.vertex_count(); ++w) {
                if (d.kind(w) != VertexKind::Crossing || removed.count(w)) continue;
                std::array<int, 4> labels, tails, olds;
                const auto& sl = d.vertex_halves(w);
                bool on_circle = false;
                for (int s = 0; s < 4; ++s)
                    if (edges.count(Diagram::edge_of(sl[s]))) on_circle = true;
                if (on_circle) { ok = false; break; }
                for (int s = 0; s < 4; ++s) {
                    labels[s] = lm.of_edge(Diagram::edge_of(sl[s]));
                    tails[s] = d.tail(sl[s]);
                    olds[s] = sl[s];
                }
                em.add_crossing(labels, tails, olds, d.over_even(w));
            }
            if (!ok) continue;
            if (!d.is_closed())
                em.add_endpoints(lm.of_edge(Diagram::edge_of(d.leg_half())),
                                 lm.of_edge(Diagram::edge_of(d.head_half())), d.leg_half(),
                                 d.head_half());
            try {
                return em.finish_on_sphere();
            } catch (const Error&) {
                continue;
            }
        }
        return std::nullopt;
    }

    // True when the diagram is a radial segment with standard coils: no
    // segment self-crossings, no circle-circle crossings, circle i meeting
    // the segment |r_i| times and itself |r_i|-1 times.
    static bool is_standard_form(const Diagram& d, const std::vector<int>& r) {
        std::vector<std::set<int>> comp_edges;
        std::set<int> seg_edges;
        for (int g : d.segment_halves()) seg_edges.insert(Diagram::edge_of(g));
        for (const auto& cyc : d.circle_halves()) {
            std::set<int> es;
            for (int g : cyc) es.insert(Diagram::edge_of(g));
            comp_edges.push_back(es);
        }
        std::vector<int> self_count(comp_edges.size(), 0), seg_count(comp_edges.size(), 0);
        for (int v = 0; v < d.vertex_count(); ++v) {
            if (d.kind(v) != VertexKind::Crossing) continue;
            const auto& sl = d.vertex_halves(v);
            int seg_touch = 0;
            std::vector<int> circles_touching;
            for (int s = 0; s < 4; s += 1) {
                int e = Diagram::edge_of(sl[s]);
                if (seg_edges.count(e)) ++seg_touch;
                for (size_t ci = 0; ci < comp_edges.size(); ++ci)
                    if (comp_edges[ci].count(e)) circles_touching.push_back(static_cast<int>(ci));
            }
            if (seg_touch == 4) return false;  // segment self-crossing
            if (seg_touch == 2) {
                if (circles_touching.size() != 2 ||
                    circles_touching[0] != circles_touching[1])
                    return false;
                ++seg_count[circles_touching[0]];
            } else if (seg_touch == 0) {
                if (circles_touching.size() != 4) return false;
                int c0 = circles_touching[0];
                for (int c : circles_touching)
                    if (c != c0) return false;  // circle-circle crossing
                ++self_count[c0];
            } else {
                return false;
            }
        }
        for (size_t ci = 0; ci < comp_edges.size(); ++ci) {
            int want = std::abs(r[ci]);
            if (want == 0) return false;  // a parked circle should be plucked
            if (seg_count[ci] != want) return false;
            if (self_count[ci] != want - 1) return false;
        }
        return true;
    }

    AnnulusElement base_case(const Diagram& d0) {
        // Bounded normalization: pluck parked circles, remove curls and
        // finger pairs, explore R3 to unlock further removals.
        const std::set<MoveKind> reductions = {MoveKind::R1Remove, MoveKind::R2Remove};
        LaurentPoly scalar = LaurentPoly::one();
        Diagram d = d0;
        long steps = 0;
        while (true) {
            if (++steps > budget_.max_normalize)
                throw Error(ErrorCode::NormalizationFailed,
                            "base diagram did not reach standard wraps within budget");
            if (auto plucked = pluck_parked_circle(d)) {
                scalar *= AnnulusElement::null_loop_scalar();
                d = *plucked;
                continue;
            }
            auto rem = enumerate_moves(d, reductions);
            if (!rem.empty()) {
                d = apply_move(d, rem.front());
                continue;
            }
            std::vector<int> r = windings(d);
            if (is_standard_form(d, r)) {
                AnnulusElement out = AnnulusElement::scalar(scalar);
                for (int ri : r) out *= AnnulusElement::generator(ri);
                return out;
            }
            // R3 search for an unlocking position
            bool advanced = false;
            std::set<std::string> seen = {d.canonical_code()};
            std::vector<Diagram> frontier = {d};
            for (int depth = 0; depth < 6 && !advanced; ++depth) {
                std::vector<Diagram> next;
                for (const Diagram& cur : frontier) {
                    for (const auto& m : enumerate_moves(cur, {MoveKind::R3})) {
                        if (++steps > budget_.max_normalize)
                            throw Error(ErrorCode::NormalizationFailed,
                                        "base diagram did not reach standard wraps in budget");
                        Diagram nd = apply_move(cur, m);
                        std::string c = nd.canonical_code();
                        if (!seen.insert(c).second) continue;
                        if (!enumerate_moves(nd, reductions).empty() ||
                            pluck_parked_circle_exists(nd)) {
                            d = nd;
                            advanced = true;
                            break;
                        }
                        next.push_back(nd);
                    }
                    if (advanced) break;
                }
                frontier = std::move(next);
            }
            if (!advanced)
                throw Error(ErrorCode::NormalizationFailed,
                            "base diagram is stuck away from standard wraps");
        }
    }

    bool pluck_parked_circle_exists(const Diagram& d) {
        return pluck_parked_circle(d).has_value();
    }

    SkeinBudget budget_;
    long nodes_ = 0;
    std::map<std::string, AnnulusElement> memo_;
};

// The annulus-valued skein invariant of a multi-knotoid diagram. Knot-type
// inputs land in the scalar ring and agree with the two-strand skein
// evaluation of the underlying knot.
inline AnnulusElement homfly_invariant(const Diagram& d, SkeinBudget budget = {}) {
    SkeinEngine engine(budget);
    return engine.evaluate(d);
}

}  // namespace knotoid
