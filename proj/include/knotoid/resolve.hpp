#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <vector>

#include "knotoid/diagram.hpp"
#include "knotoid/errors.hpp"

namespace knotoid {

// Assignment of +1 / -1 to each crossing (indexed by crossing vertex id).
struct State {
    std::vector<int8_t> values;

    static State from_mask(uint64_t mask, int n) {
        State s;
        s.values.resize(n);
        for (int i = 0; i < n; ++i) s.values[i] = (mask >> i & 1) ? 1 : -1;
        return s;
    }
    int size() const { return static_cast<int>(values.size()); }
};

// The smoothed 1-manifold of one state: its segment trace, circles, state
// sum, and the signed shortcut crossings of the segment.
struct Resolution {
    long sigma = 0;                        // sum of the state values
    int component_count = 0;               // |s|
    long segment_shortcut = 0;             // signed crossings of the segment with the shortcut
    std::vector<int> segment_halves;       // directed edge trace (empty for closed diagrams)
    std::vector<std::vector<int>> circles; // directed circle traces
    int p = -1, q = -1;                    // planar nesting counts (Plane only)
};

namespace detail {

// Re-pairing tables: at a crossing the A-smoothing joins each over half-edge
// to its clockwise neighbour, the B-smoothing to its counterclockwise one.
inline void smoothing_pairs(const Diagram& d, int v, int value, int out_pair[4]) {
    const auto& s = d.vertex_halves(v);
    int i = d.over_even(v) ? 0 : 1;  // first over slot
    bool a_smooth = value > 0;
    auto join = [&](int x, int y) {
        out_pair[d.slot_of(s[x])] = s[y];
        out_pair[d.slot_of(s[y])] = s[x];
    };
    if (a_smooth) {
        join(i, (i + 3) % 4);
        join(i + 2, i + 1);
    } else {
        join(i, i + 1);
        join(i + 2, (i + 3) % 4);
    }
}

}  // namespace detail

class Resolver {
public:
    explicit Resolver(const Diagram& d) : d_(d) {
        int n = d.crossing_count();
        pair_a_.assign(d.half_count(), -1);
        pair_b_.assign(d.half_count(), -1);
        for (int v = 0; v < n; ++v) {
            int tmp[4];
            detail::smoothing_pairs(d, v, +1, tmp);
            for (int s = 0; s < 4; ++s) pair_a_[d.vertex_halves(v)[s]] = tmp[d.slot_of(d.vertex_halves(v)[s])];
            detail::smoothing_pairs(d, v, -1, tmp);
            for (int s = 0; s < 4; ++s) pair_b_[d.vertex_halves(v)[s]] = tmp[d.slot_of(d.vertex_halves(v)[s])];
        }
        // Fixed dual path from the leg face to the outer face for the planar
        // nesting parity test.
        if (d.surface().is_plane() && !d.is_closed() && !d.is_free_loops_only())
            outer_probe_ = dual_path(d.leg_face(), d.surface().outer);
    }

    const Diagram& diagram() const { return d_; }

    Resolution resolve(const State& s, const ShortcutPath& a) const {
        if (s.size() != d_.crossing_count())
            throw Error(ErrorCode::PartialState, "state must assign every crossing");
        for (int8_t v : s.values)
            if (v != 1 && v != -1)
                throw Error(ErrorCode::PartialState, "state values must be +1 or -1");
        Resolution r;
        for (int8_t v : s.values) r.sigma += v;

        // pairing per half-edge for this state
        auto pair_of = [&](int arriving) {
            int v = d_.vertex(arriving);
            return s.values[v] > 0 ? pair_a_[arriving] : pair_b_[arriving];
        };
        std::vector<uint8_t> seen_edge(d_.edge_count(), 0);
        std::vector<int> dir_half(d_.edge_count(), -1);  // traversal half per edge
        if (!d_.is_closed()) {
            int g = d_.leg_half();
            while (true) {
                seen_edge[Diagram::edge_of(g)] = 1;
                dir_half[Diagram::edge_of(g)] = g;
                r.segment_halves.push_back(g);
                int arriving = Diagram::twin(g);
                if (d_.kind(d_.vertex(arriving)) != VertexKind::Crossing) break;
                g = pair_of(arriving);
            }
            r.component_count = 1;
        }
        for (int e = 0; e < d_.edge_count(); ++e) {
            if (seen_edge[e]) continue;
            std::vector<int> cyc;
            int g = 2 * e;
            do {
                seen_edge[Diagram::edge_of(g)] = 1;
                dir_half[Diagram::edge_of(g)] = g;
                cyc.push_back(g);
                g = pair_of(Diagram::twin(g));
            } while (g != 2 * e);
            r.circles.push_back(std::move(cyc));
            ++r.component_count;
        }
        // k_s . a : only shortcut steps across segment edges contribute.
        for (int h : a.halves) {
            int e = Diagram::edge_of(h);
            if (r.segment_halves.empty()) break;
            if (dir_half[e] == -1) continue;
            bool on_segment = false;
            for (int g : r.segment_halves)
                if (Diagram::edge_of(g) == e) {
                    on_segment = true;
                    break;
                }
            if (!on_segment) continue;
            r.segment_shortcut += (dir_half[e] == h) ? 1 : -1;
        }
        // Planar nesting: a circle is q-type when it separates the leg from
        // the outer face, i.e. the fixed probe path crosses it oddly often.
        if (d_.surface().is_plane() && !d_.is_closed()) {
            r.p = 0;
            r.q = 0;
            for (const auto& cyc : r.circles) {
                std::vector<uint8_t> in_circle(d_.edge_count(), 0);
                for (int g : cyc) in_circle[Diagram::edge_of(g)] = 1;
                int parity = 0;
                for (int h : outer_probe_.halves) parity ^= in_circle[Diagram::edge_of(h)];
                if (parity) ++r.q;
                else ++r.p;
            }
        }
        return r;
    }

    // Deterministic enumeration: binary counter, bit i = crossing i, set bit
    // means the A-smoothing (+1).
    void for_each_state(const ShortcutPath& a,
                        const std::function<void(uint64_t, const Resolution&)>& fn) const {
        int n = d_.crossing_count();
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask)
            fn(mask, resolve(State::from_mask(mask, n), a));
    }

    // Signed intersection of the whole diagram with the shortcut.
    long diagram_shortcut(const ShortcutPath& a) const {
        long total = 0;
        for (int h : a.halves)
            total += (d_.tail_half_of_edge(Diagram::edge_of(h)) == h) ? 1 : -1;
        return total;
    }

    // A dual path between two faces (not necessarily the shortcut).
    ShortcutPath dual_path(int from, int to) const {
        ShortcutPath path;
        if (from == to) return path;
        int F = d_.face_count();
        std::vector<int> dist(F, -1), par_face(F, -1), par_half(F, -1);
        dist[from] = 0;
        std::vector<int> frontier = {from};
        while (!frontier.empty() && dist[to] == -1) {
            std::sort(frontier.begin(), frontier.end());
            std::vector<int> nf;
            for (int f : frontier) {
                std::vector<std::pair<int, int>> exits;
                for (int h : d_.faces()[f]) exits.push_back({Diagram::edge_of(h), h});
                std::sort(exits.begin(), exits.end());
                for (auto [e, h] : exits) {
                    int g = d_.face(Diagram::twin(h));
                    if (dist[g] == -1) {
                        dist[g] = dist[f] + 1;
                        par_face[g] = f;
                        par_half[g] = h;
                        nf.push_back(g);
                    }
                }
            }
            frontier = std::move(nf);
        }
        if (dist[to] == -1) throw Error(ErrorCode::BadArgument, "faces not connected");
        for (int f = to; f != from; f = par_face[f]) path.halves.push_back(par_half[f]);
        std::reverse(path.halves.begin(), path.halves.end());
        return path;
    }

private:
    const Diagram& d_;
    std::vector<int> pair_a_, pair_b_;
    ShortcutPath outer_probe_;
};

// Guard for the exponential state sum.
inline constexpr int kMaxStateSumCrossings = 24;

inline void check_state_space(const Diagram& d, bool allow_large) {
    if (!allow_large && d.crossing_count() > kMaxStateSumCrossings)
        throw Error(ErrorCode::StateSpaceTooLarge,
                    "state sum over 2^" + std::to_string(d.crossing_count()) +
                        " states; pass the large-statesum override to proceed");
}

// Per-state table (state bits, sigma, |s|, k_s.a, p, q) for oracle diffing.
inline std::string state_table_tsv(const Diagram& d, bool allow_large = false) {
    check_state_space(d, allow_large);
    Resolver res(d);
    ShortcutPath a = d.is_closed() ? ShortcutPath{} : d.shortcut();
    std::ostringstream out;
    out << "state\tsigma\tcomponents\tsegment_shortcut\tp\tq\n";
    res.for_each_state(a, [&](uint64_t mask, const Resolution& r) {
        for (int i = 0; i < d.crossing_count(); ++i) out << ((mask >> i & 1) ? 'A' : 'B');
        if (d.crossing_count() == 0) out << '-';
        out << '\t' << r.sigma << '\t' << r.component_count << '\t' << r.segment_shortcut
            << '\t' << r.p << '\t' << r.q << '\n';
    });
    return out.str();
}

}  // namespace knotoid
