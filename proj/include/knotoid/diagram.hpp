#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knotoid/errors.hpp"

namespace knotoid {

// ---------------------------------------------------------------------------
// Conventions (pinned by unit tests):
//
//  * Half-edges come in twin pairs (2e, 2e+1) for edge id e. A half-edge h
//    "emanates" from vertex_of[h]; twin(h) is the same edge seen from the
//    other end.
//  * At every vertex the incident half-edges are stored counterclockwise;
//    next_ccw / prev_ccw realize that rotation.
//  * Faces are traced with next(h) = prev_ccw[twin(h)]; the traced face lies
//    to the LEFT of each directed half-edge in its orbit.
//  * A crossing stores four half-edges, slots 0..3 counterclockwise. The two
//    strands occupy opposite slot pairs {0,2} and {1,3}; over_even says the
//    {0,2} strand is the overpass.
//  * Exactly one half of each edge carries tail[h] = true: the strand runs
//    from vertex_of[h] towards the twin. The open component runs leg -> head.
// ---------------------------------------------------------------------------

enum class VertexKind { Crossing, Leg, Head };

struct Surface {
    enum Kind { Sphere, Plane } kind = Sphere;
    int outer = -1;  // face id, Plane only

    static Surface sphere() { return Surface{Sphere, -1}; }
    static Surface plane(int outer_face) { return Surface{Plane, outer_face}; }
    bool is_plane() const { return kind == Plane; }
    bool operator==(const Surface& o) const {
        return kind == o.kind && (kind == Sphere || outer == o.outer);
    }
};

// PD-style intermediate description. The parser fills one of these from
// text; move surgeries and closures assemble them directly.
struct CrossingSpec {
    std::array<int, 4> edges;  // labels, counterclockwise
    bool over_even = true;     // slots {0,2} carry the overpass
};

struct CircleHint {
    std::vector<int> edges;  // labels in traversal order
    // The circle is traversed starting along edges[0] away from its first
    // occurrence end (second occurrence when this flag is set; rendered with
    // a trailing tick, e.g. circle(5',2)).
    bool from_second_occurrence = false;
};

struct DiagramSpec {
    std::vector<CrossingSpec> crossings;
    std::optional<int> leg_edge;
    std::optional<int> head_edge;
    std::vector<CircleHint> circles;
    // Explicit orientation: edge label -> occurrence index (0 or 1) whose end
    // is the tail. Takes precedence over circle hints; used by surgeries.
    std::map<int, int> explicit_tails;
    bool plane = false;
    int outer = -1;
    int free_loops = 0;  // crossing-free circles; only valid on their own
};

// Simulates from_spec's site scan: the half-edge id that (label, occurrence)
// receives. Sites are scanned crossing by crossing, slots 0..3, then leg,
// then head.
inline int spec_half_of(const DiagramSpec& spec, int label, int occurrence) {
    std::map<int, int> id, count;
    auto note = [&](int l) {
        if (!id.count(l)) id[l] = static_cast<int>(id.size());
        ++count[l];
    };
    for (const auto& c : spec.crossings)
        for (int e : c.edges) note(e);
    if (spec.leg_edge) note(*spec.leg_edge);
    if (spec.head_edge) note(*spec.head_edge);
    auto it = id.find(label);
    if (it == id.end()) throw Error(ErrorCode::BadArgument, "unknown label");
    return 2 * it->second + occurrence;
}

struct ShortcutPath {
    // Each step crosses the edge of `half`, moving from face_of[half] to
    // face_of[twin(half)] (i.e. from the left of `half` to its right).
    std::vector<int> halves;
    size_t length() const { return halves.size(); }
};

class Diagram {
public:
    // ---- read access -----------------------------------------------------
    int half_count() const { return static_cast<int>(vertex_of_.size()); }
    int edge_count() const { return half_count() / 2; }
    int crossing_count() const { return n_crossings_; }
    int vertex_count() const { return static_cast<int>(vertex_kind_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    static int twin(int h) { return h ^ 1; }
    static int edge_of(int h) { return h >> 1; }
    int vertex(int h) const { return vertex_of_[h]; }
    int next_ccw(int h) const { return next_ccw_[h]; }
    int prev_ccw(int h) const { return prev_ccw_[h]; }
    bool tail(int h) const { return tail_[h] != 0; }
    int face(int h) const { return face_of_[h]; }

    VertexKind kind(int v) const { return vertex_kind_[v]; }
    const std::vector<int>& vertex_halves(int v) const { return vertex_slots_[v]; }
    bool over_even(int v) const { return over_even_[v] != 0; }
    int slot_of(int h) const { return slot_of_[h]; }

    // True when h belongs to the overpass of its crossing.
    bool is_over(int h) const {
        int v = vertex_of_[h];
        return (slot_of_[h] % 2 == 0) == over_even(v);
    }

    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const Surface& surface() const { return surface_; }

    bool is_closed() const { return !leg_half_.has_value(); }
    bool is_free_loops_only() const { return free_loops_ > 0; }
    int free_loops() const { return free_loops_; }
    bool is_knotoid() const { return leg_half_.has_value() && circle_halves_.empty(); }

    int leg_half() const { return leg_half_.value(); }    // half at the leg vertex
    int head_half() const { return head_half_.value(); }  // half at the head vertex
    int leg_face() const { return face_of_[leg_half_.value()]; }
    int head_face() const { return face_of_[head_half_.value()]; }

    // Directed traversal of the open component, as tail-halves in order.
    const std::vector<int>& segment_halves() const { return segment_halves_; }
    const std::vector<std::vector<int>>& circle_halves() const { return circle_halves_; }
    int circle_components() const {
        return free_loops_ > 0 ? free_loops_ : static_cast<int>(circle_halves_.size());
    }

    // Directed half (the tail) of an edge.
    int tail_half_of_edge(int e) const { return tail_[2 * e] ? 2 * e : 2 * e + 1; }

    // ---- construction -----------------------------------------------------
    static Diagram from_spec(const DiagramSpec& spec);
    static Diagram parse(const std::string& text);
    static Diagram free_loop_diagram(int loops, Surface s = Surface::sphere()) {
        if (loops <= 0) throw Error(ErrorCode::BadArgument, "need at least one loop");
        Diagram d;
        d.free_loops_ = loops;
        d.surface_ = s;
        if (s.is_plane()) d.surface_.outer = 0;
        return d;
    }

    // Spec plus a mapping from this diagram's half-edges to (label,
    // occurrence) in the emitted spec; used for outer-face tracking.
    DiagramSpec to_spec(std::vector<std::pair<int, int>>* half_to_label_occ = nullptr) const;

    std::string render() const;
    std::string canonical_code() const;

    Diagram with_surface(const Surface& s) const {
        Diagram d = *this;
        if (free_loops_ > 0) {
            d.surface_ = s;
            if (s.is_plane()) d.surface_.outer = 0;
            return d;
        }
        if (s.is_plane() && (s.outer < 0 || s.outer >= face_count()))
            throw Error(ErrorCode::BadArgument, "outer face out of range");
        d.surface_ = s;
        return d;
    }

    // ---- involutions -------------------------------------------------------
    Diagram reversed() const;
    Diagram mirrored() const;
    Diagram symmetric() const;

    // ---- basic operations ---------------------------------------------------
    long writhe() const;
    int crossing_sign(int v) const;
    ShortcutPath shortcut() const;
    bool is_valid_shortcut(const ShortcutPath& p) const;

    Diagram closure_under() const { return closure(false); }
    Diagram closure_over() const { return closure(true); }

    // Number of components of the orientation-compatible full smoothing.
    int oriented_smoothing_components() const;

    bool is_alternating() const;
    std::vector<bool> segment_visit_pattern() const;

private:
    Diagram() = default;
    Diagram closure(bool over) const;
    void trace_faces();

    std::vector<int> vertex_of_;
    std::vector<int> next_ccw_, prev_ccw_;
    std::vector<int> slot_of_;
    std::vector<uint8_t> tail_;
    std::vector<int> face_of_;
    std::vector<std::vector<int>> faces_;
    std::vector<VertexKind> vertex_kind_;
    std::vector<std::vector<int>> vertex_slots_;
    std::vector<uint8_t> over_even_;
    std::optional<int> leg_half_, head_half_;
    std::vector<int> segment_halves_;
    std::vector<std::vector<int>> circle_halves_;
    Surface surface_ = Surface::sphere();
    int n_crossings_ = 0;
    int free_loops_ = 0;
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

inline void Diagram::trace_faces() {
    face_of_.assign(half_count(), -1);
    faces_.clear();
    for (int h0 = 0; h0 < half_count(); ++h0) {
        if (face_of_[h0] != -1) continue;
        int id = static_cast<int>(faces_.size());
        std::vector<int> cyc;
        int h = h0;
        while (face_of_[h] == -1) {
            face_of_[h] = id;
            cyc.push_back(h);
            h = prev_ccw_[twin(h)];
        }
        if (h != h0) throw Error(ErrorCode::SyntaxError, "face trace failed to close");
        faces_.push_back(std::move(cyc));
    }
}

inline Diagram Diagram::from_spec(const DiagramSpec& spec) {
    if (spec.free_loops > 0) {
        if (!spec.crossings.empty() || spec.leg_edge || spec.head_edge || !spec.circles.empty())
            throw Error(ErrorCode::SyntaxError,
                        "free loops cannot be combined with other statements");
        Surface s = spec.plane ? Surface::plane(0) : Surface::sphere();
        return free_loop_diagram(spec.free_loops, s);
    }
    if (spec.leg_edge.has_value() != spec.head_edge.has_value())
        throw Error(ErrorCode::BadEndpoints, "need both leg and head, or neither");

    Diagram d;
    std::map<int, int> edge_id;
    std::map<int, int> seen;
    auto note_edge = [&](int label) -> int {
        auto it = edge_id.find(label);
        if (it == edge_id.end()) {
            int id = static_cast<int>(edge_id.size());
            edge_id.emplace(label, id);
            seen[label] = 1;
            return 2 * id;
        }
        int n = ++seen[label];
        if (n > 2)
            throw Error(ErrorCode::SyntaxError,
                        "edge label used more than twice: " + std::to_string(label));
        return 2 * it->second + 1;
    };

    int n_cross = static_cast<int>(spec.crossings.size());
    d.n_crossings_ = n_cross;
    d.vertex_kind_.assign(n_cross, VertexKind::Crossing);
    d.vertex_slots_.assign(n_cross, {});
    d.over_even_.assign(n_cross, 1);

    std::vector<std::array<int, 4>> crossing_halves(n_cross);
    for (int v = 0; v < n_cross; ++v) {
        for (int s = 0; s < 4; ++s) crossing_halves[v][s] = note_edge(spec.crossings[v].edges[s]);
        d.over_even_[v] = spec.crossings[v].over_even ? 1 : 0;
    }
    int leg_h = -1, head_h = -1;
    if (spec.leg_edge) {
        leg_h = note_edge(*spec.leg_edge);
        head_h = note_edge(*spec.head_edge);
    }
    for (const auto& [label, count] : seen)
        if (count != 2)
            throw Error(ErrorCode::SyntaxError,
                        "edge label must appear exactly twice: " + std::to_string(label));

    int E = static_cast<int>(edge_id.size());
    if (E == 0) throw Error(ErrorCode::SyntaxError, "empty diagram");
    d.vertex_of_.assign(2 * E, -1);
    d.next_ccw_.assign(2 * E, -1);
    d.prev_ccw_.assign(2 * E, -1);
    d.slot_of_.assign(2 * E, -1);
    d.tail_.assign(2 * E, 0);

    for (int v = 0; v < n_cross; ++v) {
        auto& slots = d.vertex_slots_[v];
        slots.assign(crossing_halves[v].begin(), crossing_halves[v].end());
        for (int s = 0; s < 4; ++s) {
            int h = slots[s];
            if (d.vertex_of_[h] != -1)
                throw Error(ErrorCode::SyntaxError, "half-edge attached twice");
            d.vertex_of_[h] = v;
            d.slot_of_[h] = s;
            d.next_ccw_[h] = slots[(s + 1) % 4];
        }
        for (int s = 0; s < 4; ++s) d.prev_ccw_[d.next_ccw_[slots[s]]] = slots[s];
    }
    auto add_endpoint = [&](int h, VertexKind k) {
        int v = static_cast<int>(d.vertex_kind_.size());
        d.vertex_kind_.push_back(k);
        d.vertex_slots_.push_back({h});
        d.over_even_.push_back(1);
        if (d.vertex_of_[h] != -1)
            throw Error(ErrorCode::SyntaxError, "endpoint edge end already attached");
        d.vertex_of_[h] = v;
        d.slot_of_[h] = 0;
        d.next_ccw_[h] = h;
        d.prev_ccw_[h] = h;
    };
    if (leg_h >= 0) {
        add_endpoint(leg_h, VertexKind::Leg);
        add_endpoint(head_h, VertexKind::Head);
        d.leg_half_ = leg_h;
        d.head_half_ = head_h;
    }
    for (int h = 0; h < 2 * E; ++h)
        if (d.vertex_of_[h] == -1) throw Error(ErrorCode::SyntaxError, "dangling edge end");

    // Connectivity: twin and rotation generate a connected map.
    {
        std::vector<uint8_t> vis(2 * E, 0);
        std::vector<int> stack = {0};
        vis[0] = 1;
        while (!stack.empty()) {
            int h = stack.back();
            stack.pop_back();
            for (int g : {twin(h), d.next_ccw_[h]})
                if (!vis[g]) {
                    vis[g] = 1;
                    stack.push_back(g);
                }
        }
        for (int h = 0; h < 2 * E; ++h)
            if (!vis[h])
                throw Error(ErrorCode::DisconnectedSegment, "diagram map is not connected");
    }

    d.trace_faces();
    long V = d.vertex_count(), F = d.face_count();
    if (V - E + F != 2)
        throw Error(ErrorCode::NonPlanar,
                    "Euler check failed: V-E+F = " + std::to_string(V - E + F));

    // Orientations.
    std::vector<uint8_t> directed(E, 0);
    auto set_tail = [&](int h) {
        int e = edge_of(h);
        if (directed[e]) throw Error(ErrorCode::SyntaxError, "conflicting orientation");
        directed[e] = 1;
        d.tail_[h] = 1;
        d.tail_[twin(h)] = 0;
    };
    auto strand_continue = [&](int arriving) -> int {
        int v = d.vertex_of_[arriving];
        if (d.vertex_kind_[v] != VertexKind::Crossing) return -1;
        return d.vertex_slots_[v][(d.slot_of_[arriving] + 2) % 4];
    };
    if (d.leg_half_) {
        int g = *d.leg_half_;
        set_tail(g);
        d.segment_halves_.push_back(g);
        int guard = 0;
        while (true) {
            if (++guard > 2 * E + 2)
                throw Error(ErrorCode::DisconnectedSegment, "segment trace does not terminate");
            int arriving = twin(g);
            int v = d.vertex_of_[arriving];
            if (d.vertex_kind_[v] == VertexKind::Head) break;
            if (d.vertex_kind_[v] == VertexKind::Leg)
                throw Error(ErrorCode::BadEndpoints, "segment returned to the leg");
            g = strand_continue(arriving);
            set_tail(g);
            d.segment_halves_.push_back(g);
        }
    }
    for (const auto& [label, occ] : spec.explicit_tails) {
        auto it = edge_id.find(label);
        if (it == edge_id.end())
            throw Error(ErrorCode::SyntaxError, "orientation for unknown edge");
        int e = it->second;
        if (directed[e]) continue;  // segment pinned it already
        set_tail(2 * e + occ);
    }
    auto trace_circle_from = [&](int first) {
        int g = first;
        std::vector<int> cyc;
        int guard = 0;
        do {
            if (++guard > 2 * E + 2)
                throw Error(ErrorCode::SyntaxError, "circle trace does not terminate");
            if (!directed[edge_of(g)]) set_tail(g);
            else if (!d.tail_[g])
                throw Error(ErrorCode::SyntaxError, "inconsistent circle orientation");
            cyc.push_back(g);
            int out = strand_continue(twin(g));
            if (out < 0) throw Error(ErrorCode::BadEndpoints, "circle runs into an endpoint");
            g = out;
        } while (g != first);
        return cyc;
    };
    for (const auto& hint : spec.circles) {
        if (hint.edges.empty()) throw Error(ErrorCode::SyntaxError, "empty circle statement");
        auto it = edge_id.find(hint.edges[0]);
        if (it == edge_id.end()) throw Error(ErrorCode::SyntaxError, "circle names unknown edge");
        int first = 2 * it->second + (hint.from_second_occurrence ? 1 : 0);
        if (directed[edge_of(first)] && !d.tail_[first])
            throw Error(ErrorCode::MissingOrientation,
                        "circle statement conflicts with fixed orientation");
        auto got = trace_circle_from(first);
        if (got.size() != hint.edges.size())
            throw Error(ErrorCode::MissingOrientation, "circle statement has wrong length");
        for (size_t i = 0; i < got.size(); ++i) {
            auto jt = edge_id.find(hint.edges[i]);
            if (jt == edge_id.end() || edge_of(got[i]) != jt->second)
                throw Error(ErrorCode::MissingOrientation,
                            "circle statement does not match the trace");
        }
    }
    for (int e = 0; e < E; ++e)
        if (!directed[e])
            throw Error(ErrorCode::MissingOrientation,
                        "circle component lacks an orientation statement");

    // Collect circle traversals (deterministic: by smallest edge id).
    {
        std::vector<uint8_t> seen_edge(E, 0);
        for (int g : d.segment_halves_) seen_edge[edge_of(g)] = 1;
        for (int e = 0; e < E; ++e) {
            if (seen_edge[e]) continue;
            int start = d.tail_half_of_edge(e);
            std::vector<int> cyc;
            int g = start;
            do {
                seen_edge[edge_of(g)] = 1;
                cyc.push_back(g);
                int out = strand_continue(twin(g));
                if (out < 0)
                    throw Error(ErrorCode::BadEndpoints, "circle runs into an endpoint");
                if (!d.tail_[out])
                    throw Error(ErrorCode::SyntaxError, "inconsistent circle orientation");
                g = out;
            } while (g != start);
            d.circle_halves_.push_back(std::move(cyc));
        }
    }
    // Strand consistency at crossings.
    for (int v = 0; v < n_cross; ++v) {
        const auto& s = d.vertex_slots_[v];
        for (int k = 0; k < 2; ++k)
            if (d.tail_[s[k]] == d.tail_[s[k + 2]])
                throw Error(ErrorCode::SyntaxError, "strand direction broken at a crossing");
    }

    d.surface_ = spec.plane ? Surface::plane(spec.outer) : Surface::sphere();
    if (d.surface_.is_plane() && (d.surface_.outer < 0 || d.surface_.outer >= d.face_count()))
        throw Error(ErrorCode::SyntaxError, "outer face index out of range");
    return d;
}

// ---------------------------------------------------------------------------
// PD text parsing
// ---------------------------------------------------------------------------

inline Diagram Diagram::parse(const std::string& text) {
    DiagramSpec spec;
    bool saw_surface = false;
    std::istringstream in(text);
    std::string line;
    auto fail = [&](const std::string& msg) -> void {
        throw Error(ErrorCode::SyntaxError, msg + " in line: " + line);
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            auto int_list = [&](size_t from, size_t to, bool* tick = nullptr) {
                std::vector<int> out;
                std::string cur;
                for (size_t i = from; i < to; ++i) {
                    char c = tok[i];
                    if (c == ',') {
                        if (cur.empty()) fail("empty label");
                        out.push_back(std::stoi(cur));
                        cur.clear();
                    } else if (std::isdigit(static_cast<unsigned char>(c))) {
                        cur.push_back(c);
                    } else if (c == '\'' && tick && out.empty() && !cur.empty()) {
                        *tick = true;
                    } else {
                        fail("bad label character");
                    }
                }
                if (!cur.empty()) out.push_back(std::stoi(cur));
                return out;
            };
            auto close_paren = [&]() {
                auto p = tok.find(')');
                if (p == std::string::npos || p + 1 != tok.size()) fail("missing )");
                return p;
            };
            if (tok.rfind("X(", 0) == 0) {
                auto labels = int_list(2, close_paren());
                if (labels.size() != 4) fail("crossing must list exactly 4 edges");
                std::string over;
                if (!(ls >> over) || over.rfind("over=", 0) != 0) fail("crossing needs over=");
                std::string which = over.substr(5);
                CrossingSpec cs;
                std::copy(labels.begin(), labels.end(), cs.edges.begin());
                if (which == "ac") cs.over_even = true;
                else if (which == "bd") cs.over_even = false;
                else fail("over= must be ac or bd");
                spec.crossings.push_back(cs);
            } else if (tok.rfind("leg(", 0) == 0) {
                auto labels = int_list(4, close_paren());
                if (labels.size() != 1 || spec.leg_edge) fail("bad leg statement");
                spec.leg_edge = labels[0];
            } else if (tok.rfind("head(", 0) == 0) {
                auto labels = int_list(5, close_paren());
                if (labels.size() != 1 || spec.head_edge) fail("bad head statement");
                spec.head_edge = labels[0];
            } else if (tok.rfind("circle(", 0) == 0) {
                bool tick = false;
                auto labels = int_list(7, close_paren(), &tick);
                if (labels.empty())
                    spec.free_loops += 1;
                else
                    spec.circles.push_back(CircleHint{labels, tick});
            } else if (tok == "surface=sphere") {
                if (saw_surface) fail("duplicate surface statement");
                saw_surface = true;
                spec.plane = false;
            } else if (tok == "surface=plane") {
                if (saw_surface) fail("duplicate surface statement");
                saw_surface = true;
                spec.plane = true;
                std::string outer;
                if (!(ls >> outer) || outer.rfind("outer=", 0) != 0)
                    fail("surface=plane needs outer=");
                spec.outer = std::stoi(outer.substr(6));
            } else {
                fail("unknown statement '" + tok + "'");
            }
        }
    }
    return from_spec(spec);
}

// ---------------------------------------------------------------------------
// Spec emission / rendering
// ---------------------------------------------------------------------------

inline DiagramSpec Diagram::to_spec(std::vector<std::pair<int, int>>* half_map) const {
    DiagramSpec spec;
    spec.plane = surface_.is_plane();
    spec.outer = -1;
    if (free_loops_ > 0) {
        spec.free_loops = free_loops_;
        return spec;
    }
    // Labels 1..E: segment edges first in traversal order, then circles.
    std::vector<int> label_of_edge(edge_count(), -1);
    int next = 1;
    std::vector<std::vector<int>> comps;
    if (leg_half_) comps.push_back(segment_halves_);
    for (const auto& c : circle_halves_) comps.push_back(c);
    for (const auto& comp : comps)
        for (int g : comp)
            if (label_of_edge[edge_of(g)] == -1) label_of_edge[edge_of(g)] = next++;
    // Crossings in order of first visit along the components.
    std::vector<int> cross_order;
    {
        std::vector<uint8_t> seenv(vertex_count(), 0);
        for (const auto& comp : comps)
            for (int g : comp) {
                int v = vertex_of_[twin(g)];
                if (vertex_kind_[v] == VertexKind::Crossing && !seenv[v]) {
                    seenv[v] = 1;
                    cross_order.push_back(v);
                }
            }
    }
    // Emit; track occurrences.
    if (half_map) half_map->assign(half_count(), {-1, -1});
    std::map<int, int> occ_count;
    auto site = [&](int h) {
        int label = label_of_edge[edge_of(h)];
        int k = occ_count[label]++;
        if (half_map) (*half_map)[h] = {label, k};
        if (tail_[h]) spec.explicit_tails[label] = k;
        return label;
    };
    std::vector<std::vector<int>> emitted_halves;  // crossing -> rotated halves
    for (int v : cross_order) {
        const auto& slots = vertex_slots_[v];
        int best = 0;
        for (int s = 1; s < 4; ++s)
            if (label_of_edge[edge_of(slots[s])] < label_of_edge[edge_of(slots[best])]) best = s;
        CrossingSpec cs;
        for (int s = 0; s < 4; ++s) cs.edges[s] = site(slots[(best + s) % 4]);
        cs.over_even = (best % 2 == 0) ? over_even(v) : !over_even(v);
        spec.crossings.push_back(cs);
    }
    if (leg_half_) {
        spec.leg_edge = site(*leg_half_);
        spec.head_edge = site(*head_half_);
    }
    // Circle hints: rotate each circle to start at an edge whose tail end is
    // occurrence 0 when possible; otherwise use the tick.
    for (const auto& cyc : circle_halves_) {
        // Start the listing at an edge whose tail end is occurrence 0 in the
        // emitted scan (recorded in explicit_tails); fall back to the tick.
        size_t start = 0;
        bool tick = true;
        for (size_t i = 0; i < cyc.size(); ++i) {
            int label = label_of_edge[edge_of(cyc[i])];
            auto it = spec.explicit_tails.find(label);
            if (it != spec.explicit_tails.end() && it->second == 0) {
                start = i;
                tick = false;
                break;
            }
        }
        CircleHint hint;
        for (size_t i = 0; i < cyc.size(); ++i)
            hint.edges.push_back(label_of_edge[edge_of(cyc[(start + i) % cyc.size()])]);
        hint.from_second_occurrence = tick;
        spec.circles.push_back(std::move(hint));
    }
    return spec;
}

inline std::string spec_to_text(const DiagramSpec& spec) {
    std::ostringstream out;
    if (spec.plane)
        out << "surface=plane outer=" << spec.outer << "\n";
    else
        out << "surface=sphere\n";
    for (int i = 0; i < spec.free_loops; ++i) out << "circle()\n";
    for (const auto& c : spec.crossings)
        out << "X(" << c.edges[0] << "," << c.edges[1] << "," << c.edges[2] << "," << c.edges[3]
            << ") over=" << (c.over_even ? "ac" : "bd") << "\n";
    if (spec.leg_edge) out << "leg(" << *spec.leg_edge << ")\n";
    if (spec.head_edge) out << "head(" << *spec.head_edge << ")\n";
    for (const auto& circle : spec.circles) {
        out << "circle(";
        for (size_t i = 0; i < circle.edges.size(); ++i) {
            out << (i ? "," : "") << circle.edges[i];
            if (i == 0 && circle.from_second_occurrence) out << '\'';
        }
        out << ")\n";
    }
    return out.str();
}

inline std::string Diagram::render() const {
    std::vector<std::pair<int, int>> half_map;
    DiagramSpec spec = to_spec(&half_map);
    spec.explicit_tails.clear();  // the text grammar carries orientation itself
    if (free_loops_ > 0) return spec_to_text(spec);
    if (surface_.is_plane()) {
        DiagramSpec probe = to_spec(nullptr);
        probe.plane = false;
        Diagram re = from_spec(probe);
        int h_star = faces_[surface_.outer].front();
        auto [label, occ] = half_map[h_star];
        spec.outer = re.face_of_[spec_half_of(probe, label, occ)];
    }
    return spec_to_text(spec);
}

// ---------------------------------------------------------------------------
// Canonical codes
// ---------------------------------------------------------------------------

inline std::string Diagram::canonical_code() const {
    if (free_loops_ > 0) {
        std::string s = "O" + std::to_string(free_loops_);
        if (surface_.is_plane()) s += "P";
        return s;
    }
    const int n = half_count();
    std::string best;
    std::vector<int> label(n);
    std::vector<int> order;
    order.reserve(n);
    for (int root = 0; root < n; ++root) {
        std::fill(label.begin(), label.end(), -1);
        order.clear();
        label[root] = 0;
        order.push_back(root);
        for (size_t i = 0; i < order.size(); ++i) {
            int h = order[i];
            for (int g : {twin(h), next_ccw_[h]})
                if (label[g] == -1) {
                    label[g] = static_cast<int>(order.size());
                    order.push_back(g);
                }
        }
        std::string code;
        code.reserve(n * 8);
        for (int i = 0; i < n; ++i) {
            int h = order[i];
            int v = vertex_of_[h];
            char kind = 'X';
            if (vertex_kind_[v] == VertexKind::Leg) kind = 'L';
            if (vertex_kind_[v] == VertexKind::Head) kind = 'H';
            int flags = (tail_[h] ? 1 : 0);
            if (vertex_kind_[v] == VertexKind::Crossing && is_over(h)) flags |= 2;
            if (surface_.is_plane() && face_of_[h] == surface_.outer) flags |= 4;
            code.push_back(kind);
            code.push_back(static_cast<char>('a' + flags));
            code += std::to_string(label[twin(h)]);
            code.push_back(',');
            code += std::to_string(label[next_ccw_[h]]);
            code.push_back(';');
        }
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Involutions
// ---------------------------------------------------------------------------

inline Diagram Diagram::reversed() const {
    Diagram d = *this;
    if (free_loops_ > 0) return d;
    for (auto& t : d.tail_) t ^= 1;
    if (leg_half_) {
        std::swap(d.leg_half_, d.head_half_);
        for (auto& k : d.vertex_kind_) {
            if (k == VertexKind::Leg) k = VertexKind::Head;
            else if (k == VertexKind::Head) k = VertexKind::Leg;
        }
        std::reverse(d.segment_halves_.begin(), d.segment_halves_.end());
        for (auto& g : d.segment_halves_) g = twin(g);
    }
    for (auto& cyc : d.circle_halves_) {
        std::reverse(cyc.begin(), cyc.end());
        for (auto& g : cyc) g = twin(g);
    }
    return d;
}

inline Diagram Diagram::mirrored() const {
    Diagram d = *this;
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_kind_[v] == VertexKind::Crossing) d.over_even_[v] ^= 1;
    return d;
}

inline Diagram Diagram::symmetric() const {
    if (free_loops_ > 0) return *this;
    // Reverse every rotation, keep over/under and orientations. The planar
    // outer region ends up to the left of the old boundary halves' twins.
    Diagram d = *this;
    for (int v = 0; v < vertex_count(); ++v) {
        auto& slots = d.vertex_slots_[v];
        std::reverse(slots.begin(), slots.end());
        int deg = static_cast<int>(slots.size());
        for (int s = 0; s < deg; ++s) {
            d.slot_of_[slots[s]] = s;
            d.next_ccw_[slots[s]] = slots[(s + 1) % deg];
        }
        for (int s = 0; s < deg; ++s) d.prev_ccw_[d.next_ccw_[slots[s]]] = slots[s];
        if (vertex_kind_[v] == VertexKind::Crossing) d.over_even_[v] ^= 1;  // slots reversed
    }
    d.trace_faces();
    if (surface_.is_plane()) {
        int h_star = faces_[surface_.outer].front();
        d.surface_.outer = d.face_of_[twin(h_star)];
    }
    return d;
}

// ---------------------------------------------------------------------------
// Writhe / shortcut / smoothing / alternation
// ---------------------------------------------------------------------------

inline int Diagram::crossing_sign(int v) const {
    const auto& s = vertex_slots_[v];
    int over_a = over_even_[v] ? 0 : 1;
    int exit_over = tail_[s[over_a]] ? over_a : over_a + 2;
    int under_a = over_even_[v] ? 1 : 0;
    int exit_under = tail_[s[under_a]] ? under_a : under_a + 2;
    return ((exit_over + 1) % 4 == exit_under % 4) ? 1 : -1;
}

inline long Diagram::writhe() const {
    long w = 0;
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_kind_[v] == VertexKind::Crossing) w += crossing_sign(v);
    return w;
}

inline ShortcutPath Diagram::shortcut() const {
    if (is_closed()) throw Error(ErrorCode::NotKnotoid, "closed diagrams have no shortcut");
    ShortcutPath path;
    int from = leg_face(), to = head_face();
    if (from == to) return path;
    // Shortest dual path; deterministic tie-break by face id then edge id.
    int F = face_count();
    std::vector<int> dist(F, -1), par_face(F, -1), par_half(F, -1);
    dist[from] = 0;
    std::vector<int> frontier = {from};
    while (!frontier.empty() && dist[to] == -1) {
        std::sort(frontier.begin(), frontier.end());
        std::vector<int> nf;
        for (int f : frontier) {
            std::vector<std::pair<int, int>> exits;  // (edge, half on f side)
            for (int h : faces_[f]) exits.push_back({edge_of(h), h});
            std::sort(exits.begin(), exits.end());
            for (auto [e, h] : exits) {
                int g = face_of_[twin(h)];
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
    if (dist[to] == -1)
        throw Error(ErrorCode::DisconnectedSegment, "no dual path from leg to head");
    std::vector<int> halves;
    for (int f = to; f != from; f = par_face[f]) halves.push_back(par_half[f]);
    std::reverse(halves.begin(), halves.end());
    path.halves = std::move(halves);
    return path;
}

inline bool Diagram::is_valid_shortcut(const ShortcutPath& p) const {
    int cur = leg_face();
    for (int h : p.halves) {
        if (h < 0 || h >= half_count()) return false;
        if (face_of_[h] != cur) return false;
        cur = face_of_[twin(h)];
    }
    return cur == head_face();
}

inline int Diagram::oriented_smoothing_components() const {
    if (free_loops_ > 0) return free_loops_;
    std::vector<int> pair_of(half_count(), -1);
    for (int v = 0; v < vertex_count(); ++v) {
        if (vertex_kind_[v] != VertexKind::Crossing) continue;
        const auto& s = vertex_slots_[v];
        for (int a = 0; a < 4; ++a) {
            if (tail_[s[a]]) continue;  // want inflows
            int left = s[(a + 1) % 4], right = s[(a + 3) % 4];
            pair_of[s[a]] = tail_[left] ? left : right;
        }
    }
    int comps = 0;
    std::vector<uint8_t> seen(half_count(), 0);
    auto trace_from = [&](int g0) {
        int g = g0;
        while (!seen[g]) {
            seen[g] = 1;
            seen[twin(g)] = 1;
            int arriving = twin(g);
            if (vertex_kind_[vertex_of_[arriving]] != VertexKind::Crossing) break;
            g = pair_of[arriving];
        }
    };
    if (leg_half_) {
        ++comps;
        trace_from(*leg_half_);
    }
    for (int e = 0; e < edge_count(); ++e) {
        int g = tail_half_of_edge(e);
        if (!seen[g]) {
            ++comps;
            trace_from(g);
        }
    }
    return comps;
}

inline std::vector<bool> Diagram::segment_visit_pattern() const {
    if (is_closed()) throw Error(ErrorCode::NotKnotoid, "need a segment");
    std::vector<bool> pattern;
    for (int g : segment_halves_) {
        int arriving = twin(g);
        if (vertex_kind_[vertex_of_[arriving]] == VertexKind::Crossing)
            pattern.push_back(is_over(arriving));
    }
    return pattern;
}

inline bool Diagram::is_alternating() const {
    auto p = segment_visit_pattern();
    for (size_t i = 1; i < p.size(); ++i)
        if (p[i] == p[i - 1]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Closures
// ---------------------------------------------------------------------------

inline Diagram Diagram::closure(bool over) const {
    if (is_closed()) throw Error(ErrorCode::NotKnotoid, "already closed");
    if (!circle_halves_.empty())
        throw Error(ErrorCode::NotKnotoid, "closure requires a single-segment diagram");
    ShortcutPath path = shortcut();
    int k = static_cast<int>(path.length());
    if (k == 0 && segment_halves_.size() == 1) return free_loop_diagram(1, Surface::sphere());

    // Labels: old edge e -> e+1. A cut edge splits into a tail-side and a
    // head-side piece. The shortest dual path is simple, so each edge is
    // crossed at most once and never touches the endpoints' edges.
    DiagramSpec spec;
    int next_label = edge_count() + 1;
    std::map<int, std::pair<int, int>> split;  // edge -> (tail piece, head piece)
    for (int h : path.halves) {
        int e = edge_of(h);
        if (split.count(e))
            throw Error(ErrorCode::BadArgument, "shortcut crosses an edge twice");
        split[e] = {next_label, next_label + 1};
        next_label += 2;
    }
    int leg_e = edge_of(*leg_half_), head_e = edge_of(*head_half_);
    if (split.count(leg_e) || split.count(head_e))
        throw Error(ErrorCode::BadArgument, "shortcut crosses an endpoint edge");
    // Arc pieces: arc[i] joins new crossing i-1 to i; arc[0] merges with the
    // leg edge and arc[k] with the head edge.
    std::vector<int> arcL(k + 1);
    for (int i = 0; i <= k; ++i) {
        if (i == 0) arcL[i] = leg_e + 1;
        else if (i == k) arcL[i] = head_e + 1;
        else arcL[i] = next_label++;
    }
    if (k == 0) arcL[0] = leg_e + 1;  // single merged circle edge

    auto label_at = [&](int h) -> int {
        int e = edge_of(h);
        auto it = split.find(e);
        if (it == split.end()) {
            // k == 0 merge: the head edge takes the leg edge's label
            if (k == 0 && e == head_e) return leg_e + 1;
            return e + 1;
        }
        return tail_[h] ? it->second.first : it->second.second;
    };

    // Sites in from_spec scan order; record tails as we emit.
    std::map<int, int> occ;
    std::map<int, int> tails;
    auto site = [&](int label, bool is_tail) {
        int o = occ[label]++;
        if (is_tail) tails[label] = o;
        return label;
    };
    for (int v = 0; v < vertex_count(); ++v) {
        if (vertex_kind_[v] != VertexKind::Crossing) continue;
        CrossingSpec cs;
        for (int s = 0; s < 4; ++s) {
            int h = vertex_slots_[v][s];
            cs.edges[s] = site(label_at(h), tail_[h]);
        }
        cs.over_even = over_even_[v] != 0;
        spec.crossings.push_back(cs);
    }
    // New crossings along the path. With h pointing away from vertex_of[h]
    // ("north") the path crosses west -> east; the closure arc is oriented
    // head -> leg, i.e. east -> west here. CCW slots (E, N, W, S):
    //   E = arc[i+1] (arrives), N = piece away from vertex_of[h],
    //   W = arc[i] (leaves),    S = piece at vertex_of[h].
    for (int i = 0; i < k; ++i) {
        int h = path.halves[i];
        int e = edge_of(h);
        auto [piece_tail, piece_head] = split[e];
        int lower = tail_[h] ? piece_tail : piece_head;   // vertex_of[h] side
        int upper = tail_[h] ? piece_head : piece_tail;
        CrossingSpec cs;
        cs.edges[0] = site(arcL[i + 1], false);
        cs.edges[1] = site(upper, tail_[h]);
        cs.edges[2] = site(arcL[i], true);
        cs.edges[3] = site(lower, !tail_[h]);
        cs.over_even = over;  // even pair = the arc
        spec.crossings.push_back(cs);
    }
    spec.explicit_tails = tails;
    // Closures are knot diagrams; bracket-level invariants ignore the outer
    // face, so the result lives on the sphere.
    spec.plane = false;
    return from_spec(spec);
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

inline Diagram product(const Diagram& d1, const Diagram& d2) {
    if (d1.surface().kind != d2.surface().kind)
        throw Error(ErrorCode::IncompatibleSurfaces, "product needs matching surfaces");
    if (d1.is_closed() || d2.is_closed() || d1.is_free_loops_only() || d2.is_free_loops_only())
        throw Error(ErrorCode::NotKnotoid, "product needs knotoid diagrams");
    if (!d1.circle_halves().empty() || !d2.circle_halves().empty())
        throw Error(ErrorCode::NotKnotoid, "product needs single-segment diagrams");
    if (d1.surface().is_plane()) {
        if (d1.leg_face() != d1.surface().outer || d2.leg_face() != d2.surface().outer)
            throw Error(ErrorCode::NotNormal, "plane product needs normal diagrams");
    }
    if (d1.crossing_count() == 0) return d2;
    if (d2.crossing_count() == 0) return d1;

    // d1 edges keep labels e+1; d2 edges get e+1+offset. The head edge of d1
    // and the leg edge of d2 merge into one (the segment is re-traced by the
    // builder, so no explicit tails are needed).
    int offset = d1.edge_count();
    int head1 = Diagram::edge_of(d1.head_half()) + 1;
    int leg2 = Diagram::edge_of(d2.leg_half()) + 1 + offset;
    DiagramSpec spec;
    for (int v = 0; v < d1.vertex_count(); ++v) {
        if (d1.kind(v) != VertexKind::Crossing) continue;
        CrossingSpec cs;
        for (int s = 0; s < 4; ++s) cs.edges[s] = Diagram::edge_of(d1.vertex_halves(v)[s]) + 1;
        cs.over_even = d1.over_even(v);
        spec.crossings.push_back(cs);
    }
    for (int v = 0; v < d2.vertex_count(); ++v) {
        if (d2.kind(v) != VertexKind::Crossing) continue;
        CrossingSpec cs;
        for (int s = 0; s < 4; ++s) {
            int label = Diagram::edge_of(d2.vertex_halves(v)[s]) + 1 + offset;
            cs.edges[s] = (label == leg2) ? head1 : label;
        }
        cs.over_even = d2.over_even(v);
        spec.crossings.push_back(cs);
    }
    spec.leg_edge = Diagram::edge_of(d1.leg_half()) + 1;
    spec.head_edge = Diagram::edge_of(d2.head_half()) + 1 + offset;
    spec.plane = false;
    Diagram out = Diagram::from_spec(spec);
    if (d1.surface().is_plane())
        out = out.with_surface(Surface::plane(out.face(out.leg_half())));
    return out;
}

}  // namespace knotoid
