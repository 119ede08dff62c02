#pragma once

#include <optional>
#include <string>

#include "knotoid/diagram.hpp"
#include "knotoid/poly.hpp"
#include "knotoid/resolve.hpp"
#include "knotoid/surgery.hpp"

namespace knotoid {

enum class Purity { Pure, KnotLike, Unknown };

inline const char* purity_name(Purity p) {
    switch (p) {
        case Purity::Pure: return "Pure";
        case Purity::KnotLike: return "KnotLike";
        case Purity::Unknown: return "Unknown";
    }
    return "?";
}

// Exact rational; genus bounds are half-integers whose parity makes them
// integral (asserted at computation time).
struct Rational {
    long num = 0;
    long den = 1;
    bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

// Raw bracket state sum: sum over states of A^sigma * (-A^2-A^-2)^(|s|-1).
inline LaurentPoly bracket(const Diagram& d, bool allow_large = false) {
    if (d.is_free_loops_only()) return loop_value().pow(d.free_loops() - 1);
    check_state_space(d, allow_large);
    Resolver res(d);
    ShortcutPath none;
    LaurentPoly delta = loop_value();
    LaurentPoly sum;
    res.for_each_state(none, [&](uint64_t, const Resolution& r) {
        sum += poly_A(static_cast<int>(r.sigma)) * delta.pow(r.component_count - 1);
    });
    return sum;
}

// (-A^3)^(-w) * bracket; invariant under all three Reidemeister moves.
inline LaurentPoly normalized_bracket(const Diagram& d, bool allow_large = false) {
    return neg_A_cubed_power(-d.writhe()) * bracket(d, allow_large);
}

// Two-variable refinement with the given shortcut (exact sum over states of
// A^sigma u^(k_s.a) delta^(|s|-1), times (-A^3)^(-w) u^(-K.a)).
inline LaurentPoly extended_bracket_with_path(const Diagram& d, const ShortcutPath& a,
                                              bool allow_large = false) {
    if (d.is_closed()) throw Error(ErrorCode::NotKnotoid, "extended bracket needs a segment");
    if (!d.is_valid_shortcut(a))
        throw Error(ErrorCode::BadArgument, "invalid shortcut path");
    check_state_space(d, allow_large);
    Resolver res(d);
    LaurentPoly delta = loop_value();
    LaurentPoly sum;
    res.for_each_state(a, [&](uint64_t, const Resolution& r) {
        sum += poly_A(static_cast<int>(r.sigma)) *
               poly_u(static_cast<int>(r.segment_shortcut)) * delta.pow(r.component_count - 1);
    });
    long ka = res.diagram_shortcut(a);
    return neg_A_cubed_power(-d.writhe()) * poly_u(static_cast<int>(-ka)) * sum;
}

inline LaurentPoly extended_bracket(const Diagram& d, bool allow_large = false) {
    return extended_bracket_with_path(d, d.shortcut(), allow_large);
}

// Three-variable refinement for diagrams in the plane: circles that enclose
// the segment weigh v, the others weigh the loop value.
inline LaurentPoly planar_bracket(const Diagram& d, bool allow_large = false) {
    if (!d.surface().is_plane())
        throw Error(ErrorCode::NotPlanar, "planar bracket needs surface=plane");
    if (d.is_closed()) throw Error(ErrorCode::NotKnotoid, "planar bracket needs a segment");
    check_state_space(d, allow_large);
    Resolver res(d);
    ShortcutPath a = d.shortcut();
    LaurentPoly delta = loop_value();
    LaurentPoly sum;
    res.for_each_state(a, [&](uint64_t, const Resolution& r) {
        sum += poly_A(static_cast<int>(r.sigma)) *
               poly_u(static_cast<int>(r.segment_shortcut)) * delta.pow(r.p) * poly_v(r.q);
    });
    long ka = res.diagram_shortcut(a);
    return neg_A_cubed_power(-d.writhe()) * poly_u(static_cast<int>(-ka)) * sum;
}

struct Spans {
    std::optional<long> spn;    // A-span of the bracket
    std::optional<long> spn_A;  // A-span of the extended bracket
    std::optional<long> spn_u;  // u-span of the extended bracket
};

inline Spans spans(const Diagram& d, bool allow_large = false) {
    Spans s;
    s.spn = bracket(d, allow_large).span(Var::A);
    LaurentPoly ext = extended_bracket(d, allow_large);
    s.spn_A = ext.span(Var::A);
    s.spn_u = ext.span(Var::U);
    return s;
}

// Length of the minimal dual shortcut: exact for this diagram, an upper
// bound for the underlying knotoid (the matching lower bound is spn_u / 2).
inline int complexity_of_diagram(const Diagram& d) {
    return static_cast<int>(d.shortcut().length());
}

inline Purity purity_certificate(const Diagram& d, bool allow_large = false) {
    auto su = spans(d, allow_large).spn_u;
    if (su && *su >= 2) return Purity::Pure;
    if (complexity_of_diagram(d) == 0) return Purity::KnotLike;
    return Purity::Unknown;
}

// Genus bound (cr - |smoothed components| + 1) / 2 from the Seifert-style
// surface built over the oriented smoothing.
inline Rational genus_bound(const Diagram& d) {
    long cr = d.crossing_count();
    long comps = d.oriented_smoothing_components();
    long num = cr - comps + 1;
    if (num % 2 != 0)
        throw Error(ErrorCode::BadArgument,
                    "genus bound parity violated; diagram orientation is inconsistent");
    return Rational{num / 2, 1};
}

// Exact check of -A^4 <<K+>> + A^-4 <<K->> = (A^2 - A^-2) <<K0>>.
// The triple must agree outside one site: K+ and K- differ by one crossing
// switch and K0 is the oriented smoothing there.
inline bool verify_conway_triple(const Diagram& dp, const Diagram& dm, const Diagram& dz);

inline bool skein_check(const Diagram& dp, const Diagram& dm, const Diagram& dz,
                        bool allow_large = false) {
    if (!verify_conway_triple(dp, dm, dz))
        throw Error(ErrorCode::NotAConwayTriple,
                    "diagrams do not form a positive/negative/smoothed triple");
    LaurentPoly lhs = -poly_A(4) * extended_bracket(dp, allow_large) +
                      poly_A(-4) * extended_bracket(dm, allow_large);
    LaurentPoly rhs = (poly_A(2) - poly_A(-2)) * extended_bracket(dz, allow_large);
    return lhs == rhs;
}

struct InvariantReport {
    long writhe = 0;
    int crossings = 0;
    LaurentPoly bracket;          // for the given diagram (not mod -A^3 powers)
    LaurentPoly normalized_bracket;
    LaurentPoly extended_bracket;
    std::optional<LaurentPoly> planar_bracket;  // Plane only
    Spans spans;
    int complexity_of_diagram = 0;
    Rational genus_bound;
    int smoothed_components = 0;
    bool alternating = false;
    Purity purity = Purity::Unknown;
};

inline InvariantReport invariant_report(const Diagram& d, bool allow_large = false) {
    InvariantReport rep;
    rep.writhe = d.writhe();
    rep.crossings = d.crossing_count();
    rep.bracket = bracket(d, allow_large);
    rep.normalized_bracket = neg_A_cubed_power(-rep.writhe) * rep.bracket;
    rep.extended_bracket = extended_bracket(d, allow_large);
    if (d.surface().is_plane()) rep.planar_bracket = planar_bracket(d, allow_large);
    rep.spans.spn = rep.bracket.span(Var::A);
    rep.spans.spn_A = rep.extended_bracket.span(Var::A);
    rep.spans.spn_u = rep.extended_bracket.span(Var::U);
    rep.complexity_of_diagram = complexity_of_diagram(d);
    rep.genus_bound = genus_bound(d);
    rep.smoothed_components = d.oriented_smoothing_components();
    rep.alternating = d.is_alternating();
    if (rep.spans.spn_u && *rep.spans.spn_u >= 2)
        rep.purity = Purity::Pure;
    else if (rep.complexity_of_diagram == 0)
        rep.purity = Purity::KnotLike;
    return rep;
}

// ---------------------------------------------------------------------------
// Conway triple verification
// ---------------------------------------------------------------------------

inline bool verify_conway_triple(const Diagram& dp, const Diagram& dm, const Diagram& dz) {
    if (dp.crossing_count() != dm.crossing_count()) return false;
    if (dz.crossing_count() + 1 != dp.crossing_count()) return false;
    // Some positive crossing of dp switches to give dm and smooths to give dz.
    std::string code_m = dm.canonical_code();
    std::string code_z = dz.canonical_code();
    for (int v = 0; v < dp.vertex_count(); ++v) {
        if (dp.kind(v) != VertexKind::Crossing || dp.crossing_sign(v) != 1) continue;
        try {
            if (surgery::flip_crossing(dp, v).canonical_code() != code_m) continue;
            if (surgery::smooth_crossing_oriented(dp, v).canonical_code() == code_z) return true;
        } catch (const Error&) {
            continue;
        }
    }
    return false;
}

}  // namespace knotoid
