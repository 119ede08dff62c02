#pragma once

#include <json.hpp>

#include "knotoid/group.hpp"
#include "knotoid/invariants.hpp"
#include "knotoid/skein.hpp"

namespace knotoid {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson span_json(const std::optional<long>& s) {
    if (!s) return OrderedJson(nullptr);  // the zero polynomial / -infinity
    return OrderedJson(*s);
}

inline OrderedJson diagram_json(const Diagram& d) {
    OrderedJson j;
    if (d.surface().is_plane())
        j["surface"] = {{"kind", "plane"}, {"outer", d.surface().outer}};
    else
        j["surface"] = {{"kind", "sphere"}};
    j["crossings"] = d.crossing_count();
    j["edges"] = d.edge_count();
    j["faces"] = OrderedJson::array();
    if (d.is_free_loops_only()) {
        j["free_loops"] = d.free_loops();
        return j;
    }
    for (const auto& f : d.faces()) j["faces"].push_back(f);
    OrderedJson halves = OrderedJson::array();
    for (int h = 0; h < d.half_count(); ++h) {
        halves.push_back({{"twin", Diagram::twin(h)},
                          {"vertex", d.vertex(h)},
                          {"next_ccw", d.next_ccw(h)},
                          {"face", d.face(h)},
                          {"tail", d.tail(h)}});
    }
    j["half_edges"] = std::move(halves);
    OrderedJson verts = OrderedJson::array();
    for (int v = 0; v < d.vertex_count(); ++v) {
        OrderedJson jv;
        switch (d.kind(v)) {
            case VertexKind::Crossing:
                jv["kind"] = "crossing";
                jv["halves"] = d.vertex_halves(v);
                jv["over_even"] = d.over_even(v);
                jv["sign"] = d.crossing_sign(v);
                break;
            case VertexKind::Leg:
                jv["kind"] = "leg";
                jv["halves"] = d.vertex_halves(v);
                break;
            case VertexKind::Head:
                jv["kind"] = "head";
                jv["halves"] = d.vertex_halves(v);
                break;
        }
        verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);
    if (!d.is_closed()) {
        ShortcutPath a = d.shortcut();
        OrderedJson steps = OrderedJson::array();
        for (int h : a.halves) {
            int e = Diagram::edge_of(h);
            steps.push_back({{"edge", e},
                             {"from_face", d.face(h)},
                             {"to_face", d.face(Diagram::twin(h))},
                             {"sign", d.tail_half_of_edge(e) == h ? 1 : -1}});
        }
        j["shortcut"] = {{"length", a.length()}, {"steps", std::move(steps)}};
    }
    j["pd"] = d.render();
    return j;
}

inline OrderedJson report_json(const Diagram& d, const InvariantReport& rep) {
    OrderedJson j;
    j["crossings"] = rep.crossings;
    j["writhe"] = rep.writhe;
    j["bracket"] = rep.bracket.to_string();
    j["normalized_bracket"] = rep.normalized_bracket.to_string();
    j["extended_bracket"] = rep.extended_bracket.to_string();
    if (rep.planar_bracket)
        j["planar_bracket"] = rep.planar_bracket->to_string();
    else
        j["planar_bracket"] = nullptr;
    j["spn"] = span_json(rep.spans.spn);
    j["spn_A"] = span_json(rep.spans.spn_A);
    j["spn_u"] = span_json(rep.spans.spn_u);
    j["complexity_of_diagram"] = rep.complexity_of_diagram;
    j["genus_bound"] = rep.genus_bound.str();
    j["smoothed_components"] = rep.smoothed_components;
    j["alternating"] = rep.alternating;
    j["purity"] = purity_name(rep.purity);
    (void)d;
    return j;
}

inline OrderedJson annulus_json(const AnnulusElement& e) {
    OrderedJson terms = OrderedJson::array();
    for (const auto& [m, c] : e.terms()) {
        terms.push_back({{"generators", m}, {"coefficient", c.to_string()}});
    }
    OrderedJson j;
    j["terms"] = std::move(terms);
    j["text"] = e.to_string();
    return j;
}

inline OrderedJson presentation_json(const Presentation& p) {
    OrderedJson rel = OrderedJson::array();
    for (const auto& r : p.relators)
        rel.push_back({{"out", r.out}, {"over", r.over}, {"in", r.in}, {"sign", r.sign}});
    OrderedJson j;
    j["generators"] = p.generators;
    j["relators"] = std::move(rel);
    return j;
}

}  // namespace knotoid
