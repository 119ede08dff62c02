#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "knotoid/diagram.hpp"

using namespace knotoid;

namespace {

const char* kTrivial = "leg(1) head(1) surface=sphere";

// Two-crossing diagram with normalized bracket A^4 + A^6 - A^10 (writhe -2),
// built by cutting one underpass out of the 3-crossing negative trefoil.
const char* kPhiS2 =
    "X(2,4,3,1) over=ac\n"
    "X(5,2,1,4) over=ac\n"
    "leg(5) head(3)\n"
    "surface=sphere\n";

// The same curve cut from the full negative trefoil along the other closure
// arc: a 3-crossing knot-type diagram (alternating).
const char* kCutTrefoil =
    "X(6,4,3,1) over=ac\n"
    "X(4,7,5,3) over=ac\n"
    "X(7,2,1,5) over=ac\n"
    "leg(6) head(2)\n"
    "surface=sphere\n";

// One-crossing curl; on the sphere it is a trivially curled arc.
const char* kUnifoilS2 =
    "X(1,2,2,3) over=bd\n"
    "leg(1) head(3)\n"
    "surface=sphere\n";

std::string relabel(const std::string& pd, const std::map<int, int>& m) {
    std::string out;
    for (size_t i = 0; i < pd.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(pd[i]))) {
            size_t j = i;
            while (j < pd.size() && std::isdigit(static_cast<unsigned char>(pd[j]))) ++j;
            int v = std::stoi(pd.substr(i, j - i));
            auto it = m.find(v);
            out += std::to_string(it == m.end() ? v : it->second);
            i = j - 1;
        } else {
            out.push_back(pd[i]);
        }
    }
    return out;
}

// Independent map-isomorphism oracle: propagate a half-edge bijection from a
// chosen root correspondence and check it respects twin, rotation and tags.
bool brute_isomorphic(const Diagram& a, const Diagram& b) {
    if (a.half_count() != b.half_count()) return false;
    if (a.surface().kind != b.surface().kind) return false;
    int n = a.half_count();
    auto tag = [](const Diagram& d, int h) {
        int v = d.vertex(h);
        int t = d.tail(h) ? 1 : 0;
        if (d.kind(v) == VertexKind::Crossing && d.is_over(h)) t |= 2;
        if (d.kind(v) == VertexKind::Leg) t |= 4;
        if (d.kind(v) == VertexKind::Head) t |= 8;
        if (d.surface().is_plane() && d.face(h) == d.surface().outer) t |= 16;
        return t;
    };
    for (int root = 0; root < n; ++root) {
        std::vector<int> img(n, -1);
        img[0] = root;
        bool ok = true;
        std::vector<int> order = {0};
        for (size_t i = 0; i < order.size() && ok; ++i) {
            int h = order[i];
            int pairs[2][2] = {{Diagram::twin(h), Diagram::twin(img[h])},
                               {a.next_ccw(h), b.next_ccw(img[h])}};
            for (auto& pr : pairs) {
                if (img[pr[0]] == -1) {
                    img[pr[0]] = pr[1];
                    order.push_back(pr[0]);
                } else if (img[pr[0]] != pr[1]) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        for (int h = 0; h < n && ok; ++h)
            if (tag(a, h) != tag(b, img[h])) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("trivial diagram parses with one face") {
    Diagram d = Diagram::parse(kTrivial);
    CHECK(d.crossing_count() == 0);
    CHECK(d.edge_count() == 1);
    CHECK(d.face_count() == 1);
    CHECK(d.writhe() == 0);
    CHECK(d.shortcut().length() == 0);
    CHECK(d.is_alternating());
}

TEST_CASE("phi diagram has the hand-computed map data") {
    Diagram d = Diagram::parse(kPhiS2);
    CHECK(d.vertex_count() == 4);
    CHECK(d.edge_count() == 5);
    CHECK(d.face_count() == 3);  // Euler: 4 - 5 + 3 = 2
    CHECK(d.writhe() == -2);
    CHECK(d.shortcut().length() == 1);
    CHECK_FALSE(d.is_alternating());
    // visit pattern from the leg: over, under, under, over
    auto p = d.segment_visit_pattern();
    REQUIRE(p.size() == 4);
    CHECK(p[0]);
    CHECK_FALSE(p[1]);
    CHECK_FALSE(p[2]);
    CHECK(p[3]);
}

TEST_CASE("cut trefoil is alternating with writhe -3") {
    Diagram d = Diagram::parse(kCutTrefoil);
    CHECK(d.crossing_count() == 3);
    CHECK(d.writhe() == -3);
    CHECK(d.is_alternating());
    CHECK(d.shortcut().length() == 0);
    CHECK(d.oriented_smoothing_components() == 2);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Diagram::parse("X(1,2,3) over=ac leg(1) head(2)"), Error);
    CHECK_THROWS_AS(Diagram::parse("leg(1) leg(1)"), Error);
    CHECK_THROWS_AS(Diagram::parse("leg(1) circle(1)"), Error);
    // torus map: two crossings joined by four parallel edges with aligned
    // rotations fails the Euler check
    try {
        Diagram::parse("X(1,2,3,4) over=ac\nX(1,2,3,4) over=ac\ncircle(1,3)\ncircle(2,4)\n");
        FAIL("expected NonPlanar");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPlanar);
    }
    // circle without orientation statement
    try {
        Diagram::parse("X(1,1,2,2) over=ac");
        FAIL("expected MissingOrientation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingOrientation);
    }
}

TEST_CASE("canonical codes are relabeling-invariant and chirality-sensitive") {
    Diagram d = Diagram::parse(kPhiS2);
    Diagram e = Diagram::parse(relabel(kPhiS2, {{1, 9}, {2, 8}, {3, 7}, {4, 6}, {5, 5}}));
    CHECK(d.canonical_code() == e.canonical_code());
    CHECK(brute_isomorphic(d, e));
    Diagram m = d.mirrored();
    CHECK(d.canonical_code() != m.canonical_code());
    CHECK_FALSE(brute_isomorphic(d, m));
    Diagram s = d.symmetric();
    CHECK(d.canonical_code() != s.canonical_code());
}

TEST_CASE("involutions behave as involutions") {
    for (const char* pd : {kPhiS2, kCutTrefoil, kUnifoilS2}) {
        Diagram d = Diagram::parse(pd);
        CHECK(d.reversed().reversed().canonical_code() == d.canonical_code());
        CHECK(d.mirrored().mirrored().canonical_code() == d.canonical_code());
        CHECK(d.symmetric().symmetric().canonical_code() == d.canonical_code());
        CHECK(d.mirrored().writhe() == -d.writhe());
        CHECK(d.reversed().writhe() == d.writhe());
        CHECK(d.symmetric().writhe() == -d.writhe());
    }
}

TEST_CASE("render round-trips through parse on canonical codes") {
    for (const char* pd : {kTrivial, kPhiS2, kCutTrefoil, kUnifoilS2}) {
        Diagram d = Diagram::parse(pd);
        Diagram r = Diagram::parse(d.render());
        CHECK(r.canonical_code() == d.canonical_code());
    }
    // plane surfaces keep their outer face through the round trip
    Diagram u = Diagram::parse(kUnifoilS2);
    for (int f = 0; f < u.face_count(); ++f) {
        Diagram p = u.with_surface(Surface::plane(f));
        Diagram r = Diagram::parse(p.render());
        CHECK(r.canonical_code() == p.canonical_code());
    }
}

TEST_CASE("product concatenates diagrams") {
    Diagram triv = Diagram::parse(kTrivial);
    Diagram phi = Diagram::parse(kPhiS2);
    CHECK(product(triv, phi).canonical_code() == phi.canonical_code());
    CHECK(product(phi, triv).canonical_code() == phi.canonical_code());
    Diagram pp = product(phi, phi.mirrored());
    CHECK(pp.crossing_count() == 4);
    CHECK(pp.writhe() == 0);
    Diagram cut = Diagram::parse(kCutTrefoil);
    Diagram ab_c = product(product(phi, cut), phi.mirrored());
    Diagram a_bc = product(phi, product(cut, phi.mirrored()));
    CHECK(ab_c.canonical_code() == a_bc.canonical_code());
}

TEST_CASE("closure crossing counts") {
    Diagram triv = Diagram::parse(kTrivial);
    Diagram c = triv.closure_under();
    CHECK(c.is_free_loops_only());
    Diagram phi = Diagram::parse(kPhiS2);
    Diagram cu = phi.closure_under();
    CHECK(cu.is_closed());
    CHECK(cu.crossing_count() == 3);  // cr + shortcut length
    Diagram cut = Diagram::parse(kCutTrefoil);
    CHECK(cut.closure_under().crossing_count() == 3);
    CHECK(cut.closure_over().crossing_count() == 3);
}

TEST_CASE("shortcut validity helper") {
    Diagram phi = Diagram::parse(kPhiS2);
    auto sp = phi.shortcut();
    CHECK(phi.is_valid_shortcut(sp));
    ShortcutPath empty;
    CHECK_FALSE(phi.is_valid_shortcut(empty));  // leg and head faces differ
}
