#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "knotoid/diagram.hpp"
#include "knotoid/resolve.hpp"

using namespace knotoid;

namespace {

const char* kPhiS2 =
    "X(2,4,3,1) over=ac\n"
    "X(5,2,1,4) over=ac\n"
    "leg(5) head(3)\n"
    "surface=sphere\n";

// Brute-force component-count oracle: union-find over edge ends glued by the
// state's re-pairing, independent of the Resolver's trace.
int count_components_oracle(const Diagram& d, const State& s) {
    int n = d.half_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int h = 0; h < n; ++h) unite(h, Diagram::twin(h));
    for (int v = 0; v < d.vertex_count(); ++v) {
        if (d.kind(v) != VertexKind::Crossing) continue;
        const auto& sl = d.vertex_halves(v);
        int i = d.over_even(v) ? 0 : 1;
        if (s.values[v] > 0) {
            unite(sl[i], sl[(i + 3) % 4]);
            unite(sl[i + 2], sl[i + 1]);
        } else {
            unite(sl[i], sl[i + 1]);
            unite(sl[i + 2], sl[(i + 3) % 4]);
        }
    }
    std::set<int> roots;
    for (int h = 0; h < n; ++h) roots.insert(find(h));
    return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("trivial resolution") {
    Diagram d = Diagram::parse("leg(1) head(1)");
    Resolver r(d);
    Resolution res = r.resolve(State{}, d.shortcut());
    CHECK(res.component_count == 1);
    CHECK(res.sigma == 0);
    CHECK(res.segment_shortcut == 0);
}

TEST_CASE("phi state table matches the hand computation") {
    Diagram d = Diagram::parse(kPhiS2);
    Resolver r(d);
    ShortcutPath a = d.shortcut();
    CHECK(r.diagram_shortcut(a) == -1);
    std::multiset<std::tuple<long, int, long>> got;
    r.for_each_state(a, [&](uint64_t, const Resolution& res) {
        got.insert({res.sigma, res.component_count, res.segment_shortcut});
    });
    std::multiset<std::tuple<long, int, long>> want = {
        {2, 2, 1}, {0, 1, 1}, {0, 1, 1}, {-2, 1, -1}};
    CHECK(got == want);
}

TEST_CASE("state space size and partial state errors") {
    Diagram d = Diagram::parse(kPhiS2);
    Resolver r(d);
    int count = 0;
    r.for_each_state(d.shortcut(), [&](uint64_t, const Resolution&) { ++count; });
    CHECK(count == 4);
    State partial;
    partial.values = {1};
    CHECK_THROWS_AS(r.resolve(partial, d.shortcut()), Error);
    State zero;
    zero.values = {0, 1};
    CHECK_THROWS_AS(r.resolve(zero, d.shortcut()), Error);
}

TEST_CASE("component counts agree with the union-find oracle") {
    const char* diagrams[] = {
        kPhiS2,
        "X(6,4,3,1) over=ac X(4,7,5,3) over=ac X(7,2,1,5) over=ac leg(6) head(2)",
        "X(1,2,2,3) over=bd leg(1) head(3)",
    };
    for (const char* pd : diagrams) {
        Diagram d = Diagram::parse(pd);
        Resolver r(d);
        ShortcutPath a = d.shortcut();
        int n = d.crossing_count();
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
            State s = State::from_mask(mask, n);
            CHECK(r.resolve(s, a).component_count == count_components_oracle(d, s));
        }
    }
}

TEST_CASE("all-plus and all-minus states satisfy the component bound") {
    const char* diagrams[] = {
        kPhiS2,
        "X(6,4,3,1) over=ac X(4,7,5,3) over=ac X(7,2,1,5) over=ac leg(6) head(2)",
    };
    for (const char* pd : diagrams) {
        Diagram d = Diagram::parse(pd);
        Resolver r(d);
        ShortcutPath a = d.shortcut();
        int n = d.crossing_count();
        int splus = r.resolve(State::from_mask((uint64_t{1} << n) - 1, n), a).component_count;
        int sminus = r.resolve(State::from_mask(0, n), a).component_count;
        CHECK(splus + sminus <= n + 2);
    }
}

TEST_CASE("planar nesting counts satisfy p+q = |s|-1") {
    Diagram u0 = Diagram::parse("X(1,2,2,3) over=bd leg(1) head(3)");
    for (int f = 0; f < u0.face_count(); ++f) {
        Diagram d = u0.with_surface(Surface::plane(f));
        Resolver r(d);
        ShortcutPath a = d.shortcut();
        r.for_each_state(a, [&](uint64_t, const Resolution& res) {
            CHECK(res.p + res.q == res.component_count - 1);
        });
    }
}

TEST_CASE("state table dump is stable") {
    Diagram d = Diagram::parse(kPhiS2);
    std::string tsv = state_table_tsv(d);
    CHECK(tsv ==
          "state\tsigma\tcomponents\tsegment_shortcut\tp\tq\n"
          "BB\t-2\t1\t-1\t-1\t-1\n"
          "AB\t0\t1\t1\t-1\t-1\n"
          "BA\t0\t1\t1\t-1\t-1\n"
          "AA\t2\t2\t1\t-1\t-1\n");
}

TEST_CASE("large state sums need the override") {
    std::string pd;
    int label = 1;
    for (int i = 0; i < 25; ++i) {
        int a = label, l = label + 1, b = label + 2;
        pd += "X(" + std::to_string(a) + "," + std::to_string(l) + "," + std::to_string(l) +
              "," + std::to_string(b) + ") over=bd\n";
        label += 2;
    }
    pd += "leg(1) head(" + std::to_string(label) + ")\n";
    Diagram d = Diagram::parse(pd);
    CHECK(d.crossing_count() == 25);
    CHECK_THROWS_AS(check_state_space(d, false), Error);
    CHECK_NOTHROW(check_state_space(d, true));
}
