#include <catch2/catch_amalgamated.hpp>

#include "knotoid/group.hpp"
#include "knotoid/invariants.hpp"

using namespace knotoid;

namespace {
const char* kPhiS2 =
    "X(2,4,3,1) over=ac X(5,2,1,4) over=ac leg(5) head(3) surface=sphere";
const char* kCutTrefoil =
    "X(6,4,3,1) over=ac X(4,7,5,3) over=ac X(7,2,1,5) over=ac leg(6) head(2)";
const char* kUnifoil = "X(1,2,2,3) over=bd leg(1) head(3)";

bool abelianization_is_Z(const Presentation& p) {
    auto diag = smith_normal_form(abelianization_matrix(p));
    int rank = 0;
    for (const auto& d : diag)
        if (d != 0) {
            if (d != 1) return false;
            ++rank;
        }
    return p.generators - rank == 1;
}
}  // namespace

TEST_CASE("trivial knotoid group is Z") {
    Presentation p = wirtinger(Diagram::parse("leg(1) head(1)"));
    CHECK(p.generators == 1);
    CHECK(p.relators.empty());
    CHECK(count_colorings(p, 3) == 3);
    CHECK(abelianization_is_Z(p));
}

TEST_CASE("phi presentation counts and colorings") {
    Presentation p = wirtinger(Diagram::parse(kPhiS2));
    CHECK(p.generators == 3);
    CHECK(p.relators.size() == 2);
    CHECK(count_colorings(p, 3) == 9);
    CHECK(count_colorings_brute(p, 3) == 9);
    CHECK(abelianization_is_Z(p));
}

TEST_CASE("cut trefoil colors like the trefoil") {
    Presentation p = wirtinger(Diagram::parse(kCutTrefoil));
    CHECK(p.generators == 4);
    CHECK(p.relators.size() == 3);
    CHECK(count_colorings(p, 3) == 9);  // trefoil: nine 3-colorings
    CHECK(count_colorings_brute(p, 3) == 9);
    CHECK(abelianization_is_Z(p));
}

TEST_CASE("curl-cut unknot has only constant colorings") {
    Presentation p = wirtinger(Diagram::parse(kUnifoil));
    CHECK(p.generators == 2);
    CHECK(p.relators.size() == 1);
    CHECK(count_colorings(p, 3) == 3);
    CHECK(count_colorings_brute(p, 3) == 3);
    CHECK(count_colorings(p, 5) == 5);
    CHECK(abelianization_is_Z(p));
}

TEST_CASE("coloring counts are multiples of the modulus") {
    for (const char* pd : {kPhiS2, kCutTrefoil, kUnifoil}) {
        Presentation p = wirtinger(Diagram::parse(pd));
        for (long n : {2L, 3L, 4L, 5L, 6L, 7L}) {
            BigInt c = count_colorings(p, n);
            CHECK(c % n == 0);
            if (p.generators <= 4 && n <= 5) CHECK(c == count_colorings_brute(p, n));
        }
    }
}

TEST_CASE("presentation rejects closed diagrams") {
    Diagram closed = Diagram::parse(kCutTrefoil).closure_under();
    CHECK_THROWS_AS(wirtinger(closed), Error);
}

TEST_CASE("presentation text form is stable") {
    Presentation p = wirtinger(Diagram::parse(kUnifoil));
    CHECK(p.to_string().rfind("generators: x0 x1\n", 0) == 0);
}
