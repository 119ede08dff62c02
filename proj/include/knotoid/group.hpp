#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "knotoid/diagram.hpp"
#include "knotoid/poly.hpp"

namespace knotoid {

// Wirtinger-style presentation of the knotoid group: one generator per
// overpassing segment, one conjugation relator per crossing.
struct Presentation {
    int generators = 0;
    // relator x_out^-1 x_over^eps x_in x_over^-eps, stored structurally
    struct Relator {
        int out = 0, over = 0, in = 0;
        int sign = 1;  // crossing sign, the conjugation exponent
    };
    std::vector<Relator> relators;

    std::string to_string() const {
        std::ostringstream os;
        os << "generators:";
        for (int i = 0; i < generators; ++i) os << " x" << i;
        os << "\n";
        for (const auto& r : relators) {
            os << "relator: x" << r.out << " = x" << r.over << (r.sign > 0 ? "" : "^-1") << " x"
               << r.in << " x" << r.over << (r.sign > 0 ? "^-1" : "") << "\n";
        }
        return os.str();
    }
};

// Split the segment at its underpass visits; generators follow the pieces in
// leg-to-head order. Each crossing contributes one relator whose over
// generator is the piece passing over it.
inline Presentation wirtinger(const Diagram& d) {
    if (d.is_closed() || !d.circle_halves().empty())
        throw Error(ErrorCode::NotKnotoid, "the presentation needs a single-segment diagram");
    Presentation p;
    if (d.crossing_count() == 0) {
        p.generators = 1;
        return p;
    }
    // Walk the segment; each arriving under-passage starts a new piece.
    // piece_of_half: the generator index covering each directed segment half.
    std::map<int, int> piece_of_half;
    int piece = 0;
    for (int g : d.segment_halves()) {
        piece_of_half[g] = piece;
        int arriving = Diagram::twin(g);
        if (d.kind(d.vertex(arriving)) == VertexKind::Crossing && !d.is_over(arriving)) ++piece;
    }
    p.generators = piece + 1;
    if (p.generators != d.crossing_count() + 1)
        throw Error(ErrorCode::BadArgument, "generator count mismatch");
    // Relator per crossing: the under strand enters with g_in and leaves with
    // g_out; the over strand's piece covers the over passage.
    for (int v = 0; v < d.vertex_count(); ++v) {
        if (d.kind(v) != VertexKind::Crossing) continue;
        const auto& sl = d.vertex_halves(v);
        int under_a = d.over_even(v) ? 1 : 0;
        int under_out = d.tail(sl[under_a]) ? sl[under_a] : sl[under_a + 2];
        int under_in_half = Diagram::twin(under_out == sl[under_a] ? sl[under_a + 2] : sl[under_a]);
        // under_in_half is the directed half along which the strand arrives
        int over_a = d.over_even(v) ? 0 : 1;
        int over_out = d.tail(sl[over_a]) ? sl[over_a] : sl[over_a + 2];
        Presentation::Relator r;
        r.in = piece_of_half.at(under_in_half);
        r.out = piece_of_half.at(under_out);
        r.over = piece_of_half.at(over_out);
        r.sign = d.crossing_sign(v);
        p.relators.push_back(r);
    }
    return p;
}

// Smith normal form over the integers (small matrices; exact arithmetic).
inline std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
    std::vector<BigInt> diag;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        // find a nonzero pivot
        size_t pi = r, pj = c;
        bool found = false;
        for (size_t i = r; i < rows && !found; ++i)
            for (size_t j = c; j < cols && !found; ++j)
                if (m[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[r], m[pi]);
        for (auto& row : m) std::swap(row[c], row[pj]);
        // reduce until the pivot divides its row and column
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                BigInt q = m[i][c] / m[r][c];
                for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) {
                    std::swap(m[r], m[i]);
                    again = true;
                }
            }
            for (size_t j = c + 1; j < cols; ++j) {
                if (m[r][j] == 0) continue;
                BigInt q = m[r][j] / m[r][c];
                for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
                if (m[r][j] != 0) {
                    for (size_t i = r; i < rows; ++i) std::swap(m[i][c], m[i][j]);
                    again = true;
                }
            }
        }
        if (m[r][c] < 0)
            for (size_t j = c; j < cols; ++j) m[r][j] = -m[r][j];
        diag.push_back(m[r][c]);
        ++r;
        ++c;
    }
    // divisibility fix-up
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[i] == 0) std::swap(diag[i], diag[j]);
            if (diag[i] == 0 || diag[j] % diag[i] == 0) continue;
            BigInt a = diag[i], b = diag[j];
            BigInt g = boost::multiprecision::gcd(a, b);
            diag[i] = g;
            diag[j] = a / g * b;
        }
    return diag;
}

// Relator exponent-sum matrix (abelianization presentation matrix).
inline std::vector<std::vector<BigInt>> abelianization_matrix(const Presentation& p) {
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : p.relators) {
        std::vector<BigInt> row(p.generators, 0);
        row[r.out] -= 1;
        row[r.in] += 1;
        m.push_back(row);
    }
    return m;
}

// Number of assignments of Z/n values to generators with every relator
// satisfying out = 2*over - in (mod n): the count is n^(free variables)
// times gcd(d_i, n) over the Smith invariants of the linear system.
inline BigInt count_colorings(const Presentation& p, long n) {
    if (n < 2) throw Error(ErrorCode::BadArgument, "modulus must be at least 2");
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : p.relators) {
        std::vector<BigInt> row(p.generators, 0);
        row[r.out] += 1;
        row[r.over] -= 2;
        row[r.in] += 1;
        m.push_back(row);
    }
    std::vector<BigInt> diag = smith_normal_form(std::move(m));
    size_t rank = 0;
    BigInt count = 1;
    for (const BigInt& dvalue : diag)
        if (dvalue != 0) {
            ++rank;
            count *= boost::multiprecision::gcd(dvalue, BigInt(n));
        }
    for (size_t i = rank; i < static_cast<size_t>(p.generators); ++i) count *= n;
    return count;
}

// Brute-force oracle over all n^generators assignments.
inline BigInt count_colorings_brute(const Presentation& p, long n) {
    long total = 1;
    for (int i = 0; i < p.generators; ++i) total *= n;
    BigInt count = 0;
    std::vector<long> a(p.generators, 0);
    for (long it = 0; it < total; ++it) {
        long x = it;
        for (int i = 0; i < p.generators; ++i) {
            a[i] = x % n;
            x /= n;
        }
        bool ok = true;
        for (const auto& r : p.relators)
            if (((a[r.out] - 2 * a[r.over] + a[r.in]) % n + n) % n != 0) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

}  // namespace knotoid
