#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "knotoid/group.hpp"
#include "knotoid/invariants.hpp"
#include "knotoid/skein.hpp"

namespace knotoid {

// A named diagram with regression expectations read from `# expect` comment
// lines of its PD file, e.g.:
//   # expect normalized_bracket = -A^10 + A^6 + A^4
struct CorpusEntry {
    std::string name;
    std::string text;
    std::map<std::string, std::string> expectations;
};

struct CorpusResult {
    std::string name;
    bool ok = false;
    std::vector<std::string> failures;
};

inline CorpusEntry load_corpus_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadArgument, "cannot open " + path.string());
    CorpusEntry entry;
    entry.name = path.stem().string();
    std::ostringstream text;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            auto pos = comment.find("expect");
            auto eq = comment.find('=');
            if (pos != std::string::npos && eq != std::string::npos) {
                std::string key = comment.substr(pos + 6, eq - pos - 6);
                std::string value = comment.substr(eq + 1);
                auto trim = [](std::string s) {
                    size_t a = s.find_first_not_of(" \t");
                    size_t b = s.find_last_not_of(" \t\r");
                    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
                };
                entry.expectations[trim(key)] = trim(value);
            }
        }
        text << line << "\n";
    }
    entry.text = text.str();
    return entry;
}

inline CorpusResult check_corpus_entry(const CorpusEntry& entry) {
    CorpusResult res;
    res.name = entry.name;
    try {
        Diagram d = Diagram::parse(entry.text);
        InvariantReport rep = invariant_report(d);
        auto expect_eq = [&](const std::string& key, const std::string& got) {
            auto it = entry.expectations.find(key);
            if (it == entry.expectations.end()) return;
            if (it->second != got)
                res.failures.push_back(key + ": expected '" + it->second + "', got '" + got +
                                       "'");
        };
        auto poly_eq = [&](const std::string& key, const LaurentPoly& got) {
            auto it = entry.expectations.find(key);
            if (it == entry.expectations.end()) return;
            if (LaurentPoly::parse(it->second) != got)
                res.failures.push_back(key + ": expected '" + it->second + "', got '" +
                                       got.to_string() + "'");
        };
        poly_eq("bracket", rep.bracket);
        poly_eq("normalized_bracket", rep.normalized_bracket);
        poly_eq("extended_bracket", rep.extended_bracket);
        if (rep.planar_bracket) poly_eq("planar_bracket", *rep.planar_bracket);
        else if (entry.expectations.count("planar_bracket"))
            res.failures.push_back("planar_bracket expected but the diagram is not planar");
        expect_eq("writhe", std::to_string(rep.writhe));
        expect_eq("crossings", std::to_string(rep.crossings));
        auto span_str = [](const std::optional<long>& s) {
            return s ? std::to_string(*s) : std::string("-inf");
        };
        expect_eq("spn", span_str(rep.spans.spn));
        expect_eq("spn_A", span_str(rep.spans.spn_A));
        expect_eq("spn_u", span_str(rep.spans.spn_u));
        expect_eq("complexity", std::to_string(rep.complexity_of_diagram));
        expect_eq("genus_bound", rep.genus_bound.str());
        expect_eq("alternating", rep.alternating ? "true" : "false");
        expect_eq("purity", purity_name(rep.purity));
        if (entry.expectations.count("colorings3")) {
            Presentation p = wirtinger(d);
            expect_eq("colorings3", count_colorings(p, 3).str());
        }
        if (entry.expectations.count("closure_under_nb"))
            poly_eq("closure_under_nb", normalized_bracket(d.closure_under()));
        if (entry.expectations.count("closure_over_nb"))
            poly_eq("closure_over_nb", normalized_bracket(d.closure_over()));
        if (entry.expectations.count("homfly")) {
            AnnulusElement p = homfly_invariant(d);
            expect_eq("homfly", p.to_string());
        }
        // Structural identities checked on every entry.
        if (!d.is_closed()) {
            LaurentPoly ext = extended_bracket(d);
            if (ext.substitute(Var::U, LaurentPoly::one()) != rep.normalized_bracket)
                res.failures.push_back("u=1 specialization mismatch");
            LaurentPoly under = normalized_bracket(d.closure_under());
            if (ext.substitute(Var::U, LaurentPoly::parse("-A^3")) != under)
                res.failures.push_back("u=-A^3 closure specialization mismatch");
            LaurentPoly over = normalized_bracket(d.closure_over());
            if (ext.substitute(Var::U, LaurentPoly::parse("-A^-3")) != over)
                res.failures.push_back("u=-A^-3 closure specialization mismatch");
            if (rep.planar_bracket &&
                rep.planar_bracket->substitute(Var::V, loop_value()) != ext)
                res.failures.push_back("v substitution does not recover the extended bracket");
            if (rep.spans.spn && *rep.spans.spn > 4 * rep.crossings)
                res.failures.push_back("span bound violated");
        }
    } catch (const std::exception& e) {
        res.failures.push_back(std::string("error: ") + e.what());
    }
    res.ok = res.failures.empty();
    return res;
}

// Loads a directory of .pd files; names must be unique. Entries are checked
// concurrently and reported in name order.
inline std::vector<CorpusResult> run_corpus(const std::filesystem::path& dir) {
    std::vector<CorpusEntry> entries;
    std::map<std::string, int> names;
    for (const auto& de : std::filesystem::directory_iterator(dir)) {
        if (de.path().extension() != ".pd") continue;
        entries.push_back(load_corpus_file(de.path()));
        if (++names[entries.back().name] > 1)
            throw Error(ErrorCode::BadArgument, "duplicate corpus name " + entries.back().name);
    }
    std::sort(entries.begin(), entries.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
    std::vector<std::future<CorpusResult>> futures;
    for (const auto& e : entries)
        futures.push_back(std::async(std::launch::async, check_corpus_entry, e));
    std::vector<CorpusResult> results;
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

}  // namespace knotoid
