// Command-line front end for the knotoid diagram library: validation,
// invariant reports, equivalence search, closures, group data, the annulus
// skein invariant, and corpus regression runs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "knotoid/corpus.hpp"
#include "knotoid/json_io.hpp"
#include "knotoid/moves.hpp"

using namespace knotoid;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Diagram load(const std::string& path) { return Diagram::parse(read_file(path)); }

void print_report_text(const InvariantReport& rep) {
    auto span_str = [](const std::optional<long>& s) {
        return s ? std::to_string(*s) : std::string("-inf");
    };
    std::cout << "crossings            " << rep.crossings << "\n"
              << "writhe               " << rep.writhe << "\n"
              << "bracket              " << rep.bracket.to_string() << "\n"
              << "normalized_bracket   " << rep.normalized_bracket.to_string() << "\n"
              << "extended_bracket     " << rep.extended_bracket.to_string() << "\n";
    if (rep.planar_bracket)
        std::cout << "planar_bracket       " << rep.planar_bracket->to_string() << "\n";
    std::cout << "spn                  " << span_str(rep.spans.spn) << "\n"
              << "spn_A                " << span_str(rep.spans.spn_A) << "\n"
              << "spn_u                " << span_str(rep.spans.spn_u) << "\n"
              << "complexity           " << rep.complexity_of_diagram << "\n"
              << "genus_bound          " << rep.genus_bound.str() << "\n"
              << "smoothed_components  " << rep.smoothed_components << "\n"
              << "alternating          " << (rep.alternating ? "true" : "false") << "\n"
              << "purity               " << purity_name(rep.purity) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knotoid diagram toolbox"};
    app.require_subcommand(1);

    std::string file, file2, dir;
    bool as_json = false;
    bool tsv_states = false;
    bool allow_large = false;
    bool over = false;
    long colorings = 0;
    int max_crossings = -1;
    long max_nodes = 1000000;

    auto* validate = app.add_subcommand("validate", "parse a PD file and report the map");
    validate->add_option("file", file)->required();
    validate->add_flag("--json", as_json);

    auto* invariants = app.add_subcommand("invariants", "compute the invariant report");
    invariants->add_option("file", file)->required();
    invariants->add_flag("--json", as_json);
    invariants->add_flag("--tsv-states", tsv_states);
    invariants->add_flag("--allow-large-statesum", allow_large);

    auto* equiv = app.add_subcommand("equiv", "bounded equivalence search");
    equiv->add_option("file1", file)->required();
    equiv->add_option("file2", file2)->required();
    equiv->add_option("--max-crossings", max_crossings);
    equiv->add_option("--max-nodes", max_nodes);
    equiv->add_flag("--json", as_json);

    auto* closure = app.add_subcommand("closure", "emit the shortcut closure of a knotoid");
    closure->add_option("file", file)->required();
    closure->add_flag("--over", over);
    closure->add_flag("--json", as_json);

    auto* group = app.add_subcommand("group", "overpass presentation and coloring counts");
    group->add_option("file", file)->required();
    group->add_option("--colorings", colorings);
    group->add_flag("--json", as_json);

    auto* homfly = app.add_subcommand("homfly", "annulus skein invariant");
    homfly->add_option("file", file)->required();
    homfly->add_flag("--json", as_json);

    auto* corpus = app.add_subcommand("corpus", "run a directory of regression diagrams");
    corpus->add_option("dir", dir)->required();
    corpus->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) {
            Diagram d = load(file);
            if (as_json) {
                std::cout << diagram_json(d).dump(2) << "\n";
            } else {
                std::cout << "ok: " << d.crossing_count() << " crossings, " << d.edge_count()
                          << " edges, " << d.face_count() << " faces, "
                          << (d.is_closed() ? "closed" : "open") << "\n";
            }
        } else if (invariants->parsed()) {
            Diagram d = load(file);
            InvariantReport rep = invariant_report(d, allow_large);
            if (as_json)
                std::cout << report_json(d, rep).dump(2) << "\n";
            else
                print_report_text(rep);
            if (tsv_states) std::cout << state_table_tsv(d, allow_large);
        } else if (equiv->parsed()) {
            Diagram d1 = load(file);
            Diagram d2 = load(file2);
            SearchBudget budget;
            budget.max_crossings = max_crossings;
            budget.max_nodes = max_nodes;
            SearchVerdict v = search_equivalent(d1, d2, budget);
            if (as_json) {
                OrderedJson j;
                j["verdict"] = v.kind == SearchVerdict::Equivalent ? "equivalent"
                               : v.kind == SearchVerdict::Distinct ? "distinct"
                                                                   : "inconclusive";
                if (v.kind == SearchVerdict::Distinct) j["witness"] = v.witness;
                if (v.kind == SearchVerdict::Equivalent) {
                    OrderedJson path = OrderedJson::array();
                    for (const auto& s : v.path) path.push_back({{"move", s.move}, {"pd", s.pd}});
                    j["path"] = std::move(path);
                }
                std::cout << j.dump(2) << "\n";
            } else {
                switch (v.kind) {
                    case SearchVerdict::Equivalent:
                        std::cout << "verdict: equivalent (" << v.path.size() - 1 << " moves)\n";
                        for (const auto& s : v.path) std::cout << "  " << s.move << "\n";
                        break;
                    case SearchVerdict::Distinct:
                        std::cout << "verdict: distinct\nwitness: " << v.witness << "\n";
                        break;
                    case SearchVerdict::Inconclusive:
                        std::cout << "verdict: inconclusive (budget exhausted)\n";
                        break;
                }
            }
        } else if (closure->parsed()) {
            Diagram d = load(file);
            Diagram c = over ? d.closure_over() : d.closure_under();
            LaurentPoly nb = normalized_bracket(c);
            if (as_json) {
                OrderedJson j;
                j["kind"] = over ? "over" : "under";
                j["pd"] = c.render();
                j["normalized_bracket"] = nb.to_string();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << c.render();
                std::cout << "normalized_bracket   " << nb.to_string() << "\n";
            }
        } else if (group->parsed()) {
            Diagram d = load(file);
            Presentation p = wirtinger(d);
            if (as_json) {
                OrderedJson j = presentation_json(p);
                if (colorings >= 2) j["colorings"] = count_colorings(p, colorings).str();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << p.to_string();
                if (colorings >= 2)
                    std::cout << "colorings mod " << colorings << ": "
                              << count_colorings(p, colorings).str() << "\n";
            }
        } else if (homfly->parsed()) {
            Diagram d = load(file);
            AnnulusElement e = homfly_invariant(d);
            if (as_json)
                std::cout << annulus_json(e).dump(2) << "\n";
            else
                std::cout << e.to_string() << "\n";
        } else if (corpus->parsed()) {
            auto results = run_corpus(dir);
            bool all_ok = true;
            OrderedJson jr = OrderedJson::array();
            for (const auto& r : results) {
                all_ok = all_ok && r.ok;
                if (as_json) {
                    jr.push_back({{"name", r.name}, {"ok", r.ok}, {"failures", r.failures}});
                } else {
                    std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << "\n";
                    for (const auto& f : r.failures) std::cout << "     " << f << "\n";
                }
            }
            if (as_json) std::cout << jr.dump(2) << "\n";
            if (!all_ok) return 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
