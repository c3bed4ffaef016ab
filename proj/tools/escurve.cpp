// escurve: search / audit / lemmas / bounds / report for product-of-consecutive
// -terms curves y^l = x(x+1)...(x+k-1) and the associated integer solutions.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "es/aux_curves.hpp"
#include "es/combinatorics.hpp"
#include "es/es_model.hpp"
#include "es/mordell.hpp"
#include "es/pipeline.hpp"
#include "es/real.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitContradiction = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

void print_point_csv(std::ostream& os, uint64_t k, unsigned l, const es::RationalPoint& p,
                     bool trivial) {
    os << k << "," << l << "," << p.x.get_num().get_str() << "," << p.x.get_den().get_str()
       << "," << p.y.get_num().get_str() << "," << p.y.get_den().get_str() << ","
       << (trivial ? "true" : "false") << "\n";
}

es::Json point_json(uint64_t k, unsigned l, const es::RationalPoint& p, bool trivial) {
    return es::Json{{"k", k},
                    {"l", l},
                    {"x_num", p.x.get_num().get_str()},
                    {"x_den", p.x.get_den().get_str()},
                    {"y_num", p.y.get_num().get_str()},
                    {"y_den", p.y.get_den().get_str()},
                    {"trivial", trivial}};
}

int cmd_search(uint64_t k, unsigned l, uint64_t denoms, const es::Int& numers, bool bounded,
               unsigned shards, const std::string& format) {
    es::EsCurve curve{k, l};
    std::vector<std::pair<es::RationalPoint, bool>> rows; // point, trivial flag
    std::string note;
    if (bounded) {
        auto pts = es::search_points(curve, denoms, numers, shards);
        for (const auto& p : pts) rows.emplace_back(p, p.y == 0);
    } else {
        auto cat = es::sander_catalog(curve, 50);
        for (const auto& p : cat.points) rows.emplace_back(p, false);
        note = cat.note;
        if (cat.neg_square_match && note.empty())
            note = "candidate pair satisfies -y^2 = product instead";
    }
    size_t nontrivial = 0;
    for (const auto& [p, trivial] : rows)
        if (!trivial) ++nontrivial;
    if (format == "json") {
        es::Json doc;
        doc["points"] = es::Json::array();
        for (const auto& [p, trivial] : rows) doc["points"].push_back(point_json(k, l, p, trivial));
        doc["nontrivial"] = nontrivial;
        if (!note.empty()) doc["note"] = note;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "k,l,x_num,x_den,y_num,y_den,trivial\n";
        for (const auto& [p, trivial] : rows) print_point_csv(std::cout, k, l, p, trivial);
    }
    if (nontrivial == 0)
        std::cerr << "trivial-only\n";
    else
        std::cerr << nontrivial << " nontrivial point(s) found\n";
    if (!note.empty() && format != "json") std::cerr << note << "\n";
    return kExitOk;
}

int cmd_audit(const std::string& path, const es::Config& cfg) {
    es::Candidate cand;
    try {
        cand = es::parse_candidate(path);
    } catch (const es::parse_error& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }
    auto cert = es::audit_candidate(cand, cfg);
    std::cout << cert.doc.dump(2) << "\n";
    return cert.contradiction ? kExitContradiction : kExitOk;
}

int cmd_lemmas(const std::string& selector, size_t trials, uint64_t seed,
               const std::string& format) {
    std::vector<es::SuiteResult> suites;
    try {
        suites = es::run_lemma_suites(selector, trials, seed);
    } catch (const es::parse_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    size_t failed = 0;
    if (format == "json") {
        es::Json doc = es::Json::array();
        for (const auto& s : suites) {
            doc.push_back(es::Json{
                {"suite", s.name}, {"passed", s.passed}, {"failed", s.failed}, {"notes", s.notes}});
            failed += s.failed;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& s : suites) {
            std::cout << s.name << ": " << s.passed << " passed, " << s.failed << " failed\n";
            for (const auto& n : s.notes) std::cout << "  " << n << "\n";
            failed += s.failed;
        }
    }
    return failed == 0 ? kExitOk : kExitContradiction;
}

int cmd_bounds(unsigned l, uint64_t H, long gamma, double Hq, double L, unsigned r, uint64_t k,
               double cexp, const es::Config& cfg) {
    es::Json rows = es::Json::array();
    if (l >= 5) {
        auto fb = es::faltings_log_bound(l, es::Int(H), cfg.precision);
        rows.push_back(es::Json{{"name", "faltings"},
                                {"l", l},
                                {"H", H},
                                {"ln_ln_bound", fb.ln_ln_bound.str(30)},
                                {"log_convention", "natural"}});
    } else {
        rows.push_back(es::Json{{"name", "faltings"}, {"inapplicable", "genus < 2 for l < 5"}});
    }
    if (gamma != 0) {
        double ratio = Hq / L;
        rows.push_back(es::Json{{"name", "mordell_ball"},
                                {"gamma", gamma},
                                {"H", Hq},
                                {"L", L},
                                {"r", r},
                                {"bound_nac", 16 * std::pow(1 + 2 * std::sqrt(ratio), (double)r)},
                                {"bound_prop", 16 * std::pow(9 * ratio, r / 2.0)}});
    }
    if (k >= 16) {
        // d threshold shape: ln d >= k^{c / ln ln k}
        es::RVal kv = es::RVal::exact(es::Int(k), cfg.precision);
        es::RVal lnk = kv.log();
        es::Rat capprox(static_cast<long>(std::llround(cexp * 1000000)), 1000000L);
        capprox.canonicalize();
        es::RVal expo = es::RVal::exact(capprox, cfg.precision) / lnk.log();
        // k^expo = exp(expo ln k); report its natural log
        es::RVal ln_threshold = expo * lnk;
        // ln ln d >= expo * ln k is the displayed quantity: ln d >= k^{c/lnln k}
        rows.push_back(es::Json{{"name", "d_threshold"},
                                {"k", k},
                                {"c", cexp},
                                {"ln_ln_d_min", ln_threshold.str(20)}});
    }
    std::cout << rows.dump(2) << "\n";
    return kExitOk;
}

int cmd_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return kExitParse;
    }
    es::Json doc;
    try {
        doc = es::Json::parse(in);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }
    std::cout << "certificate version " << doc.value("version", "?") << "\n";
    if (doc.contains("input")) {
        const auto& in2 = doc["input"];
        std::cout << "input: n=" << in2.value("n", "?") << " d=" << in2.value("d", "?")
                  << " k=" << in2.value("k", 0) << " l=" << in2.value("l", 0) << "\n";
    }
    for (const auto& st : doc.value("stages", es::Json::array())) {
        std::cout << "  stage " << st.value("stage", "?");
        if (st.contains("ok")) std::cout << (st["ok"].get<bool>() ? " ok" : " FAILED");
        if (st.contains("skipped")) std::cout << " skipped";
        if (st.contains("reason")) std::cout << " (" << st["reason"].get<std::string>() << ")";
        std::cout << "\n";
    }
    std::cout << "verdict: " << doc.value("verdict", "?") << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for curves y^l = x(x+1)...(x+k-1)"};
    app.require_subcommand(1);

    std::string config_path, format = "csv";
    uint64_t seed = 0;
    unsigned shards = 1;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed);
    app.add_option("--shards", shards);

    auto* search = app.add_subcommand("search", "bounded point search / known families");
    uint64_t s_k = 0, s_denoms = 0;
    unsigned s_l = 0;
    std::string s_numers;
    search->add_option("--k", s_k)->required();
    search->add_option("--l", s_l)->required();
    search->add_option("--denoms", s_denoms);
    search->add_option("--numers", s_numers);

    auto* audit = app.add_subcommand("audit", "audit a candidate solution file");
    std::string a_path;
    audit->add_option("candidate", a_path)->required();

    auto* lemmas = app.add_subcommand("lemmas", "seeded property suites");
    std::string l_sel = "all";
    size_t l_trials = 100;
    lemmas->add_option("--run", l_sel);
    lemmas->add_option("--trials", l_trials);

    auto* bounds = app.add_subcommand("bounds", "evaluate the bound formulas");
    unsigned b_l = 0, b_r = 0;
    uint64_t b_H = 1, b_k = 0;
    long b_gamma = 0;
    double b_Hq = 1, b_L = 1, b_c = 0.229;
    bounds->add_option("--l", b_l);
    bounds->add_option("--H", b_H);
    bounds->add_option("--gamma", b_gamma);
    bounds->add_option("--Hq", b_Hq);
    bounds->add_option("--L", b_L);
    bounds->add_option("--r", b_r);
    bounds->add_option("--k", b_k);
    bounds->add_option("--c", b_c);

    auto* report = app.add_subcommand("report", "render a certificate");
    std::string r_path;
    report->add_option("certificate", r_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    es::Config cfg;
    if (!config_path.empty()) {
        try {
            cfg = es::load_config(config_path);
        } catch (const es::parse_error& e) {
            std::cerr << e.what() << "\n";
            return kExitParse;
        }
    }
    if (shards) cfg.shards = shards;

    try {
        if (search->parsed()) {
            bool bounded = s_denoms > 0;
            es::Int numers = s_numers.empty() ? es::Int(0) : es::Int(s_numers);
            if (bounded && numers < 1) {
                std::cerr << "search: --denoms requires --numers\n";
                return kExitUsage;
            }
            return cmd_search(s_k, s_l, s_denoms, numers, bounded, cfg.shards, format);
        }
        if (audit->parsed()) return cmd_audit(a_path, cfg);
        if (lemmas->parsed()) return cmd_lemmas(l_sel, l_trials, seed, format);
        if (bounds->parsed()) return cmd_bounds(b_l, b_H, b_gamma, b_Hq, b_L, b_r, b_k, b_c, cfg);
        if (report->parsed()) return cmd_report(r_path);
    } catch (const es::precondition_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}
