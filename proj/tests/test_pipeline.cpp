#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "es/pipeline.hpp"

using namespace es;

static std::string write_temp(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    out.close();
    return path.string();
}

TEST_CASE("config loading") {
    std::string p = write_temp("cfg_ok.json", R"({
        "precision": 320,
        "c": "229/1000",
        "A": 283,
        "eta": "1/17000",
        "shards": 4
    })");
    Config cfg = load_config(p);
    CHECK(cfg.precision == 320);
    CHECK(cfg.c == Rat(229, 1000));
    CHECK(cfg.A == 283);
    CHECK(cfg.eta == Rat(1, 17000));
    CHECK(cfg.shards == 4);

    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), parse_error);
    std::string bad = write_temp("cfg_bad.json", "{ not json");
    CHECK_THROWS_AS(load_config(bad), parse_error);
}

TEST_CASE("candidate parsing") {
    std::string p = write_temp("cand_ok.json", R"({
        "n": "1", "d": "1", "k": 100, "l": 5
    })");
    Candidate c = parse_candidate(p);
    CHECK(c.n == 1);
    CHECK(c.d == 1);
    CHECK(c.k == 100);
    CHECK(c.l == 5);
    CHECK(!c.supplied_terms.has_value());

    std::string pt = write_temp("cand_terms.json", R"({
        "n": "1", "d": "1", "k": 4, "l": 3,
        "terms": [
            {"i": 0, "a": "1", "t": "1"},
            {"i": 1, "a": "2", "rough": "1"},
            {"i": 2, "a": "3", "rough": "1"},
            {"i": 3, "a": "4", "rough": "1"}
        ]
    })");
    Candidate ct = parse_candidate(pt);
    REQUIRE(ct.supplied_terms.has_value());
    CHECK(ct.supplied_terms->terms.size() == 4);
    CHECK(ct.supplied_terms->terms[0].exact_power);
    CHECK(ct.supplied_terms->terms[0].t.value() == 1);

    std::string bad = write_temp("cand_bad.json", R"({"n": "x"})");
    CHECK_THROWS_AS(parse_candidate(bad), parse_error);
    CHECK_THROWS_AS(parse_candidate("/nonexistent/cand.json"), parse_error);
}

TEST_CASE("audit flags non-power products at the validation stage") {
    Candidate c;
    c.n = 1;
    c.d = 1;
    c.k = 5;
    c.l = 3;
    Config cfg;
    Certificate cert = audit_candidate(c, cfg);
    CHECK(cert.contradiction);
    std::string verdict = cert.doc["verdict"].get<std::string>();
    CHECK(verdict.find("contradiction") != std::string::npos);
    CHECK(cert.doc["version"].is_string());
    CHECK(cert.doc["stages"].is_array());
    REQUIRE(!cert.doc["stages"].empty());
    CHECK(cert.doc["stages"][0]["stage"].get<std::string>() == "validation");
}

TEST_CASE("audit of a speculative candidate produces a full trace") {
    Candidate c;
    c.n = 1;
    c.d = 1;
    c.k = 100;
    c.l = 5;
    Config cfg;
    Certificate cert = audit_candidate(c, cfg);
    CHECK(cert.contradiction); // speculative data fails a genuine-solution invariant
    bool saw_factorization = false, saw_mass = false;
    for (const auto& st : cert.doc["stages"]) {
        std::string name = st["stage"].get<std::string>();
        if (name == "factorization") saw_factorization = true;
        if (name == "mass_increment") saw_mass = true;
    }
    CHECK(saw_factorization);
    CHECK(saw_mass);
}

TEST_CASE("audit certificates are deterministic") {
    Candidate c;
    c.n = 7;
    c.d = 2;
    c.k = 30;
    c.l = 3;
    Config cfg;
    std::string first = audit_candidate(c, cfg).doc.dump(2);
    for (int run = 0; run < 3; ++run) CHECK(audit_candidate(c, cfg).doc.dump(2) == first);
    for (unsigned shards : {4u, 16u}) {
        Config cs = cfg;
        cs.shards = shards;
        CHECK(audit_candidate(c, cs).doc.dump(2) == first);
    }
}

TEST_CASE("exact integers in certificates are decimal strings") {
    Candidate c;
    c.n = 1;
    c.d = 1;
    c.k = 40;
    c.l = 3;
    Certificate cert = audit_candidate(c, {});
    CHECK(cert.doc["input"]["n"].is_string());
    CHECK(cert.doc["input"]["d"].is_string());
}

TEST_CASE("lemma suites run clean on small trial counts") {
    for (const std::string& sel :
         {"erdos_subset", "gcd_pairs", "products", "heights", "substitutions"}) {
        auto results = run_lemma_suites(sel, 20, 7);
        REQUIRE(!results.empty());
        for (const auto& r : results) {
            INFO("suite ", r.name);
            CHECK(r.failed == 0);
            CHECK(r.passed > 0);
        }
    }
    auto all = run_lemma_suites("all", 10, 11);
    CHECK(all.size() == 5);
    CHECK_THROWS_AS(run_lemma_suites("bogus", 10, 1), parse_error);
}

TEST_CASE("gcd_pairs suite reports the hypothesis constant") {
    auto results = run_lemma_suites("gcd_pairs", 5, 3);
    bool saw = false;
    for (const auto& r : results)
        for (const auto& n : r.notes)
            if (n.find("0.114499") != std::string::npos) saw = true;
    CHECK(saw);
}

TEST_CASE("lemma suites are deterministic per seed") {
    auto a = run_lemma_suites("products", 15, 42);
    auto b = run_lemma_suites("products", 15, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].passed == b[i].passed);
        CHECK(a[i].failed == b[i].failed);
        CHECK(a[i].notes == b[i].notes);
    }
}
