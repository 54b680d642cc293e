#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "paraccg/cli.hpp"

using namespace paraccg;

namespace {

std::vector<std::string> corpus_sentences() {
    std::vector<std::string> out;
    for (const auto& c : cli::parse_suite(fixtures::read_text(fixtures::source_path("tests/corpus/fg2018.suite"))))
        out.push_back(c.sentence);
    return out;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("generator respects the depth bound and produces redexes") {
    oracle::TermGenerator gen(1);
    int with_redex = 0;
    for (int i = 0; i < 1000; ++i) {
        Term t = gen.next(6);
        CHECK(oracle::depth(t) <= 6);
        if (!is_beta_normal(t)) ++with_redex;
    }
    CHECK(with_redex > 200);
}

TEST_CASE("normal order agrees with rightmost-innermost") {
    oracle::TermGenerator gen(2018);
    for (int i = 0; i < 1000; ++i) {
        Term t = gen.next(6);
        auto ref = oracle::normalize_rightmost_innermost(oracle::from_term(t), kDefaultReductionBudget);
        REQUIRE(ref);  // simply typed, so it terminates
        Term n = beta_normalize(t);
        CHECK_MESSAGE(oracle::key(oracle::from_term(n)) == oracle::key(*ref), pretty_print(t));
        CHECK(is_beta_normal(n));
    }
}

TEST_CASE("free variables never grow under normalization") {
    oracle::TermGenerator gen(99);
    for (int i = 0; i < 1000; ++i) {
        Term t = gen.next(6);
        CHECK(subset(oracle::free_names(oracle::from_term(beta_normalize(t))), oracle::free_names(oracle::from_term(t))));
        CHECK(free_variables(t) == oracle::free_names(oracle::from_term(t)));
    }
}

TEST_CASE("substitution identity and agreement with the nameless oracle") {
    oracle::TermGenerator gen(7);
    const std::vector<std::string> names = {"a", "x", "f", "y", "z"};
    const std::vector<Term> replacements = {Term::var("x"), Term::var("y"), Term::app(Term::var("f"), Term::var("z")),
                                            Term::abs("x", Term::app(Term::var("x"), Term::var("y"))),
                                            Term::constant("die", {Term::var("p")})};
    for (int i = 0; i < 1000; ++i) {
        Term t = gen.next(6);
        for (const auto& v : names) {
            CHECK(alpha_eq(substitute(t, v, Term::var(v)), t));
            const Term& s = replacements[static_cast<std::size_t>(i) % replacements.size()];
            auto expected = oracle::substitute_free(oracle::from_term(t), v, oracle::from_term(s));
            CHECK_MESSAGE(oracle::key(oracle::from_term(substitute(t, v, s))) == oracle::key(expected),
                          pretty_print(t) << " [" << v << " := " << pretty_print(s) << "]");
        }
    }
}

TEST_CASE("printer fixpoint and alpha keys") {
    oracle::TermGenerator gen(5);
    for (int i = 0; i < 1000; ++i) {
        Term t = gen.next(6);
        // Generated free variables print like constants, so the reparse is
        // compared on the printed form only.
        std::string p = pretty_print(t);
        CHECK(pretty_print(parse_term(p)) == p);
        Term n = beta_normalize(t);
        CHECK(alpha_key(n) == alpha_key(beta_normalize(n)));
    }
}

TEST_CASE("alpha_key agrees with the nameless oracle") {
    oracle::TermGenerator g1(31), g2(31);
    oracle::TermGenerator other(32);
    for (int i = 0; i < 500; ++i) {
        Term a = g1.next(5), b = other.next(5);
        bool same = oracle::key(oracle::from_term(a)) == oracle::key(oracle::from_term(b));
        CHECK(alpha_eq(a, b) == same);
        CHECK(alpha_eq(a, g2.next(5)));
    }
}

TEST_CASE("CKY equals brute force on every short corpus sentence") {
    int checked = 0;
    for (const auto& s : corpus_sentences()) {
        auto toks = tokenize(s);
        if (toks.size() > 7) continue;
        ++checked;
        CHECK_MESSAGE(oracle::cky_readings(fixtures::fragment(), toks) ==
                          oracle::brute_force_readings(fixtures::fragment(), toks),
                      s);
    }
    CHECK(checked >= 20);
}

}  // TEST_SUITE
