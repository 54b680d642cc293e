#include "doctest.h"
#include "paraccg/logical_form.hpp"

using namespace paraccg;

namespace {
Term t(const char* s) { return parse_term(s); }
}  // namespace

TEST_SUITE("logical_form") {

TEST_CASE("parse: bound identifiers are variables, others constants") {
    Term x = t(R"(\x. hit x y)");
    auto a = x.as_abs();
    REQUIRE(a);
    auto app = a->body.as_app();
    REQUIRE(app);
    CHECK(app->arg.as_const());
    REQUIRE(app->fun.as_app());
    REQUIRE(app->fun.as_app()->arg.as_var());
    CHECK(app->fun.as_app()->arg.as_var()->name == "x");
    CHECK(app->fun.as_app()->fun.as_const()->name == "hit");
}

TEST_CASE("parse: application is left-associative") {
    CHECK(t("hit x y") == Term::app(Term::app(Term::constant("hit"), Term::constant("x")), Term::constant("y")));
    CHECK(t("hit x y") == t("(hit x) y"));
    CHECK_FALSE(t("hit x y") == t("hit (x y)"));
}

TEST_CASE("parse: subscripts") {
    Term a = t(R"(\x\y. die_x y)");
    Term b = t(R"(\x\y. die_{x} y)");
    CHECK(a == b);
    Term c = t("hold_{a, b c} d");
    auto head = c.as_app()->fun.as_const();
    REQUIRE(head);
    CHECK(head->contingencies.size() == 2);
    CHECK(head->contingencies[1] == t("b c"));
    CHECK_THROWS_AS(t(R"(\x. x_{y})"), TermSyntaxError);
}

TEST_CASE("parse: conjunction sugar") {
    CHECK(t("p & q") == Term::apply(Term::constant("and"), {Term::constant("p"), Term::constant("q")}));
    CHECK(t("a & b & c") == t("a & (b & c)"));
    CHECK(t(R"(\x. f x & g x)") == t(R"(\x. and (f x) (g x))"));
}

TEST_CASE("parse: errors") {
    CHECK_THROWS_AS(t(""), TermSyntaxError);
    CHECK_THROWS_AS(t("(a b"), TermSyntaxError);
    CHECK_THROWS_AS(t("\\. x"), TermSyntaxError);
    CHECK_THROWS_AS(t("a )"), TermSyntaxError);
    CHECK_THROWS_AS(t("die_{x"), TermSyntaxError);
}

TEST_CASE("substitute") {
    // through a subscript
    Term die = Term::app(Term::constant("die", {Term::var("x")}), Term::var("y"));
    CHECK(pretty_print(substitute(die, "x", Term::constant("bucketsense"))) == "die_{bucketsense} y");
    // under a binder for another variable
    Term lam = Term::abs("y", Term::apply(Term::constant("hit"), {Term::var("x"), Term::var("y")}));
    CHECK(pretty_print(substitute(lam, "x", Term::constant("h"))) == R"(\y. hit h y)");
    // bound occurrences untouched
    Term id = t(R"(\x. p x)");
    CHECK(substitute(id, "x", Term::constant("q")) == id);
    // capture avoided
    Term cap = Term::abs("y", Term::app(Term::var("x"), Term::var("y")));
    Term r = substitute(cap, "x", Term::var("y"));
    auto ra = r.as_abs();
    REQUIRE(ra);
    CHECK(ra->var != "y");
    CHECK(free_variables(r) == std::set<std::string>{"y"});
}

TEST_CASE("beta_normalize: lexical derivations") {
    Term persuaded = t(R"(\x\p\y. persuade (p x) x y)");
    Term e = Term::apply(persuaded, {t("m"), t(R"(\y. hit h y)"), t("j")});
    CHECK(pretty_print(beta_normalize(e)) == "persuade (hit h m) m j");

    CHECK(pretty_print(beta_normalize(t(R"((\x. x) a)"))) == "a");

    Term picked = t(R"(\y\x\z. cause (init (hold_{x} y z)) z)");
    Term up = t(R"(\x\p\y. up (p y) x)");
    Term r = beta_normalize(Term::apply(picked, {t("def book"), up, t("i")}));
    CHECK(pretty_print(r) == R"(cause (init (hold_{\x\p\y. up (p y) x} (def book) i)) i)");
}

TEST_CASE("beta_normalize: reduces inside subscripts") {
    CHECK(pretty_print(beta_normalize(t(R"(die_{(\x. x) a} y)"))) == "die_{a} y");
}

TEST_CASE("beta_normalize: budget") {
    Term omega = t(R"((\x. x x) (\x. x x))");
    CHECK_THROWS_AS(beta_normalize(omega, 100), BudgetExceeded);
    CHECK_THROWS_WITH(beta_normalize(omega, 5), doctest::Contains("BUDGET_EXCEEDED"));
    CHECK(pretty_print(beta_normalize(t(R"((\x. x) a)"), 1)) == "a");
    CHECK_THROWS_AS(beta_normalize(t(R"((\x. x) ((\y. y) a))"), 1), BudgetExceeded);
}

TEST_CASE("beta_normalize: normal order finds normal forms") {
    // the argument diverges but is discarded
    Term t1 = t(R"((\x. a) ((\x. x x) (\x. x x)))");
    CHECK(pretty_print(beta_normalize(t1, 50)) == "a");
    CHECK(is_beta_normal(t("a b")));
    CHECK_FALSE(is_beta_normal(t(R"(f ((\x. x) a))")));
}

TEST_CASE("alpha_eq") {
    CHECK(alpha_eq(t(R"(\x. die_x y)"), t(R"(\z. die_z y)")));
    CHECK_FALSE(alpha_eq(t("die_x y"), t("die y")));
    CHECK_FALSE(alpha_eq(t(R"(\x. p x)"), t(R"(\x. q x)")));
    CHECK(alpha_eq(t(R"(\x\y. x y)"), t(R"(\y\x. y x)")));
    CHECK_FALSE(alpha_eq(t(R"(\x\y. x y)"), t(R"(\x\y. y x)")));
    CHECK(alpha_key(t(R"(\a. a)")) == alpha_key(t(R"(\b. b)")));
}

TEST_CASE("pretty_print") {
    Term e = Term::apply(Term::constant("persuade"),
                         {Term::apply(Term::constant("hit"), {Term::constant("h"), Term::constant("m")}),
                          Term::constant("m"), Term::constant("j")});
    CHECK(pretty_print(e) == "persuade (hit h m) m j");
    CHECK(pretty_print(Term::app(Term::constant("die", {Term::var("x")}), Term::var("y"))) == "die_{x} y");
    CHECK(pretty_print(Term::abs("x", Term::var("x"))) == R"(\x. x)");
    CHECK(pretty_print(t(R"(\x\y. pick x y & choose x y)")) == R"(\x\y. pick x y & choose x y)");
    CHECK(pretty_print(t("(a & b) & c")) == "(a & b) & c");
    CHECK(pretty_print(t(R"(f (\x. x))")) == R"(f (\x. x))");
    CHECK(pretty_print(t(R"(f \x. x)")) == R"(f (\x. x))");
    CHECK(pretty_print(t("f (a & b)")) == "f (a & b)");
    CHECK(pretty_print(t("and a")) == "and a");
    CHECK(pretty_print(t("time_{self z, w} z")) == "time_{self z, w} z");
}

TEST_CASE("inspection helpers") {
    CHECK(head_constant(t(R"(\z. pick_{up} (def book) z)")) == "pick");
    CHECK(head_constant(t("a & b")) == "and");
    CHECK(mentions_constant(t("def (beans x & divulge_{x} secret you)"), "secret"));
    CHECK_FALSE(mentions_constant(t(R"(\secret2. f secret2)"), "secret2"));
    CHECK(has_contingency(t("f (die_{x} y)")));
    CHECK_FALSE(has_contingency(t("kick (def bucket) j")));
    CHECK(free_variables(t(R"(\x. x y)")).empty());  // y is a constant here
    CHECK(free_variables(Term::app(Term::var("y"), Term::constant("c"))) == std::set<std::string>{"y"});
}

}  // TEST_SUITE
