#ifndef PARACCG_LOGICAL_FORM_HPP
#define PARACCG_LOGICAL_FORM_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paraccg {

struct TermNode;

/// Immutable lambda term. Constants may carry contingency subscripts,
/// which are ordinary subterms for substitution and reduction:
/// `die_{x} y` is App(Const(die, [x]), y).
class Term {
public:
    struct Var {
        std::string name;
    };
    struct Const {
        std::string name;
        std::vector<Term> contingencies;
    };
    struct Abs;
    struct App;

    static Term var(std::string name);
    static Term constant(std::string name, std::vector<Term> contingencies = {});
    static Term abs(std::string var, Term body);
    static Term app(Term fun, Term arg);
    // Left-associative application of `fun` to each of `args`.
    static Term apply(Term fun, const std::vector<Term>& args);

    const Var* as_var() const;
    const Const* as_const() const;
    const Abs* as_abs() const;
    const App* as_app() const;

    // Structural equality (bound names significant). See alpha_eq.
    bool operator==(const Term& other) const;

private:
    explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const TermNode> node_;
};

struct Term::Abs {
    std::string var;
    Term body;
};

struct Term::App {
    Term fun;
    Term arg;
};

struct TermNode {
    std::variant<Term::Var, Term::Const, Term::Abs, Term::App> value;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : std::runtime_error("BUDGET_EXCEEDED: beta-normalization exceeded " + std::to_string(budget) + " steps") {}
};

constexpr std::size_t kDefaultReductionBudget = 10000;

std::set<std::string> free_variables(const Term& t);

// Every identifier in the term: variables (free or bound) and constants.
std::set<std::string> identifiers(const Term& t);

/// Capture-avoiding substitution of `s` for free occurrences of `v`,
/// descending into contingency subscripts.
Term substitute(const Term& t, const std::string& v, const Term& s);

// One leftmost-outermost beta step; nullopt when `t` is normal.
std::optional<Term> beta_step(const Term& t);

/// Normal-order reduction to beta-normal form. Throws BudgetExceeded once
/// `max_steps` reductions have been performed without reaching normal form.
Term beta_normalize(const Term& t, std::size_t max_steps = kDefaultReductionBudget);

bool is_beta_normal(const Term& t);

bool alpha_eq(const Term& a, const Term& b);

// Name-independent rendering; equal strings iff alpha-equivalent.
std::string alpha_key(const Term& t);

/// Renders in the concrete syntax read by parse_term:
/// `\x\y. hit x y`, `die_{x} y`, `p & q`.
std::string pretty_print(const Term& t);

// Leftmost constant on the application spine, under any leading lambdas.
std::string head_constant(const Term& t);

bool mentions_constant(const Term& t, std::string_view name);
bool has_contingency(const Term& t);

class TermSyntaxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses LF concrete syntax. Identifiers bound by an enclosing `\x`
/// become variables; all others become constants.
Term parse_term(std::string_view text);

}  // namespace paraccg

#endif
