#include "paraccg/logical_form.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace paraccg {

Term Term::var(std::string name) {
    return Term(std::make_shared<const TermNode>(TermNode{Var{std::move(name)}}));
}

Term Term::constant(std::string name, std::vector<Term> contingencies) {
    return Term(std::make_shared<const TermNode>(TermNode{Const{std::move(name), std::move(contingencies)}}));
}

Term Term::abs(std::string var, Term body) {
    return Term(std::make_shared<const TermNode>(TermNode{Abs{std::move(var), std::move(body)}}));
}

Term Term::app(Term fun, Term arg) {
    return Term(std::make_shared<const TermNode>(TermNode{App{std::move(fun), std::move(arg)}}));
}

Term Term::apply(Term fun, const std::vector<Term>& args) {
    for (const auto& a : args) fun = app(std::move(fun), a);
    return fun;
}

const Term::Var* Term::as_var() const { return std::get_if<Var>(&node_->value); }
const Term::Const* Term::as_const() const { return std::get_if<Const>(&node_->value); }
const Term::Abs* Term::as_abs() const { return std::get_if<Abs>(&node_->value); }
const Term::App* Term::as_app() const { return std::get_if<App>(&node_->value); }

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (auto a = as_var()) {
        auto b = other.as_var();
        return b && a->name == b->name;
    }
    if (auto a = as_const()) {
        auto b = other.as_const();
        return b && a->name == b->name && a->contingencies == b->contingencies;
    }
    if (auto a = as_abs()) {
        auto b = other.as_abs();
        return b && a->var == b->var && a->body == b->body;
    }
    auto a = as_app();
    auto b = other.as_app();
    return b && a->fun == b->fun && a->arg == b->arg;
}

// ---------------------------------------------------------------------------

namespace {

void free_vars_rec(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    if (auto v = t.as_var()) {
        if (!bound.count(v->name)) out.insert(v->name);
    } else if (auto c = t.as_const()) {
        for (const auto& s : c->contingencies) free_vars_rec(s, bound, out);
    } else if (auto a = t.as_abs()) {
        bool inserted = bound.insert(a->var).second;
        free_vars_rec(a->body, bound, out);
        if (inserted) bound.erase(a->var);
    } else if (auto p = t.as_app()) {
        free_vars_rec(p->fun, bound, out);
        free_vars_rec(p->arg, bound, out);
    }
}

void identifiers_rec(const Term& t, std::set<std::string>& out) {
    if (auto v = t.as_var()) {
        out.insert(v->name);
    } else if (auto c = t.as_const()) {
        out.insert(c->name);
        for (const auto& s : c->contingencies) identifiers_rec(s, out);
    } else if (auto a = t.as_abs()) {
        out.insert(a->var);
        identifiers_rec(a->body, out);
    } else if (auto p = t.as_app()) {
        identifiers_rec(p->fun, out);
        identifiers_rec(p->arg, out);
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string stem = base;
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    if (stem.empty()) stem = "v";
    for (int i = 1;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

}  // namespace

std::set<std::string> free_variables(const Term& t) {
    std::set<std::string> bound, out;
    free_vars_rec(t, bound, out);
    return out;
}

std::set<std::string> identifiers(const Term& t) {
    std::set<std::string> out;
    identifiers_rec(t, out);
    return out;
}

Term substitute(const Term& t, const std::string& v, const Term& s) {
    if (auto x = t.as_var()) return x->name == v ? s : t;
    if (auto c = t.as_const()) {
        if (c->contingencies.empty()) return t;
        std::vector<Term> subs;
        subs.reserve(c->contingencies.size());
        for (const auto& sub : c->contingencies) subs.push_back(substitute(sub, v, s));
        return Term::constant(c->name, std::move(subs));
    }
    if (auto p = t.as_app()) return Term::app(substitute(p->fun, v, s), substitute(p->arg, v, s));
    auto a = t.as_abs();
    if (a->var == v || !free_variables(a->body).count(v)) return t;
    // Rename the binder when it would capture a free variable of `s`, or
    // shadow a constant of `s` in printed form.
    if (identifiers(s).count(a->var)) {
        std::set<std::string> avoid = identifiers(s);
        auto body_ids = identifiers(a->body);
        avoid.insert(body_ids.begin(), body_ids.end());
        avoid.insert(v);
        std::string renamed = fresh_name(a->var, avoid);
        Term body = substitute(a->body, a->var, Term::var(renamed));
        return Term::abs(renamed, substitute(body, v, s));
    }
    return Term::abs(a->var, substitute(a->body, v, s));
}

std::optional<Term> beta_step(const Term& t) {
    if (auto p = t.as_app()) {
        if (auto lam = p->fun.as_abs()) return substitute(lam->body, lam->var, p->arg);
        if (auto f = beta_step(p->fun)) return Term::app(*f, p->arg);
        if (auto a = beta_step(p->arg)) return Term::app(p->fun, *a);
        return std::nullopt;
    }
    if (auto a = t.as_abs()) {
        if (auto b = beta_step(a->body)) return Term::abs(a->var, *b);
        return std::nullopt;
    }
    if (auto c = t.as_const()) {
        for (std::size_t i = 0; i < c->contingencies.size(); ++i) {
            if (auto s = beta_step(c->contingencies[i])) {
                auto subs = c->contingencies;
                subs[i] = *s;
                return Term::constant(c->name, std::move(subs));
            }
        }
    }
    return std::nullopt;
}

Term beta_normalize(const Term& t, std::size_t max_steps) {
    Term current = t;
    for (std::size_t steps = 0;; ++steps) {
        auto next = beta_step(current);
        if (!next) return current;
        if (steps == max_steps) throw BudgetExceeded(max_steps);
        current = std::move(*next);
    }
}

bool is_beta_normal(const Term& t) { return !beta_step(t).has_value(); }

// ---------------------------------------------------------------------------

namespace {

void alpha_key_rec(const Term& t, std::vector<std::string>& scope, std::string& out) {
    if (auto v = t.as_var()) {
        auto it = std::find(scope.rbegin(), scope.rend(), v->name);
        if (it != scope.rend())
            out += "#" + std::to_string(it - scope.rbegin());
        else
            out += "v:" + v->name;
    } else if (auto c = t.as_const()) {
        out += "c:" + c->name;
        if (!c->contingencies.empty()) {
            out += "{";
            for (const auto& s : c->contingencies) {
                alpha_key_rec(s, scope, out);
                out += ",";
            }
            out += "}";
        }
    } else if (auto a = t.as_abs()) {
        out += "(\\ ";
        scope.push_back(a->var);
        alpha_key_rec(a->body, scope, out);
        scope.pop_back();
        out += ")";
    } else if (auto p = t.as_app()) {
        out += "(";
        alpha_key_rec(p->fun, scope, out);
        out += " ";
        alpha_key_rec(p->arg, scope, out);
        out += ")";
    }
}

}  // namespace

std::string alpha_key(const Term& t) {
    std::vector<std::string> scope;
    std::string out;
    alpha_key_rec(t, scope, out);
    return out;
}

bool alpha_eq(const Term& a, const Term& b) { return alpha_key(a) == alpha_key(b); }

std::string head_constant(const Term& t) {
    const Term* cur = &t;
    while (auto a = cur->as_abs()) cur = &a->body;
    while (auto p = cur->as_app()) cur = &p->fun;
    if (auto c = cur->as_const()) return c->name;
    return "";
}

bool mentions_constant(const Term& t, std::string_view name) {
    if (auto c = t.as_const()) {
        if (c->name == name) return true;
        return std::any_of(c->contingencies.begin(), c->contingencies.end(),
                           [&](const Term& s) { return mentions_constant(s, name); });
    }
    if (auto a = t.as_abs()) return mentions_constant(a->body, name);
    if (auto p = t.as_app()) return mentions_constant(p->fun, name) || mentions_constant(p->arg, name);
    return false;
}

bool has_contingency(const Term& t) {
    if (auto c = t.as_const()) return !c->contingencies.empty();
    if (auto a = t.as_abs()) return has_contingency(a->body);
    if (auto p = t.as_app()) return has_contingency(p->fun) || has_contingency(p->arg);
    return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum class Ctx { TOP, FUN, ARG, INFIX_LEFT, INFIX_RIGHT };

// `and a b` with a bare `and` constant prints infix.
bool is_conjunction(const Term& t, const Term** lhs, const Term** rhs) {
    auto outer = t.as_app();
    if (!outer) return false;
    auto inner = outer->fun.as_app();
    if (!inner) return false;
    auto c = inner->fun.as_const();
    if (!c || c->name != "and" || !c->contingencies.empty()) return false;
    *lhs = &inner->arg;
    *rhs = &outer->arg;
    return true;
}

void print(std::ostream& os, const Term& t, Ctx ctx);

void print_parens(std::ostream& os, const Term& t) {
    os << '(';
    print(os, t, Ctx::TOP);
    os << ')';
}

void print(std::ostream& os, const Term& t, Ctx ctx) {
    if (auto v = t.as_var()) {
        os << v->name;
        return;
    }
    if (auto c = t.as_const()) {
        os << c->name;
        if (!c->contingencies.empty()) {
            os << "_{";
            for (std::size_t i = 0; i < c->contingencies.size(); ++i) {
                if (i) os << ", ";
                print(os, c->contingencies[i], Ctx::TOP);
            }
            os << '}';
        }
        return;
    }
    if (t.as_abs()) {
        if (ctx != Ctx::TOP) return print_parens(os, t);
        const Term* cur = &t;
        while (auto lam = cur->as_abs()) {
            os << '\\' << lam->var;
            cur = &lam->body;
        }
        os << ". ";
        print(os, *cur, Ctx::TOP);
        return;
    }
    const Term* lhs = nullptr;
    const Term* rhs = nullptr;
    if (is_conjunction(t, &lhs, &rhs)) {
        if (ctx != Ctx::TOP && ctx != Ctx::INFIX_RIGHT) return print_parens(os, t);
        print(os, *lhs, Ctx::INFIX_LEFT);
        os << " & ";
        print(os, *rhs, Ctx::INFIX_RIGHT);
        return;
    }
    if (ctx == Ctx::ARG) return print_parens(os, t);
    auto p = t.as_app();
    print(os, p->fun, Ctx::FUN);
    os << ' ';
    print(os, p->arg, Ctx::ARG);
}

}  // namespace

std::string pretty_print(const Term& t) {
    std::ostringstream os;
    print(os, t, Ctx::TOP);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TermReader {
public:
    explicit TermReader(std::string_view text) : text_(text) {}

    Term read_all() {
        Term t = read_term();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw TermSyntaxError("LF syntax: " + msg + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at(char ch) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ch;
    }

    static bool ident_char(char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '\'';
    }

    bool at_atom_start() {
        skip_ws();
        return pos_ < text_.size() && (text_[pos_] == '(' || ident_char(text_[pos_]));
    }

    std::string read_ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    Term read_term() {
        if (at('\\')) return read_abs();
        Term left = read_app();
        if (at('&')) {
            ++pos_;
            Term right = read_term();
            return Term::apply(Term::constant("and"), {left, right});
        }
        return left;
    }

    Term read_abs() {
        std::vector<std::string> vars;
        while (at('\\')) {
            ++pos_;
            vars.push_back(read_ident());
        }
        if (!at('.')) fail("expected '.' after lambda binders");
        ++pos_;
        for (const auto& v : vars) scope_.push_back(v);
        Term body = read_term();
        scope_.resize(scope_.size() - vars.size());
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Term::abs(*it, body);
        return body;
    }

    Term read_app() {
        Term t = read_atom();
        while (true) {
            if (at_atom_start()) {
                t = Term::app(t, read_atom());
            } else if (at('\\')) {
                return Term::app(t, read_abs());
            } else {
                return t;
            }
        }
    }

    Term read_atom() {
        if (at('(')) {
            ++pos_;
            Term t = read_term();
            if (!at(')')) fail("expected ')'");
            ++pos_;
            return t;
        }
        std::string name = read_ident();
        bool bound = std::find(scope_.begin(), scope_.end(), name) != scope_.end();
        std::vector<Term> subs;
        while (pos_ < text_.size() && text_[pos_] == '_') {
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '{') {
                ++pos_;
                while (true) {
                    subs.push_back(read_term());
                    if (at(',')) {
                        ++pos_;
                        continue;
                    }
                    if (at('}')) {
                        ++pos_;
                        break;
                    }
                    fail("expected ',' or '}' in subscript");
                }
            } else {
                subs.push_back(read_simple_subscript());
            }
        }
        if (bound) {
            if (!subs.empty()) fail("contingency subscript on bound variable '" + name + "'");
            return Term::var(name);
        }
        return Term::constant(name, std::move(subs));
    }

    // `die_x`: a single identifier, variable if bound.
    Term read_simple_subscript() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected subscript");
        std::string name(text_.substr(start, pos_ - start));
        if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) return Term::var(name);
        return Term::constant(name);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
};

}  // namespace

Term parse_term(std::string_view text) { return TermReader(text).read_all(); }

}  // namespace paraccg
