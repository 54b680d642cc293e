#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

using paraccg::Term;

namespace oracle {

namespace {

DBPtr mk(DB::Kind k, std::size_t index, std::string name, std::vector<DBPtr> subs) {
    return std::make_shared<const DB>(DB{k, index, std::move(name), std::move(subs)});
}
DBPtr bound(std::size_t i) { return mk(DB::BOUND, i, "", {}); }
DBPtr free_(std::string n) { return mk(DB::FREE, 0, std::move(n), {}); }
DBPtr lam(DBPtr body) { return mk(DB::LAM, 0, "", {std::move(body)}); }
DBPtr app(DBPtr f, DBPtr a) { return mk(DB::APP, 0, "", {std::move(f), std::move(a)}); }
DBPtr cst(std::string n, std::vector<DBPtr> subs) { return mk(DB::CONST, 0, std::move(n), std::move(subs)); }

DBPtr convert(const Term& t, std::vector<std::string>& scope) {
    if (auto v = t.as_var()) {
        for (std::size_t i = scope.size(); i-- > 0;)
            if (scope[i] == v->name) return bound(scope.size() - 1 - i);
        return free_(v->name);
    }
    if (auto c = t.as_const()) {
        std::vector<DBPtr> subs;
        for (const auto& s : c->contingencies) subs.push_back(convert(s, scope));
        return cst(c->name, std::move(subs));
    }
    if (auto a = t.as_abs()) {
        scope.push_back(a->var);
        DBPtr body = convert(a->body, scope);
        scope.pop_back();
        return lam(std::move(body));
    }
    auto p = t.as_app();
    return app(convert(p->fun, scope), convert(p->arg, scope));
}

// Adds d to every index >= cutoff.
DBPtr shift(const DBPtr& t, long d, std::size_t cutoff) {
    switch (t->kind) {
    case DB::BOUND: return t->index >= cutoff ? bound(static_cast<std::size_t>(static_cast<long>(t->index) + d)) : t;
    case DB::FREE: return t;
    case DB::LAM: return lam(shift(t->subs[0], d, cutoff + 1));
    case DB::APP: return app(shift(t->subs[0], d, cutoff), shift(t->subs[1], d, cutoff));
    case DB::CONST: {
        std::vector<DBPtr> subs;
        for (const auto& s : t->subs) subs.push_back(shift(s, d, cutoff));
        return cst(t->name, std::move(subs));
    }
    }
    throw std::logic_error("bad DB kind");
}

// t[j := s]
DBPtr subst_index(const DBPtr& t, std::size_t j, const DBPtr& s) {
    switch (t->kind) {
    case DB::BOUND: return t->index == j ? s : t;
    case DB::FREE: return t;
    case DB::LAM: return lam(subst_index(t->subs[0], j + 1, shift(s, 1, 0)));
    case DB::APP: return app(subst_index(t->subs[0], j, s), subst_index(t->subs[1], j, s));
    case DB::CONST: {
        std::vector<DBPtr> subs;
        for (const auto& x : t->subs) subs.push_back(subst_index(x, j, s));
        return cst(t->name, std::move(subs));
    }
    }
    throw std::logic_error("bad DB kind");
}

DBPtr contract(const DBPtr& body, const DBPtr& arg) { return shift(subst_index(body, 0, shift(arg, 1, 0)), -1, 0); }

}  // namespace

DBPtr from_term(const Term& t) {
    std::vector<std::string> scope;
    return convert(t, scope);
}

std::string key(const DBPtr& t) {
    switch (t->kind) {
    case DB::BOUND: return "#" + std::to_string(t->index);
    case DB::FREE: return "v:" + t->name;
    case DB::LAM: return "(L " + key(t->subs[0]) + ")";
    case DB::APP: return "(" + key(t->subs[0]) + " " + key(t->subs[1]) + ")";
    case DB::CONST: {
        std::string s = "c:" + t->name + "{";
        for (const auto& x : t->subs) s += key(x) + ",";
        return s + "}";
    }
    }
    return "?";
}

std::set<std::string> free_names(const DBPtr& t) {
    std::set<std::string> out;
    std::function<void(const DBPtr&)> go = [&](const DBPtr& u) {
        if (u->kind == DB::FREE) out.insert(u->name);
        for (const auto& s : u->subs) go(s);
    };
    go(t);
    return out;
}

std::optional<DBPtr> step_rightmost_innermost(const DBPtr& t) {
    switch (t->kind) {
    case DB::BOUND:
    case DB::FREE: return std::nullopt;
    case DB::LAM:
        if (auto b = step_rightmost_innermost(t->subs[0])) return lam(*b);
        return std::nullopt;
    case DB::CONST:
        for (std::size_t i = t->subs.size(); i-- > 0;) {
            if (auto s = step_rightmost_innermost(t->subs[i])) {
                auto subs = t->subs;
                subs[i] = *s;
                return cst(t->name, std::move(subs));
            }
        }
        return std::nullopt;
    case DB::APP:
        if (auto a = step_rightmost_innermost(t->subs[1])) return app(t->subs[0], *a);
        if (auto f = step_rightmost_innermost(t->subs[0])) return app(*f, t->subs[1]);
        if (t->subs[0]->kind == DB::LAM) return contract(t->subs[0]->subs[0], t->subs[1]);
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<DBPtr> normalize_rightmost_innermost(DBPtr t, std::size_t budget) {
    for (std::size_t i = 0; i <= budget; ++i) {
        auto n = step_rightmost_innermost(t);
        if (!n) return t;
        t = *n;
    }
    return std::nullopt;
}

DBPtr substitute_free(const DBPtr& t, const std::string& name, const DBPtr& s) {
    switch (t->kind) {
    case DB::BOUND: return t;
    case DB::FREE: return t->name == name ? s : t;
    case DB::LAM: return lam(substitute_free(t->subs[0], name, shift(s, 1, 0)));
    case DB::APP: return app(substitute_free(t->subs[0], name, s), substitute_free(t->subs[1], name, s));
    case DB::CONST: {
        std::vector<DBPtr> subs;
        for (const auto& x : t->subs) subs.push_back(substitute_free(x, name, s));
        return cst(t->name, std::move(subs));
    }
    }
    throw std::logic_error("bad DB kind");
}

// ---------------------------------------------------------------------------
// Generator

namespace {

struct Type;
using TypePtr = std::shared_ptr<const Type>;
struct Type {
    TypePtr from, to;  // both null: base type
};

TypePtr base() {
    static TypePtr o = std::make_shared<const Type>();
    return o;
}
TypePtr arrow(TypePtr a, TypePtr b) { return std::make_shared<const Type>(Type{std::move(a), std::move(b)}); }
bool same(const TypePtr& a, const TypePtr& b) {
    if (!a->from || !b->from) return !a->from && !b->from;
    return same(a->from, b->from) && same(a->to, b->to);
}

struct Gen {
    std::mt19937& rng;
    std::vector<std::pair<std::string, TypePtr>> ctx;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    TypePtr small_type() {
        switch (pick(4)) {
        case 0:
        case 1: return base();
        case 2: return arrow(base(), base());
        default: return pick(2) ? arrow(arrow(base(), base()), base()) : arrow(base(), arrow(base(), base()));
        }
    }

    std::string constant_name() {
        static const char* names[] = {"die", "hold", "cause", "init", "up", "pick", "kick", "divulge", "secret", "pass"};
        return names[pick(10)];
    }

    Term leaf(const TypePtr& t) {
        // Only the innermost binding of a name is visible.
        std::map<std::string, TypePtr> scope;
        for (const auto& [n, ty] : ctx) scope[n] = ty;
        std::vector<std::string> visible;
        for (const auto& [n, ty] : scope)
            if (same(ty, t)) visible.push_back(n);
        if (!visible.empty() && pick(3) != 0) return Term::var(visible[pick(static_cast<int>(visible.size()))]);
        return Term::constant(constant_name());
    }

    Term gen(const TypePtr& t, int d) {
        if (d <= 1) return leaf(t);
        int choice = pick(t->from ? 5 : 4);
        switch (choice) {
        case 0: return leaf(t);
        case 1: {  // application, often a redex
            TypePtr a = small_type();
            Term fun = d >= 3 && pick(2) ? redex_fun(a, t, d - 1) : gen(arrow(a, t), d - 1);
            return Term::app(fun, gen(a, d - 1));
        }
        case 2: {  // constant with contingencies
            std::vector<Term> subs;
            int n = 1 + pick(2);
            for (int i = 0; i < n; ++i) subs.push_back(gen(small_type(), d - 1));
            return Term::constant(constant_name(), std::move(subs));
        }
        case 3: {  // constant head applied to arguments
            Term head = Term::constant(constant_name());
            int n = std::min(1 + pick(2), d - 1);
            for (int i = 0; i < n; ++i) head = Term::app(head, gen(small_type(), d - n));
            return head;
        }
        default: return abstraction(t, d);
        }
    }

    Term redex_fun(const TypePtr& a, const TypePtr& result, int d) { return abstraction(arrow(a, result), d); }

    Term abstraction(const TypePtr& t, int d) {
        static const char* binders[] = {"x", "y", "z", "p", "q", "a"};
        std::string v = binders[pick(6)];
        ctx.emplace_back(v, t->from);
        Term body = gen(t->to, d - 1);
        ctx.pop_back();
        return Term::abs(v, body);
    }
};

}  // namespace

Term TermGenerator::next(int max_depth) {
    Gen g{rng, {{"a", base()}, {"x", base()}, {"f", arrow(base(), base())}}};
    return g.gen(base(), max_depth);
}

std::size_t depth(const Term& t) {
    if (auto c = t.as_const()) {
        std::size_t d = 0;
        for (const auto& s : c->contingencies) d = std::max(d, depth(s));
        return d + 1;
    }
    if (auto a = t.as_abs()) return depth(a->body) + 1;
    if (auto p = t.as_app()) return std::max(depth(p->fun), depth(p->arg)) + 1;
    return 1;
}

// ---------------------------------------------------------------------------
// Brute-force parsing

ReadingKey reading_of(const paraccg::Edge& e) { return {paraccg::canonical_key(e.category), key(from_term(e.lf))}; }

namespace {

std::vector<paraccg::EdgePtr> enumerate(const paraccg::Lexicon& lex, const std::vector<std::string>& tokens,
                                        std::size_t i, std::size_t j, paraccg::CombineContext& ctx) {
    std::vector<paraccg::EdgePtr> out;
    for (auto& e : paraccg::lexical_edges(lex, tokens, i, ctx))
        if (e->end == j) out.push_back(e);
    for (std::size_t k = i + 1; k < j; ++k) {
        auto left = enumerate(lex, tokens, i, k, ctx);
        if (left.empty()) continue;
        auto right = enumerate(lex, tokens, k, j, ctx);
        for (const auto& l : left)
            for (const auto& r : right)
                for (auto& e : paraccg::combine(l, r, ctx)) out.push_back(e);
    }
    return out;
}

}  // namespace

std::vector<paraccg::EdgePtr> all_bracketings(const paraccg::Lexicon& lex, const std::vector<std::string>& tokens,
                                              std::size_t weight_threshold) {
    paraccg::CombineContext ctx;
    ctx.weight_threshold = weight_threshold;
    return enumerate(lex, tokens, 0, tokens.size(), ctx);
}

std::set<ReadingKey> brute_force_readings(const paraccg::Lexicon& lex, const std::vector<std::string>& tokens) {
    std::set<ReadingKey> out;
    for (const auto& e : all_bracketings(lex, tokens, lex.config.weight_threshold)) out.insert(reading_of(*e));
    return out;
}

std::set<ReadingKey> cky_readings(const paraccg::Lexicon& lex, const std::vector<std::string>& tokens) {
    std::set<ReadingKey> out;
    for (const auto& e : paraccg::parse(lex, tokens).readings) out.insert(reading_of(*e));
    return out;
}

const std::vector<std::string>& idiom_constants() {
    static const std::vector<std::string> names{"die", "divulge", "smalltalk", "omniway", "revulse", "pass"};
    return names;
}

bool is_idiomatic(const Term& lf) {
    std::function<bool(const Term&)> go = [&](const Term& t) -> bool {
        if (auto c = t.as_const()) {
            if (std::find(idiom_constants().begin(), idiom_constants().end(), c->name) != idiom_constants().end())
                return true;
            return std::any_of(c->contingencies.begin(), c->contingencies.end(), go);
        }
        if (auto a = t.as_abs()) return go(a->body);
        if (auto p = t.as_app()) return go(p->fun) || go(p->arg);
        return false;
    };
    return go(lf);
}

}  // namespace oracle
