#include "paraccg/parser.hpp"

#include <algorithm>
#include <map>

namespace paraccg {

namespace {

const std::vector<std::string> kDerivedAttrNames = {"lexc", "weight"};

bool any_leaf_marked(const Edge& e, Marker m) {
    if (e.rule == RuleId::LEX) return e.entry && e.entry->has_marker(m);
    return std::any_of(e.children.begin(), e.children.end(), [m](const EdgePtr& c) { return any_leaf_marked(*c, m); });
}

bool has_derived_attr(const Category& c) {
    if (auto a = c.as_atom())
        return std::any_of(kDerivedAttrNames.begin(), kDerivedAttrNames.end(),
                           [&](const std::string& n) { return a->features.count(n) != 0; });
    if (auto f = c.as_functor()) return has_derived_attr(f->result) || has_derived_attr(f->argument);
    return false;
}

}  // namespace

std::optional<DerivedAttr> derived_attr_from_name(std::string_view name) {
    if (name == "weight") return DerivedAttr::WEIGHT;
    if (name == "lexc") return DerivedAttr::LEXC;
    return std::nullopt;
}

std::string derived_feature(const Edge& edge, DerivedAttr attr, std::size_t weight_threshold) {
    switch (attr) {
    case DerivedAttr::WEIGHT: return edge.length() <= weight_threshold ? "-" : "+";
    case DerivedAttr::LEXC: return any_leaf_marked(edge, Marker::LEXC_PLUS) ? "+" : "-";
    }
    return "-";
}

std::optional<Bindings> match_argument(const Category& want, const Edge& edge, std::size_t weight_threshold,
                                       Bindings bindings) {
    if (auto s = want.as_singleton()) {
        if (s->tokens != edge.tokens) return std::nullopt;
        return bindings;
    }
    if (auto a = want.as_atom()) {
        for (const auto& [attr, value] : a->features) {
            auto which = derived_attr_from_name(attr);
            if (!which) continue;
            std::string actual = derived_feature(edge, *which, weight_threshold);
            // Unify the attribute's value with the computed one.
            Category want = Category::atom("_", {{attr, value}});
            Category have = Category::atom("_", {{attr, FeatureValue::constant(actual)}});
            auto b = unify(want, have, std::move(bindings));
            if (!b) return std::nullopt;
            bindings = std::move(*b);
        }
    }
    return unify(strip_features(want, kDerivedAttrNames), edge.category, std::move(bindings));
}

// ---------------------------------------------------------------------------
// Rules

namespace {

struct Builder {
    const EdgePtr& left;
    const EdgePtr& right;
    CombineContext& ctx;
    std::vector<EdgePtr>& out;

    void emit(RuleId rule, const Category& cat, const Term& lf) {
        std::vector<std::string> toks = left->tokens;
        toks.insert(toks.end(), right->tokens.begin(), right->tokens.end());
        out.push_back(std::make_shared<const Edge>(Edge{left->start, right->end, std::move(toks),
                                                        rename_variables(cat, ctx.fresh.next()),
                                                        beta_normalize(lf, ctx.max_steps), rule,
                                                        {left, right}, nullptr}));
    }
};

std::string fresh_lf_var(const Term& f, const Term& g) {
    auto used = identifiers(f);
    auto more = identifiers(g);
    used.insert(more.begin(), more.end());
    for (int i = 0;; ++i) {
        std::string v = i == 0 ? "v" : "v" + std::to_string(i);
        if (!used.count(v)) return v;
    }
}

// \v. f (g v)
Term compose_lf(const Term& f, const Term& g) {
    std::string v = fresh_lf_var(f, g);
    return Term::abs(v, Term::app(f, Term::app(g, Term::var(v))));
}

// \v. f v (g v)
Term substitute_lf(const Term& f, const Term& g) {
    std::string v = fresh_lf_var(f, g);
    return Term::abs(v, Term::app(Term::app(f, Term::var(v)), Term::app(g, Term::var(v))));
}

const Category::Functor* functor_in(const Edge& e, Direction d) {
    auto f = e.category.as_functor();
    return f && f->slash.direction == d ? f : nullptr;
}

void application(Builder& b) {
    if (auto f = functor_in(*b.left, Direction::FORWARD); f && modality_admits(RuleId::FWD_APP, f->slash.modality)) {
        if (auto bind = match_argument(f->argument, *b.right, b.ctx.weight_threshold))
            b.emit(RuleId::FWD_APP, apply(*bind, f->result), Term::app(b.left->lf, b.right->lf));
    }
    if (auto f = functor_in(*b.right, Direction::BACKWARD); f && modality_admits(RuleId::BWD_APP, f->slash.modality)) {
        if (auto bind = match_argument(f->argument, *b.left, b.ctx.weight_threshold))
            b.emit(RuleId::BWD_APP, apply(*bind, f->result), Term::app(b.right->lf, b.left->lf));
    }
}

// primary: X|Y, secondary: Y|Z  ->  X|Z (slash of Z).
void composition(Builder& b, RuleId rule, const Edge& primary, Direction primary_dir, const Edge& secondary,
                 Direction secondary_dir) {
    auto p = functor_in(primary, primary_dir);
    auto s = functor_in(secondary, secondary_dir);
    if (!p || !s) return;
    if (!modality_admits(rule, p->slash.modality) || !modality_admits(rule, s->slash.modality)) return;
    // A derived-feature constraint can only be checked against an actual
    // constituent, which composition never supplies.
    if (has_derived_attr(p->argument)) return;
    auto bind = unify(p->argument, s->result);
    if (!bind) return;
    Category cat = Category::functor(apply(*bind, p->result), s->slash, apply(*bind, s->argument));
    b.emit(rule, cat, compose_lf(primary.lf, secondary.lf));
}

// primary: (X|Y)|Z, secondary: Y|Z  ->  X|Z
void substitution(Builder& b, RuleId rule, const Edge& primary, const Edge& secondary, Direction dir) {
    auto outer = functor_in(primary, dir);
    auto s = functor_in(secondary, dir);
    if (!outer || !s) return;
    auto inner = outer->result.as_functor();
    if (!inner || inner->slash.direction != dir) return;
    if (!modality_admits(rule, outer->slash.modality) || !modality_admits(rule, inner->slash.modality) ||
        !modality_admits(rule, s->slash.modality))
        return;
    if (has_derived_attr(inner->argument)) return;
    auto bind = unify(inner->argument, s->result);
    if (bind) bind = unify(outer->argument, s->argument, *bind);
    if (!bind) return;
    Category cat = Category::functor(apply(*bind, inner->result), s->slash, apply(*bind, s->argument));
    b.emit(rule, cat, substitute_lf(primary.lf, secondary.lf));
}

}  // namespace

std::vector<EdgePtr> combine(const EdgePtr& left, const EdgePtr& right, CombineContext& ctx) {
    std::vector<EdgePtr> out;
    Builder b{left, right, ctx, out};
    application(b);
    composition(b, RuleId::FWD_COMP_HARMONIC, *left, Direction::FORWARD, *right, Direction::FORWARD);
    composition(b, RuleId::BWD_COMP_HARMONIC, *right, Direction::BACKWARD, *left, Direction::BACKWARD);
    composition(b, RuleId::FWD_COMP_CROSSING, *left, Direction::FORWARD, *right, Direction::BACKWARD);
    composition(b, RuleId::BWD_COMP_CROSSING, *right, Direction::BACKWARD, *left, Direction::FORWARD);
    substitution(b, RuleId::FWD_SUBST, *left, *right, Direction::FORWARD);
    substitution(b, RuleId::BWD_SUBST, *right, *left, Direction::BACKWARD);
    return out;
}

std::vector<EdgePtr> lexical_edges(const Lexicon& lex, const std::vector<std::string>& tokens, std::size_t start,
                                   CombineContext& ctx) {
    std::vector<EdgePtr> out;
    for (const auto& m : lex.lookup(tokens, start)) {
        out.push_back(std::make_shared<const Edge>(Edge{start, start + m.span_length, m.entry->phon,
                                                        rename_variables(m.entry->category, ctx.fresh.next()),
                                                        beta_normalize(m.entry->lf, ctx.max_steps), RuleId::LEX,
                                                        {}, m.entry}));
    }
    return out;
}

std::string reading_key(const Edge& edge) { return canonical_key(edge.category) + "\x1f" + alpha_key(edge.lf); }

std::string edge_key(const Edge& edge) {
    return reading_key(edge) + "\x1f" + derived_feature(edge, DerivedAttr::LEXC, 0);
}

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(std::size_t n) : n_(n), cells_((n + 1) * (n + 1)) {}

Chart::Cell& Chart::at(std::size_t start, std::size_t end) { return cells_.at(start * (n_ + 1) + end); }
const Chart::Cell& Chart::at(std::size_t start, std::size_t end) const { return cells_.at(start * (n_ + 1) + end); }

const std::vector<EdgePtr>& Chart::cell(std::size_t start, std::size_t end) const { return at(start, end).edges; }

bool Chart::add(EdgePtr edge, bool pack) {
    Cell& c = at(edge->start, edge->end);
    if (pack && !c.keys.insert(edge_key(*edge)).second) return false;
    c.edges.push_back(std::move(edge));
    return true;
}

std::vector<EdgePtr> Chart::longest_edges() const {
    for (std::size_t len = n_; len >= 1; --len) {
        std::vector<EdgePtr> out;
        for (std::size_t i = 0; i + len <= n_; ++i) {
            const auto& edges = cell(i, i + len);
            out.insert(out.end(), edges.begin(), edges.end());
        }
        if (!out.empty()) return out;
    }
    return {};
}

std::size_t Chart::edge_count() const {
    std::size_t n = 0;
    for (const auto& c : cells_) n += c.edges.size();
    return n;
}

// ---------------------------------------------------------------------------
// Parsing

std::string to_string(ParseStatus s) {
    switch (s) {
    case ParseStatus::OK: return "OK";
    case ParseStatus::NO_PARSE: return "NO_PARSE";
    case ParseStatus::UNKNOWN_TOKEN: return "UNKNOWN_TOKEN";
    case ParseStatus::TOO_LONG: return "TOO_LONG";
    case ParseStatus::EMPTY_INPUT: return "EMPTY_INPUT";
    }
    return "?";
}

bool matches_goal(const Edge& edge, const std::optional<Category>& goal) {
    if (!goal) return true;
    return unify(rename_variables(*goal, "#goal"), edge.category).has_value();
}

ParseResult parse(const Lexicon& lex, const std::vector<std::string>& tokens, const ParseOptions& options) {
    ParseResult result;
    result.tokens = tokens;
    const std::size_t n = tokens.size();
    if (n == 0) {
        result.status = ParseStatus::EMPTY_INPUT;
        return result;
    }
    if (n > options.max_tokens) {
        result.status = ParseStatus::TOO_LONG;
        return result;
    }

    CombineContext ctx;
    ctx.weight_threshold = options.weight_threshold.value_or(lex.config.weight_threshold);
    ctx.max_steps = options.max_steps;

    std::vector<std::vector<EdgePtr>> seeds(n);
    std::vector<bool> covered(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        seeds[i] = lexical_edges(lex, tokens, i, ctx);
        for (const auto& e : seeds[i])
            for (std::size_t k = e->start; k < e->end; ++k) covered[k] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!covered[i]) result.unknown_tokens.push_back(tokens[i]);
    if (!result.unknown_tokens.empty()) {
        result.status = ParseStatus::UNKNOWN_TOKEN;
        return result;
    }

    const bool pack = !options.all_derivations;
    Chart chart(n);
    for (std::size_t len = 1; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            for (const auto& e : seeds[i])
                if (e->end == j) chart.add(e, pack);
            for (std::size_t k = i + 1; k < j; ++k) {
                for (const auto& l : chart.cell(i, k))
                    for (const auto& r : chart.cell(k, j))
                        for (auto& e : combine(l, r, ctx)) chart.add(std::move(e), pack);
            }
        }
    }

    std::map<std::string, EdgePtr> chosen;
    std::vector<EdgePtr> readings;
    for (const auto& e : chart.cell(0, n)) {
        if (!matches_goal(*e, options.goal)) continue;
        if (pack && !chosen.emplace(reading_key(*e), e).second) continue;
        readings.push_back(e);
    }
    std::stable_sort(readings.begin(), readings.end(), [](const EdgePtr& a, const EdgePtr& b) {
        auto ka = std::make_pair(display(a->category), pretty_print(a->lf));
        auto kb = std::make_pair(display(b->category), pretty_print(b->lf));
        return ka < kb;
    });

    result.readings = std::move(readings);
    result.status = result.readings.empty() ? ParseStatus::NO_PARSE : ParseStatus::OK;
    result.chart = std::move(chart);
    return result;
}

}  // namespace paraccg
