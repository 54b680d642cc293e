#include "paraccg/category.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace paraccg {

// ---------------------------------------------------------------------------
// Modality gating

bool modality_admits(RuleId rule, Modality m) {
    switch (rule) {
    case RuleId::LEX:
    case RuleId::FWD_APP:
    case RuleId::BWD_APP:
        return true;
    case RuleId::FWD_COMP_HARMONIC:
    case RuleId::BWD_COMP_HARMONIC:
    case RuleId::FWD_SUBST:
    case RuleId::BWD_SUBST:
        return m == Modality::DIAMOND || m == Modality::DOT;
    case RuleId::FWD_COMP_CROSSING:
    case RuleId::BWD_COMP_CROSSING:
        return m == Modality::CROSS || m == Modality::DOT;
    }
    return false;
}

namespace {
const std::pair<RuleId, const char*> kRuleLabels[] = {
    {RuleId::LEX, "LEX"},
    {RuleId::FWD_APP, ">"},
    {RuleId::BWD_APP, "<"},
    {RuleId::FWD_COMP_HARMONIC, ">B"},
    {RuleId::BWD_COMP_HARMONIC, "<B"},
    {RuleId::FWD_COMP_CROSSING, ">Bx"},
    {RuleId::BWD_COMP_CROSSING, "<Bx"},
    {RuleId::FWD_SUBST, ">S"},
    {RuleId::BWD_SUBST, "<S"},
};
}  // namespace

std::string rule_label(RuleId rule) {
    for (const auto& [id, label] : kRuleLabels)
        if (id == rule) return label;
    return "?";
}

std::optional<RuleId> rule_from_label(std::string_view label) {
    for (const auto& [id, l] : kRuleLabels)
        if (label == l) return id;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction and access

Category Category::atom(std::string name, FeatureBundle features) {
    return Category(std::make_shared<const CategoryNode>(
        CategoryNode{Atom{std::move(name), std::move(features)}}));
}

Category Category::functor(Category result, Slash slash, Category argument) {
    return Category(std::make_shared<const CategoryNode>(
        CategoryNode{Functor{std::move(result), slash, std::move(argument)}}));
}

Category Category::singleton(std::vector<std::string> tokens) {
    return Category(std::make_shared<const CategoryNode>(CategoryNode{Singleton{std::move(tokens)}}));
}

Category Category::var(std::string name) {
    return Category(std::make_shared<const CategoryNode>(CategoryNode{Var{std::move(name)}}));
}

const Category::Atom* Category::as_atom() const { return std::get_if<Atom>(&node_->value); }
const Category::Functor* Category::as_functor() const { return std::get_if<Functor>(&node_->value); }
const Category::Singleton* Category::as_singleton() const { return std::get_if<Singleton>(&node_->value); }
const Category::Var* Category::as_var() const { return std::get_if<Var>(&node_->value); }

bool Category::operator==(const Category& other) const {
    if (node_ == other.node_) return true;
    if (auto a = as_atom()) {
        auto b = other.as_atom();
        return b && a->name == b->name && a->features == b->features;
    }
    if (auto a = as_functor()) {
        auto b = other.as_functor();
        return b && a->slash == b->slash && a->result == b->result && a->argument == b->argument;
    }
    if (auto a = as_singleton()) {
        auto b = other.as_singleton();
        return b && a->tokens == b->tokens;
    }
    auto a = as_var();
    auto b = other.as_var();
    return b && a->name == b->name;
}

// ---------------------------------------------------------------------------
// Variable maps

namespace {

using NameMap = std::function<std::string(const std::string&)>;

Category map_variables(const Category& c, const NameMap& cat_name, const NameMap& feat_name) {
    if (auto a = c.as_atom()) {
        FeatureBundle fb;
        for (const auto& [k, v] : a->features)
            fb[k] = v.variable ? FeatureValue::var(feat_name(v.text)) : v;
        return Category::atom(a->name, std::move(fb));
    }
    if (auto f = c.as_functor())
        return Category::functor(map_variables(f->result, cat_name, feat_name), f->slash,
                                 map_variables(f->argument, cat_name, feat_name));
    if (auto v = c.as_var()) return Category::var(cat_name(v->name));
    return c;
}

void collect_variables(const Category& c, std::vector<std::string>& cats, std::vector<std::string>& feats) {
    auto push = [](std::vector<std::string>& out, const std::string& n) {
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    if (auto a = c.as_atom()) {
        for (const auto& [k, v] : a->features)
            if (v.variable) push(feats, v.text);
    } else if (auto f = c.as_functor()) {
        collect_variables(f->result, cats, feats);
        collect_variables(f->argument, cats, feats);
    } else if (auto v = c.as_var()) {
        push(cats, v->name);
    }
}

}  // namespace

Category rename_variables(const Category& c, std::string_view suffix) {
    auto add = [suffix](const std::string& n) { return n + std::string(suffix); };
    return map_variables(c, add, add);
}

std::vector<std::string> category_variables(const Category& c) {
    std::vector<std::string> cats, feats;
    collect_variables(c, cats, feats);
    return cats;
}

std::vector<std::string> feature_variables(const Category& c) {
    std::vector<std::string> cats, feats;
    collect_variables(c, cats, feats);
    return feats;
}

Category strip_features(const Category& c, const std::vector<std::string>& attrs) {
    if (auto a = c.as_atom()) {
        FeatureBundle fb = a->features;
        for (const auto& attr : attrs) fb.erase(attr);
        return Category::atom(a->name, std::move(fb));
    }
    if (auto f = c.as_functor())
        return Category::functor(strip_features(f->result, attrs), f->slash, strip_features(f->argument, attrs));
    return c;
}

bool contains_singleton(const Category& c) {
    if (c.is_singleton()) return true;
    if (auto f = c.as_functor()) return contains_singleton(f->result) || contains_singleton(f->argument);
    return false;
}

std::size_t arity(const Category& c) {
    std::size_t n = 0;
    for (auto f = c.as_functor(); f; f = f->result.as_functor()) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

FeatureValue walk(const Bindings& b, FeatureValue v) {
    while (v.variable) {
        auto it = b.features.find(v.text);
        if (it == b.features.end()) break;
        v = it->second;
    }
    return v;
}

Category walk(const Bindings& b, Category c) {
    while (auto v = c.as_var()) {
        auto it = b.categories.find(v->name);
        if (it == b.categories.end()) break;
        c = it->second;
    }
    return c;
}

bool occurs(const std::string& name, const Category& c, const Bindings& b) {
    Category w = walk(b, c);
    if (auto v = w.as_var()) return v->name == name;
    if (auto f = w.as_functor()) return occurs(name, f->result, b) || occurs(name, f->argument, b);
    return false;
}

bool unify_features(const FeatureBundle& fa, const FeatureBundle& fb, Bindings& b) {
    for (const auto& [attr, va] : fa) {
        auto it = fb.find(attr);
        if (it == fb.end()) continue;
        FeatureValue x = walk(b, va);
        FeatureValue y = walk(b, it->second);
        if (x == y) continue;
        if (x.variable)
            b.features[x.text] = y;
        else if (y.variable)
            b.features[y.text] = x;
        else
            return false;
    }
    return true;
}

bool bind_var(const std::string& name, const Category& c, Bindings& b) {
    if (c.is_singleton()) return false;
    if (occurs(name, c, b)) return false;
    b.categories.insert_or_assign(name, c);
    return true;
}

bool unify_rec(const Category& a0, const Category& b0, Bindings& b) {
    Category a = walk(b, a0);
    Category c = walk(b, b0);
    auto va = a.as_var();
    auto vc = c.as_var();
    if (va && vc && va->name == vc->name) return true;
    if (va) return bind_var(va->name, c, b);
    if (vc) return bind_var(vc->name, a, b);
    if (auto x = a.as_atom()) {
        auto y = c.as_atom();
        return y && x->name == y->name && unify_features(x->features, y->features, b);
    }
    if (auto x = a.as_functor()) {
        auto y = c.as_functor();
        return y && x->slash == y->slash && unify_rec(x->result, y->result, b) &&
               unify_rec(x->argument, y->argument, b);
    }
    if (auto x = a.as_singleton()) {
        auto y = c.as_singleton();
        return y && x->tokens == y->tokens;
    }
    return false;
}

}  // namespace

std::optional<Bindings> unify(const Category& a, const Category& b, Bindings bindings) {
    if (!unify_rec(a, b, bindings)) return std::nullopt;
    return bindings;
}

Category apply(const Bindings& b, const Category& c) {
    if (b.empty()) return c;
    if (auto v = c.as_var()) {
        auto it = b.categories.find(v->name);
        return it == b.categories.end() ? c : apply(b, it->second);
    }
    if (auto a = c.as_atom()) {
        FeatureBundle fb;
        for (const auto& [k, val] : a->features) fb[k] = walk(b, val);
        return Category::atom(a->name, std::move(fb));
    }
    if (auto f = c.as_functor()) return Category::functor(apply(b, f->result), f->slash, apply(b, f->argument));
    return c;
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(CategoryViolation v) {
    switch (v) {
    case CategoryViolation::SINGLETON_AS_RESULT: return "SINGLETON_AS_RESULT";
    case CategoryViolation::NON_STAR_SINGLETON_SLASH: return "NON_STAR_SINGLETON_SLASH";
    case CategoryViolation::EMPTY_SINGLETON: return "EMPTY_SINGLETON";
    }
    return "?";
}

namespace {
void validate_rec(const Category& c, std::vector<CategoryViolation>& out) {
    if (auto s = c.as_singleton()) {
        if (s->tokens.empty()) out.push_back(CategoryViolation::EMPTY_SINGLETON);
        return;
    }
    auto f = c.as_functor();
    if (!f) return;
    if (f->result.is_singleton()) out.push_back(CategoryViolation::SINGLETON_AS_RESULT);
    if (f->argument.is_singleton() && f->slash.modality != Modality::STAR)
        out.push_back(CategoryViolation::NON_STAR_SINGLETON_SLASH);
    validate_rec(f->result, out);
    validate_rec(f->argument, out);
}
}  // namespace

std::vector<CategoryViolation> validate_category(const Category& c) {
    std::vector<CategoryViolation> out;
    validate_rec(c, out);
    return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(Modality m) {
    switch (m) {
    case Modality::STAR: return "*";
    case Modality::DIAMOND: return "<>";
    case Modality::CROSS: return "x";
    case Modality::DOT: return ".";
    }
    return "?";
}

namespace {

void print(std::ostream& os, const Category& c, Modality dflt) {
    if (auto a = c.as_atom()) {
        os << a->name;
        if (!a->features.empty()) {
            os << '[';
            bool first = true;
            for (const auto& [k, v] : a->features) {
                if (!first) os << ", ";
                first = false;
                os << k << '=' << (v.variable ? "?" : "") << v.text;
            }
            os << ']';
        }
    } else if (auto s = c.as_singleton()) {
        os << '"';
        for (std::size_t i = 0; i < s->tokens.size(); ++i) os << (i ? " " : "") << s->tokens[i];
        os << '"';
    } else if (auto v = c.as_var()) {
        os << v->name;
    } else if (auto f = c.as_functor()) {
        auto part = [&](const Category& sub) {
            if (sub.is_functor()) {
                os << '(';
                print(os, sub, dflt);
                os << ')';
            } else {
                print(os, sub, dflt);
            }
        };
        part(f->result);
        os << (f->slash.direction == Direction::FORWARD ? '/' : '\\');
        if (f->slash.modality != dflt) os << to_string(f->slash.modality);
        part(f->argument);
    }
}

std::string base_name(const std::string& n) { return n.substr(0, n.find('#')); }

}  // namespace

std::string render_category(const Category& c, Modality default_modality) {
    std::ostringstream os;
    print(os, c, default_modality);
    return os.str();
}

std::string to_string(const Category& c) { return render_category(c, Modality::DIAMOND); }

std::string display(const Category& c) {
    std::vector<std::string> cats, feats;
    collect_variables(c, cats, feats);
    auto make_map = [](const std::vector<std::string>& names) {
        std::map<std::string, int> count;
        for (const auto& n : names) ++count[base_name(n)];
        std::map<std::string, std::string> out;
        std::map<std::string, int> seen;
        for (const auto& n : names) {
            std::string b = base_name(n);
            out[n] = count[b] == 1 ? b : b + std::to_string(++seen[b]);
        }
        return out;
    };
    auto cm = make_map(cats);
    auto fm = make_map(feats);
    return to_string(map_variables(
        c, [&](const std::string& n) { return cm.at(n); }, [&](const std::string& n) { return fm.at(n); }));
}

std::string canonical_key(const Category& c) {
    std::vector<std::string> cats, feats;
    collect_variables(c, cats, feats);
    auto index = [](const std::vector<std::string>& names, const std::string& n, const char* prefix) {
        auto pos = std::find(names.begin(), names.end(), n) - names.begin();
        return std::string(prefix) + std::to_string(pos);
    };
    return to_string(map_variables(
        c, [&](const std::string& n) { return index(cats, n, "X_"); },
        [&](const std::string& n) { return index(feats, n, "v_"); }));
}

// ---------------------------------------------------------------------------
// Parsing

bool is_category_variable_name(std::string_view name) {
    return name == "X" || name == "Y" || name == "Z";
}

namespace {

class CategoryReader {
public:
    CategoryReader(std::string_view text, Modality dflt) : text_(text), dflt_(dflt) {}

    Category read_all() {
        Category c = read_cat();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return c;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw CategorySyntaxError("category syntax: " + msg + " at offset " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char ch) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ch;
    }

    Category read_cat() {
        Category left = read_primary();
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char ch = text_[pos_];
            if (ch != '/' && ch != '\\') break;
            ++pos_;
            Slash slash{ch == '/' ? Direction::FORWARD : Direction::BACKWARD, read_modality()};
            Category right = read_primary();
            left = Category::functor(std::move(left), slash, std::move(right));
        }
        return left;
    }

    Modality read_modality() {
        if (pos_ >= text_.size()) return dflt_;
        switch (text_[pos_]) {
        case '*': ++pos_; return Modality::STAR;
        case 'x': ++pos_; return Modality::CROSS;
        case '.': ++pos_; return Modality::DOT;
        case '<':
            if (text_.substr(pos_, 2) == "<>") {
                pos_ += 2;
                return Modality::DIAMOND;
            }
            fail("bad modality");
        default: return dflt_;
        }
    }

    Category read_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of category");
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Category c = read_cat();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return c;
        }
        if (ch == '"') {
            ++pos_;
            auto close = text_.find('"', pos_);
            if (close == std::string_view::npos) fail("unterminated singleton");
            std::istringstream is{std::string(text_.substr(pos_, close - pos_))};
            std::vector<std::string> tokens;
            for (std::string t; is >> t;) tokens.push_back(t);
            pos_ = close + 1;
            return Category::singleton(std::move(tokens));
        }
        if (!std::isupper(static_cast<unsigned char>(ch))) fail("expected category");
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '#'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (is_category_variable_name(base_name(name))) {
            if (pos_ < text_.size() && text_[pos_] == '[') fail("category variable with features");
            return Category::var(std::move(name));
        }
        FeatureBundle fb;
        if (pos_ < text_.size() && text_[pos_] == '[') {
            ++pos_;
            while (true) {
                std::string attr = read_word();
                if (attr.empty()) fail("expected feature name");
                if (!peek('=')) fail("expected '='");
                ++pos_;
                skip_ws();
                bool var = false;
                if (pos_ < text_.size() && text_[pos_] == '?') {
                    var = true;
                    ++pos_;
                }
                std::string value = read_word();
                if (value.empty()) fail("expected feature value");
                if (fb.count(attr)) fail("duplicate feature '" + attr + "'");
                fb[attr] = FeatureValue{value, var};
                if (peek(',')) {
                    ++pos_;
                    continue;
                }
                if (peek(']')) {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ']'");
            }
        }
        return Category::atom(std::move(name), std::move(fb));
    }

    std::string read_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-' || ch == '_' || ch == '#')
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    Modality dflt_;
    std::size_t pos_ = 0;
};

}  // namespace

Category parse_category(std::string_view text, Modality default_modality) {
    return CategoryReader(text, default_modality).read_all();
}

}  // namespace paraccg
