#ifndef PARACCG_CATEGORY_HPP
#define PARACCG_CATEGORY_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paraccg {

// Slash modalities, from most restrictive to most permissive.
//   STAR    application only
//   DIAMOND harmonic composition / substitution
//   CROSS   crossing composition
//   DOT     everything
enum class Modality { STAR, DIAMOND, CROSS, DOT };

enum class Direction { FORWARD, BACKWARD };

struct Slash {
    Direction direction = Direction::FORWARD;
    Modality modality = Modality::DIAMOND;

    bool operator==(const Slash&) const = default;
};

// Combinatory rules. LEX marks lexical seeding in a derivation.
enum class RuleId {
    LEX,
    FWD_APP,
    BWD_APP,
    FWD_COMP_HARMONIC,
    BWD_COMP_HARMONIC,
    FWD_COMP_CROSSING,
    BWD_COMP_CROSSING,
    FWD_SUBST,
    BWD_SUBST,
};

bool modality_admits(RuleId rule, Modality slash_modality);

// ">", "<B", ... ; "LEX" for lexical edges.
std::string rule_label(RuleId rule);
std::optional<RuleId> rule_from_label(std::string_view label);

/// A feature value: either a constant token (`3s`, `beans`, `+`) or a
/// variable (`?h`), scoped to the lexical entry it appears in.
struct FeatureValue {
    std::string text;
    bool variable = false;

    static FeatureValue constant(std::string t) { return {std::move(t), false}; }
    static FeatureValue var(std::string t) { return {std::move(t), true}; }

    bool operator==(const FeatureValue&) const = default;
    auto operator<=>(const FeatureValue&) const = default;
};

// Flat attribute-value map. An absent attribute is underspecified.
using FeatureBundle = std::map<std::string, FeatureValue>;

struct CategoryNode;

/// Immutable category value. Copies share structure.
class Category {
public:
    struct Atom {
        std::string name;
        FeatureBundle features;
    };
    struct Functor;
    struct Singleton {
        std::vector<std::string> tokens;
    };
    struct Var {
        std::string name;
    };

    static Category atom(std::string name, FeatureBundle features = {});
    static Category functor(Category result, Slash slash, Category argument);
    static Category singleton(std::vector<std::string> tokens);
    static Category var(std::string name);

    const Atom* as_atom() const;
    const Functor* as_functor() const;
    const Singleton* as_singleton() const;
    const Var* as_var() const;

    bool is_atom() const { return as_atom() != nullptr; }
    bool is_functor() const { return as_functor() != nullptr; }
    bool is_singleton() const { return as_singleton() != nullptr; }
    bool is_var() const { return as_var() != nullptr; }

    // Structural equality, variable names included.
    bool operator==(const Category& other) const;

private:
    explicit Category(std::shared_ptr<const CategoryNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const CategoryNode> node_;
};

struct Category::Functor {
    Category result;
    Slash slash;
    Category argument;
};

struct CategoryNode {
    std::variant<Category::Atom, Category::Functor, Category::Singleton, Category::Var> value;
};

/// Substitution state built up by unification.
struct Bindings {
    std::map<std::string, FeatureValue> features;
    std::map<std::string, Category> categories;

    bool empty() const { return features.empty() && categories.empty(); }
};

// Fully resolves all bound variables in `c`. Idempotent.
Category apply(const Bindings& bindings, const Category& c);

/// Unifies two categories, extending `bindings`. Returns std::nullopt on
/// failure. Category variables never bind to singletons, and the
/// occurs-check is always on.
std::optional<Bindings> unify(const Category& a, const Category& b, Bindings bindings = {});

// Removes the named attributes from every atom of `c`.
Category strip_features(const Category& c, const std::vector<std::string>& attrs);

// Appends `suffix` to every category and feature variable name.
Category rename_variables(const Category& c, std::string_view suffix);

std::vector<std::string> category_variables(const Category& c);
std::vector<std::string> feature_variables(const Category& c);

bool contains_singleton(const Category& c);

// Number of slashes along the result spine: (S\NP)/NP has two.
std::size_t arity(const Category& c);

enum class CategoryViolation {
    SINGLETON_AS_RESULT,
    NON_STAR_SINGLETON_SLASH,
    EMPTY_SINGLETON,
};

std::string to_string(CategoryViolation v);

std::vector<CategoryViolation> validate_category(const Category& c);

// Printing. `to_string` keeps internal variable names; `display` strips
// the per-edge renaming suffixes; `canonical_key` is positional and used
// for chart deduplication.
std::string to_string(const Category& c);
std::string display(const Category& c);
std::string canonical_key(const Category& c);
std::string to_string(Modality m);

/// Renders a category in lexicon syntax. Slashes whose modality equals
/// `default_modality` print bare.
std::string render_category(const Category& c, Modality default_modality = Modality::DIAMOND);

class CategorySyntaxError : public std::runtime_error {
public:
    CategorySyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Parses the ASCII category syntax:
///   `(S\NP)/*"the bucket"`, `NP[agr=3s, head=?h]`, `(X\*X)/*X`.
/// Bare `/` and `\` take `default_modality`; `*`, `x`, `.` and `<>` select
/// STAR, CROSS, DOT and DIAMOND explicitly. Slashes associate left.
Category parse_category(std::string_view text, Modality default_modality = Modality::DIAMOND);

bool is_category_variable_name(std::string_view name);

}  // namespace paraccg

#endif
