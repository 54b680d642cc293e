#ifndef PARACCG_PARSER_HPP
#define PARACCG_PARSER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "paraccg/category.hpp"
#include "paraccg/lexicon.hpp"
#include "paraccg/logical_form.hpp"

namespace paraccg {

struct Edge;
using EdgePtr = std::shared_ptr<const Edge>;

/// A chart constituent over tokens [start, end).
struct Edge {
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<std::string> tokens;  // surface tokens covered
    Category category;
    Term lf;  // always beta-normal
    RuleId rule = RuleId::LEX;
    std::vector<EdgePtr> children;
    std::shared_ptr<const LexEntry> entry;  // set iff rule == LEX

    std::size_t length() const { return end - start; }
};

// Attributes computed from the substituting constituent rather than read
// off its category.
enum class DerivedAttr { WEIGHT, LEXC };

std::optional<DerivedAttr> derived_attr_from_name(std::string_view name);

/// `weight`: "-" iff the edge covers at most `weight_threshold` tokens.
/// `lexc`: "+" iff some covered lexical entry is marked LEXC_PLUS.
std::string derived_feature(const Edge& edge, DerivedAttr attr, std::size_t weight_threshold);

// Fresh suffixes for per-edge variable renaming.
class FreshNames {
public:
    std::string next() { return "#" + std::to_string(++counter_); }

private:
    std::size_t counter_ = 0;
};

struct CombineContext {
    std::size_t weight_threshold = 4;
    std::size_t max_steps = kDefaultReductionBudget;
    FreshNames fresh;
};

/// Matches a functor's argument category against a constituent. A
/// singleton argument matches on the surface tokens alone; a polyvalent
/// argument unifies with the edge's category after its derived features
/// (weight, lexc) are checked against the edge.
std::optional<Bindings> match_argument(const Category& want, const Edge& edge, std::size_t weight_threshold,
                                       Bindings bindings = {});

/// Every edge obtainable from two adjacent edges by one combinatory rule,
/// gated by slash modality.
std::vector<EdgePtr> combine(const EdgePtr& left, const EdgePtr& right, CombineContext& ctx);

// Lexical seeds starting at `start`, one per matching entry.
std::vector<EdgePtr> lexical_edges(const Lexicon& lex, const std::vector<std::string>& tokens, std::size_t start,
                                   CombineContext& ctx);

// Chart packing key: category up to variable renaming, LF up to alpha,
// and the derived lexc value.
std::string edge_key(const Edge& edge);

// Reading identity: category and LF only.
std::string reading_key(const Edge& edge);

class Chart {
public:
    explicit Chart(std::size_t n = 0);

    std::size_t size() const { return n_; }
    const std::vector<EdgePtr>& cell(std::size_t start, std::size_t end) const;

    // Returns false when packing dropped the edge as a duplicate.
    bool add(EdgePtr edge, bool pack);

    // Edges of maximal span length present anywhere in the chart.
    std::vector<EdgePtr> longest_edges() const;

    std::size_t edge_count() const;

private:
    struct Cell {
        std::vector<EdgePtr> edges;
        std::unordered_set<std::string> keys;
    };
    Cell& at(std::size_t start, std::size_t end);
    const Cell& at(std::size_t start, std::size_t end) const;

    std::size_t n_;
    std::vector<Cell> cells_;
};

struct ParseOptions {
    std::optional<Category> goal;  // nullopt: any spanning category
    bool all_derivations = false;
    std::size_t max_tokens = 32;
    std::size_t max_steps = kDefaultReductionBudget;
    std::optional<std::size_t> weight_threshold;  // overrides the lexicon's
};

enum class ParseStatus { OK, NO_PARSE, UNKNOWN_TOKEN, TOO_LONG, EMPTY_INPUT };

std::string to_string(ParseStatus s);

struct ParseResult {
    ParseStatus status = ParseStatus::NO_PARSE;
    std::vector<std::string> tokens;
    std::vector<EdgePtr> readings;  // sorted by (category, LF) text
    std::vector<std::string> unknown_tokens;
    Chart chart;
};

/// Exhaustive CKY parse. Unknown tokens abort with UNKNOWN_TOKEN; an empty
/// reading list is NO_PARSE. Throws BudgetExceeded from LF normalization.
ParseResult parse(const Lexicon& lex, const std::vector<std::string>& tokens, const ParseOptions& options = {});

bool matches_goal(const Edge& edge, const std::optional<Category>& goal);

}  // namespace paraccg

#endif
