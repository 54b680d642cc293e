#ifndef PARACCG_LEXICON_HPP
#define PARACCG_LEXICON_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paraccg/category.hpp"
#include "paraccg/logical_form.hpp"

namespace paraccg {

// Derived-feature flags attached to an entry. A constituent covering an
// entry marked LEXC_PLUS has lexc=+.
enum class Marker { LEXC_PLUS };

struct LexEntry {
    std::vector<std::string> phon;
    Category category;
    Term lf;
    std::set<Marker> markers;
    std::size_t source_line = 0;

    bool has_marker(Marker m) const { return markers.count(m) != 0; }
    // Singleton-bearing or special=+ entries.
    bool is_idiom_entry() const;
};

bool same_entry(const LexEntry& a, const LexEntry& b);

struct LexiconConfig {
    std::size_t weight_threshold = 4;
    Modality default_modality = Modality::DIAMOND;
};

struct LexMatch {
    std::shared_ptr<const LexEntry> entry;
    std::size_t span_length;
};

// Atoms usable without a %atoms declaration.
const std::set<std::string>& builtin_atoms();

class Lexicon {
public:
    LexiconConfig config;
    std::set<std::string> atom_declarations;

    void add(LexEntry entry);
    const std::vector<std::shared_ptr<const LexEntry>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Every entry whose phon matches `tokens` from `start`, longest match
    /// first, then in file order.
    std::vector<LexMatch> lookup(const std::vector<std::string>& tokens, std::size_t start) const;

    // Copy with lower-cased phon and singleton tokens.
    Lexicon case_folded() const;

private:
    std::vector<std::shared_ptr<const LexEntry>> entries_;
    std::multimap<std::string, std::shared_ptr<const LexEntry>> by_first_;
};

std::vector<LexMatch> lookup(const Lexicon& lex, const std::vector<std::string>& tokens, std::size_t start);

enum class Severity { ERROR, WARNING, NOTE };

struct Diagnostic {
    Severity severity = Severity::ERROR;
    std::string code;
    std::size_t line = 0;
    std::string message;
};

std::string format_diagnostic(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diags);

struct LexiconParse {
    Lexicon lexicon;
    std::vector<Diagnostic> diagnostics;  // syntax errors and warnings

    bool ok() const { return !has_errors(diagnostics); }
};

/// Reads the lexicon format:
///
///     # comment
///     %atoms Det Adv ;
///     %weight_threshold 4 ;
///     %default_modality <> ;
///     picked := (S\NP)/*"up"/NP[weight=-] : \y\x\z. cause (init (hold_{x} y z)) z ;
///     book := N[head=book] : book {+lexc} ;
///
/// Entries end at `;` and may span lines. All syntax errors are collected.
LexiconParse parse_lexicon(std::string_view text);

std::string render_lexicon(const Lexicon& lex);

/// Structural checks over a parsed lexicon: category well-formedness,
/// undeclared atoms, LF arity, singleton derivability. LEXICAL_WRAP is
/// reported as a NOTE.
std::vector<Diagnostic> validate_lexicon(const Lexicon& lex);

// Whitespace tokenization.
std::vector<std::string> tokenize(std::string_view sentence, bool case_fold = false);

}  // namespace paraccg

#endif
