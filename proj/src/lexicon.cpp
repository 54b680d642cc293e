#include "paraccg/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace paraccg {

namespace {

bool has_special_plus(const Category& c) {
    if (auto a = c.as_atom()) {
        auto it = a->features.find("special");
        return it != a->features.end() && !it->second.variable && it->second.text == "+";
    }
    if (auto f = c.as_functor()) return has_special_plus(f->result) || has_special_plus(f->argument);
    return false;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return s;
}

Category fold_singletons(const Category& c) {
    if (auto s = c.as_singleton()) {
        std::vector<std::string> toks;
        for (const auto& t : s->tokens) toks.push_back(lower(t));
        return Category::singleton(std::move(toks));
    }
    if (auto f = c.as_functor())
        return Category::functor(fold_singletons(f->result), f->slash, fold_singletons(f->argument));
    return c;
}

void collect_singletons(const Category& c, std::vector<std::vector<std::string>>& out) {
    if (auto s = c.as_singleton()) {
        out.push_back(s->tokens);
    } else if (auto f = c.as_functor()) {
        collect_singletons(f->result, out);
        collect_singletons(f->argument, out);
    }
}

void collect_atoms(const Category& c, std::set<std::string>& out) {
    if (auto a = c.as_atom()) {
        out.insert(a->name);
    } else if (auto f = c.as_functor()) {
        collect_atoms(f->result, out);
        collect_atoms(f->argument, out);
    }
}

}  // namespace

bool LexEntry::is_idiom_entry() const { return contains_singleton(category) || has_special_plus(category); }

bool same_entry(const LexEntry& a, const LexEntry& b) {
    return a.phon == b.phon && a.category == b.category && a.lf == b.lf && a.markers == b.markers;
}

const std::set<std::string>& builtin_atoms() {
    static const std::set<std::string> atoms = {"S", "NP", "N", "VP", "PP", "PredP"};
    return atoms;
}

// ---------------------------------------------------------------------------

void Lexicon::add(LexEntry entry) {
    auto ptr = std::make_shared<const LexEntry>(std::move(entry));
    entries_.push_back(ptr);
    if (!ptr->phon.empty()) by_first_.emplace(ptr->phon.front(), ptr);
}

std::vector<LexMatch> Lexicon::lookup(const std::vector<std::string>& tokens, std::size_t start) const {
    std::vector<LexMatch> out;
    if (start >= tokens.size()) return out;
    auto [lo, hi] = by_first_.equal_range(tokens[start]);
    for (auto it = lo; it != hi; ++it) {
        const auto& phon = it->second->phon;
        if (start + phon.size() > tokens.size()) continue;
        if (std::equal(phon.begin(), phon.end(), tokens.begin() + static_cast<std::ptrdiff_t>(start)))
            out.push_back({it->second, phon.size()});
    }
    std::stable_sort(out.begin(), out.end(), [](const LexMatch& a, const LexMatch& b) {
        if (a.span_length != b.span_length) return a.span_length > b.span_length;
        return a.entry->source_line < b.entry->source_line;
    });
    return out;
}

Lexicon Lexicon::case_folded() const {
    Lexicon out;
    out.config = config;
    out.atom_declarations = atom_declarations;
    for (const auto& e : entries_) {
        LexEntry copy = *e;
        for (auto& t : copy.phon) t = lower(t);
        copy.category = fold_singletons(copy.category);
        out.add(std::move(copy));
    }
    return out;
}

std::vector<LexMatch> lookup(const Lexicon& lex, const std::vector<std::string>& tokens, std::size_t start) {
    return lex.lookup(tokens, start);
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    switch (d.severity) {
    case Severity::ERROR: os << "error"; break;
    case Severity::WARNING: os << "warning"; break;
    case Severity::NOTE: os << "note"; break;
    }
    if (d.line) os << ": line " << d.line;
    os << ": " << d.code;
    if (!d.message.empty()) os << ": " << d.message;
    return os.str();
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::ERROR; });
}

std::vector<std::string> tokenize(std::string_view sentence, bool case_fold) {
    std::istringstream is{std::string(sentence)};
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(case_fold ? lower(t) : t);
    return out;
}

// ---------------------------------------------------------------------------
// Reading

namespace {

struct Statement {
    std::string text;
    std::size_t line;
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Splits on `;` outside double quotes, dropping `#` comments.
std::vector<Statement> split_statements(std::string_view text, std::vector<Diagnostic>& diags) {
    std::vector<Statement> out;
    std::string current;
    std::size_t line = 1, start_line = 0;
    bool quoted = false, comment = false;
    for (char ch : text) {
        if (ch == '\n') {
            ++line;
            comment = false;
            quoted = false;
            current += ' ';
            continue;
        }
        if (comment || ch == '\r') continue;
        if (ch == '#' && !quoted) {
            comment = true;
            continue;
        }
        if (ch == '"') quoted = !quoted;
        if (ch == ';' && !quoted) {
            out.push_back({trim(current), start_line});
            current.clear();
            start_line = 0;
            continue;
        }
        if (!start_line && !std::isspace(static_cast<unsigned char>(ch))) start_line = line;
        current += ch;
    }
    if (!trim(current).empty())
        diags.push_back({Severity::ERROR, "SYNTAX_ERROR", start_line, "entry not terminated by ';'"});
    return out;
}

std::optional<Modality> modality_from_text(std::string_view s) {
    if (s == "*") return Modality::STAR;
    if (s == "<>") return Modality::DIAMOND;
    if (s == "x") return Modality::CROSS;
    if (s == ".") return Modality::DOT;
    return std::nullopt;
}

void read_directive(const Statement& st, Lexicon& lex, std::vector<Diagnostic>& diags) {
    std::istringstream is(st.text.substr(1));
    std::string name;
    is >> name;
    std::vector<std::string> args;
    for (std::string a; is >> a;) args.push_back(a);
    auto error = [&](const std::string& msg) { diags.push_back({Severity::ERROR, "SYNTAX_ERROR", st.line, msg}); };
    if (name == "atoms") {
        for (const auto& a : args) lex.atom_declarations.insert(a);
    } else if (name == "weight_threshold") {
        std::size_t consumed = 0;
        long value = 0;
        try {
            if (args.size() == 1) value = std::stol(args[0], &consumed);
        } catch (const std::exception&) {
        }
        if (args.size() != 1 || consumed != args[0].size() || value < 1)
            error("%weight_threshold expects one integer >= 1");
        else
            lex.config.weight_threshold = static_cast<std::size_t>(value);
    } else if (name == "default_modality") {
        auto m = args.size() == 1 ? modality_from_text(args[0]) : std::nullopt;
        if (!m)
            error("%default_modality expects one of * <> x .");
        else
            lex.config.default_modality = *m;
    } else {
        error("unknown directive '%" + name + "'");
    }
}

// Splits a trailing `{+lexc}` marker block off the LF text.
std::string split_markers(std::string lf, std::set<Marker>& markers, std::string& bad) {
    std::string t = trim(lf);
    if (t.empty() || t.back() != '}') return t;
    auto open = t.rfind('{');
    if (open == std::string::npos) return t;
    std::size_t before = open;
    while (before > 0 && std::isspace(static_cast<unsigned char>(t[before - 1]))) --before;
    if (before == open || (before > 0 && t[before - 1] == '_')) return t;
    std::istringstream is(t.substr(open + 1, t.size() - open - 2));
    for (std::string m; is >> m;) {
        if (!m.empty() && m.back() == ',') m.pop_back();
        if (m == "+lexc")
            markers.insert(Marker::LEXC_PLUS);
        else
            bad = m;
    }
    return trim(t.substr(0, open));
}

}  // namespace

LexiconParse parse_lexicon(std::string_view text) {
    LexiconParse result;
    auto& diags = result.diagnostics;
    auto statements = split_statements(text, diags);

    // Directives apply to the whole file regardless of position.
    for (const auto& st : statements)
        if (!st.text.empty() && st.text[0] == '%') read_directive(st, result.lexicon, diags);

    for (const auto& st : statements) {
        if (st.text.empty() || st.text[0] == '%') continue;
        auto error = [&](const std::string& msg) { diags.push_back({Severity::ERROR, "SYNTAX_ERROR", st.line, msg}); };
        auto assign = st.text.find(":=");
        if (assign == std::string::npos) {
            error("expected ':='");
            continue;
        }
        auto colon = st.text.find(':', assign + 2);
        if (colon == std::string::npos) {
            error("expected ':' between category and logical form");
            continue;
        }
        auto phon = tokenize(st.text.substr(0, assign));
        if (phon.empty()) {
            error("empty phonological form");
            continue;
        }
        std::optional<Category> category;
        try {
            category = parse_category(trim(st.text.substr(assign + 2, colon - assign - 2)),
                                      result.lexicon.config.default_modality);
        } catch (const CategorySyntaxError& e) {
            error(e.what());
            continue;
        }
        std::set<Marker> markers;
        std::string bad_marker;
        std::string lf_text = split_markers(st.text.substr(colon + 1), markers, bad_marker);
        if (!bad_marker.empty()) {
            error("unknown marker '" + bad_marker + "'");
            continue;
        }
        std::optional<Term> lf;
        try {
            lf = parse_term(lf_text);
        } catch (const TermSyntaxError& e) {
            error(e.what());
            continue;
        }
        LexEntry entry{std::move(phon), *category, *lf, std::move(markers), st.line};
        bool duplicate = std::any_of(result.lexicon.entries().begin(), result.lexicon.entries().end(),
                                     [&](const auto& e) { return same_entry(*e, entry); });
        if (duplicate) {
            diags.push_back({Severity::WARNING, "DUPLICATE_ENTRY", st.line, "identical entry ignored"});
            continue;
        }
        result.lexicon.add(std::move(entry));
    }
    std::stable_sort(diags.begin(), diags.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
    return result;
}

std::string render_lexicon(const Lexicon& lex) {
    std::ostringstream os;
    if (!lex.atom_declarations.empty()) {
        os << "%atoms";
        for (const auto& a : lex.atom_declarations) os << ' ' << a;
        os << " ;\n";
    }
    if (lex.config.weight_threshold != LexiconConfig{}.weight_threshold)
        os << "%weight_threshold " << lex.config.weight_threshold << " ;\n";
    if (lex.config.default_modality != Modality::DIAMOND)
        os << "%default_modality " << to_string(lex.config.default_modality) << " ;\n";
    for (const auto& e : lex.entries()) {
        for (std::size_t i = 0; i < e->phon.size(); ++i) os << (i ? " " : "") << e->phon[i];
        os << " := " << render_category(e->category, lex.config.default_modality) << " : " << pretty_print(e->lf);
        if (e->has_marker(Marker::LEXC_PLUS)) os << " {+lexc}";
        os << " ;\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// A token sequence can seed a derivation when it segments into lexical
// entries.
bool coverable(const Lexicon& lex, const std::vector<std::string>& tokens) {
    if (tokens.empty()) return false;
    std::vector<bool> reach(tokens.size() + 1, false);
    reach[0] = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!reach[i]) continue;
        for (const auto& m : lex.lookup(tokens, i)) reach[i + m.span_length] = true;
    }
    return reach[tokens.size()];
}

std::size_t leading_abstractions(const Term& t) {
    std::size_t n = 0;
    for (auto a = t.as_abs(); a; a = a->body.as_abs()) ++n;
    return n;
}

// Lexical wrap: the LF's head applies its direct variable arguments in a
// different order than the lambdas bind them (`\x\y. saw y x`).
bool permutes_arguments(const Term& lf) {
    std::vector<std::string> binders;
    const Term* cur = &lf;
    while (auto a = cur->as_abs()) {
        binders.push_back(a->var);
        cur = &a->body;
    }
    std::vector<std::size_t> order;
    while (auto p = cur->as_app()) {
        if (auto v = p->arg.as_var()) {
            auto it = std::find(binders.begin(), binders.end(), v->name);
            if (it != binders.end()) order.push_back(static_cast<std::size_t>(it - binders.begin()));
        }
        cur = &p->fun;
    }
    // `order` was collected right to left.
    std::reverse(order.begin(), order.end());
    return !std::is_sorted(order.begin(), order.end());
}

std::string phon_string(const LexEntry& e) {
    std::string s;
    for (std::size_t i = 0; i < e.phon.size(); ++i) s += (i ? " " : "") + e.phon[i];
    return s;
}

}  // namespace

std::vector<Diagnostic> validate_lexicon(const Lexicon& lex) {
    std::vector<Diagnostic> out;
    for (const auto& e : lex.entries()) {
        std::string who = "'" + phon_string(*e) + "'";
        for (auto v : validate_category(e->category))
            out.push_back({Severity::ERROR, to_string(v), e->source_line, who + " has category " + display(e->category)});

        std::set<std::string> atoms;
        collect_atoms(e->category, atoms);
        for (const auto& a : atoms)
            if (!builtin_atoms().count(a) && !lex.atom_declarations.count(a))
                out.push_back({Severity::ERROR, "UNDECLARED_ATOM", e->source_line, who + " uses undeclared atom " + a});

        std::size_t slots = arity(e->category);
        std::size_t lambdas = leading_abstractions(e->lf);
        if (lambdas < slots)
            out.push_back({Severity::ERROR, "ARITY_MISMATCH", e->source_line,
                           who + " has " + std::to_string(slots) + " argument slots but " + std::to_string(lambdas) +
                               " leading abstractions"});

        auto free = free_variables(e->lf);
        if (!free.empty())
            out.push_back({Severity::ERROR, "UNBOUND_LF_VARIABLE", e->source_line, who + " has free variable " + *free.begin()});

        std::vector<std::vector<std::string>> singletons;
        collect_singletons(e->category, singletons);
        for (const auto& s : singletons) {
            if (s.empty() || coverable(lex, s)) continue;
            std::string str;
            for (std::size_t i = 0; i < s.size(); ++i) str += (i ? " " : "") + s[i];
            out.push_back({Severity::ERROR, "UNDERIVABLE_SINGLETON", e->source_line,
                           who + " subcategorizes for \"" + str + "\" which no lexical entries can derive"});
        }

        if (permutes_arguments(e->lf))
            out.push_back({Severity::NOTE, "LEXICAL_WRAP", e->source_line, who + " orders its arguments in the LF: " + pretty_print(e->lf)});
    }
    return out;
}

}  // namespace paraccg
