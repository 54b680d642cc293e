#include "paraccg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "paraccg/derivation_io.hpp"

namespace paraccg::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::vector<SuiteCase> parse_suite(std::string_view text) {
    std::vector<SuiteCase> out;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() < 2 || cols.size() > 3)
            throw SuiteFormatError(lineno, "expected 'sentence<TAB>count<TAB>lfs', got " + std::to_string(cols.size()) +
                                               " column(s)");
        SuiteCase c;
        c.line = lineno;
        c.sentence = trim(cols[0]);
        std::string count = trim(cols[1]);
        if (count.empty() || !std::all_of(count.begin(), count.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            throw SuiteFormatError(lineno, "parse count '" + count + "' is not a non-negative integer");
        c.expected_count = std::stoul(count);
        std::string lfs = cols.size() == 3 ? trim(cols[2]) : "-";
        if (lfs != "-") {
            std::vector<std::string> list;
            for (const auto& part : split(lfs, '|')) {
                std::string lf = trim(part);
                if (lf.empty()) throw SuiteFormatError(lineno, "empty LF in expected list");
                try {
                    parse_term(lf);
                } catch (const TermSyntaxError& e) {
                    throw SuiteFormatError(lineno, e.what());
                }
                list.push_back(lf);
            }
            c.expected_lfs = std::move(list);
        }
        out.push_back(std::move(c));
    }
    return out;
}

CaseOutcome run_case(const Lexicon& lex, const SuiteCase& c, const ParseOptions& options, bool case_fold) {
    CaseOutcome o;
    ParseResult r;
    try {
        r = parse(lex, tokenize(c.sentence, case_fold), options);
    } catch (const BudgetExceeded& e) {
        o.detail = e.what();
        return o;
    }
    if (r.status == ParseStatus::UNKNOWN_TOKEN || r.status == ParseStatus::TOO_LONG ||
        r.status == ParseStatus::EMPTY_INPUT) {
        o.detail = to_string(r.status);
        return o;
    }
    o.actual_count = r.readings.size();
    if (o.actual_count != c.expected_count) {
        o.detail = "expected " + std::to_string(c.expected_count) + " reading(s), got " + std::to_string(o.actual_count);
        return o;
    }
    if (c.expected_lfs) {
        std::vector<std::string> want, got;
        for (const auto& lf : *c.expected_lfs) want.push_back(alpha_key(beta_normalize(parse_term(lf), options.max_steps)));
        for (const auto& e : r.readings) got.push_back(alpha_key(e->lf));
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got) {
            o.detail = "LFs differ; got:";
            for (const auto& e : r.readings) o.detail += " [" + pretty_print(e->lf) + "]";
            return o;
        }
    }
    o.pass = true;
    return o;
}

// ---------------------------------------------------------------------------

namespace {

struct Options {
    std::string lexicon_path;
    std::string sentence;
    std::string suite_path;
    std::string goal;
    bool json = false;
    bool all_derivations = false;
    bool case_fold = false;
    std::size_t weight_threshold = 0;
    std::size_t max_steps = kDefaultReductionBudget;
};

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& os) {
    for (const auto& d : diags) os << format_diagnostic(d) << '\n';
}

// Loads and parses the lexicon; nullopt after reporting on `err`.
std::optional<Lexicon> load_lexicon(const Options& o, std::ostream& err, bool require_valid) {
    auto text = read_file(o.lexicon_path);
    if (!text) {
        err << "error: cannot read lexicon '" << o.lexicon_path << "'\n";
        return std::nullopt;
    }
    auto lp = parse_lexicon(*text);
    if (!lp.ok()) {
        print_diagnostics(lp.diagnostics, err);
        return std::nullopt;
    }
    if (require_valid) {
        auto diags = validate_lexicon(lp.lexicon);
        if (has_errors(diags)) {
            std::vector<Diagnostic> errors;
            std::copy_if(diags.begin(), diags.end(), std::back_inserter(errors),
                         [](const Diagnostic& d) { return d.severity == Severity::ERROR; });
            print_diagnostics(errors, err);
            return std::nullopt;
        }
    }
    Lexicon lex = std::move(lp.lexicon);
    if (o.weight_threshold) lex.config.weight_threshold = o.weight_threshold;
    return o.case_fold ? lex.case_folded() : lex;
}

std::optional<ParseOptions> parse_options(const Options& o, std::ostream& err) {
    ParseOptions po;
    po.all_derivations = o.all_derivations;
    po.max_steps = o.max_steps;
    if (!o.goal.empty()) {
        try {
            po.goal = parse_category(o.goal);
        } catch (const CategorySyntaxError& e) {
            err << "error: --goal: " << e.what() << '\n';
            return std::nullopt;
        }
    }
    return po;
}

int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
    auto lex = load_lexicon(o, err, true);
    if (!lex) return kOperational;
    auto po = parse_options(o, err);
    if (!po) return kOperational;
    ParseResult r;
    try {
        r = parse(*lex, tokenize(o.sentence, o.case_fold), *po);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kOperational;
    }
    switch (r.status) {
    case ParseStatus::UNKNOWN_TOKEN:
        err << "error: UNKNOWN_TOKEN:";
        for (const auto& t : r.unknown_tokens) err << ' ' << t;
        err << '\n';
        return kOperational;
    case ParseStatus::TOO_LONG:
        err << "error: TOO_LONG: sentence exceeds " << po->max_tokens << " tokens\n";
        return kOperational;
    case ParseStatus::EMPTY_INPUT:
        err << "error: empty sentence\n";
        return kOperational;
    default: break;
    }
    DerivationDoc doc = make_doc(r);
    out << (o.json ? render_json(doc) : render_ascii(doc));
    return r.readings.empty() ? kNegative : kSuccess;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    auto text = read_file(o.lexicon_path);
    if (!text) {
        err << "error: cannot read lexicon '" << o.lexicon_path << "'\n";
        return kOperational;
    }
    auto lp = parse_lexicon(*text);
    std::vector<Diagnostic> all = lp.diagnostics;
    if (lp.ok()) {
        auto v = validate_lexicon(lp.lexicon);
        all.insert(all.end(), v.begin(), v.end());
    }
    std::stable_sort(all.begin(), all.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    print_diagnostics(all, out);
    std::size_t errors = std::count_if(all.begin(), all.end(), [](const Diagnostic& d) { return d.severity == Severity::ERROR; });
    out << lp.lexicon.entries().size() << " entries, " << errors << " violation(s)\n";
    return errors ? kNegative : kSuccess;
}

int cmd_test(const Options& o, std::ostream& out, std::ostream& err) {
    auto lex = load_lexicon(o, err, true);
    if (!lex) return kOperational;
    auto po = parse_options(o, err);
    if (!po) return kOperational;
    auto text = read_file(o.suite_path);
    if (!text) {
        err << "error: cannot read suite '" << o.suite_path << "'\n";
        return kOperational;
    }
    std::vector<SuiteCase> cases;
    try {
        cases = parse_suite(*text);
    } catch (const SuiteFormatError& e) {
        err << "error: suite " << e.what() << '\n';
        return kOperational;
    }
    std::size_t failed = 0;
    for (const auto& c : cases) {
        CaseOutcome oc = run_case(*lex, c, *po, o.case_fold);
        if (!oc.pass) ++failed;
        out << (oc.pass ? "PASS" : "FAIL") << "  line " << std::setw(3) << c.line << "  " << c.sentence << "  ("
            << oc.actual_count << "/" << c.expected_count << ")";
        if (!oc.pass) out << "  " << oc.detail;
        out << '\n';
    }
    out << cases.size() - failed << "/" << cases.size() << " passed\n";
    return failed ? kNegative : kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CCG parser and lexicon toolkit for multi-word expressions", "paraccg"};
    app.require_subcommand(1);
    Options o;

    auto add_lexicon = [&](CLI::App* sub) {
        sub->add_option("-l,--lexicon", o.lexicon_path, "Lexicon file")->required();
    };
    auto add_parse_flags = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "Emit the derivation document as JSON");
        sub->add_flag("--all-derivations", o.all_derivations, "Keep every derivation instead of packing readings");
        sub->add_option("--goal", o.goal, "Category the spanning edge must unify with");
        sub->add_option("--weight-threshold", o.weight_threshold, "Maximum token count of a light constituent")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-steps", o.max_steps, "Beta-reduction budget per edge")->check(CLI::PositiveNumber);
        sub->add_flag("--case-fold", o.case_fold, "Lower-case tokens and lexicon forms");
    };

    auto* parse_cmd = app.add_subcommand("parse", "Parse a sentence and print its derivations");
    add_lexicon(parse_cmd);
    add_parse_flags(parse_cmd);
    parse_cmd->add_option("sentence", o.sentence, "Sentence to parse")->required();

    auto* validate_cmd = app.add_subcommand("validate", "Check a lexicon for structural violations");
    add_lexicon(validate_cmd);

    auto* test_cmd = app.add_subcommand("test", "Run a test suite against a lexicon");
    add_lexicon(test_cmd);
    add_parse_flags(test_cmd);
    test_cmd->add_option("suite", o.suite_path, "Suite file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kOperational;
    }

    if (*parse_cmd) return cmd_parse(o, out, err);
    if (*validate_cmd) return cmd_validate(o, out, err);
    return cmd_test(o, out, err);
}

}  // namespace paraccg::cli
