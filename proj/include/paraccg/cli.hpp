#ifndef PARACCG_CLI_HPP
#define PARACCG_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paraccg/lexicon.hpp"
#include "paraccg/parser.hpp"

namespace paraccg::cli {

// Exit codes.
constexpr int kSuccess = 0;
constexpr int kNegative = 1;     // no parse, violations, failing tests
constexpr int kOperational = 2;  // unreadable input, usage, unknown token

/// One line of a test suite:
///   sentence <TAB> expected_parse_count <TAB> lf_1 | lf_2 | ...
/// with `-` in the last column to skip the LF comparison.
struct SuiteCase {
    std::size_t line = 0;
    std::string sentence;
    std::size_t expected_count = 0;
    std::optional<std::vector<std::string>> expected_lfs;
};

class SuiteFormatError : public std::runtime_error {
public:
    SuiteFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

std::vector<SuiteCase> parse_suite(std::string_view text);

struct CaseOutcome {
    bool pass = false;
    std::size_t actual_count = 0;
    std::string detail;
};

CaseOutcome run_case(const Lexicon& lex, const SuiteCase& c, const ParseOptions& options, bool case_fold = false);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paraccg::cli

#endif
