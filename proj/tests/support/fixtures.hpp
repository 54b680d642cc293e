#ifndef PARACCG_TESTS_FIXTURES_HPP
#define PARACCG_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "paraccg/lexicon.hpp"

namespace fixtures {

inline std::string source_path(const std::string& rel) { return std::string(PARACCG_SOURCE_DIR) + "/" + rel; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fragment_text() { return read_text(source_path("grammars/fg2018.ccg")); }

inline const paraccg::Lexicon& fragment() {
    static const paraccg::Lexicon lex = [] {
        auto lp = paraccg::parse_lexicon(fragment_text());
        if (!lp.ok()) throw std::runtime_error("fragment does not parse");
        return lp.lexicon;
    }();
    return lex;
}

}  // namespace fixtures

#endif
