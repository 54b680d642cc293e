#ifndef PARACCG_DERIVATION_IO_HPP
#define PARACCG_DERIVATION_IO_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paraccg/parser.hpp"

namespace paraccg {

struct DerivationNode {
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<std::string> tokens;
    std::string category;
    std::string lf;
    std::string rule;  // LEX, >, <, >B, <B, >Bx, <Bx, >S, <S
    std::vector<DerivationNode> children;

    bool operator==(const DerivationNode&) const = default;
};

struct Reading {
    std::string category;
    std::string lf;
    DerivationNode tree;

    bool operator==(const Reading&) const = default;
};

struct DerivationDoc {
    std::vector<std::string> sentence;
    std::vector<Reading> readings;         // sorted by (category, lf)
    std::vector<DerivationNode> near_misses;  // only filled when readings is empty

    bool operator==(const DerivationDoc&) const = default;
};

DerivationNode to_node(const Edge& edge);
DerivationDoc make_doc(const ParseResult& result);

/// Proof-style display, one block per reading: the sentence, then each
/// step in post-order as an underline (`-` lexical, `=` plus rule label)
/// beneath its span followed by `category : lf`. The last line of a block
/// is the spanning category and LF.
std::string render_ascii(const DerivationDoc& doc);

std::string render_json(const DerivationDoc& doc);

class DerivationFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DerivationDoc read_json(std::string_view text);

}  // namespace paraccg

#endif
