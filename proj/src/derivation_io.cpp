#include "paraccg/derivation_io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace paraccg {

using json = nlohmann::ordered_json;

DerivationNode to_node(const Edge& edge) {
    DerivationNode n;
    n.start = edge.start;
    n.end = edge.end;
    n.tokens = edge.tokens;
    n.category = display(edge.category);
    n.lf = pretty_print(edge.lf);
    n.rule = rule_label(edge.rule);
    for (const auto& c : edge.children) n.children.push_back(to_node(*c));
    return n;
}

DerivationDoc make_doc(const ParseResult& result) {
    DerivationDoc doc;
    doc.sentence = result.tokens;
    for (const auto& e : result.readings) {
        DerivationNode tree = to_node(*e);
        doc.readings.push_back({tree.category, tree.lf, std::move(tree)});
    }
    std::stable_sort(doc.readings.begin(), doc.readings.end(), [](const Reading& a, const Reading& b) {
        return std::tie(a.category, a.lf) < std::tie(b.category, b.lf);
    });
    if (doc.readings.empty() && result.status == ParseStatus::NO_PARSE) {
        for (const auto& e : result.chart.longest_edges()) {
            DerivationNode n = to_node(*e);
            n.children.clear();
            doc.near_misses.push_back(std::move(n));
        }
    }
    return doc;
}

// ---------------------------------------------------------------------------
// ASCII

namespace {

struct Layout {
    std::vector<std::size_t> begin;  // column of each token
    std::vector<std::size_t> end;    // one past its last column
    std::string header;
};

Layout layout(const std::vector<std::string>& sentence) {
    Layout l;
    for (const auto& tok : sentence) {
        if (!l.header.empty()) l.header += "  ";
        l.begin.push_back(l.header.size());
        l.header += tok;
        l.end.push_back(l.header.size());
    }
    return l;
}

void render_steps(std::ostream& os, const DerivationNode& node, const Layout& l) {
    for (const auto& c : node.children) render_steps(os, c, l);
    std::size_t from = node.start < l.begin.size() ? l.begin[node.start] : 0;
    std::size_t to = node.end >= 1 && node.end - 1 < l.end.size() ? l.end[node.end - 1] : from + 1;
    std::string indent(from, ' ');
    bool lexical = node.rule == "LEX";
    os << indent << std::string(std::max<std::size_t>(to - from, 1), lexical ? '-' : '=');
    if (!lexical) os << ' ' << node.rule;
    os << '\n' << indent << node.category << " : " << node.lf << '\n';
}

std::string join(const std::vector<std::string>& toks) {
    std::string s;
    for (std::size_t i = 0; i < toks.size(); ++i) s += (i ? " " : "") + toks[i];
    return s;
}

}  // namespace

std::string render_ascii(const DerivationDoc& doc) {
    std::ostringstream os;
    Layout l = layout(doc.sentence);
    if (doc.readings.empty()) {
        os << "NO PARSE: " << join(doc.sentence) << '\n';
        if (!doc.near_misses.empty()) {
            os << "longest constituents:\n";
            for (const auto& n : doc.near_misses)
                os << "  [" << n.start << ", " << n.end << ") " << join(n.tokens) << " := " << n.category << " : "
                   << n.lf << '\n';
        }
        return os.str();
    }
    for (std::size_t i = 0; i < doc.readings.size(); ++i) {
        const auto& r = doc.readings[i];
        if (i) os << '\n';
        os << "reading " << (i + 1) << "/" << doc.readings.size() << ": " << r.category << " : " << r.lf << '\n';
        os << l.header << '\n';
        render_steps(os, r.tree, l);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json node_to_json(const DerivationNode& n, bool with_children) {
    json j;
    j["span"] = {n.start, n.end};
    j["tokens"] = n.tokens;
    j["category"] = n.category;
    j["lf"] = n.lf;
    j["rule"] = n.rule;
    if (with_children) {
        j["children"] = json::array();
        for (const auto& c : n.children) j["children"].push_back(node_to_json(c, true));
    }
    return j;
}

DerivationNode node_from_json(const json& j) {
    DerivationNode n;
    const auto& span = j.at("span");
    if (!span.is_array() || span.size() != 2) throw DerivationFormatError("span must be a [start, end] pair");
    n.start = span[0].get<std::size_t>();
    n.end = span[1].get<std::size_t>();
    n.tokens = j.at("tokens").get<std::vector<std::string>>();
    n.category = j.at("category").get<std::string>();
    n.lf = j.at("lf").get<std::string>();
    n.rule = j.at("rule").get<std::string>();
    if (!rule_from_label(n.rule)) throw DerivationFormatError("unknown rule label '" + n.rule + "'");
    if (j.contains("children"))
        for (const auto& c : j.at("children")) n.children.push_back(node_from_json(c));
    return n;
}

}  // namespace

std::string render_json(const DerivationDoc& doc) {
    json j;
    j["sentence"] = doc.sentence;
    j["readings"] = json::array();
    for (const auto& r : doc.readings) {
        json jr;
        jr["category"] = r.category;
        jr["lf"] = r.lf;
        jr["tree"] = node_to_json(r.tree, true);
        j["readings"].push_back(std::move(jr));
    }
    j["near_misses"] = json::array();
    for (const auto& n : doc.near_misses) j["near_misses"].push_back(node_to_json(n, false));
    return j.dump(2) + "\n";
}

DerivationDoc read_json(std::string_view text) {
    try {
        json j = json::parse(text);
        DerivationDoc doc;
        doc.sentence = j.at("sentence").get<std::vector<std::string>>();
        for (const auto& jr : j.at("readings"))
            doc.readings.push_back(
                {jr.at("category").get<std::string>(), jr.at("lf").get<std::string>(), node_from_json(jr.at("tree"))});
        if (j.contains("near_misses"))
            for (const auto& n : j.at("near_misses")) doc.near_misses.push_back(node_from_json(n));
        return doc;
    } catch (const json::exception& e) {
        throw DerivationFormatError(std::string("derivation JSON: ") + e.what());
    }
}

}  // namespace paraccg
