#include "edpc/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iostream>
#include <map>

namespace edpc {

Graph::Graph(int node_count, std::vector<std::pair<int, int>> edges,
             std::vector<long long> external_ids)
    : n_(node_count) {
    if (n_ < 0) throw validation_error("node count must be nonnegative");
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw validation_error("edge endpoint out of range: (" + std::to_string(u) + "," +
                                   std::to_string(v) + ")");
        if (u == v) throw validation_error("self-edge not allowed: " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw validation_error("duplicate edge");
    edges_ = std::move(edges);

    std::vector<int> deg(n_, 0);
    for (auto [u, v] : edges_) { ++deg[u]; ++deg[v]; }
    adj_offset_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) adj_offset_[v + 1] = adj_offset_[v] + deg[v];
    adj_flat_.resize(adj_offset_[n_]);
    std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
    for (auto [u, v] : edges_) {
        adj_flat_[cursor[u]++] = v;
        adj_flat_[cursor[v]++] = u;
    }
    for (int v = 0; v < n_; ++v)
        std::sort(adj_flat_.begin() + adj_offset_[v], adj_flat_.begin() + adj_offset_[v + 1]);

    if (external_ids.empty()) {
        ids_.resize(n_);
        for (int v = 0; v < n_; ++v) ids_[v] = v;
    } else {
        if (static_cast<int>(external_ids.size()) != n_)
            throw validation_error("external id list size mismatch");
        ids_ = std::move(external_ids);
    }
    id_to_index_.reserve(ids_.size());
    for (int v = 0; v < n_; ++v) {
        if (!id_to_index_.emplace(ids_[v], v).second)
            throw validation_error("duplicate external id " + std::to_string(ids_[v]));
    }
}

std::span<const int> Graph::neighbors(int v) const {
    check_node(v);
    return {adj_flat_.data() + adj_offset_[v],
            static_cast<std::size_t>(adj_offset_[v + 1] - adj_offset_[v])};
}

int Graph::degree(int v) const {
    check_node(v);
    return adj_offset_[v + 1] - adj_offset_[v];
}

long long Graph::external_id(int v) const {
    check_node(v);
    return ids_[v];
}

std::optional<int> Graph::index_of(long long external_id) const {
    auto it = id_to_index_.find(external_id);
    if (it == id_to_index_.end()) return std::nullopt;
    return it->second;
}

void Graph::check_node(int v) const {
    if (v < 0 || v >= n_)
        throw validation_error("node index out of range: " + std::to_string(v));
}

namespace {

struct Line {
    std::string_view text;
    int number;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back({line, number});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
        ++number;
    }
    return out;
}

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

long long parse_int_token(std::string_view tok, int line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error("malformed token '" + std::string(tok) + "'", line);
    return value;
}

bool is_comment_or_blank(std::string_view line) {
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '#';
    }
    return true;
}

} // namespace

// dense-index cap: downstream kernels allocate n x n matrices
constexpr long long kMaxNodeIndex = 10'000'000;

Graph load_edge_list(std::string_view text, Indexing indexing) {
    const long long base = indexing == Indexing::one_based ? 1 : 0;
    std::vector<std::pair<int, int>> edges;
    long long max_index = -1;
    int dropped_self_loops = 0;

    for (const Line& line : split_lines(text)) {
        if (is_comment_or_blank(line.text)) continue;
        auto toks = tokens_of(line.text);
        if (toks.size() != 2)
            throw parse_error("expected two node indices, got " + std::to_string(toks.size()) +
                                  " tokens",
                              line.number);
        long long u = parse_int_token(toks[0], line.number) - base;
        long long v = parse_int_token(toks[1], line.number) - base;
        if (u < 0 || v < 0)
            throw validation_error("line " + std::to_string(line.number) +
                                   ": negative node index after applying " +
                                   (base ? std::string("one-based") : std::string("zero-based")) +
                                   " indexing");
        if (u >= kMaxNodeIndex || v >= kMaxNodeIndex)
            throw validation_error("line " + std::to_string(line.number) +
                                   ": node index exceeds the supported maximum " +
                                   std::to_string(kMaxNodeIndex));
        max_index = std::max({max_index, u, v});
        if (u == v) {
            ++dropped_self_loops;
            continue;
        }
        if (u > v) std::swap(u, v);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (dropped_self_loops > 0)
        std::cerr << "warning: dropped " << dropped_self_loops << " self-loop(s) from edge list\n";

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const int n = static_cast<int>(max_index + 1);
    std::vector<long long> ids(n);
    for (int v = 0; v < n; ++v) ids[v] = v + base;
    return Graph(n, std::move(edges), std::move(ids));
}

std::string to_edge_list(const Graph& graph) {
    std::string out;
    for (auto [u, v] : graph.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// GML subset
// ---------------------------------------------------------------------------

namespace {

struct GmlToken {
    enum class Kind { key, integer, real, string, open, close, eof };
    Kind kind = Kind::eof;
    std::string text;
    long long int_value = 0;
    int line = 0;
};

class GmlLexer {
public:
    explicit GmlLexer(std::string_view text) : text_(text) {}

    GmlToken next() {
        skip_space();
        GmlToken tok;
        tok.line = line_;
        if (pos_ >= text_.size()) return tok;
        char ch = text_[pos_];
        if (ch == '[') { ++pos_; tok.kind = GmlToken::Kind::open; return tok; }
        if (ch == ']') { ++pos_; tok.kind = GmlToken::Kind::close; return tok; }
        if (ch == '"') {
            ++pos_;
            std::string value;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') ++line_;
                value += text_[pos_++];
            }
            if (pos_ >= text_.size()) throw parse_error("unterminated string", tok.line);
            ++pos_;
            tok.kind = GmlToken::Kind::string;
            tok.text = std::move(value);
            return tok;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '[' && text_[pos_] != ']')
            ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
        if (ec == std::errc{} && ptr == word.data() + word.size()) {
            tok.kind = GmlToken::Kind::integer;
            tok.int_value = value;
            tok.text = std::string(word);
            return tok;
        }
        double real = 0;
        auto [rptr, rec] = std::from_chars(word.data(), word.data() + word.size(), real);
        if (rec == std::errc{} && rptr == word.data() + word.size()) {
            tok.kind = GmlToken::Kind::real;
            tok.text = std::string(word);
            return tok;
        }
        tok.kind = GmlToken::Kind::key;
        tok.text = std::string(word);
        return tok;
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == '\n') { ++line_; ++pos_; }
            else if (std::isspace(static_cast<unsigned char>(ch))) ++pos_;
            else break;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

struct GmlValue {
    enum class Kind { integer, real, string, list };
    Kind kind = Kind::integer;
    long long int_value = 0;
    std::string text;
    std::vector<std::pair<std::string, GmlValue>> list;
    int line = 0;
};

GmlValue parse_value(GmlLexer& lex, GmlToken first);

std::vector<std::pair<std::string, GmlValue>> parse_pairs(GmlLexer& lex, int open_line,
                                                          bool top_level) {
    std::vector<std::pair<std::string, GmlValue>> pairs;
    for (;;) {
        GmlToken tok = lex.next();
        if (tok.kind == GmlToken::Kind::eof) {
            if (!top_level) throw parse_error("unbalanced brackets: missing ']'", open_line);
            return pairs;
        }
        if (tok.kind == GmlToken::Kind::close) {
            if (top_level) throw parse_error("unbalanced brackets: unexpected ']'", tok.line);
            return pairs;
        }
        if (tok.kind != GmlToken::Kind::key)
            throw parse_error("expected key, got '" + tok.text + "'", tok.line);
        std::string key = tok.text;
        GmlValue value = parse_value(lex, lex.next());
        pairs.emplace_back(std::move(key), std::move(value));
    }
}

GmlValue parse_value(GmlLexer& lex, GmlToken tok) {
    GmlValue value;
    value.line = tok.line;
    switch (tok.kind) {
    case GmlToken::Kind::integer:
        value.kind = GmlValue::Kind::integer;
        value.int_value = tok.int_value;
        value.text = tok.text;
        return value;
    case GmlToken::Kind::real:
        value.kind = GmlValue::Kind::real;
        value.text = tok.text;
        return value;
    case GmlToken::Kind::string:
    case GmlToken::Kind::key:
        value.kind = GmlValue::Kind::string;
        value.text = tok.text;
        return value;
    case GmlToken::Kind::open:
        value.kind = GmlValue::Kind::list;
        value.list = parse_pairs(lex, tok.line, false);
        return value;
    case GmlToken::Kind::close:
        throw parse_error("unbalanced brackets: unexpected ']'", tok.line);
    case GmlToken::Kind::eof:
        throw parse_error("unexpected end of input after key", tok.line);
    }
    throw parse_error("unreachable", tok.line);
}

const GmlValue* find_key(const std::vector<std::pair<std::string, GmlValue>>& pairs,
                         std::string_view key) {
    for (const auto& [k, v] : pairs)
        if (k == key) return &v;
    return nullptr;
}

} // namespace

GmlFile load_gml(std::string_view text) {
    GmlLexer lex(text);
    auto top = parse_pairs(lex, 0, true);
    const GmlValue* graph_value = find_key(top, "graph");
    if (graph_value == nullptr || graph_value->kind != GmlValue::Kind::list)
        throw parse_error("missing 'graph [ ... ]' block");

    std::vector<long long> ids;
    std::vector<std::optional<std::string>> raw_values;
    std::unordered_map<long long, int> index_of;
    std::vector<std::pair<int, int>> edges;
    int dropped_self_loops = 0;

    for (const auto& [key, value] : graph_value->list) {
        if (key == "node") {
            if (value.kind != GmlValue::Kind::list)
                throw parse_error("node must be a '[ ... ]' block", value.line);
            const GmlValue* id = find_key(value.list, "id");
            if (id == nullptr || id->kind != GmlValue::Kind::integer)
                throw parse_error("node missing integer id", value.line);
            if (!index_of.emplace(id->int_value, static_cast<int>(ids.size())).second)
                throw validation_error("duplicate node id " + std::to_string(id->int_value));
            ids.push_back(id->int_value);
            const GmlValue* node_value = find_key(value.list, "value");
            if (node_value != nullptr &&
                (node_value->kind == GmlValue::Kind::integer ||
                 node_value->kind == GmlValue::Kind::string))
                raw_values.emplace_back(node_value->text);
            else
                raw_values.emplace_back(std::nullopt);
        } else if (key == "edge") {
            if (value.kind != GmlValue::Kind::list)
                throw parse_error("edge must be a '[ ... ]' block", value.line);
            const GmlValue* source = find_key(value.list, "source");
            const GmlValue* target = find_key(value.list, "target");
            if (source == nullptr || source->kind != GmlValue::Kind::integer)
                throw parse_error("edge missing integer source", value.line);
            if (target == nullptr || target->kind != GmlValue::Kind::integer)
                throw parse_error("edge missing integer target", value.line);
            auto su = index_of.find(source->int_value);
            auto tv = index_of.find(target->int_value);
            if (su == index_of.end())
                throw validation_error("edge references undeclared node " +
                                       std::to_string(source->int_value));
            if (tv == index_of.end())
                throw validation_error("edge references undeclared node " +
                                       std::to_string(target->int_value));
            int u = su->second, v = tv->second;
            if (u == v) {
                ++dropped_self_loops;
                continue;
            }
            if (u > v) std::swap(u, v);
            edges.emplace_back(u, v);
        }
        // other keys (Creator, directed, graphics, ...) are ignored
    }
    if (dropped_self_loops > 0)
        std::cerr << "warning: dropped " << dropped_self_loops << " self-loop(s) from GML\n";

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const int n = static_cast<int>(ids.size());
    GmlFile out{Graph(n, std::move(edges), std::move(ids)), std::nullopt};

    bool all_have_value = !raw_values.empty();
    for (const auto& rv : raw_values)
        if (!rv.has_value()) all_have_value = false;
    if (all_have_value) {
        GroundTruth truth;
        truth.labels.reserve(raw_values.size());
        bool all_int = true;
        std::vector<long long> as_int(raw_values.size());
        for (std::size_t i = 0; i < raw_values.size(); ++i) {
            const std::string& s = *raw_values[i];
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), as_int[i]);
            if (ec != std::errc{} || ptr != s.data() + s.size() || as_int[i] < 0) {
                all_int = false;
                break;
            }
        }
        if (all_int) {
            for (long long v : as_int) truth.labels.push_back(static_cast<int>(v));
        } else {
            // densify string values by first appearance
            std::map<std::string, int> dense;
            std::vector<std::string> order;
            for (const auto& rv : raw_values) {
                auto [it, inserted] = dense.emplace(*rv, static_cast<int>(order.size()));
                if (inserted) order.push_back(*rv);
                truth.labels.push_back(it->second);
            }
        }
        out.truth = std::move(truth);
    }
    return out;
}

GroundTruth load_labels(std::string_view text, const Graph& graph) {
    std::vector<std::optional<int>> labels(graph.node_count());
    for (const Line& line : split_lines(text)) {
        if (is_comment_or_blank(line.text)) continue;
        auto toks = tokens_of(line.text);
        if (toks.size() != 2)
            throw parse_error("expected 'node_id label', got " + std::to_string(toks.size()) +
                                  " tokens",
                              line.number);
        long long id = parse_int_token(toks[0], line.number);
        long long label = parse_int_token(toks[1], line.number);
        auto idx = graph.index_of(id);
        if (!idx.has_value())
            throw validation_error("line " + std::to_string(line.number) + ": unknown node id " +
                                   std::to_string(id));
        if (label < 0)
            throw validation_error("line " + std::to_string(line.number) + ": negative label");
        if (labels[*idx].has_value() && *labels[*idx] != label)
            throw validation_error("line " + std::to_string(line.number) +
                                   ": conflicting labels for node " + std::to_string(id));
        labels[*idx] = static_cast<int>(label);
    }
    GroundTruth truth;
    truth.labels.reserve(labels.size());
    for (int v = 0; v < graph.node_count(); ++v) {
        if (!labels[v].has_value())
            throw validation_error("node " + std::to_string(graph.external_id(v)) +
                                   " is missing a label");
        truth.labels.push_back(*labels[v]);
    }
    return truth;
}

} // namespace edpc
