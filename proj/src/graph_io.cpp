#include "perigid/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace perigid {

namespace {

constexpr std::string_view kHeader = "periodic-quotient-graph v1";

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) words.push_back(line.substr(start, i - start));
    }
    return words;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    Int value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

struct Cursor {
    const std::vector<std::string_view>& words;
    std::size_t pos;
    int line;

    bool done() const { return pos >= words.size(); }
    std::string_view peek() const { return done() ? std::string_view{} : words[pos]; }

    template <class Int>
    Int integer(const std::string& field) {
        if (done()) throw ParseError(line, field, "missing integer");
        auto v = parse_int<Int>(words[pos]);
        if (!v) throw ParseError(line, field, "not an integer: '" + std::string(words[pos]) + "'");
        ++pos;
        return *v;
    }

    Rational rational(const std::string& field) {
        if (done()) throw ParseError(line, field, "missing value");
        try {
            return parse_rational(words[pos++]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, field, e.what());
        }
    }
};

void append_rationals(std::string& out, std::span<const Rational> values) {
    for (const auto& x : values) {
        out += ' ';
        out += to_string(x);
    }
}

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& message)
    : std::invalid_argument("line " + std::to_string(line) + ": " + field + ": " + message),
      line_(line),
      field_(std::move(field)) {}

GraphFile parse_graph(std::string_view text) {
    std::optional<int> dimension, vertices;
    std::optional<std::vector<int>> weights;
    std::optional<RationalMatrix> lattice;
    std::vector<std::string> comments;
    std::vector<EdgeOrbit> edges;
    std::vector<int> edge_lines;
    bool header_seen = false;
    int dim_line = 0, vert_line = 0, weights_line = 0;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        const auto words = split_words(line);
        if (words.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (words[0][0] == '#') {
            auto body = line.substr(line.find('#') + 1);
            if (!body.empty() && body[0] == ' ') body.remove_prefix(1);
            while (!body.empty() && body.back() == '\r') body.remove_suffix(1);
            comments.emplace_back(body);
            continue;
        }
        if (!header_seen) {
            if (words.size() != 2 || words[0] != "periodic-quotient-graph") {
                throw ParseError(line_no, "header", "expected '" + std::string(kHeader) + "'");
            }
            if (words[1] != "v1") throw ParseError(line_no, "header", "unsupported version " + std::string(words[1]));
            header_seen = true;
            continue;
        }

        Cursor cur{words, 1, line_no};
        const std::string_view key = words[0];
        if (key == "dimension") {
            if (dimension) throw ParseError(line_no, "dimension", "given twice");
            dimension = cur.integer<int>("dimension");
            if (*dimension < 1) throw ParseError(line_no, "dimension", "must be at least 1");
            dim_line = line_no;
        } else if (key == "vertices") {
            if (vertices) throw ParseError(line_no, "vertices", "given twice");
            vertices = cur.integer<int>("vertices");
            if (*vertices < 1) throw ParseError(line_no, "vertices", "must be at least 1");
            vert_line = line_no;
        } else if (key == "weights") {
            if (weights) throw ParseError(line_no, "weights", "given twice");
            weights.emplace();
            while (!cur.done()) {
                weights->push_back(cur.integer<int>("weights[" + std::to_string(weights->size() + 1) + "]"));
            }
            weights_line = line_no;
        } else if (key == "lattice") {
            if (!dimension) throw ParseError(line_no, "lattice", "must come after dimension");
            const auto d = static_cast<std::size_t>(*dimension);
            RationalMatrix l(d, d);
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = 0; b < d; ++b) l(a, b) = cur.rational("lattice");
            }
            if (!cur.done()) throw ParseError(line_no, "lattice", "expected d^2 entries");
            lattice = std::move(l);
        } else if (key == "edge") {
            if (!dimension || !vertices) {
                throw ParseError(line_no, "edge", "dimension and vertices must come first");
            }
            const std::string name = "edge " + std::to_string(edges.size() + 1);
            EdgeOrbit e;
            e.tail = cur.integer<int>(name + " tail") - 1;
            e.head = cur.integer<int>(name + " head") - 1;
            for (VertexId v : {e.tail, e.head}) {
                if (v < 0 || v >= *vertices) throw ParseError(line_no, name, "vertex out of range");
            }
            if (cur.peek() != "gain") throw ParseError(line_no, name + " gain", "expected 'gain'");
            ++cur.pos;
            while (!cur.done() && cur.peek() != "q_tail" && cur.peek() != "q_head") {
                e.gain.push_back(cur.integer<std::int64_t>(name + " gain"));
            }
            if (e.gain.size() != static_cast<std::size_t>(*dimension)) {
                throw ParseError(line_no, name + " gain",
                                 "has " + std::to_string(e.gain.size()) + " entries, expected " +
                                     std::to_string(*dimension));
            }
            // Endpoints are all or nothing: q_tail then q_head.
            if (!cur.done()) {
                for (const char* tag : {"q_tail", "q_head"}) {
                    if (cur.peek() != tag) {
                        throw ParseError(line_no, name + " " + tag, "expected '" + std::string(tag) + "'");
                    }
                    ++cur.pos;
                    Point q;
                    for (int a = 0; a < *dimension; ++a) q.push_back(cur.rational(name + " " + tag));
                    (std::string_view(tag) == "q_tail" ? e.q_tail : e.q_head) = std::move(q);
                }
            }
            if (!cur.done()) throw ParseError(line_no, name, "unexpected '" + std::string(cur.peek()) + "'");
            edges.push_back(std::move(e));
            edge_lines.push_back(line_no);
        } else {
            throw ParseError(line_no, std::string(key), "unknown record");
        }
        if (!cur.done()) throw ParseError(line_no, std::string(key), "trailing values");
    }

    if (!header_seen) throw ParseError(line_no, "header", "missing header");
    if (!dimension) throw ParseError(line_no, "dimension", "missing");
    if (!vertices) throw ParseError(line_no, "vertices", "missing");
    if (weights && weights->size() != static_cast<std::size_t>(*vertices)) {
        throw ParseError(weights_line, "weights", "expected one weight per vertex");
    }
    try {
        QuotientGraph g(*dimension, *vertices, std::move(edges), std::move(weights));
        return GraphFile{std::move(g), std::move(lattice), std::move(comments)};
    } catch (const GraphError& e) {
        // Map the constructor's 0-based field back to a file line.
        const std::string& f = e.field();
        int line = 0;
        std::string field = f;
        if (f.rfind("edges[", 0) == 0) {
            const auto close = f.find(']');
            const auto idx = static_cast<std::size_t>(std::stoul(f.substr(6, close - 6)));
            line = edge_lines.at(idx);
            field = "edge " + std::to_string(idx + 1) + (close + 1 < f.size() ? " " + f.substr(close + 2) : "");
        } else if (f.rfind("weights[", 0) == 0) {
            line = weights_line;
            field = "weights[" + std::to_string(std::stoul(f.substr(8)) + 1) + "]";
        } else if (f.rfind("weights", 0) == 0) {
            line = weights_line;
        } else if (f == "dimension") {
            line = dim_line;
        } else if (f == "vertices") {
            line = vert_line;
        }
        const std::string what = e.what();
        throw ParseError(line, field, what.substr(what.find(": ") + 2));
    }
}

std::string write_graph(const GraphFile& file) {
    const auto& g = file.graph;
    std::string out(kHeader);
    out += '\n';
    for (const auto& c : file.comments) out += "# " + c + "\n";
    out += "dimension " + std::to_string(g.dimension()) + "\n";
    out += "vertices " + std::to_string(g.vertex_count()) + "\n";
    if (g.weights()) {
        out += "weights";
        for (int k : *g.weights()) out += " " + std::to_string(k);
        out += '\n';
    }
    if (file.lattice) {
        out += "lattice";
        for (std::size_t r = 0; r < file.lattice->rows(); ++r) append_rationals(out, file.lattice->row(r));
        out += '\n';
    }
    for (const auto& e : g.edges()) {
        out += "edge " + std::to_string(e.tail + 1) + " " + std::to_string(e.head + 1) + " gain";
        for (auto c : e.gain) out += " " + std::to_string(c);
        if (e.q_tail && e.q_head) {
            out += " q_tail";
            append_rationals(out, *e.q_tail);
            out += " q_head";
            append_rationals(out, *e.q_head);
        }
        out += '\n';
    }
    return out;
}

std::string write_graph(const QuotientGraph& g) { return write_graph(GraphFile{g, std::nullopt, {}}); }

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace perigid
