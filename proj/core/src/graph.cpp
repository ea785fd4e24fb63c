#include "prnk/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace prnk {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + what);
}

const char* skip_ws(const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
}

// Parses a nonnegative integer token; returns nullptr on failure.
const char* parse_id(const char* p, const char* end, NodeId& out) {
    auto [ptr, ec] = std::from_chars(p, end, out);
    if (ec != std::errc{} || out < 0) return nullptr;
    return ptr;
}

struct Remapper {
    std::unordered_map<NodeId, NodeId> to_internal;
    std::vector<NodeId> original;

    NodeId get(NodeId original_id) {
        auto [it, inserted] = to_internal.try_emplace(original_id, static_cast<NodeId>(original.size()));
        if (inserted) original.push_back(original_id);
        return it->second;
    }
};

std::uint64_t edge_key(NodeId s, NodeId d) {
    return (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint64_t>(d);
}

void finish_graph(Graph& g) {
    g.out_degree.assign(static_cast<std::size_t>(g.n), 0);
    for (const auto& [s, d] : g.edges) {
        (void)d;
        ++g.out_degree[static_cast<std::size_t>(s)];
    }
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw std::runtime_error("graph cache: truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

constexpr char kCacheMagic[5] = {'P', 'R', 'N', 'K', '1'};

} // namespace

Graph parse_edge_list(std::istream& in) {
    Graph g;
    Remapper remap;
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const char* p = line.data();
        const char* end = p + line.size();
        p = skip_ws(p, end);
        if (p == end || *p == '#') continue;

        NodeId src_orig = 0, dst_orig = 0;
        p = parse_id(p, end, src_orig);
        if (!p) parse_fail(line_no, "expected source id");
        const char* q = skip_ws(p, end);
        if (q == p) parse_fail(line_no, "expected whitespace between ids");
        p = parse_id(q, end, dst_orig);
        if (!p) parse_fail(line_no, "expected destination id");
        p = skip_ws(p, end);
        if (p != end) parse_fail(line_no, "trailing characters after edge");

        NodeId s = remap.get(src_orig);
        NodeId d = remap.get(dst_orig);
        if (seen.insert(edge_key(s, d)).second) g.edges.emplace_back(s, d);
    }

    if (g.edges.empty()) throw std::runtime_error("empty input: no edges found");
    g.n = static_cast<NodeId>(remap.original.size());
    g.original_ids = std::move(remap.original);
    finish_graph(g);
    return g;
}

Graph parse_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw std::runtime_error("empty input: missing MatrixMarket banner");
    ++line_no;
    {
        std::istringstream banner(line);
        std::string tag, object, format, field, symmetry;
        banner >> tag >> object >> format >> field >> symmetry;
        if (tag != "%%MatrixMarket" || object != "matrix")
            parse_fail(line_no, "not a MatrixMarket matrix file");
        if (format != "coordinate")
            throw std::runtime_error("unsupported format: only coordinate MatrixMarket is supported");
        if (field != "pattern" && field != "real" && field != "integer")
            throw std::runtime_error("unsupported format: field must be pattern or real");
        if (symmetry != "general")
            throw std::runtime_error("unsupported format: symmetry must be general");
    }

    // Skip comment lines, read the size line.
    NodeId rows = 0, cols = 0;
    std::int64_t declared_nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) throw std::runtime_error("missing MatrixMarket size line");
        ++line_no;
        const char* p = skip_ws(line.data(), line.data() + line.size());
        if (p == line.data() + line.size() || *p == '%') continue;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> declared_nnz)) parse_fail(line_no, "bad size line");
        break;
    }
    if (rows != cols) throw std::runtime_error("matrix must be square for a link graph");
    if (rows <= 0) throw std::runtime_error("matrix dimension must be positive");

    Graph g;
    g.n = rows;
    g.original_ids.resize(static_cast<std::size_t>(rows));
    for (NodeId i = 0; i < rows; ++i) g.original_ids[static_cast<std::size_t>(i)] = i + 1;

    std::unordered_set<std::uint64_t> seen;
    std::int64_t read_entries = 0;
    while (read_entries < declared_nnz) {
        if (!std::getline(in, line)) parse_fail(line_no + 1, "fewer entries than declared");
        ++line_no;
        const char* p = skip_ws(line.data(), line.data() + line.size());
        if (p == line.data() + line.size() || *p == '%') continue;
        std::istringstream entry(line);
        NodeId i = 0, j = 0;
        if (!(entry >> i >> j)) parse_fail(line_no, "expected coordinate entry");
        if (i < 1 || i > rows || j < 1 || j > cols)
            parse_fail(line_no, "index out of declared bounds");
        double value = 1.0;
        entry >> value; // absent for pattern files; binarized otherwise
        ++read_entries;
        if (value == 0.0) continue; // explicit stored zero: dropped
        // G(i,j) = 1 means j links to i.
        NodeId s = j - 1, d = i - 1;
        if (seen.insert(edge_key(s, d)).second) g.edges.emplace_back(s, d);
    }

    finish_graph(g);
    return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [s, d] : g.edges)
        out << g.original_ids[static_cast<std::size_t>(s)] << '\t'
            << g.original_ids[static_cast<std::size_t>(d)] << '\n';
}

TransitionMatrix build_transition(const Graph& g) {
    TransitionMatrix t;
    t.n = g.n;
    const auto n = static_cast<std::size_t>(g.n);
    t.row_ptr.assign(n + 1, 0);
    t.dangling.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        if (g.out_degree[j] == 0) t.dangling[j] = 1;

    // Row i of P collects in-neighbours of i: count, prefix, fill.
    for (const auto& [s, d] : g.edges) {
        (void)s;
        ++t.row_ptr[static_cast<std::size_t>(d) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) t.row_ptr[i + 1] += t.row_ptr[i];

    t.col.resize(g.edges.size());
    t.val.resize(g.edges.size());
    std::vector<std::int64_t> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (const auto& [s, d] : g.edges) {
        auto k = static_cast<std::size_t>(cursor[static_cast<std::size_t>(d)]++);
        t.col[k] = s;
        t.val[k] = 1.0 / static_cast<double>(g.out_degree[static_cast<std::size_t>(s)]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto b = t.col.begin() + t.row_ptr[i];
        auto e = t.col.begin() + t.row_ptr[i + 1];
        std::sort(b, e);
        // Re-derive values in the sorted order.
        for (auto k = t.row_ptr[i]; k < t.row_ptr[i + 1]; ++k)
            t.val[static_cast<std::size_t>(k)] =
                1.0 / static_cast<double>(g.out_degree[static_cast<std::size_t>(t.col[static_cast<std::size_t>(k)])]);
    }
    return t;
}

GraphStats graph_stats(const Graph& g) {
    if (g.n == 0) throw std::invalid_argument("graph_stats: empty graph");
    GraphStats s;
    s.n = g.n;
    s.nnz = static_cast<std::int64_t>(g.edges.size());
    s.zcol = static_cast<NodeId>(std::count(g.out_degree.begin(), g.out_degree.end(), NodeId{0}));
    s.a_nz = static_cast<double>(s.nnz) / static_cast<double>(g.n);
    s.den = static_cast<double>(s.nnz) / (static_cast<double>(g.n) * static_cast<double>(g.n)) * 100.0;
    return s;
}

void write_graph_cache(const Graph& g, std::ostream& out) {
    out.write(kCacheMagic, sizeof kCacheMagic);
    write_u64(out, static_cast<std::uint64_t>(g.n));
    write_u64(out, static_cast<std::uint64_t>(g.edges.size()));

    // CSR by source, destinations sorted within each row.
    const auto n = static_cast<std::size_t>(g.n);
    std::vector<std::uint64_t> row_ptr(n + 1, 0);
    for (const auto& [s, d] : g.edges) {
        (void)d;
        ++row_ptr[static_cast<std::size_t>(s) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
    std::vector<std::uint64_t> dst(g.edges.size());
    std::vector<std::uint64_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (const auto& [s, d] : g.edges) dst[cursor[static_cast<std::size_t>(s)]++] = static_cast<std::uint64_t>(d);
    for (std::size_t i = 0; i < n; ++i)
        std::sort(dst.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]),
                  dst.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]));

    for (auto v : row_ptr) write_u64(out, v);
    for (auto v : dst) write_u64(out, v);
    for (auto v : g.original_ids) write_u64(out, static_cast<std::uint64_t>(v));
    if (!out) throw std::runtime_error("graph cache: write failed");
}

Graph read_graph_cache(std::istream& in) {
    char magic[5];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kCacheMagic, sizeof kCacheMagic) != 0)
        throw std::runtime_error("graph cache: bad magic");
    Graph g;
    g.n = static_cast<NodeId>(read_u64(in));
    auto nnz = read_u64(in);
    const auto n = static_cast<std::size_t>(g.n);

    std::vector<std::uint64_t> row_ptr(n + 1);
    for (auto& v : row_ptr) v = read_u64(in);
    if (row_ptr[0] != 0 || row_ptr[n] != nnz) throw std::runtime_error("graph cache: inconsistent row pointers");
    g.edges.reserve(nnz);
    for (std::size_t s = 0; s < n; ++s) {
        for (auto k = row_ptr[s]; k < row_ptr[s + 1]; ++k) {
            auto d = read_u64(in);
            if (d >= static_cast<std::uint64_t>(g.n)) throw std::runtime_error("graph cache: destination out of range");
            g.edges.emplace_back(static_cast<NodeId>(s), static_cast<NodeId>(d));
        }
    }
    g.original_ids.resize(n);
    for (auto& v : g.original_ids) v = static_cast<NodeId>(read_u64(in));
    finish_graph(g);
    return g;
}

bool looks_like_graph_cache(std::istream& in) {
    char magic[5];
    in.read(magic, sizeof magic);
    bool match = in && std::memcmp(magic, kCacheMagic, sizeof kCacheMagic) == 0;
    in.clear();
    in.seekg(0);
    return match;
}

Graph load_graph_file(const std::string& path, const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::string fmt = format;
    if (fmt == "auto") {
        if (looks_like_graph_cache(in)) {
            fmt = "cache";
        } else {
            std::string first;
            std::getline(in, first);
            in.clear();
            in.seekg(0);
            fmt = first.rfind("%%MatrixMarket", 0) == 0 ? "mm" : "snap";
        }
    }
    if (fmt == "cache") return read_graph_cache(in);
    if (fmt == "mm") return parse_matrix_market(in);
    if (fmt == "snap") return parse_edge_list(in);
    throw std::invalid_argument("unknown graph format: " + format);
}

} // namespace prnk
