#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace prnk {

using NodeId = std::int64_t;

/// Directed link graph with contiguous 0-based ids. Edges are stored
/// deduplicated, in first-appearance order of the source text, so that
/// writing and reparsing reproduces the graph exactly. `original_ids`
/// maps internal id -> id used in the input file.
struct Graph {
    NodeId n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> out_degree;
    std::vector<NodeId> original_ids;

    bool operator==(const Graph&) const = default;
};

struct GraphStats {
    NodeId n = 0;
    std::int64_t nnz = 0;
    NodeId zcol = 0;    // dangling nodes
    double a_nz = 0.0;  // nnz / n
    double den = 0.0;   // nnz / n^2 * 100
};

/// Column-stochastic transition matrix stored row-compressed: row i holds
/// the in-neighbours j of i with value 1/out_degree[j], so y <- Px streams
/// rows and is trivially row-partitionable. Column indices within a row
/// are sorted ascending (canonical order independent of edge input order).
struct TransitionMatrix {
    NodeId n = 0;
    std::vector<std::int64_t> row_ptr;  // size n+1
    std::vector<NodeId> col;            // size nnz
    std::vector<double> val;            // size nnz, val[k] = 1/out_degree[col[k]]
    std::vector<std::uint8_t> dangling; // size n, 1 iff out_degree == 0

    std::int64_t nnz() const { return static_cast<std::int64_t>(col.size()); }
};

/// SNAP-style edge list: '#' comments, "src<ws>dst" integer pairs.
/// Original ids are remapped to 0..n-1 in first-appearance order;
/// duplicate edges are dropped, self-loops kept.
Graph parse_edge_list(std::istream& in);

/// Matrix Market coordinate format (pattern or real, general, 1-based).
/// Entry (i,j) is taken as "j links to i", i.e. stored edge (j-1, i-1).
/// Real values are binarized; explicit zeros are dropped.
Graph parse_matrix_market(std::istream& in);

/// Inverse of parse_edge_list for the stored edge order.
void write_edge_list(const Graph& g, std::ostream& out);

TransitionMatrix build_transition(const Graph& g);

GraphStats graph_stats(const Graph& g);

/// Binary cache: magic "PRNK1", little-endian u64 n and nnz, then CSR by
/// source (row_ptr, dst) and the original-id table. Loading yields a graph
/// with edges in canonical (src, dst) order.
void write_graph_cache(const Graph& g, std::ostream& out);
Graph read_graph_cache(std::istream& in);
bool looks_like_graph_cache(std::istream& in); // peeks, does not consume

/// Dispatch helper used by the CLI: "snap", "mm", "cache" or "auto"
/// (auto sniffs cache magic / MatrixMarket banner, else SNAP).
Graph load_graph_file(const std::string& path, const std::string& format = "auto");

} // namespace prnk
