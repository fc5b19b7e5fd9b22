// Interaction graphs (periodic 2-D lattice with Von Neumann neighborhood,
// arbitrary connected simple graphs) and the two update schedules.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lexnet/rng.hpp"

namespace lexnet {

struct EdgeListError : std::invalid_argument {
    enum class Kind { parse, self_loop, duplicate_edge, disconnected };

    EdgeListError(Kind k, const std::string& message)
        : std::invalid_argument(message), kind(k) {}

    Kind kind;
};

// Undirected connected simple graph, immutable after construction and
// shareable across concurrent trials. Adjacency is CSR-packed with each
// neighbor list sorted; the diameter is computed by BFS at construction.
class Network {
public:
    // Periodic width x height lattice, Von Neumann neighborhood. Both sides
    // must be >= 3 so the four wraparound neighbors stay distinct.
    static Network torus(std::uint32_t width, std::uint32_t height);

    // Plain-text edge list: '#' comment lines, a header "n <count>", then one
    // "u v" pair per line. Rejects self-loops, duplicate edges and
    // disconnected input, each with its own error kind.
    static Network from_edge_list(std::string_view text);
    static Network from_edge_list_file(const std::string& path);

    // Random tree plus extra_edges additional random edges (attempts that
    // would create a loop or duplicate are skipped). Deterministic in rng.
    static Network random_connected(std::uint32_t n, std::uint32_t extra_edges, Rng& rng);

    std::uint32_t vertex_count() const { return vertex_count_; }
    std::uint64_t edge_count() const { return adjacency_.size() / 2; }
    std::uint64_t degree_sum() const { return adjacency_.size(); }
    std::uint32_t degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
    std::uint32_t diameter() const { return diameter_; }

    std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }

private:
    Network(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    std::uint32_t vertex_count_ = 0;
    std::uint32_t diameter_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> adjacency_;
};

enum class ScheduleKind { fully_async, sequential };
enum class PermutationKind { identity, random };

std::string_view to_string(ScheduleKind kind);
std::string_view to_string(PermutationKind kind);

// Vertex-selection order. Sequential updates walk a fixed permutation, one
// vertex per step; the fully-asynchronous scheme draws each step's vertex
// independently and uniformly.
struct Schedule {
    ScheduleKind kind = ScheduleKind::fully_async;
    std::uint32_t vertex_count = 0;
    std::vector<std::uint32_t> permutation;  // sequential only

    static Schedule make_async(std::uint32_t n);
    static Schedule make_sequential_identity(std::uint32_t n);
    static Schedule make_sequential_random(std::uint32_t n, Rng& rng);
};

// Sequential: permutation[t mod n], no generator use. Fully-asynchronous:
// uniform draw from [0, n), consuming the generator.
std::uint32_t next_vertex(const Schedule& schedule, std::uint64_t t, Rng& rng);

}  // namespace lexnet
