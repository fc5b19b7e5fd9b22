#include "lexnet/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace lexnet {

namespace {

// Eccentricity of source by BFS; scratch buffers reused across sources.
std::uint32_t bfs_eccentricity(const std::vector<std::uint32_t>& offsets,
                               const std::vector<std::uint32_t>& adjacency,
                               std::uint32_t source,
                               std::vector<std::uint32_t>& dist,
                               std::vector<std::uint32_t>& queue) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    std::uint32_t farthest = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        farthest = dist[u];
        for (std::uint32_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            const std::uint32_t v = adjacency[i];
            if (dist[v] == UINT32_MAX) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return farthest;
}

}  // namespace

Network::Network(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : vertex_count_(n) {
    if (n < 2) throw std::invalid_argument("network: need at least two vertices");
    offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::uint32_t u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];
    adjacency_.resize(2 * edges.size());
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        adjacency_[cursor[u]++] = v;
        adjacency_[cursor[v]++] = u;
    }
    for (std::uint32_t u = 0; u < n; ++u)
        std::sort(adjacency_.begin() + offsets_[u], adjacency_.begin() + offsets_[u + 1]);

    std::vector<std::uint32_t> dist(n), queue;
    queue.reserve(n);
    if (bfs_eccentricity(offsets_, adjacency_, 0, dist, queue) == 0 || queue.size() != n)
        throw EdgeListError(EdgeListError::Kind::disconnected, "network: graph is not connected");
    diameter_ = 0;
    for (std::uint32_t u = 0; u < n; ++u)
        diameter_ = std::max(diameter_, bfs_eccentricity(offsets_, adjacency_, u, dist, queue));
}

Network Network::torus(std::uint32_t width, std::uint32_t height) {
    if (width < 3 || height < 3)
        throw std::invalid_argument(
            "torus: width and height must be >= 3 (smaller sizes collapse the "
            "Von Neumann neighbors into duplicate edges)");
    const auto id = [width](std::uint32_t row, std::uint32_t col) { return row * width + col; };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(static_cast<std::size_t>(2) * width * height);
    for (std::uint32_t row = 0; row < height; ++row)
        for (std::uint32_t col = 0; col < width; ++col) {
            edges.emplace_back(id(row, col), id(row, (col + 1) % width));
            edges.emplace_back(id(row, col), id((row + 1) % height, col));
        }
    return Network(width * height, std::move(edges));
}

Network Network::from_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::uint64_t declared_n = 0;
    bool have_header = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;  // blank or comment-only line
        const auto fail = [&](const std::string& what) {
            throw EdgeListError(EdgeListError::Kind::parse,
                                "edge list line " + std::to_string(line_no) + ": " + what);
        };
        if (!have_header) {
            std::string count;
            if (first != "n" || !(fields >> count)) fail("expected header 'n <count>'");
            const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), declared_n);
            if (ec != std::errc{} || ptr != count.data() + count.size() || declared_n < 2)
                fail("vertex count must be an integer >= 2");
            have_header = true;
            continue;
        }
        std::string second;
        if (!(fields >> second)) fail("expected 'u v'");
        const auto parse_vertex = [&](const std::string& s) -> std::uint32_t {
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad vertex id '" + s + "'");
            if (v >= declared_n) fail("vertex id " + s + " out of range [0, " + std::to_string(declared_n) + ")");
            return static_cast<std::uint32_t>(v);
        };
        std::uint32_t u = parse_vertex(first);
        std::uint32_t v = parse_vertex(second);
        std::string extra;
        if (fields >> extra) fail("trailing tokens after 'u v'");
        if (u == v)
            throw EdgeListError(EdgeListError::Kind::self_loop,
                                "edge list line " + std::to_string(line_no) + ": self-loop at vertex " +
                                    std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.emplace(u, v).second)
            throw EdgeListError(EdgeListError::Kind::duplicate_edge,
                                "edge list line " + std::to_string(line_no) + ": duplicate edge " +
                                    std::to_string(u) + " " + std::to_string(v));
        edges.emplace_back(u, v);
    }
    if (!have_header)
        throw EdgeListError(EdgeListError::Kind::parse, "edge list: missing 'n <count>' header");
    return Network(static_cast<std::uint32_t>(declared_n), std::move(edges));
}

Network Network::from_edge_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read topology file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_edge_list(buffer.str());
}

Network Network::random_connected(std::uint32_t n, std::uint32_t extra_edges, Rng& rng) {
    if (n < 2) throw std::invalid_argument("random_connected: need at least two vertices");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t v = 1; v < n; ++v) {
        const auto parent = static_cast<std::uint32_t>(bounded(rng, v));
        edges.emplace_back(std::min(parent, v), std::max(parent, v));
        seen.insert(edges.back());
    }
    for (std::uint32_t attempt = 0; attempt < extra_edges; ++attempt) {
        auto u = static_cast<std::uint32_t>(bounded(rng, n));
        auto v = static_cast<std::uint32_t>(bounded(rng, n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!seen.emplace(u, v).second) continue;
        edges.emplace_back(u, v);
    }
    return Network(n, std::move(edges));
}

std::string_view to_string(ScheduleKind kind) {
    return kind == ScheduleKind::fully_async ? "async" : "sequential";
}

std::string_view to_string(PermutationKind kind) {
    return kind == PermutationKind::identity ? "identity" : "random";
}

Schedule Schedule::make_async(std::uint32_t n) {
    return Schedule{ScheduleKind::fully_async, n, {}};
}

Schedule Schedule::make_sequential_identity(std::uint32_t n) {
    Schedule s{ScheduleKind::sequential, n, std::vector<std::uint32_t>(n)};
    std::iota(s.permutation.begin(), s.permutation.end(), 0u);
    return s;
}

Schedule Schedule::make_sequential_random(std::uint32_t n, Rng& rng) {
    Schedule s = make_sequential_identity(n);
    shuffle(s.permutation, rng);
    return s;
}

std::uint32_t next_vertex(const Schedule& schedule, std::uint64_t t, Rng& rng) {
    if (schedule.kind == ScheduleKind::sequential)
        return schedule.permutation[t % schedule.vertex_count];
    return static_cast<std::uint32_t>(bounded(rng, schedule.vertex_count));
}

}  // namespace lexnet
