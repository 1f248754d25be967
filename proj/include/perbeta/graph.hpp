#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/field.hpp"
#include "perbeta/modular.hpp"
#include "perbeta/witness.hpp"

namespace perbeta::graph {

enum class Phase : std::uint8_t { A = 0, B = 1, C = 2 };

inline char phase_char(Phase p) { return static_cast<char>('A' + static_cast<int>(p)); }

/// Vertex of G(m, n): residues (z_d, ..., z_1) in display order, plus phase.
struct GraphVertex {
    std::vector<Residue> residues;
    Phase phase = Phase::A;

    /// z_i for 1 <= i <= d.
    Residue z(std::size_t i) const { return residues[residues.size() - i]; }

    bool is_origin() const
    {
        for (Residue r : residues)
            if (r != 0)
                return false;
        return true;
    }

    std::string name() const
    {
        std::string s;
        for (Residue r : residues)
            s += std::to_string(r) + ",";
        return s + phase_char(phase);
    }

    friend bool operator==(const GraphVertex&, const GraphVertex&) = default;
};

struct GraphEdge {
    GraphVertex from;
    GraphVertex to;
    Residue label;
};

struct WitnessPath {
    std::vector<GraphVertex> vertices;
    std::vector<Residue> labels; ///< c_0 .. c_{s-1}
    std::size_t k1 = 0;          ///< step index of the A -> B edge
    std::size_t k2 = 0;          ///< step index of the B -> C edge
};

/// Implicit G(m, n): vertices are encoded as integers
/// code = sum_i z_i n^(i-1) + phase * n^d, so the state space is [0, 3n^d).
class ImplicitGraph {
public:
    ImplicitGraph(const IntPoly& m, const Modulus& n) : n_(n)
    {
        require(m.degree() >= 1, ErrorKind::DegenerateInput, "graph needs deg m >= 1");
        d_ = static_cast<std::size_t>(m.degree());
        for (std::size_t i = 0; i <= d_; ++i)
            a_.push_back(n.reduce(m[i]));
        layer_ = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            require(layer_ <= (std::uint64_t{1} << 60) / static_cast<std::uint64_t>(n.value()),
                    ErrorKind::SizeBudgetExceeded, "state space does not fit in 64 bits");
            layer_ *= static_cast<std::uint64_t>(n.value());
        }
    }

    std::size_t degree() const { return d_; }
    const Modulus& modulus() const { return n_; }
    std::uint64_t layer_size() const { return layer_; }
    std::uint64_t state_count() const { return 3 * layer_; }

    std::uint64_t encode(const GraphVertex& v) const
    {
        std::uint64_t code = 0;
        for (std::size_t i = d_; i >= 1; --i)
            code = code * static_cast<std::uint64_t>(n_.value()) + static_cast<std::uint64_t>(v.z(i));
        return code + static_cast<std::uint64_t>(v.phase) * layer_;
    }

    GraphVertex decode(std::uint64_t code) const
    {
        GraphVertex v;
        v.phase = static_cast<Phase>(code / layer_);
        code %= layer_;
        v.residues.assign(d_, 0);
        for (std::size_t i = 1; i <= d_; ++i) {
            v.residues[d_ - i] = static_cast<Residue>(code % static_cast<std::uint64_t>(n_.value()));
            code /= static_cast<std::uint64_t>(n_.value());
        }
        return v;
    }

    /// The successor of `code` along label k, if that edge exists.
    ///
    /// Adding k*m(x) to sum y_i x^i gives a polynomial whose constant and
    /// middle coefficients become the next residues, shifted down one place;
    /// the top coefficient must be 0 (stay in phase), 1 (A -> B) or
    /// n - 1 (B -> C).
    std::optional<std::uint64_t> step(std::uint64_t code, Residue k) const
    {
        const auto phase = static_cast<Phase>(code / layer_);
        std::uint64_t rest = code % layer_;
        const auto nn = static_cast<std::uint64_t>(n_.value());
        scratch_.resize(d_ + 1);
        for (std::size_t i = 1; i <= d_; ++i) {
            scratch_[i] = static_cast<Residue>(rest % nn);
            rest /= nn;
        }
        const Residue top = n_.reduce(scratch_[d_] + k * a_[d_]);
        Phase next;
        if (top == 0)
            next = phase;
        else if (top == 1 && phase == Phase::A)
            next = Phase::B;
        else if (top == n_.value() - 1 && phase == Phase::B)
            next = Phase::C;
        else
            return std::nullopt;
        // z_1 = k a_0, z_{i+1} = y_i + k a_i
        std::uint64_t out = 0;
        for (std::size_t i = d_; i >= 2; --i)
            out = out * nn + static_cast<std::uint64_t>(n_.reduce(scratch_[i - 1] + k * a_[i - 1]));
        out = out * nn + static_cast<std::uint64_t>(n_.reduce(k * a_[0]));
        return out + static_cast<std::uint64_t>(next) * layer_;
    }

private:
    Modulus n_;
    std::size_t d_ = 0;
    std::vector<Residue> a_;
    std::uint64_t layer_ = 1;
    mutable std::vector<Residue> scratch_;
};

/// Out-edges of v in G(m, n), by increasing label.
inline std::vector<std::pair<Residue, GraphVertex>> neighbors(const GraphVertex& v,
                                                              const BaseSpec& base,
                                                              const Modulus& n)
{
    ImplicitGraph g(base.minpoly, n);
    require(v.residues.size() == g.degree(), ErrorKind::PreconditionViolated,
            "vertex has wrong number of residues");
    for (Residue r : v.residues)
        require(r >= 0 && r < n.value(), ErrorKind::PreconditionViolated,
                "vertex residue outside [0, n)");
    std::vector<std::pair<Residue, GraphVertex>> out;
    const std::uint64_t code = g.encode(v);
    for (Residue k = 0; k < n.value(); ++k)
        if (auto next = g.step(code, k))
            out.emplace_back(k, g.decode(*next));
    return out;
}

/// Breadth-first search from (0,...,0;A) to (0,...,0;C).
///
/// Edges are expanded in increasing label order, so among the shortest paths
/// the one returned has the lexicographically smallest label sequence.
inline WitnessPath shortest_path(const BaseSpec& base, const Modulus& n,
                                 std::uint64_t max_states = 30'000'000)
{
    ImplicitGraph g(base.minpoly, n);
    require(g.state_count() <= max_states, ErrorKind::SearchBudgetExceeded,
            "graph has " + std::to_string(g.state_count()) + " states, budget is " +
                std::to_string(max_states));
    constexpr std::uint64_t unseen = ~std::uint64_t{0};
    std::vector<std::uint64_t> parent(g.state_count(), unseen);
    std::vector<Residue> via(g.state_count(), 0);
    const std::uint64_t source = 0;
    const std::uint64_t target = 2 * g.layer_size();
    std::deque<std::uint64_t> queue{source};
    parent[source] = source;
    bool found = false;
    while (!queue.empty() && !found) {
        const std::uint64_t u = queue.front();
        queue.pop_front();
        for (Residue k = 0; k < n.value(); ++k) {
            auto next = g.step(u, k);
            if (!next || parent[*next] != unseen)
                continue;
            parent[*next] = u;
            via[*next] = k;
            if (*next == target) {
                found = true;
                break;
            }
            queue.push_back(*next);
        }
    }
    if (!found) {
        std::size_t seen = 0;
        for (auto p : parent)
            seen += p != unseen;
        throw Error(ErrorKind::NoPath,
                    "no path from (0,...,0;A) to (0,...,0;C) after exhausting " +
                        std::to_string(seen) + " reachable states; is m really minimal?");
    }
    WitnessPath path;
    std::vector<std::uint64_t> codes;
    for (std::uint64_t c = target; c != source; c = parent[c]) {
        codes.push_back(c);
        path.labels.push_back(via[c]);
    }
    codes.push_back(source);
    std::reverse(codes.begin(), codes.end());
    std::reverse(path.labels.begin(), path.labels.end());
    for (std::size_t s = 0; s < codes.size(); ++s) {
        path.vertices.push_back(g.decode(codes[s]));
        if (s > 0 && path.vertices[s - 1].phase != path.vertices[s].phase) {
            if (path.vertices[s].phase == Phase::B)
                path.k1 = s - 1;
            else
                path.k2 = s - 1;
        }
    }
    return path;
}

/// Turns a labeled path into a certified witness.
///
/// With c(x) = sum_k c_k x^(s-1-k), summing the edge congruences telescopes to
/// c(x) m(x) = x^(d+s-1-k1) - x^(d+s-1-k2) (mod n). Trailing zero labels make
/// c divisible by a power of x, which is cancelled from both sides.
inline FermatWitness path_to_witness(const WitnessPath& path, const BaseRef& base,
                                     const Modulus& n)
{
    ImplicitGraph g(base->minpoly, n);
    const std::size_t s = path.labels.size();
    require(s >= 1 && path.vertices.size() == s + 1, ErrorKind::InvalidPath,
            "path must have one more vertex than labels");
    require(path.vertices.front().is_origin() && path.vertices.front().phase == Phase::A,
            ErrorKind::InvalidPath, "path must start at (0,...,0;A)");
    require(path.vertices.back().is_origin() && path.vertices.back().phase == Phase::C,
            ErrorKind::InvalidPath, "path must end at (0,...,0;C)");

    std::optional<std::size_t> k1, k2;
    for (std::size_t k = 0; k < s; ++k) {
        const GraphVertex& u = path.vertices[k];
        const GraphVertex& v = path.vertices[k + 1];
        require(u.residues.size() == g.degree() && v.residues.size() == g.degree(),
                ErrorKind::InvalidPath, "vertex has wrong number of residues");
        require(path.labels[k] >= 0 && path.labels[k] < n.value(), ErrorKind::InvalidPath,
                "label outside [0, n)");
        auto next = g.step(g.encode(u), path.labels[k]);
        require(next && *next == g.encode(v), ErrorKind::InvalidPath,
                "step " + std::to_string(k) + " (" + u.name() + " -" +
                    std::to_string(path.labels[k]) + "-> " + v.name() + ") is not an edge");
        if (u.phase == Phase::A && v.phase == Phase::B)
            k1 = k;
        if (u.phase == Phase::B && v.phase == Phase::C)
            k2 = k;
    }
    require(k1 && k2, ErrorKind::InvalidPath, "path lacks an A->B or B->C transition");

    const std::size_t d = g.degree();
    std::size_t i = d + s - 1 - *k1;
    std::size_t j = d + s - 1 - *k2;
    std::vector<Integer> c(s);
    for (std::size_t k = 0; k < s; ++k)
        c[s - 1 - k] = static_cast<long>(path.labels[k]);
    std::size_t zeros = 0;
    while (zeros < s && c[zeros] == 0)
        ++zeros;
    zeros = std::min(zeros, j);
    i -= zeros;
    j -= zeros;
    IntPoly r(std::vector<Integer>(c.begin() + static_cast<long>(zeros), c.end()));
    try {
        return FermatWitness::from_cofactor(base, n, i, j, r);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidPath, std::string("path does not certify: ") + e.what());
    }
}

enum class Scope { Reachable, Full };

/// Graphviz rendering of G(m, n). Vertices appear in breadth-first discovery
/// order from (0,...,0;A) (then, for the full scope, the unreachable ones by
/// code); edges follow their source vertex, by label. Output is a pure
/// function of (m, n, scope).
inline std::string export_dot(const BaseSpec& base, const Modulus& n, Scope scope,
                              std::uint64_t max_vertices = 20'000)
{
    ImplicitGraph g(base.minpoly, n);
    require(g.state_count() <= max_vertices, ErrorKind::SizeBudgetExceeded,
            "graph has " + std::to_string(g.state_count()) + " vertices, budget is " +
                std::to_string(max_vertices));
    std::vector<std::uint64_t> order;
    std::vector<bool> seen(g.state_count(), false);
    std::deque<std::uint64_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const std::uint64_t u = queue.front();
        queue.pop_front();
        order.push_back(u);
        for (Residue k = 0; k < n.value(); ++k) {
            auto next = g.step(u, k);
            if (next && !seen[*next]) {
                seen[*next] = true;
                queue.push_back(*next);
            }
        }
    }
    if (scope == Scope::Full)
        for (std::uint64_t c = 0; c < g.state_count(); ++c)
            if (!seen[c])
                order.push_back(c);

    static constexpr const char* colors[] = {"yellow", "green", "cyan"};
    std::ostringstream os;
    os << "digraph G {\n";
    os << "  label=\"G(m,n) for m(x) = " << to_string(base.minpoly) << ", n = " << n.value()
       << "\";\n";
    os << "  node [shape=box, style=\"rounded,filled\"];\n";
    for (std::uint64_t c : order) {
        const GraphVertex v = g.decode(c);
        os << "  \"" << v.name() << "\" [fillcolor=" << colors[static_cast<int>(v.phase)]
           << "];\n";
    }
    for (std::uint64_t c : order) {
        const std::string from = g.decode(c).name();
        for (Residue k = 0; k < n.value(); ++k)
            if (auto next = g.step(c, k))
                os << "  \"" << from << "\" -> \"" << g.decode(*next).name() << "\" [label=\"" << k
                   << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace perbeta::graph
