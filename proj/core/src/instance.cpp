#include "ipmu/instance.hpp"

#include "ipmu/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

namespace ipmu {

namespace {

const char* const kMedianBound = "p must satisfy 1 ≤ p < n";

void check_medians(std::int32_t p, std::int32_t n) {
    if (p < 1 || p >= n) {
        throw Error(kMedianBound);
    }
}

std::string node_label(NodeId node) { return std::to_string(node + 1); }

void append_real(std::string& out, double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.append(buffer, end);
}

} // namespace

Instance::Instance(std::int32_t node_count, std::vector<Arc> arcs, std::vector<double> demand,
                   std::int32_t medians, double budget)
    : node_count_(node_count), arcs_(std::move(arcs)), demand_(std::move(demand)),
      medians_(medians), budget_(budget) {
    if (node_count_ < 2) {
        throw Error("instance needs at least 2 nodes");
    }
    check_medians(medians_, node_count_);
    if (!(budget_ >= 0.0) || !std::isfinite(budget_)) {
        throw Error("budget must be finite and nonnegative");
    }
    if (demand_.size() != static_cast<std::size_t>(node_count_)) {
        throw Error("demand vector has " + std::to_string(demand_.size()) + " entries, expected " +
                    std::to_string(node_count_));
    }
    for (std::size_t i = 0; i < demand_.size(); ++i) {
        if (!(demand_[i] >= 0.0) || !std::isfinite(demand_[i])) {
            throw Error("demand of node " + std::to_string(i + 1) + " must be finite and nonnegative");
        }
    }
    for (const Arc& a : arcs_) {
        if (a.src < 0 || a.src >= node_count_ || a.dst < 0 || a.dst >= node_count_) {
            throw Error("arc (" + std::to_string(a.src + 1) + "," + std::to_string(a.dst + 1) +
                        ") references a node outside 1.." + std::to_string(node_count_));
        }
        if (a.src == a.dst) {
            throw Error("self-loop on node " + node_label(a.src));
        }
        for (double w : {a.time, a.cost, a.cap}) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw Error("arc (" + node_label(a.src) + "," + node_label(a.dst) +
                            ") has a negative or non-finite weight");
            }
        }
    }
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    for (std::size_t k = 1; k < arcs_.size(); ++k) {
        if (arcs_[k].src == arcs_[k - 1].src && arcs_[k].dst == arcs_[k - 1].dst) {
            throw Error("duplicate arc (" + node_label(arcs_[k].src) + "," +
                        node_label(arcs_[k].dst) + ")");
        }
    }

    out_offsets_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
    for (const Arc& a : arcs_) {
        ++out_offsets_[static_cast<std::size_t>(a.src) + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    out_ids_.resize(arcs_.size());
    std::iota(out_ids_.begin(), out_ids_.end(), 0);  // canonical order groups arcs by src
}

std::span<const ArcId> Instance::out_arcs(NodeId node) const {
    const auto begin = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(node)]);
    const auto end = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(node) + 1]);
    return std::span<const ArcId>(out_ids_).subspan(begin, end - begin);
}

std::optional<ArcId> Instance::find_arc(NodeId src, NodeId dst) const {
    for (ArcId id : out_arcs(src)) {
        if (arc(id).dst == dst) {
            return id;
        }
    }
    return std::nullopt;
}

Instance Instance::with_budget(double budget) const {
    return Instance(node_count_, arcs_, demand_, medians_, budget);
}

bool operator==(const Instance& a, const Instance& b) {
    if (a.node_count_ != b.node_count_ || a.medians_ != b.medians_ || a.budget_ != b.budget_ ||
        a.demand_ != b.demand_ || a.arcs_.size() != b.arcs_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.arcs_.size(); ++k) {
        const Arc& x = a.arcs_[k];
        const Arc& y = b.arcs_[k];
        if (x.src != y.src || x.dst != y.dst || x.time != y.time || x.cost != y.cost ||
            x.cap != y.cap) {
            return false;
        }
    }
    return true;
}

char kind_letter(InstanceKind kind) { return kind == InstanceKind::Correlated ? 'P' : 'R'; }

InstanceKind parse_kind(std::string_view text) {
    if (text == "P" || text == "p") {
        return InstanceKind::Correlated;
    }
    if (text == "R" || text == "r") {
        return InstanceKind::Random;
    }
    throw Error("instance type must be P or R, got '" + std::string(text) + "'");
}

std::int64_t GenSpec::arc_count() const {
    if (arcs) {
        return *arcs;
    }
    if (density) {
        const double gamma = static_cast<double>(nodes) * static_cast<double>(nodes - 1);
        return std::llround(*density * gamma);
    }
    throw Error("generator needs either an arc count or a density");
}

Instance generate_instance(const GenSpec& spec) {
    const std::int32_t n = spec.nodes;
    if (n < 2) {
        throw Error("generator needs at least 2 nodes");
    }
    check_medians(spec.medians, n);
    const std::int64_t gamma = static_cast<std::int64_t>(n) * (n - 1);
    const std::int64_t m = spec.arc_count();
    if (m < n || m > gamma) {
        throw Error("arc count " + std::to_string(m) + " outside [" + std::to_string(n) + ", " +
                    std::to_string(gamma) + "] for n = " + std::to_string(n));
    }
    if (spec.demand_min < 0 || spec.demand_max < spec.demand_min) {
        throw Error("demand range must satisfy 0 <= min <= max");
    }

    Rng rng(spec.seed);

    // Directed Hamiltonian cycle over a random permutation.
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = order.size() - 1; k > 0; --k) {
        std::swap(order[k], order[rng.index(k + 1)]);
    }
    std::vector<char> used(static_cast<std::size_t>(gamma), 0);
    // Pair (s, d), s != d, maps to s*(n-1) + (d < s ? d : d-1).
    auto pair_index = [n](NodeId s, NodeId d) {
        return static_cast<std::int64_t>(s) * (n - 1) + (d < s ? d : d - 1);
    };
    for (std::size_t k = 0; k < order.size(); ++k) {
        used[static_cast<std::size_t>(pair_index(order[k], order[(k + 1) % order.size()]))] = 1;
    }

    // Extra arcs: partial Fisher-Yates over the pairs not on the cycle.
    std::vector<std::int64_t> pool;
    pool.reserve(static_cast<std::size_t>(gamma - n));
    for (std::int64_t idx = 0; idx < gamma; ++idx) {
        if (!used[static_cast<std::size_t>(idx)]) {
            pool.push_back(idx);
        }
    }
    const auto extra = static_cast<std::size_t>(m - n);
    for (std::size_t k = 0; k < extra; ++k) {
        std::swap(pool[k], pool[k + rng.index(pool.size() - k)]);
        used[static_cast<std::size_t>(pool[k])] = 1;
    }

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(m));
    for (std::int64_t idx = 0; idx < gamma; ++idx) {
        if (!used[static_cast<std::size_t>(idx)]) {
            continue;
        }
        const auto s = static_cast<NodeId>(idx / (n - 1));
        auto d = static_cast<NodeId>(idx % (n - 1));
        if (d >= s) {
            ++d;
        }
        Arc a;
        a.src = s;
        a.dst = d;
        a.time = rng.uniform(0.0, 100.0);
        a.cost = spec.kind == InstanceKind::Correlated ? a.time + rng.uniform(1.0, 1.5)
                                                       : rng.uniform(0.0, 100.0);
        a.cap = a.cost;
        arcs.push_back(a);
    }

    std::vector<double> demand(static_cast<std::size_t>(n));
    for (double& w : demand) {
        w = static_cast<double>(rng.uniform_int(spec.demand_min, spec.demand_max));
    }
    return Instance(n, std::move(arcs), std::move(demand), spec.medians, spec.budget);
}

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        std::string_view raw = text.substr(pos, end - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        Line line{number, {}};
        std::size_t k = 0;
        while (k < raw.size()) {
            while (k < raw.size() && std::isspace(static_cast<unsigned char>(raw[k]))) {
                ++k;
            }
            std::size_t start = k;
            while (k < raw.size() && !std::isspace(static_cast<unsigned char>(raw[k]))) {
                ++k;
            }
            if (k > start) {
                line.tokens.push_back(raw.substr(start, k - start));
            }
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
        pos = end + 1;
    }
    return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw Error("line " + std::to_string(line) + ": " + message);
}

std::int64_t parse_int(std::string_view token, std::size_t line, const char* what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        fail(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

double parse_real(std::string_view token, std::size_t line, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        fail(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    if (value < 0.0) {
        fail(line, std::string(what) + " must be nonnegative, got " + std::string(token));
    }
    return value;
}

void expect_fields(const Line& line, std::size_t count, const char* what) {
    if (line.tokens.size() != count) {
        fail(line.number, std::string(what) + " needs " + std::to_string(count) + " fields, found " +
                              std::to_string(line.tokens.size()));
    }
}

} // namespace

Instance parse_instance(std::string_view text) {
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) {
        throw Error("empty instance text");
    }
    const Line& magic = lines[0];
    if (magic.tokens.size() != 2 || magic.tokens[0] != "IPMU") {
        fail(magic.number, "expected header 'IPMU 1'");
    }
    if (magic.tokens[1] != "1") {
        fail(magic.number, "unsupported format version '" + std::string(magic.tokens[1]) + "'");
    }
    if (lines.size() < 2) {
        throw Error("missing 'n m p B' line");
    }
    const Line& header = lines[1];
    expect_fields(header, 4, "size line 'n m p B'");
    const std::int64_t n = parse_int(header.tokens[0], header.number, "node count");
    const std::int64_t m = parse_int(header.tokens[1], header.number, "arc count");
    const std::int64_t p = parse_int(header.tokens[2], header.number, "median count");
    const double budget = parse_real(header.tokens[3], header.number, "budget");
    if (n < 2 || n > 1'000'000) {
        fail(header.number, "node count must be in [2, 1000000]");
    }
    if (m < 0 || m > n * (n - 1)) {
        fail(header.number, "arc count must be in [0, n(n-1)]");
    }
    if (p < 1 || p >= n) {
        fail(header.number, kMedianBound);
    }

    const std::size_t expected_nodes = static_cast<std::size_t>(n);
    const std::size_t expected_arcs = static_cast<std::size_t>(m);
    const std::size_t body = lines.size() - 2;
    if (body < expected_nodes) {
        throw Error("expected " + std::to_string(expected_nodes) + " node lines, found " +
                    std::to_string(body));
    }
    if (body - expected_nodes != expected_arcs) {
        throw Error("expected " + std::to_string(expected_arcs) + " arc lines, found " +
                    std::to_string(body - expected_nodes));
    }

    auto parse_node = [&](std::string_view token, std::size_t line) {
        const std::int64_t id = parse_int(token, line, "node id");
        if (id < 1 || id > n) {
            fail(line, "node id " + std::string(token) + " outside 1.." + std::to_string(n));
        }
        return static_cast<NodeId>(id - 1);
    };

    std::vector<double> demand(expected_nodes, 0.0);
    std::vector<char> seen(expected_nodes, 0);
    for (std::size_t k = 0; k < expected_nodes; ++k) {
        const Line& line = lines[2 + k];
        expect_fields(line, 2, "node line 'id demand'");
        const NodeId id = parse_node(line.tokens[0], line.number);
        if (seen[static_cast<std::size_t>(id)]) {
            fail(line.number, "node " + std::string(line.tokens[0]) + " listed twice");
        }
        seen[static_cast<std::size_t>(id)] = 1;
        demand[static_cast<std::size_t>(id)] = parse_real(line.tokens[1], line.number, "demand");
    }

    std::vector<Arc> arcs;
    arcs.reserve(expected_arcs);
    std::vector<std::pair<std::int64_t, std::size_t>> keys;  // (pair key, line)
    keys.reserve(expected_arcs);
    for (std::size_t k = 0; k < expected_arcs; ++k) {
        const Line& line = lines[2 + expected_nodes + k];
        expect_fields(line, 5, "arc line 'src dst c1 c2 u'");
        Arc a;
        a.src = parse_node(line.tokens[0], line.number);
        a.dst = parse_node(line.tokens[1], line.number);
        if (a.src == a.dst) {
            fail(line.number, "self-loop on node " + std::string(line.tokens[0]));
        }
        a.time = parse_real(line.tokens[2], line.number, "c1");
        a.cost = parse_real(line.tokens[3], line.number, "c2");
        a.cap = parse_real(line.tokens[4], line.number, "u");
        keys.emplace_back(static_cast<std::int64_t>(a.src) * n + a.dst, line.number);
        arcs.push_back(a);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t k = 1; k < keys.size(); ++k) {
        if (keys[k].first == keys[k - 1].first) {
            fail(keys[k].second, "duplicate arc (" + std::to_string(keys[k].first / n + 1) + "," +
                                     std::to_string(keys[k].first % n + 1) + "), first on line " +
                                     std::to_string(keys[k - 1].second));
        }
    }
    return Instance(static_cast<std::int32_t>(n), std::move(arcs), std::move(demand),
                    static_cast<std::int32_t>(p), budget);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open instance file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_instance(buffer.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string serialize_instance(const Instance& instance) {
    std::string out = "IPMU 1\n";
    out += std::to_string(instance.node_count()) + ' ' + std::to_string(instance.arc_count()) + ' ' +
           std::to_string(instance.medians()) + ' ';
    append_real(out, instance.budget());
    out += '\n';
    for (NodeId i = 0; i < instance.node_count(); ++i) {
        out += node_label(i);
        out += ' ';
        append_real(out, instance.demand(i));
        out += '\n';
    }
    for (const Arc& a : instance.arcs()) {
        out += node_label(a.src);
        out += ' ';
        out += node_label(a.dst);
        for (double w : {a.time, a.cost, a.cap}) {
            out += ' ';
            append_real(out, w);
        }
        out += '\n';
    }
    return out;
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write instance file '" + path + "'");
    }
    out << serialize_instance(instance);
    if (!out) {
        throw Error("write failed for '" + path + "'");
    }
}

namespace {

// Nodes reachable from `root` following arcs forward (or backward).
std::vector<char> reachable(const Instance& instance, NodeId root, bool forward) {
    const auto n = static_cast<std::size_t>(instance.node_count());
    std::vector<std::vector<NodeId>> reverse;
    if (!forward) {
        reverse.resize(n);
        for (const Arc& a : instance.arcs()) {
            reverse[static_cast<std::size_t>(a.dst)].push_back(a.src);
        }
    }
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        auto visit = [&](NodeId w) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        };
        if (forward) {
            for (ArcId id : instance.out_arcs(v)) {
                visit(instance.arc(id).dst);
            }
        } else {
            for (NodeId w : reverse[static_cast<std::size_t>(v)]) {
                visit(w);
            }
        }
    }
    return seen;
}

} // namespace

std::vector<Violation> validate(const Instance& instance) {
    std::vector<Violation> out;
    // Strongly connected iff node 1 reaches everyone and everyone reaches node 1.
    const std::vector<char> from_root = reachable(instance, 0, true);
    const std::vector<char> to_root = reachable(instance, 0, false);
    for (NodeId v = 0; v < instance.node_count(); ++v) {
        if (!from_root[static_cast<std::size_t>(v)]) {
            out.push_back({Violation::Severity::Error,
                           "not strongly connected: node " + node_label(v) +
                               " unreachable from node 1"});
            break;
        }
    }
    for (NodeId v = 0; v < instance.node_count(); ++v) {
        if (!to_root[static_cast<std::size_t>(v)]) {
            out.push_back({Violation::Severity::Error, "not strongly connected: node 1 unreachable from node " +
                                                           node_label(v)});
            break;
        }
    }
    for (const Arc& a : instance.arcs()) {
        if (a.cap > a.cost) {
            std::string message = "arc (" + node_label(a.src) + "," + node_label(a.dst) +
                                  ") has upgrade cap ";
            append_real(message, a.cap);
            message += " above its cost ";
            append_real(message, a.cost);
            out.push_back({Violation::Severity::Warning, std::move(message)});
        }
    }
    return out;
}

bool has_errors(std::span<const Violation> violations) {
    return std::any_of(violations.begin(), violations.end(), [](const Violation& v) {
        return v.severity == Violation::Severity::Error;
    });
}

double time_cost_r_squared(const Instance& instance) {
    const auto arcs = instance.arcs();
    if (arcs.size() < 2) {
        return 0.0;
    }
    double mean_t = 0.0;
    double mean_c = 0.0;
    for (const Arc& a : arcs) {
        mean_t += a.time;
        mean_c += a.cost;
    }
    mean_t /= static_cast<double>(arcs.size());
    mean_c /= static_cast<double>(arcs.size());
    double stt = 0.0;
    double scc = 0.0;
    double stc = 0.0;
    for (const Arc& a : arcs) {
        stt += (a.time - mean_t) * (a.time - mean_t);
        scc += (a.cost - mean_c) * (a.cost - mean_c);
        stc += (a.time - mean_t) * (a.cost - mean_c);
    }
    if (stt == 0.0 || scc == 0.0) {
        return 0.0;
    }
    return (stc * stc) / (stt * scc);
}

} // namespace ipmu
