#pragma once

#include "ipmu/common.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ipmu {

struct Arc {
    NodeId src = 0;
    NodeId dst = 0;
    double time = 0.0;  // c1: traversal time
    double cost = 0.0;  // c2: cost per unit of transport
    double cap = 0.0;   // u: maximum reduction of `cost`
};

/// Directed graph with separate time/cost weights, node demands, the number
/// of medians to open and the upgrade budget.
///
/// Arcs are kept in canonical order, ascending by (src, dst); an arc's id is
/// its index in `arcs()`. Construction checks the local invariants (ids,
/// signs, duplicates, 1 <= p < n) and throws `Error` on violation; global
/// properties such as strong connectivity are reported by `validate`.
class Instance {
  public:
    Instance(std::int32_t node_count, std::vector<Arc> arcs, std::vector<double> demand,
             std::int32_t medians, double budget);

    std::int32_t node_count() const { return node_count_; }
    std::int32_t arc_count() const { return static_cast<std::int32_t>(arcs_.size()); }
    std::int32_t medians() const { return medians_; }
    double budget() const { return budget_; }

    std::span<const Arc> arcs() const { return arcs_; }
    const Arc& arc(ArcId id) const { return arcs_[static_cast<std::size_t>(id)]; }
    std::span<const double> demand() const { return demand_; }
    double demand(NodeId node) const { return demand_[static_cast<std::size_t>(node)]; }

    /// Ids of arcs leaving `node`, ascending by destination.
    std::span<const ArcId> out_arcs(NodeId node) const;

    /// Arc id for (src, dst), if present.
    std::optional<ArcId> find_arc(NodeId src, NodeId dst) const;

    /// Copy with a different budget.
    Instance with_budget(double budget) const;

    friend bool operator==(const Instance& a, const Instance& b);

  private:
    std::int32_t node_count_;
    std::vector<Arc> arcs_;
    std::vector<double> demand_;
    std::int32_t medians_;
    double budget_;
    std::vector<std::int32_t> out_offsets_;
    std::vector<ArcId> out_ids_;
};

enum class InstanceKind { Correlated, Random };  // P and R benchmark types

char kind_letter(InstanceKind kind);
InstanceKind parse_kind(std::string_view text);

struct GenSpec {
    std::int32_t nodes = 0;
    std::optional<std::int64_t> arcs;   // explicit m
    std::optional<double> density;      // fraction of n(n-1); used when `arcs` is unset
    std::int32_t medians = 1;
    double budget = 0.0;
    InstanceKind kind = InstanceKind::Random;
    std::int64_t demand_min = 1;
    std::int64_t demand_max = 1;
    std::uint64_t seed = 0;

    /// Resolved arc count; throws `Error` when neither m nor density is set.
    std::int64_t arc_count() const;
};

/// Random instance: Hamiltonian cycle for strong connectivity, then distinct
/// uniformly chosen extra arcs, c1 ~ U(0,100); c2 ~ U(0,100) for R-type or
/// c1 + U(1,1.5) for P-type; u = c2; integer demands in the given range.
Instance generate_instance(const GenSpec& spec);

/// Reads the `IPMU 1` text format. Errors carry the offending line number.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Canonical text form (nodes by id, arcs by (src, dst), shortest round-trip
/// decimal representation of every real).
std::string serialize_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

struct Violation {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
};

/// Global checks on a constructed instance. An empty list means every
/// invariant holds; caps above an arc's cost are reported as warnings only.
std::vector<Violation> validate(const Instance& instance);

bool has_errors(std::span<const Violation> violations);

/// Squared Pearson correlation between arc times and costs.
double time_cost_r_squared(const Instance& instance);

} // namespace ipmu
