#pragma once

#include "lucent/net.hpp"

#include <optional>
#include <vector>

namespace lucent
{

struct ExplorationLimits
{
    std::size_t max_states = 100000;
    // Reported alongside verdicts; never used to cut exploration short.
    std::optional<TokenCount> max_token_bound;
};

// stem leads from the initial marking to M_a; pump leads from M_a to M_b > M_a.
struct UnboundednessWitness
{
    FiringSequence stem;
    FiringSequence pump;
};

enum class ExplorationVerdict
{
    Complete,
    Unbounded,
    Truncated
};

std::string to_string( ExplorationVerdict v );

struct Edge
{
    std::size_t from;
    NodeId transition;
    std::size_t to;

    friend bool operator==( const Edge&, const Edge& ) = default;
};

using DenseMarking = std::vector<TokenCount>;

class ReachabilityGraph
{
public:
    // States in BFS discovery order; index 0 is the initial marking.
    std::vector<Marking> states;
    std::vector<Edge> edges;
    ExplorationVerdict verdict = ExplorationVerdict::Complete;
    std::optional<UnboundednessWitness> witness;
    // Only populated for complete graphs.
    std::vector<std::vector<std::size_t>> terminal_sccs;

    // Per-state views indexed like `states`: token vectors over net.places(),
    // enabled transition indices, and outgoing edge indices.
    std::vector<DenseMarking> dense;
    std::vector<std::vector<std::size_t>> enabled;
    std::vector<std::vector<std::size_t>> out_edges;

    [[nodiscard]] bool complete() const { return verdict == ExplorationVerdict::Complete; }
    [[nodiscard]] std::size_t size() const { return states.size(); }
    [[nodiscard]] std::optional<std::size_t> index_of( const Marking& m ) const;
    [[nodiscard]] NodeSet footprint( const PetriNet& net, std::size_t state ) const;

    // Shortest firing sequence between two states along graph edges.
    [[nodiscard]] std::optional<FiringSequence> shortest_path( std::size_t from, std::size_t to ) const;
    // States reachable from `from` (including itself).
    [[nodiscard]] std::vector<char> reachable_from( std::size_t from ) const;
    // States that can reach `to` (including itself).
    [[nodiscard]] std::vector<char> can_reach( std::size_t to ) const;
};

ReachabilityGraph explore( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

// Strongly connected components without outgoing inter-component edges.
std::vector<std::vector<std::size_t>> terminal_components( std::size_t num_states, const std::vector<Edge>& edges );

struct BoundResult
{
    enum class Kind
    {
        Bounded,
        Unbounded,
        Unknown
    };
    Kind kind = Kind::Unknown;
    TokenCount bound = 0;
    std::optional<UnboundednessWitness> witness;
};

BoundResult bound_k( const ReachabilityGraph& rg );
BoundResult bound_k( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );
Tri is_bounded( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

struct SafetyResult
{
    Tri safe = Tri::Undecided;
    std::optional<Marking> violation; // first reachable marking with a count > 1, when known
};

SafetyResult is_safe( const ReachabilityGraph& rg );
SafetyResult is_safe( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

struct LivenessResult
{
    Tri live = Tri::Undecided;
    // a transition that can never be enabled again from `marking`
    std::optional<NodeId> transition;
    std::optional<Marking> marking;
};

LivenessResult is_live( const PetriNet& net, const ReachabilityGraph& rg );
LivenessResult is_live( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

// Both throw Undecided on an incomplete graph.
NodeSet dead_places( const PetriNet& net, const ReachabilityGraph& rg );
NodeSet dead_transitions( const PetriNet& net, const ReachabilityGraph& rg );

struct DeadlockResult
{
    Tri deadlock_free = Tri::Undecided;
    std::vector<Marking> dead_markings;
};

DeadlockResult is_deadlock_free( const PetriNet& net, const ReachabilityGraph& rg );

// Throws Undecided on an incomplete graph.
std::vector<Marking> home_markings( const PetriNet& net, const ReachabilityGraph& rg );
std::vector<std::size_t> home_state_indices( const ReachabilityGraph& rg );

// live, bounded and with at least one home cluster
Tri is_perpetual( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

} // namespace lucent
