#pragma once

#include "lucent/net.hpp"
#include "lucent/state_space.hpp"

#include <cstdint>
#include <utility>

namespace lucent
{

struct InvalidPath : Error
{
    using Error::Error;
};

struct BadIndices : Error
{
    using Error::Error;
};

bool is_path( const PetriNet& net, const std::vector<NodeId>& nodes );
bool is_elementary( const PetriNet& net, const std::vector<NodeId>& nodes );
bool is_circuit( const PetriNet& net, const std::vector<NodeId>& nodes );
bool is_disentangled( const PetriNet& net, const std::vector<NodeId>& nodes );

// A non-empty node sequence following the flow relation. Checked on construction.
class Path
{
    std::vector<NodeId> _nodes;

public:
    Path( const PetriNet& net, std::vector<NodeId> nodes );

    [[nodiscard]] const std::vector<NodeId>& nodes() const { return _nodes; }
    [[nodiscard]] const NodeId& front() const { return _nodes.front(); }
    [[nodiscard]] const NodeId& back() const { return _nodes.back(); }
    [[nodiscard]] std::size_t size() const { return _nodes.size(); }
    [[nodiscard]] NodeSet places( const PetriNet& net ) const;
    [[nodiscard]] NodeSet transitions( const PetriNet& net ) const;
    [[nodiscard]] std::string str() const;

    friend bool operator==( const Path&, const Path& ) = default;
};

// A place-to-place path whose places lie in pairwise distinct clusters.
class DisentangledPath
{
    Path _path;

public:
    DisentangledPath( const PetriNet& net, Path path );

    [[nodiscard]] const Path& path() const { return _path; }
    [[nodiscard]] const std::vector<NodeId>& nodes() const { return _path.nodes(); }
    [[nodiscard]] std::string str() const { return _path.str(); }

    friend bool operator==( const DisentangledPath&, const DisentangledPath& ) = default;
};

bool is_q_rooted( const PetriNet& net, const std::vector<NodeId>& nodes, const NodeSet& q );

// Shortcut scan over repeated clusters. Requires a free-choice net and a path
// from a place to a place of `c`; the result starts at the same place, ends in
// `c`, and only uses transitions of the input. Throws InvalidPath otherwise.
DisentangledPath disentangle( const PetriNet& net, const Path& path, const Cluster& c );

struct RootedPathResult
{
    enum class Status
    {
        Found,
        DeadPlace,
        NoGraphPath // p is live but cannot reach c in the net graph
    };
    Status status = Status::NoGraphPath;
    std::optional<DisentangledPath> path;
};

RootedPathResult find_rooted_path( const PetriNet& net, const Marking& m0, const NodeId& p, const Cluster& c,
                                   const ExplorationLimits& limits = {} );
RootedPathResult find_rooted_path( const PetriNet& net, const ReachabilityGraph& rg, const NodeId& p,
                                   const Cluster& c );

struct PathSafetyResult
{
    Tri safe = Tri::Undecided;
    std::optional<Marking> violation; // a reachable marking with >= 2 tokens on the path
};

PathSafetyResult verify_path_safety( const PetriNet& net, const Marking& m0, const DisentangledPath& path,
                                     const ExplorationLimits& limits = {} );
PathSafetyResult verify_path_safety( const PetriNet& net, const ReachabilityGraph& rg, const DisentangledPath& path );

// Expediting. Positions i and j are 1-based with 1 <= i < j <= |s|.

bool can_expedite( const PetriNet& net, const Marking& m, const FiringSequence& s, std::size_t i, std::size_t j );
// Moves element j to position i, shifting i..j-1 one place right.
FiringSequence expedite( const FiringSequence& s, std::size_t i, std::size_t j );

struct Expedition
{
    FiringSequence base;
    Marking start;
    std::vector<std::pair<std::size_t, std::size_t>> moves;

    // Replays the moves, checking each one; throws PreconditionError on an illegal move.
    [[nodiscard]] FiringSequence result( const PetriNet& net ) const;
};

// Membership in the expedited closure of `base`, searched breadth-first with at
// most `budget` visited sequences. Undecided when the budget runs out.
Tri expedited_member( const PetriNet& net, const Marking& m, const FiringSequence& base,
                      const FiringSequence& candidate, std::size_t budget = 100000 );

struct ExpediteSplit
{
    FiringSequence first;  // only allowed transitions, enabled from m_alt
    FiringSequence second; // remainder
};

ExpediteSplit expedite_split( const PetriNet& net, const Marking& m_from, const FiringSequence& s,
                              const Marking& m_alt, const NodeSet& allowed );

// Random walk over single expedite moves.
Expedition random_expedition( const PetriNet& net, const Marking& m, const FiringSequence& s, std::uint64_t seed,
                              std::size_t max_moves = 8 );

struct ExpediteSafetyResult
{
    bool safe = true;
    std::size_t checked = 0;
    std::optional<Expedition> counterexample;
};

// Samples members of the expedited closure and replays them.
ExpediteSafetyResult verify_expedite_safe( const PetriNet& net, const Marking& m, const FiringSequence& s,
                                           std::size_t samples, std::uint64_t seed = 0 );

// Same multiset of transitions and identical per-cluster subsequences.
bool preserves_cluster_order( const PetriNet& net, const FiringSequence& a, const FiringSequence& b );

} // namespace lucent
