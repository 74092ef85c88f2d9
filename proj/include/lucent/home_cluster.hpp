#pragma once

#include "lucent/net.hpp"
#include "lucent/state_space.hpp"

#include <string>
#include <vector>

namespace lucent
{

struct CleanedNetInvalid : Error
{
    using Error::Error;
};

struct ClusterNotConnected : PreconditionError
{
    using PreconditionError::PreconditionError;
};

struct RequiresSafeMarking : PreconditionError
{
    using PreconditionError::PreconditionError;
};

// Two decision procedures disagreed where they are claimed to coincide.
struct TheoremViolation : Error
{
    using Error::Error;
};

// Nodes on a path from an initially marked place, marked places included.
NodeSet conn( const PetriNet& net, const Marking& m0 );

// Restriction of `net` to conn(net, m0). Throws CleanedNetInvalid when the
// restriction is not a valid net (no transitions, or disconnected).
PetriNet clean( const PetriNet& net, const Marking& m0 );

struct ShortCircuitResult
{
    PetriNet net;
    NodeId fresh_transition;
    NodeSet removed_nodes;
    Cluster extended_cluster; // C plus the fresh transition
};

// Cleans the net and adds a fresh transition from Pl(c) to the support of m0.
ShortCircuitResult short_circuit( const PetriNet& net, const Cluster& c, const Marking& m0 );

struct HomeVerdict
{
    Tri is_home = Tri::Undecided;
    std::string evidence;
    // a reachable marking from which Mrk(C) cannot be reached
    std::optional<Marking> counterexample;
};

HomeVerdict home_cluster_direct( const PetriNet& net, const ReachabilityGraph& rg, const Cluster& c );
HomeVerdict home_cluster_short_circuit( const PetriNet& net, const Marking& m0, const Cluster& c,
                                        const ExplorationLimits& limits = {} );

Tri is_home_cluster_direct( const PetriNet& net, const Marking& m0, const Cluster& c,
                            const ExplorationLimits& limits = {} );
// Live and bounded short-circuited net. Requires a proper free-choice net, a
// safe marking and C inside conn(net, m0).
Tri is_home_cluster_short_circuit( const PetriNet& net, const Marking& m0, const Cluster& c,
                                   const ExplorationLimits& limits = {} );

enum class HomeMethod
{
    Direct,
    ShortCircuit,
    Both
};

std::string to_string( HomeMethod m );

struct HomeClusterDetail
{
    Cluster cluster;
    Marking mrk;
    Tri is_home = Tri::Undecided;
    std::string evidence;
};

struct HomeClusterReport
{
    HomeMethod method = HomeMethod::Both;
    std::vector<Cluster> home_clusters;
    std::vector<HomeClusterDetail> details; // one per cluster, in cluster order
    bool decided = true;                    // no cluster left undecided
};

// Short-circuiting is skipped (direct method only, noted in the evidence) when
// the net is not proper free-choice or m0 is not safe. Under Both, a decided
// disagreement throws TheoremViolation.
HomeClusterReport find_home_clusters( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {},
                                      HomeMethod method = HomeMethod::Both );

enum class DeadEndKind
{
    Terminal,
    Regenerative
};

std::string to_string( DeadEndKind k );

// Requires a home cluster; throws TheoremViolation when the dichotomy fails.
DeadEndKind classify_dead_end( const PetriNet& net, const Marking& m0, const Cluster& c,
                               const ExplorationLimits& limits = {} );

enum class Outcome
{
    Pass,
    Fail,
    Skip
};

std::string to_string( Outcome o );

struct CheckReport
{
    std::string check;
    Outcome outcome = Outcome::Skip;
    std::string detail;
};

// Strongly connected free-choice net with home cluster c: live, safe, lucent.
CheckReport check_strongly_connected_home( const PetriNet& net, const Marking& m0, const Cluster& c,
                                           const ExplorationLimits& limits = {} );
// Short-circuited net is strongly connected and free-choice, with C plus the
// fresh transition as one of its clusters.
CheckReport check_short_circuit_structure( const PetriNet& net, const Marking& m0, const Cluster& c,
                                           const ExplorationLimits& limits = {} );
// Direct verdict, verdict for the extended cluster in the short-circuited net,
// and liveness plus boundedness of that net coincide; for a home cluster the
// two nets also share their reachable markings.
CheckReport check_short_circuit_equivalence( const PetriNet& net, const Marking& m0, const Cluster& c,
                                             const ExplorationLimits& limits = {} );

} // namespace lucent
