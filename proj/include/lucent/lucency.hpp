#pragma once

#include "lucent/net.hpp"
#include "lucent/state_space.hpp"

namespace lucent
{

struct RequiresSafeMarkings : PreconditionError
{
    using PreconditionError::PreconditionError;
};

struct GreedyCycle : Error
{
    using Error::Error;
};

struct ConstructionFailed : Error
{
    using Error::Error;
};

NodeSet footprint( const PetriNet& net, const Marking& m );

struct LucencyVerdict
{
    Tri lucent = Tri::Undecided;
    // first pair of distinct reachable markings, in discovery order, sharing a footprint
    std::optional<std::pair<Marking, Marking>> witness;
    NodeSet shared_footprint;
    // set when lucency fails because the net is unbounded
    std::optional<UnboundednessWitness> unbounded;
};

LucencyVerdict check_lucency( const PetriNet& net, const ReachabilityGraph& rg );
LucencyVerdict check_lucency( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

bool is_transparent_marking( const PetriNet& net, const Marking& m );

struct TransparencyResult
{
    Tri fully_transparent = Tri::Undecided;
    std::optional<Marking> counterexample; // first non-transparent reachable marking
};

TransparencyResult is_fully_transparent( const PetriNet& net, const ReachabilityGraph& rg );
TransparencyResult is_fully_transparent( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits = {} );

struct ConflictPair
{
    Marking m1;
    Marking m2;

    friend bool operator==( const ConflictPair&, const ConflictPair& ) = default;
};

// The five defining conditions, checked directly against the markings.
bool is_conflict_pair( const PetriNet& net, const ReachabilityGraph& rg, const Marking& m1, const Marking& m2 );

// Pairs (states[i], states[j]) with i < j in discovery order. Throws Undecided
// on an incomplete state space.
std::vector<ConflictPair> find_conflict_pairs( const PetriNet& net, const ReachabilityGraph& rg,
                                               std::size_t max_pairs = SIZE_MAX );
std::vector<ConflictPair> find_conflict_pairs( const PetriNet& net, const Marking& m0,
                                               const ExplorationLimits& limits = {},
                                               std::size_t max_pairs = SIZE_MAX );

struct AgreementSplit
{
    NodeSet p_agree; // marked in both
    NodeSet p_one;   // marked only in m1
    NodeSet p_two;   // marked only in m2
    NodeSet t_one;   // transitions with an input in p_one
    NodeSet t_two;   // transitions with an input in p_two
    NodeSet t_rest;  // transitions with no input in p_one or p_two

    [[nodiscard]] Marking agreement() const { return Marking::from_set( p_agree ); }
};

AgreementSplit agreement_split( const PetriNet& net, const Marking& m1, const Marking& m2 );

struct DeriveMode
{
    // guided: expedite a shortest path from m1 towards Mrk(home); greedy: fire
    // the smallest enabled agreement-only transition from both markings
    std::optional<Cluster> home;

    static DeriveMode greedy() { return {}; }
    static DeriveMode guided( Cluster c ) { return { std::move( c ) }; }
};

struct DerivedConflictPair
{
    ConflictPair pair;
    FiringSequence sigma1;
};

DerivedConflictPair derive_conflict_pair( const PetriNet& net, const Marking& m0, const Marking& m1,
                                          const Marking& m2, const DeriveMode& mode,
                                          const ExplorationLimits& limits = {} );

struct DominationResult
{
    Tri holds = Tri::Undecided;
    std::optional<Marking> counterexample;
};

// No reachable marking strictly dominates Mrk(c).
DominationResult check_no_dominating( const PetriNet& net, const ReachabilityGraph& rg, const Cluster& c );
DominationResult check_no_dominating( const PetriNet& net, const Marking& m0, const Cluster& c,
                                      const ExplorationLimits& limits = {} );

struct IncomparableResult
{
    Tri holds = Tri::Undecided;
    std::optional<std::pair<Marking, Marking>> counterexample; // first > second
};

IncomparableResult check_pairwise_incomparable( const ReachabilityGraph& rg );
IncomparableResult check_pairwise_incomparable( const PetriNet& net, const Marking& m0,
                                                const ExplorationLimits& limits = {} );

} // namespace lucent
