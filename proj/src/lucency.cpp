#include "lucent/lucency.hpp"

#include "lucent/paths.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lucent
{

NodeSet footprint( const PetriNet& net, const Marking& m ) { return enabled_transitions( net, m ); }

LucencyVerdict check_lucency( const PetriNet& net, const ReachabilityGraph& rg )
{
    LucencyVerdict v;
    std::map<std::vector<std::size_t>, std::size_t> first_with;
    for ( std::size_t s = 0; s < rg.size(); ++s )
    {
        auto [ it, fresh ] = first_with.emplace( rg.enabled[ s ], s );
        if ( !fresh )
        {
            v.witness = std::make_pair( rg.states[ it->second ], rg.states[ s ] );
            v.shared_footprint = rg.footprint( net, s );
            break;
        }
    }
    if ( rg.verdict == ExplorationVerdict::Unbounded )
    {
        v.lucent = Tri::False;
        v.unbounded = rg.witness;
    }
    else if ( v.witness )
        v.lucent = Tri::False;
    else
        v.lucent = rg.complete() ? Tri::True : Tri::Undecided;
    return v;
}

LucencyVerdict check_lucency( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    return check_lucency( net, explore( net, m0, limits ) );
}

bool is_transparent_marking( const PetriNet& net, const Marking& m )
{
    NodeSet inputs;
    for ( const auto& t : enabled_transitions( net, m ) )
        inputs.merge( preset( net, t ) );
    return m == Marking::from_set( inputs );
}

TransparencyResult is_fully_transparent( const PetriNet& net, const ReachabilityGraph& rg )
{
    TransparencyResult r;
    for ( const auto& m : rg.states )
        if ( !is_transparent_marking( net, m ) )
        {
            r.fully_transparent = Tri::False;
            r.counterexample = m;
            return r;
        }
    r.fully_transparent = rg.complete() ? Tri::True : Tri::Undecided;
    return r;
}

TransparencyResult is_fully_transparent( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    return is_fully_transparent( net, explore( net, m0, limits ) );
}

bool is_conflict_pair( const PetriNet& net, const ReachabilityGraph& rg, const Marking& m1, const Marking& m2 )
{
    if ( !rg.index_of( m1 ) || !rg.index_of( m2 ) )
        return false;
    NodeSet en1 = enabled_transitions( net, m1 ), en2 = enabled_transitions( net, m2 );
    if ( en1.empty() || en2.empty() )
        return false;
    for ( const auto& t : en1 )
        if ( en2.contains( t ) )
            return false;
    for ( const auto& t : en1 )
        if ( m2.count_of( preset( net, t ) ) < 1 )
            return false;
    for ( const auto& t : en2 )
        if ( m1.count_of( preset( net, t ) ) < 1 )
            return false;
    return true;
}

std::vector<ConflictPair> find_conflict_pairs( const PetriNet& net, const ReachabilityGraph& rg,
                                               std::size_t max_pairs )
{
    if ( !rg.complete() )
        throw Undecided( "conflict-pair search needs a complete state space" );

    auto marks_input_of_all = [ & ]( std::size_t holder, const std::vector<std::size_t>& ts ) {
        return std::all_of( ts.begin(), ts.end(), [ & ]( std::size_t t ) {
            const auto& pre = net.pre_places( t );
            return std::any_of( pre.begin(), pre.end(), [ & ]( std::size_t p ) { return rg.dense[ holder ][ p ] > 0; } );
        } );
    };

    std::vector<ConflictPair> out;
    for ( std::size_t i = 0; i < rg.size() && out.size() < max_pairs; ++i )
    {
        const auto& en1 = rg.enabled[ i ];
        if ( en1.empty() )
            continue;
        for ( std::size_t j = i + 1; j < rg.size() && out.size() < max_pairs; ++j )
        {
            const auto& en2 = rg.enabled[ j ];
            if ( en2.empty() )
                continue;
            std::vector<std::size_t> common;
            std::set_intersection( en1.begin(), en1.end(), en2.begin(), en2.end(), std::back_inserter( common ) );
            if ( !common.empty() )
                continue;
            if ( marks_input_of_all( j, en1 ) && marks_input_of_all( i, en2 ) )
                out.push_back( { rg.states[ i ], rg.states[ j ] } );
        }
    }
    return out;
}

std::vector<ConflictPair> find_conflict_pairs( const PetriNet& net, const Marking& m0,
                                               const ExplorationLimits& limits, std::size_t max_pairs )
{
    return find_conflict_pairs( net, explore( net, m0, limits ), max_pairs );
}

AgreementSplit agreement_split( const PetriNet& net, const Marking& m1, const Marking& m2 )
{
    if ( !m1.is_set() || !m2.is_set() )
        throw RequiresSafeMarkings( "agreement split needs safe markings" );
    if ( m1 == m2 )
        throw PreconditionError( "agreement split needs two different markings" );
    for ( const auto* m : { &m1, &m2 } )
        for ( const auto& p : m->support() )
            (void)net.place_index( p );

    AgreementSplit s;
    for ( const auto& p : net.places() )
    {
        bool in1 = m1( p ) > 0, in2 = m2( p ) > 0;
        if ( in1 && in2 )
            s.p_agree.insert( p );
        else if ( in1 )
            s.p_one.insert( p );
        else if ( in2 )
            s.p_two.insert( p );
    }
    for ( const auto& t : net.transitions() )
    {
        NodeSet pre = preset( net, t );
        bool one = std::any_of( pre.begin(), pre.end(), [ & ]( const NodeId& p ) { return s.p_one.contains( p ); } );
        bool two = std::any_of( pre.begin(), pre.end(), [ & ]( const NodeId& p ) { return s.p_two.contains( p ); } );
        if ( one )
            s.t_one.insert( t );
        if ( two )
            s.t_two.insert( t );
        if ( !one && !two )
            s.t_rest.insert( t );
    }
    return s;
}

DerivedConflictPair derive_conflict_pair( const PetriNet& net, const Marking& m0, const Marking& m1,
                                          const Marking& m2, const DeriveMode& mode,
                                          const ExplorationLimits& limits )
{
    AgreementSplit split = agreement_split( net, m1, m2 );
    NodeSet fp = footprint( net, m1 );
    if ( fp.empty() || fp != footprint( net, m2 ) )
        throw PreconditionError( "derive_conflict_pair needs two markings with the same non-empty footprint" );

    ReachabilityGraph rg = explore( net, m0, limits );
    Marking a = m1, b = m2;
    FiringSequence sigma1;

    if ( mode.home )
    {
        auto from = rg.index_of( m1 );
        auto to = rg.index_of( mrk( *mode.home ) );
        if ( !from || !to )
            throw ConstructionFailed( "m1 or Mrk(C) is not among the explored reachable markings" );
        auto sigma = rg.shortest_path( *from, *to );
        if ( !sigma )
            throw ConstructionFailed( "Mrk(C) is not reachable from m1; C is not a home cluster" );
        sigma1 = expedite_split( net, m1, *sigma, m1, split.t_rest ).first;
        a = fire_sequence( net, m1, sigma1 );
        auto reached = try_fire_sequence( net, m2, sigma1 );
        if ( !reached )
            throw ConstructionFailed( "expedited prefix " + sigma1.str() + " is not enabled from m2" );
        b = *reached;
    }
    else
    {
        std::set<std::pair<Marking, Marking>> seen{ { a, b } };
        while ( true )
        {
            std::optional<NodeId> pick;
            for ( const auto& t : split.t_rest )
                if ( is_enabled( net, a, t ) && is_enabled( net, b, t ) )
                {
                    pick = t;
                    break;
                }
            if ( !pick )
                break;
            a = fire( net, a, *pick );
            b = fire( net, b, *pick );
            sigma1.push_back( *pick );
            if ( !seen.emplace( a, b ).second )
                throw GreedyCycle( "greedy agreement firing revisits " + a.str() + " / " + b.str() );
        }
    }

    if ( !is_conflict_pair( net, rg, a, b ) )
        throw ConstructionFailed( "derived markings " + a.str() + " and " + b.str() + " are not a conflict-pair" );
    return { { a, b }, sigma1 };
}

DominationResult check_no_dominating( const PetriNet& net, const ReachabilityGraph& rg, const Cluster& c )
{
    Marking target = mrk( c );
    for ( const auto& p : target.support() )
        (void)net.place_index( p );
    DominationResult r;
    for ( const auto& m : rg.states )
        if ( target.lt( m ) )
        {
            r.holds = Tri::False;
            r.counterexample = m;
            return r;
        }
    r.holds = rg.complete() ? Tri::True : Tri::Undecided;
    return r;
}

DominationResult check_no_dominating( const PetriNet& net, const Marking& m0, const Cluster& c,
                                      const ExplorationLimits& limits )
{
    return check_no_dominating( net, explore( net, m0, limits ), c );
}

IncomparableResult check_pairwise_incomparable( const ReachabilityGraph& rg )
{
    IncomparableResult r;
    const std::size_t n = rg.size();
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( a == b )
                continue;
            const auto& big = rg.dense[ a ];
            const auto& small = rg.dense[ b ];
            bool geq = true;
            for ( std::size_t p = 0; p < big.size() && geq; ++p )
                geq = big[ p ] >= small[ p ];
            if ( geq ) // distinct states, so the domination is strict
            {
                r.holds = Tri::False;
                r.counterexample = std::make_pair( rg.states[ a ], rg.states[ b ] );
                return r;
            }
        }
    r.holds = rg.complete() ? Tri::True : Tri::Undecided;
    return r;
}

IncomparableResult check_pairwise_incomparable( const PetriNet& net, const Marking& m0,
                                                const ExplorationLimits& limits )
{
    return check_pairwise_incomparable( explore( net, m0, limits ) );
}

} // namespace lucent
