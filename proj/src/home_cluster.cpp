#include "lucent/home_cluster.hpp"

#include "lucent/lucency.hpp"

#include <algorithm>
#include <deque>

namespace lucent
{

namespace
{

bool is_cluster_of( const PetriNet& net, const Cluster& c )
{
    if ( c.places.empty() && c.transitions.empty() )
        return false;
    const NodeId& probe = c.places.empty() ? *c.transitions.begin() : *c.places.begin();
    if ( !net.has_node( probe ) )
        return false;
    return cluster_of( net, probe ) == c;
}

bool subset( const NodeSet& small, const NodeSet& big )
{
    return std::includes( big.begin(), big.end(), small.begin(), small.end() );
}

struct ShortCircuitPlan
{
    std::optional<std::string> inapplicable; // why the short-circuit method does not apply
    bool outside_conn = false;
};

// Preconditions of the short-circuit decision procedure, in order of checking.
ShortCircuitPlan plan_short_circuit( const PetriNet& net, const Marking& m0, const Cluster& c, const NodeSet& reach )
{
    ShortCircuitPlan plan;
    if ( !is_free_choice( net ) )
        plan.inapplicable = "net is not free-choice";
    else if ( !is_proper( net ) )
        plan.inapplicable = "net is not proper";
    else if ( !m0.is_set() )
        plan.inapplicable = "initial marking is not safe";
    else if ( !subset( c.nodes(), reach ) )
        plan.outside_conn = true;
    return plan;
}

std::string describe( const UnboundednessWitness& w )
{
    return "stem " + w.stem.str() + ", pump " + w.pump.str();
}

} // namespace

std::string to_string( HomeMethod m )
{
    switch ( m )
    {
    case HomeMethod::Direct:
        return "direct";
    case HomeMethod::ShortCircuit:
        return "short-circuit";
    case HomeMethod::Both:
        return "both";
    }
    return "?";
}

std::string to_string( DeadEndKind k ) { return k == DeadEndKind::Terminal ? "terminal" : "regenerative"; }

std::string to_string( Outcome o )
{
    switch ( o )
    {
    case Outcome::Pass:
        return "pass";
    case Outcome::Fail:
        return "fail";
    case Outcome::Skip:
        return "skip";
    }
    return "?";
}

NodeSet conn( const PetriNet& net, const Marking& m0 )
{
    const std::size_t np = net.num_places();
    // node index: places first, then transitions
    std::vector<char> seen( np + net.num_transitions(), 0 );
    std::deque<std::size_t> queue;
    for ( const auto& p : m0.support() )
    {
        std::size_t i = net.place_index( p );
        if ( !seen[ i ] )
        {
            seen[ i ] = 1;
            queue.push_back( i );
        }
    }
    while ( !queue.empty() )
    {
        std::size_t n = queue.front();
        queue.pop_front();
        const auto& next = n < np ? net.post_transitions( n ) : net.post_places( n - np );
        std::size_t offset = n < np ? np : 0;
        for ( auto k : next )
            if ( !seen[ k + offset ] )
            {
                seen[ k + offset ] = 1;
                queue.push_back( k + offset );
            }
    }
    NodeSet out;
    for ( std::size_t i = 0; i < seen.size(); ++i )
        if ( seen[ i ] )
            out.insert( i < np ? net.places()[ i ] : net.transitions()[ i - np ] );
    return out;
}

namespace
{

PetriNet restrict_to( const PetriNet& net, const NodeSet& keep, std::vector<Arc> extra_arcs,
                      const std::optional<NodeId>& extra_transition )
{
    std::vector<NodeId> places, transitions;
    for ( const auto& p : net.places() )
        if ( keep.contains( p ) )
            places.push_back( p );
    for ( const auto& t : net.transitions() )
        if ( keep.contains( t ) )
            transitions.push_back( t );
    if ( extra_transition )
        transitions.push_back( *extra_transition );
    std::vector<Arc> arcs;
    for ( const auto& a : net.arcs() )
        if ( keep.contains( a.from ) && keep.contains( a.to ) )
            arcs.push_back( a );
    arcs.insert( arcs.end(), extra_arcs.begin(), extra_arcs.end() );
    try
    {
        return PetriNet( std::move( places ), std::move( transitions ), std::move( arcs ) );
    }
    catch ( const InvalidNet& e )
    {
        throw CleanedNetInvalid( std::string( "cleaned net is not a valid net: " ) + e.what() );
    }
}

} // namespace

PetriNet clean( const PetriNet& net, const Marking& m0 ) { return restrict_to( net, conn( net, m0 ), {}, std::nullopt ); }

ShortCircuitResult short_circuit( const PetriNet& net, const Cluster& c, const Marking& m0 )
{
    if ( !m0.is_set() )
        throw RequiresSafeMarking( "short-circuiting needs a safe initial marking, got " + m0.str() );
    if ( !is_proper( net ) )
        throw PreconditionError( "short-circuiting needs a proper net" );
    if ( !is_cluster_of( net, c ) )
        throw PreconditionError( c.str() + " is not a cluster of the net" );
    NodeSet reach = conn( net, m0 );
    if ( !subset( c.nodes(), reach ) )
        throw ClusterNotConnected( c.str() + " is not contained in conn(N, M)" );

    NodeId fresh = "t_C";
    for ( int k = 1; net.has_node( fresh ); ++k )
        fresh = "t_C" + std::to_string( k );

    std::vector<Arc> extra;
    for ( const auto& p : c.places )
        extra.push_back( { p, fresh } );
    for ( const auto& p : m0.support() )
        extra.push_back( { fresh, p } );

    ShortCircuitResult r{ restrict_to( net, reach, std::move( extra ), fresh ), fresh, {}, c };
    for ( const auto& p : net.places() )
        if ( !reach.contains( p ) )
            r.removed_nodes.insert( p );
    for ( const auto& t : net.transitions() )
        if ( !reach.contains( t ) )
            r.removed_nodes.insert( t );
    r.extended_cluster.transitions.insert( fresh );
    return r;
}

HomeVerdict home_cluster_direct( const PetriNet& net, const ReachabilityGraph& rg, const Cluster& c )
{
    HomeVerdict v;
    Marking target = mrk( c );
    if ( !rg.complete() )
    {
        v.evidence = "state space " + to_string( rg.verdict ) + " after " + std::to_string( rg.size() ) + " states";
        if ( rg.verdict == ExplorationVerdict::Unbounded && rg.witness )
            v.evidence += " (" + describe( *rg.witness ) + ")";
        return v;
    }
    (void)net;
    auto idx = rg.index_of( target );
    if ( !idx )
    {
        v.is_home = Tri::False;
        v.evidence = "Mrk(C) = " + target.str() + " is not reachable";
        v.counterexample = rg.states.front();
        return v;
    }
    auto back = rg.can_reach( *idx );
    for ( std::size_t s = 0; s < rg.size(); ++s )
        if ( !back[ s ] )
        {
            v.is_home = Tri::False;
            v.evidence = "Mrk(C) = " + target.str() + " cannot be reached from " + rg.states[ s ].str();
            v.counterexample = rg.states[ s ];
            return v;
        }
    v.is_home = Tri::True;
    v.evidence = "Mrk(C) = " + target.str() + " is reachable from all " + std::to_string( rg.size() ) +
                 " reachable markings";
    return v;
}

HomeVerdict home_cluster_short_circuit( const PetriNet& net, const Marking& m0, const Cluster& c,
                                        const ExplorationLimits& limits )
{
    if ( !is_free_choice( net ) )
        throw PreconditionError( "short-circuit method needs a free-choice net" );
    ShortCircuitResult sc = short_circuit( net, c, m0 );
    ReachabilityGraph rg = explore( sc.net, m0, limits );
    HomeVerdict v;
    if ( rg.verdict == ExplorationVerdict::Unbounded )
    {
        v.is_home = Tri::False;
        v.evidence = "short-circuited net is unbounded (" + describe( *rg.witness ) + ")";
        return v;
    }
    if ( !rg.complete() )
    {
        v.evidence = "short-circuited net exploration truncated after " + std::to_string( rg.size() ) + " states";
        return v;
    }
    LivenessResult live = is_live( sc.net, rg );
    if ( live.live == Tri::True )
    {
        v.is_home = Tri::True;
        v.evidence = "short-circuited net is live and bounded (" + std::to_string( rg.size() ) + " states)";
    }
    else
    {
        v.is_home = Tri::False;
        v.evidence = "short-circuited net is not live: " + *live.transition + " cannot fire again from " +
                     live.marking->str();
        v.counterexample = live.marking;
    }
    return v;
}

Tri is_home_cluster_direct( const PetriNet& net, const Marking& m0, const Cluster& c, const ExplorationLimits& limits )
{
    if ( !is_cluster_of( net, c ) )
        throw PreconditionError( c.str() + " is not a cluster of the net" );
    return home_cluster_direct( net, explore( net, m0, limits ), c ).is_home;
}

Tri is_home_cluster_short_circuit( const PetriNet& net, const Marking& m0, const Cluster& c,
                                   const ExplorationLimits& limits )
{
    return home_cluster_short_circuit( net, m0, c, limits ).is_home;
}

HomeClusterReport find_home_clusters( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits,
                                      HomeMethod method )
{
    HomeClusterReport report;
    report.method = method;
    std::optional<ReachabilityGraph> rg;
    NodeSet reach = conn( net, m0 );

    for ( const auto& c : clusters( net ) )
    {
        HomeClusterDetail d{ c, mrk( c ), Tri::Undecided, {} };
        std::optional<HomeVerdict> direct, shorted;
        ShortCircuitPlan plan = plan_short_circuit( net, m0, c, reach );

        bool want_direct = method != HomeMethod::ShortCircuit || plan.inapplicable.has_value();
        bool want_short = method != HomeMethod::Direct && !plan.inapplicable;
        if ( want_direct )
        {
            if ( !rg )
                rg = explore( net, m0, limits );
            direct = home_cluster_direct( net, *rg, c );
        }
        if ( want_short )
        {
            if ( plan.outside_conn )
                shorted = HomeVerdict{ Tri::False, "C is not contained in conn(N, M); Mrk(C) is never reachable", {} };
            else
                shorted = home_cluster_short_circuit( net, m0, c, limits );
        }

        if ( direct && shorted )
        {
            if ( direct->is_home != Tri::Undecided && shorted->is_home != Tri::Undecided &&
                 direct->is_home != shorted->is_home )
                throw TheoremViolation( "home-cluster methods disagree on " + c.str() + ": direct says " +
                                        to_string( direct->is_home ) + " (" + direct->evidence +
                                        "), short-circuit says " + to_string( shorted->is_home ) + " (" +
                                        shorted->evidence + ")" );
            d.is_home = direct->is_home != Tri::Undecided ? direct->is_home : shorted->is_home;
            d.evidence = "direct: " + direct->evidence + "; short-circuit: " + shorted->evidence;
        }
        else if ( direct )
        {
            d.is_home = direct->is_home;
            d.evidence = direct->evidence;
            if ( method != HomeMethod::Direct )
                d.evidence += " (short-circuit method not applicable: " + *plan.inapplicable + ")";
        }
        else
        {
            d.is_home = shorted->is_home;
            d.evidence = shorted->evidence;
        }

        if ( d.is_home == Tri::True )
            report.home_clusters.push_back( c );
        if ( d.is_home == Tri::Undecided )
            report.decided = false;
        report.details.push_back( std::move( d ) );
    }
    return report;
}

DeadEndKind classify_dead_end( const PetriNet& net, const Marking& m0, const Cluster& c,
                               const ExplorationLimits& limits )
{
    if ( !is_cluster_of( net, c ) )
        throw PreconditionError( c.str() + " is not a cluster of the net" );
    ReachabilityGraph rg = explore( net, m0, limits );
    HomeVerdict home = home_cluster_direct( net, rg, c );
    if ( home.is_home == Tri::Undecided )
        throw Undecided( "cannot classify: " + home.evidence );
    if ( home.is_home == Tri::False )
        throw PreconditionError( c.str() + " is not a home cluster: " + home.evidence );

    DeadlockResult dl = is_deadlock_free( net, rg );
    if ( dl.deadlock_free == Tri::False )
    {
        if ( dl.dead_markings.size() != 1 || dl.dead_markings.front() != mrk( c ) || c.places.size() != 1 ||
             !c.transitions.empty() )
            throw TheoremViolation( "dead end of home cluster " + c.str() +
                                    " is not a single terminal place with Mrk(C) as the only dead marking" );
        return DeadEndKind::Terminal;
    }
    if ( c.transitions.empty() )
        throw TheoremViolation( "deadlock-free net with home cluster " + c.str() + " but Tr(C) is empty" );
    return DeadEndKind::Regenerative;
}

CheckReport check_strongly_connected_home( const PetriNet& net, const Marking& m0, const Cluster& c, const ExplorationLimits& limits )
{
    CheckReport r{ "strongly-connected free-choice with home cluster => live, safe, lucent", Outcome::Skip, {} };
    if ( !is_free_choice( net ) || connectivity( net ) != Connectivity::Strong )
    {
        r.detail = "net is not a strongly connected free-choice net";
        return r;
    }
    ReachabilityGraph rg = explore( net, m0, limits );
    HomeVerdict home = home_cluster_direct( net, rg, c );
    if ( home.is_home != Tri::True )
    {
        r.detail = c.str() + " is not a (decided) home cluster";
        return r;
    }
    LivenessResult live = is_live( net, rg );
    SafetyResult safe = is_safe( rg );
    LucencyVerdict luc = check_lucency( net, rg );
    if ( live.live == Tri::True && safe.safe == Tri::True && luc.lucent == Tri::True )
    {
        r.outcome = Outcome::Pass;
        r.detail = "live, safe and lucent over " + std::to_string( rg.size() ) + " markings";
        return r;
    }
    r.outcome = Outcome::Fail;
    r.detail = "live=" + to_string( live.live ) + " safe=" + to_string( safe.safe ) + " lucent=" + to_string( luc.lucent );
    if ( live.transition )
        r.detail += "; " + *live.transition + " is dead from " + live.marking->str();
    if ( safe.violation )
        r.detail += "; unsafe marking " + safe.violation->str();
    if ( luc.witness )
        r.detail += "; " + luc.witness->first.str() + " and " + luc.witness->second.str() + " share a footprint";
    return r;
}

CheckReport check_short_circuit_structure( const PetriNet& net, const Marking& m0, const Cluster& c, const ExplorationLimits& )
{
    CheckReport r{ "short-circuited cleaned net is strongly connected and free-choice, extended cluster preserved",
                   Outcome::Skip, {} };
    NodeSet reach = conn( net, m0 );
    ShortCircuitPlan plan = plan_short_circuit( net, m0, c, reach );
    if ( plan.inapplicable || plan.outside_conn || !is_cluster_of( net, c ) )
    {
        r.detail = plan.inapplicable.value_or( "C is not a cluster inside conn(N, M)" );
        return r;
    }
    ShortCircuitResult sc = short_circuit( net, c, m0 );
    bool strong = connectivity( sc.net ) == Connectivity::Strong;
    bool fc = is_free_choice( sc.net );
    auto cs = clusters( sc.net );
    bool kept = std::find( cs.begin(), cs.end(), sc.extended_cluster ) != cs.end();
    r.outcome = strong && fc && kept ? Outcome::Pass : Outcome::Fail;
    r.detail = std::string( "strongly connected=" ) + ( strong ? "true" : "false" ) +
               " free-choice=" + ( fc ? "true" : "false" ) + " extended cluster " + sc.extended_cluster.str() +
               ( kept ? " present" : " missing" );
    return r;
}

CheckReport check_short_circuit_equivalence( const PetriNet& net, const Marking& m0, const Cluster& c, const ExplorationLimits& limits )
{
    CheckReport r{ "home cluster <=> extended home cluster <=> short-circuited net live and bounded", Outcome::Skip,
                   {} };
    NodeSet reach = conn( net, m0 );
    ShortCircuitPlan plan = plan_short_circuit( net, m0, c, reach );
    if ( plan.inapplicable || plan.outside_conn || !is_cluster_of( net, c ) )
    {
        r.detail = plan.inapplicable.value_or( "C is not a cluster inside conn(N, M)" );
        return r;
    }
    ReachabilityGraph rg = explore( net, m0, limits );
    ShortCircuitResult sc = short_circuit( net, c, m0 );
    ReachabilityGraph rg_sc = explore( sc.net, m0, limits );

    Tri one = home_cluster_direct( net, rg, c ).is_home;
    Tri two = home_cluster_direct( sc.net, rg_sc, sc.extended_cluster ).is_home;
    Tri three = Tri::Undecided;
    if ( rg_sc.verdict == ExplorationVerdict::Unbounded )
        three = Tri::False;
    else if ( rg_sc.complete() )
        three = is_live( sc.net, rg_sc ).live;

    r.detail = "(1)=" + to_string( one ) + " (2)=" + to_string( two ) + " (3)=" + to_string( three );
    std::string stripped;
    for ( const auto& t : net.transitions() )
        if ( reach.contains( t ) && !subset( preset( net, t ), reach ) )
            stripped += ( stripped.empty() ? "" : ", " ) + t;
    if ( !stripped.empty() )
        r.detail += "; cleaning drops input places outside conn(N, M) from " + stripped;
    if ( one == Tri::Undecided || two == Tri::Undecided || three == Tri::Undecided )
    {
        // decided disagreements still count
        bool clash = ( one != Tri::Undecided && two != Tri::Undecided && one != two ) ||
                     ( one != Tri::Undecided && three != Tri::Undecided && one != three ) ||
                     ( two != Tri::Undecided && three != Tri::Undecided && two != three );
        r.outcome = clash ? Outcome::Fail : Outcome::Skip;
        // (2) needs a finite state space; (1) and (3) still compare
        if ( !clash && two == Tri::Undecided && rg_sc.verdict == ExplorationVerdict::Unbounded &&
             one != Tri::Undecided && three != Tri::Undecided )
        {
            r.outcome = Outcome::Pass;
            r.detail += "; (2) not decidable on the unbounded short-circuited net";
        }
        return r;
    }
    if ( one != two || one != three )
    {
        r.outcome = Outcome::Fail;
        return r;
    }
    if ( one == Tri::True )
    {
        std::set<Marking> a( rg.states.begin(), rg.states.end() ), b( rg_sc.states.begin(), rg_sc.states.end() );
        if ( a != b )
        {
            r.outcome = Outcome::Fail;
            r.detail += "; reachable markings differ (" + std::to_string( a.size() ) + " vs " +
                        std::to_string( b.size() ) + ")";
            return r;
        }
        r.detail += "; both nets reach the same " + std::to_string( a.size() ) + " markings";
    }
    r.outcome = Outcome::Pass;
    return r;
}

Tri is_perpetual( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    ReachabilityGraph rg = explore( net, m0, limits );
    if ( rg.verdict == ExplorationVerdict::Unbounded )
        return Tri::False;
    if ( !rg.complete() )
        return Tri::Undecided;
    if ( is_live( net, rg ).live == Tri::False )
        return Tri::False;
    for ( const auto& c : clusters( net ) )
        if ( home_cluster_direct( net, rg, c ).is_home == Tri::True )
            return Tri::True;
    return Tri::False;
}

} // namespace lucent
