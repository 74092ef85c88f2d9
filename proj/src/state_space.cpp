#include "lucent/state_space.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace lucent
{

std::string to_string( ExplorationVerdict v )
{
    switch ( v )
    {
    case ExplorationVerdict::Complete: return "complete";
    case ExplorationVerdict::Unbounded: return "unbounded";
    case ExplorationVerdict::Truncated: return "truncated";
    }
    return "truncated";
}

namespace
{

constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

struct DenseHash
{
    std::size_t operator()( const DenseMarking& m ) const noexcept
    {
        std::size_t h = m.size();
        for ( auto c : m )
            h ^= c + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
        return h;
    }
};

Marking to_marking( const PetriNet& net, const DenseMarking& d )
{
    Marking m;
    for ( std::size_t p = 0; p < d.size(); ++p )
        m.add( net.places()[ p ], d[ p ] );
    return m;
}

bool strictly_dominates( const DenseMarking& big, const DenseMarking& small )
{
    bool strict = false;
    for ( std::size_t p = 0; p < big.size(); ++p )
    {
        if ( big[ p ] < small[ p ] )
            return false;
        if ( big[ p ] > small[ p ] )
            strict = true;
    }
    return strict;
}

} // namespace

std::optional<std::size_t> ReachabilityGraph::index_of( const Marking& m ) const
{
    auto it = std::find( states.begin(), states.end(), m );
    if ( it == states.end() )
        return std::nullopt;
    return static_cast<std::size_t>( it - states.begin() );
}

NodeSet ReachabilityGraph::footprint( const PetriNet& net, std::size_t state ) const
{
    NodeSet out;
    for ( auto t : enabled[ state ] )
        out.insert( net.transitions()[ t ] );
    return out;
}

std::optional<FiringSequence> ReachabilityGraph::shortest_path( std::size_t from, std::size_t to ) const
{
    std::vector<std::size_t> via( size(), none );
    std::vector<char> seen( size(), 0 );
    std::deque<std::size_t> todo{ from };
    seen[ from ] = 1;
    while ( !todo.empty() )
    {
        std::size_t s = todo.front();
        todo.pop_front();
        if ( s == to )
        {
            std::vector<NodeId> steps;
            for ( std::size_t cur = to; cur != from; cur = edges[ via[ cur ] ].from )
                steps.push_back( edges[ via[ cur ] ].transition );
            std::reverse( steps.begin(), steps.end() );
            return FiringSequence{ std::move( steps ) };
        }
        for ( auto e : out_edges[ s ] )
        {
            std::size_t n = edges[ e ].to;
            if ( !seen[ n ] )
            {
                seen[ n ] = 1;
                via[ n ] = e;
                todo.push_back( n );
            }
        }
    }
    return std::nullopt;
}

std::vector<char> ReachabilityGraph::reachable_from( std::size_t from ) const
{
    std::vector<char> seen( size(), 0 );
    std::vector<std::size_t> stack{ from };
    seen[ from ] = 1;
    while ( !stack.empty() )
    {
        std::size_t s = stack.back();
        stack.pop_back();
        for ( auto e : out_edges[ s ] )
            if ( !seen[ edges[ e ].to ] )
            {
                seen[ edges[ e ].to ] = 1;
                stack.push_back( edges[ e ].to );
            }
    }
    return seen;
}

std::vector<char> ReachabilityGraph::can_reach( std::size_t to ) const
{
    std::vector<std::vector<std::size_t>> in( size() );
    for ( const auto& e : edges )
        in[ e.to ].push_back( e.from );
    std::vector<char> seen( size(), 0 );
    std::vector<std::size_t> stack{ to };
    seen[ to ] = 1;
    while ( !stack.empty() )
    {
        std::size_t s = stack.back();
        stack.pop_back();
        for ( auto p : in[ s ] )
            if ( !seen[ p ] )
            {
                seen[ p ] = 1;
                stack.push_back( p );
            }
    }
    return seen;
}

ReachabilityGraph explore( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    if ( limits.max_states < 1 )
        throw PreconditionError( "max_states must be at least 1" );

    const std::size_t np = net.num_places(), nt = net.num_transitions();
    DenseMarking initial( np, 0 );
    for ( const auto& [ p, n ] : m0.counts() )
        initial[ net.place_index( p ) ] = n;

    ReachabilityGraph rg;
    std::unordered_map<DenseMarking, std::size_t, DenseHash> index;
    // BFS tree: parent state and the transition that discovered each state
    std::vector<std::pair<std::size_t, std::size_t>> parent;

    rg.dense.push_back( initial );
    parent.emplace_back( none, none );
    index.emplace( initial, 0 );

    auto tree_path = [ & ]( std::size_t from_ancestor, std::size_t to ) {
        std::vector<NodeId> steps;
        for ( std::size_t cur = to; cur != from_ancestor && cur != 0; cur = parent[ cur ].first )
            steps.push_back( net.transitions()[ parent[ cur ].second ] );
        std::reverse( steps.begin(), steps.end() );
        return FiringSequence{ std::move( steps ) };
    };

    bool stop = false;
    for ( std::size_t s = 0; s < rg.dense.size() && !stop; ++s )
    {
        for ( std::size_t t = 0; t < nt && !stop; ++t )
        {
            const auto& pre = net.pre_places( t );
            if ( !std::all_of( pre.begin(), pre.end(), [ & ]( std::size_t p ) { return rg.dense[ s ][ p ] > 0; } ) )
                continue;
            DenseMarking next = rg.dense[ s ];
            for ( auto p : pre )
                --next[ p ];
            for ( auto p : net.post_places( t ) )
                ++next[ p ];

            if ( auto it = index.find( next ); it != index.end() )
            {
                rg.edges.push_back( { s, net.transitions()[ t ], it->second } );
                continue;
            }

            std::size_t dominated = none;
            for ( std::size_t a = s; a != none; a = parent[ a ].first )
                if ( strictly_dominates( next, rg.dense[ a ] ) )
                {
                    dominated = a;
                    break;
                }

            if ( dominated == none && rg.dense.size() >= limits.max_states )
            {
                rg.verdict = ExplorationVerdict::Truncated;
                stop = true;
                break;
            }

            std::size_t id = rg.dense.size();
            rg.dense.push_back( next );
            parent.emplace_back( s, t );
            index.emplace( std::move( next ), id );
            rg.edges.push_back( { s, net.transitions()[ t ], id } );

            if ( dominated != none )
            {
                rg.verdict = ExplorationVerdict::Unbounded;
                rg.witness = UnboundednessWitness{ tree_path( none, dominated ), tree_path( dominated, id ) };
                stop = true;
            }
        }
    }

    rg.states.reserve( rg.dense.size() );
    rg.enabled.resize( rg.dense.size() );
    rg.out_edges.resize( rg.dense.size() );
    for ( std::size_t s = 0; s < rg.dense.size(); ++s )
    {
        rg.states.push_back( to_marking( net, rg.dense[ s ] ) );
        for ( std::size_t t = 0; t < nt; ++t )
        {
            const auto& pre = net.pre_places( t );
            if ( std::all_of( pre.begin(), pre.end(), [ & ]( std::size_t p ) { return rg.dense[ s ][ p ] > 0; } ) )
                rg.enabled[ s ].push_back( t );
        }
    }
    for ( std::size_t e = 0; e < rg.edges.size(); ++e )
        rg.out_edges[ rg.edges[ e ].from ].push_back( e );

    if ( rg.complete() )
        rg.terminal_sccs = terminal_components( rg.size(), rg.edges );
    return rg;
}

std::vector<std::vector<std::size_t>> terminal_components( std::size_t n, const std::vector<Edge>& edges )
{
    std::vector<std::vector<std::size_t>> succ( n );
    for ( const auto& e : edges )
        succ[ e.from ].push_back( e.to );

    // iterative Tarjan
    std::vector<std::size_t> idx( n, none ), low( n, 0 ), comp( n, none );
    std::vector<char> on_stack( n, 0 );
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call; // (node, next successor position)
    std::size_t counter = 0, ncomp = 0;

    for ( std::size_t root = 0; root < n; ++root )
    {
        if ( idx[ root ] != none )
            continue;
        call.emplace_back( root, 0 );
        idx[ root ] = low[ root ] = counter++;
        stack.push_back( root );
        on_stack[ root ] = 1;
        while ( !call.empty() )
        {
            auto& [ v, pos ] = call.back();
            if ( pos < succ[ v ].size() )
            {
                std::size_t w = succ[ v ][ pos++ ];
                if ( idx[ w ] == none )
                {
                    idx[ w ] = low[ w ] = counter++;
                    stack.push_back( w );
                    on_stack[ w ] = 1;
                    call.emplace_back( w, 0 );
                }
                else if ( on_stack[ w ] )
                    low[ v ] = std::min( low[ v ], idx[ w ] );
                continue;
            }
            std::size_t done = v;
            call.pop_back();
            if ( !call.empty() )
                low[ call.back().first ] = std::min( low[ call.back().first ], low[ done ] );
            if ( low[ done ] == idx[ done ] )
            {
                std::size_t w;
                do
                {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[ w ] = 0;
                    comp[ w ] = ncomp;
                } while ( w != done );
                ++ncomp;
            }
        }
    }

    std::vector<char> has_exit( ncomp, 0 );
    for ( const auto& e : edges )
        if ( comp[ e.from ] != comp[ e.to ] )
            has_exit[ comp[ e.from ] ] = 1;

    std::vector<std::vector<std::size_t>> members( ncomp );
    for ( std::size_t s = 0; s < n; ++s )
        members[ comp[ s ] ].push_back( s );

    std::vector<std::vector<std::size_t>> out;
    for ( std::size_t c = 0; c < ncomp; ++c )
        if ( !has_exit[ c ] )
            out.push_back( std::move( members[ c ] ) );
    std::sort( out.begin(), out.end() );
    return out;
}

BoundResult bound_k( const ReachabilityGraph& rg )
{
    BoundResult r;
    switch ( rg.verdict )
    {
    case ExplorationVerdict::Unbounded:
        r.kind = BoundResult::Kind::Unbounded;
        r.witness = rg.witness;
        return r;
    case ExplorationVerdict::Truncated: r.kind = BoundResult::Kind::Unknown; return r;
    case ExplorationVerdict::Complete: break;
    }
    r.kind = BoundResult::Kind::Bounded;
    for ( const auto& d : rg.dense )
        for ( auto c : d )
            r.bound = std::max( r.bound, c );
    return r;
}

BoundResult bound_k( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    return bound_k( explore( net, m0, limits ) );
}

Tri is_bounded( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    switch ( bound_k( net, m0, limits ).kind )
    {
    case BoundResult::Kind::Bounded: return Tri::True;
    case BoundResult::Kind::Unbounded: return Tri::False;
    case BoundResult::Kind::Unknown: break;
    }
    return Tri::Undecided;
}

SafetyResult is_safe( const ReachabilityGraph& rg )
{
    SafetyResult r;
    for ( std::size_t s = 0; s < rg.size(); ++s )
        if ( !rg.states[ s ].is_set() )
        {
            r.safe = Tri::False;
            r.violation = rg.states[ s ];
            return r;
        }
    // an unbounded net cannot be safe, even if no explored state shows it yet
    if ( rg.verdict == ExplorationVerdict::Unbounded )
    {
        r.safe = Tri::False;
        return r;
    }
    r.safe = rg.complete() ? Tri::True : Tri::Undecided;
    return r;
}

SafetyResult is_safe( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    ReachabilityGraph rg = explore( net, m0, limits );
    SafetyResult r = is_safe( rg );
    if ( r.safe == Tri::False && !r.violation && rg.witness )
    {
        // each pump strictly adds tokens, so two rounds put 2 on some place
        Marking m = fire_sequence( net, m0, rg.witness->stem );
        for ( int round = 0; round < 2 && m.is_set(); ++round )
            m = fire_sequence( net, m, rg.witness->pump );
        r.violation = m;
    }
    return r;
}

LivenessResult is_live( const PetriNet& net, const ReachabilityGraph& rg )
{
    LivenessResult r;
    if ( !rg.complete() )
        return r;
    for ( const auto& scc : rg.terminal_sccs )
    {
        std::vector<char> fired( net.num_transitions(), 0 );
        for ( auto s : scc )
            for ( auto t : rg.enabled[ s ] )
                fired[ t ] = 1;
        for ( std::size_t t = 0; t < net.num_transitions(); ++t )
            if ( !fired[ t ] )
            {
                r.live = Tri::False;
                r.transition = net.transitions()[ t ];
                r.marking = rg.states[ scc.front() ];
                return r;
            }
    }
    r.live = Tri::True;
    return r;
}

LivenessResult is_live( const PetriNet& net, const Marking& m0, const ExplorationLimits& limits )
{
    return is_live( net, explore( net, m0, limits ) );
}

NodeSet dead_places( const PetriNet& net, const ReachabilityGraph& rg )
{
    if ( !rg.complete() )
        throw Undecided( "dead places need a complete state space" );
    std::vector<char> marked( net.num_places(), 0 );
    for ( const auto& d : rg.dense )
        for ( std::size_t p = 0; p < d.size(); ++p )
            if ( d[ p ] > 0 )
                marked[ p ] = 1;
    NodeSet out;
    for ( std::size_t p = 0; p < net.num_places(); ++p )
        if ( !marked[ p ] )
            out.insert( net.places()[ p ] );
    return out;
}

NodeSet dead_transitions( const PetriNet& net, const ReachabilityGraph& rg )
{
    if ( !rg.complete() )
        throw Undecided( "dead transitions need a complete state space" );
    NodeSet out( net.transitions().begin(), net.transitions().end() );
    for ( const auto& e : rg.edges )
        out.erase( e.transition );
    return out;
}

DeadlockResult is_deadlock_free( const PetriNet&, const ReachabilityGraph& rg )
{
    DeadlockResult r;
    for ( std::size_t s = 0; s < rg.size(); ++s )
        if ( rg.enabled[ s ].empty() )
            r.dead_markings.push_back( rg.states[ s ] );
    if ( !r.dead_markings.empty() )
        r.deadlock_free = Tri::False;
    else
        r.deadlock_free = rg.complete() ? Tri::True : Tri::Undecided;
    return r;
}

std::vector<std::size_t> home_state_indices( const ReachabilityGraph& rg )
{
    if ( !rg.complete() )
        throw Undecided( "home markings need a complete state space" );
    if ( rg.terminal_sccs.size() != 1 )
        return {};
    return rg.terminal_sccs.front();
}

std::vector<Marking> home_markings( const PetriNet&, const ReachabilityGraph& rg )
{
    std::vector<Marking> out;
    for ( auto s : home_state_indices( rg ) )
        out.push_back( rg.states[ s ] );
    return out;
}

} // namespace lucent
