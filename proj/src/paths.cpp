#include "lucent/paths.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace lucent
{

namespace
{

std::map<NodeId, std::size_t> cluster_ids( const PetriNet& net )
{
    std::map<NodeId, std::size_t> ids;
    auto cs = clusters( net );
    for ( std::size_t i = 0; i < cs.size(); ++i )
        for ( const auto& n : cs[ i ].nodes() )
            ids[ n ] = i;
    return ids;
}

// No transition in positions [i-1, j-1) (0-based) shares t_j's cluster and
// the prefix followed by t_j is enabled.
bool expedite_ok( const PetriNet& net, const std::map<NodeId, std::size_t>& cid, const Marking& m,
                  const std::vector<NodeId>& s, std::size_t i, std::size_t j )
{
    const NodeId& moved = s[ j - 1 ];
    for ( std::size_t k = i - 1; k < j - 1; ++k )
        if ( cid.at( s[ k ] ) == cid.at( moved ) )
            return false;
    std::vector<NodeId> probe( s.begin(), s.begin() + static_cast<std::ptrdiff_t>( i - 1 ) );
    probe.push_back( moved );
    return try_fire_sequence( net, m, FiringSequence{ std::move( probe ) } ).has_value();
}

void require_enabled( const PetriNet& net, const Marking& m, const FiringSequence& s )
{
    Marking cur = m;
    for ( const auto& t : s )
    {
        if ( !is_enabled( net, cur, t ) )
            throw NotEnabled( t );
        cur = fire( net, cur, t );
    }
}

void require_indices( const FiringSequence& s, std::size_t i, std::size_t j )
{
    if ( i < 1 || i >= j || j > s.size() )
        throw BadIndices( "expedite positions must satisfy 1 <= i < j <= " + std::to_string( s.size() ) + ", got (" +
                          std::to_string( i ) + ", " + std::to_string( j ) + ")" );
}

} // namespace

// Paths

bool is_path( const PetriNet& net, const std::vector<NodeId>& nodes )
{
    if ( nodes.empty() )
        return false;
    if ( !std::all_of( nodes.begin(), nodes.end(), [ & ]( const NodeId& n ) { return net.has_node( n ); } ) )
        return false;
    for ( std::size_t i = 0; i + 1 < nodes.size(); ++i )
        if ( !net.has_arc( nodes[ i ], nodes[ i + 1 ] ) )
            return false;
    return true;
}

bool is_elementary( const PetriNet& net, const std::vector<NodeId>& nodes )
{
    if ( !is_path( net, nodes ) )
        return false;
    std::set<NodeId> seen( nodes.begin(), nodes.end() );
    return seen.size() == nodes.size();
}

bool is_circuit( const PetriNet& net, const std::vector<NodeId>& nodes )
{
    return is_elementary( net, nodes ) && net.has_arc( nodes.back(), nodes.front() );
}

bool is_disentangled( const PetriNet& net, const std::vector<NodeId>& nodes )
{
    if ( !is_path( net, nodes ) || !net.is_place( nodes.front() ) || !net.is_place( nodes.back() ) )
        return false;
    auto cid = cluster_ids( net );
    std::set<std::size_t> seen;
    for ( const auto& n : nodes )
        if ( net.is_place( n ) && !seen.insert( cid.at( n ) ).second )
            return false;
    return true;
}

bool is_q_rooted( const PetriNet& net, const std::vector<NodeId>& nodes, const NodeSet& q )
{
    return is_disentangled( net, nodes ) && q.contains( nodes.back() );
}

Path::Path( const PetriNet& net, std::vector<NodeId> nodes ) : _nodes( std::move( nodes ) )
{
    if ( !is_path( net, _nodes ) )
        throw InvalidPath( "not a path of the net: " + str() );
}

NodeSet Path::places( const PetriNet& net ) const
{
    NodeSet out;
    for ( const auto& n : _nodes )
        if ( net.is_place( n ) )
            out.insert( n );
    return out;
}

NodeSet Path::transitions( const PetriNet& net ) const
{
    NodeSet out;
    for ( const auto& n : _nodes )
        if ( net.is_transition( n ) )
            out.insert( n );
    return out;
}

std::string Path::str() const
{
    std::string out = "<";
    for ( std::size_t i = 0; i < _nodes.size(); ++i )
        out += ( i ? ", " : "" ) + _nodes[ i ];
    return out + ">";
}

DisentangledPath::DisentangledPath( const PetriNet& net, Path path ) : _path( std::move( path ) )
{
    if ( !is_disentangled( net, _path.nodes() ) )
        throw InvalidPath( "not a disentangled path: " + _path.str() );
}

DisentangledPath disentangle( const PetriNet& net, const Path& path, const Cluster& c )
{
    const auto& nodes = path.nodes();
    if ( !net.is_place( nodes.front() ) )
        throw InvalidPath( "path must start at a place: " + path.str() );
    if ( !c.places.contains( nodes.back() ) )
        throw InvalidPath( "path must end at a place of the target cluster: " + path.str() );
    if ( !is_free_choice( net ) )
        throw InvalidPath( "disentangling needs a free-choice net" );

    auto cid = cluster_ids( net );
    std::vector<NodeId> out;
    std::size_t i = 0;
    while ( true )
    {
        const NodeId& p = nodes[ i ];
        out.push_back( p );
        if ( c.places.contains( p ) )
            break;
        // largest later place position sharing p's cluster
        std::size_t jump = i;
        for ( std::size_t j = i + 2; j < nodes.size(); j += 2 )
            if ( cid.at( nodes[ j ] ) == cid.at( p ) )
                jump = j;
        const NodeId& t = nodes[ jump + 1 ];
        if ( !net.has_arc( p, t ) )
            throw InvalidPath( "shortcut " + p + " -> " + t + " is not an arc" );
        out.push_back( t );
        i = jump + 2;
    }
    return DisentangledPath{ net, Path{ net, std::move( out ) } };
}

RootedPathResult find_rooted_path( const PetriNet& net, const ReachabilityGraph& rg, const NodeId& p,
                                   const Cluster& c )
{
    std::size_t pi = net.place_index( p );
    RootedPathResult r;
    if ( rg.complete() && std::none_of( rg.dense.begin(), rg.dense.end(), [ & ]( const auto& d ) { return d[ pi ] > 0; } ) )
    {
        r.status = RootedPathResult::Status::DeadPlace;
        return r;
    }

    // breadth-first over the net graph, successors in identifier order
    std::map<NodeId, NodeId> via;
    std::deque<NodeId> todo{ p };
    via[ p ] = p;
    std::optional<NodeId> hit;
    while ( !todo.empty() && !hit )
    {
        NodeId x = todo.front();
        todo.pop_front();
        if ( c.places.contains( x ) )
        {
            hit = x;
            break;
        }
        for ( const auto& y : postset( net, x ) )
            if ( !via.contains( y ) )
            {
                via[ y ] = x;
                todo.push_back( y );
            }
    }
    if ( !hit )
        return r;

    std::vector<NodeId> nodes;
    for ( NodeId cur = *hit; ; cur = via[ cur ] )
    {
        nodes.push_back( cur );
        if ( cur == p )
            break;
    }
    std::reverse( nodes.begin(), nodes.end() );
    r.status = RootedPathResult::Status::Found;
    r.path = disentangle( net, Path{ net, std::move( nodes ) }, c );
    return r;
}

RootedPathResult find_rooted_path( const PetriNet& net, const Marking& m0, const NodeId& p, const Cluster& c,
                                   const ExplorationLimits& limits )
{
    return find_rooted_path( net, explore( net, m0, limits ), p, c );
}

PathSafetyResult verify_path_safety( const PetriNet& net, const ReachabilityGraph& rg, const DisentangledPath& path )
{
    std::vector<std::size_t> idx;
    for ( const auto& p : path.path().places( net ) )
        idx.push_back( net.place_index( p ) );
    PathSafetyResult r;
    for ( std::size_t s = 0; s < rg.size(); ++s )
    {
        TokenCount on_path = 0;
        for ( auto p : idx )
            on_path += rg.dense[ s ][ p ];
        if ( on_path > 1 )
        {
            r.safe = Tri::False;
            r.violation = rg.states[ s ];
            return r;
        }
    }
    r.safe = rg.complete() ? Tri::True : Tri::Undecided;
    return r;
}

PathSafetyResult verify_path_safety( const PetriNet& net, const Marking& m0, const DisentangledPath& path,
                                     const ExplorationLimits& limits )
{
    return verify_path_safety( net, explore( net, m0, limits ), path );
}

// Expediting

bool can_expedite( const PetriNet& net, const Marking& m, const FiringSequence& s, std::size_t i, std::size_t j )
{
    require_indices( s, i, j );
    require_enabled( net, m, s );
    return expedite_ok( net, cluster_ids( net ), m, s.steps(), i, j );
}

FiringSequence expedite( const FiringSequence& s, std::size_t i, std::size_t j )
{
    require_indices( s, i, j );
    auto steps = s.steps();
    auto first = steps.begin() + static_cast<std::ptrdiff_t>( i - 1 );
    auto moved = steps.begin() + static_cast<std::ptrdiff_t>( j - 1 );
    std::rotate( first, moved, moved + 1 );
    return FiringSequence{ std::move( steps ) };
}

FiringSequence Expedition::result( const PetriNet& net ) const
{
    require_enabled( net, start, base );
    auto cid = cluster_ids( net );
    FiringSequence cur = base;
    for ( auto [ i, j ] : moves )
    {
        require_indices( cur, i, j );
        if ( !expedite_ok( net, cid, start, cur.steps(), i, j ) )
            throw PreconditionError( "move (" + std::to_string( i ) + ", " + std::to_string( j ) +
                                     ") cannot be expedited in " + cur.str() );
        cur = expedite( cur, i, j );
    }
    return cur;
}

bool preserves_cluster_order( const PetriNet& net, const FiringSequence& a, const FiringSequence& b )
{
    if ( a.size() != b.size() )
        return false;
    auto cid = cluster_ids( net );
    std::map<std::size_t, std::vector<NodeId>> per_a, per_b;
    for ( const auto& t : a )
    {
        if ( !cid.contains( t ) )
            return false;
        per_a[ cid.at( t ) ].push_back( t );
    }
    for ( const auto& t : b )
    {
        if ( !cid.contains( t ) )
            return false;
        per_b[ cid.at( t ) ].push_back( t );
    }
    return per_a == per_b;
}

Tri expedited_member( const PetriNet& net, const Marking& m, const FiringSequence& base,
                      const FiringSequence& candidate, std::size_t budget )
{
    require_enabled( net, m, base );
    if ( candidate == base )
        return Tri::True;
    // members are cluster-order-preserving permutations and enabled
    if ( !preserves_cluster_order( net, base, candidate ) || !try_fire_sequence( net, m, candidate ) )
        return Tri::False;

    auto cid = cluster_ids( net );
    std::set<std::vector<NodeId>> seen{ base.steps() };
    std::deque<std::vector<NodeId>> todo{ base.steps() };
    const std::size_t n = base.size();
    while ( !todo.empty() )
    {
        auto cur = std::move( todo.front() );
        todo.pop_front();
        for ( std::size_t j = 2; j <= n; ++j )
            for ( std::size_t i = 1; i < j; ++i )
            {
                if ( !expedite_ok( net, cid, m, cur, i, j ) )
                    continue;
                auto next = expedite( FiringSequence{ cur }, i, j ).steps();
                if ( next == candidate.steps() )
                    return Tri::True;
                if ( seen.insert( next ).second )
                {
                    if ( seen.size() > budget )
                        return Tri::Undecided;
                    todo.push_back( std::move( next ) );
                }
            }
    }
    return Tri::False;
}

ExpediteSplit expedite_split( const PetriNet& net, const Marking& m_from, const FiringSequence& s,
                              const Marking& m_alt, const NodeSet& allowed )
{
    require_enabled( net, m_from, s );
    auto cid = cluster_ids( net );
    std::vector<NodeId> cur = s.steps();
    Marking alt = m_alt;
    std::size_t k = 0;
    bool extended = true;
    while ( extended )
    {
        extended = false;
        for ( std::size_t j = k; j < cur.size(); ++j )
        {
            const NodeId t = cur[ j ];
            if ( !allowed.contains( t ) || !is_enabled( net, alt, t ) )
                continue;
            if ( j > k )
            {
                if ( !expedite_ok( net, cid, m_from, cur, k + 1, j + 1 ) )
                    continue;
                cur = expedite( FiringSequence{ cur }, k + 1, j + 1 ).steps();
            }
            alt = fire( net, alt, t );
            ++k;
            extended = true;
            break;
        }
    }
    ExpediteSplit out;
    out.first = FiringSequence{ std::vector<NodeId>( cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>( k ) ) };
    out.second = FiringSequence{ std::vector<NodeId>( cur.begin() + static_cast<std::ptrdiff_t>( k ), cur.end() ) };
    return out;
}

Expedition random_expedition( const PetriNet& net, const Marking& m, const FiringSequence& s, std::uint64_t seed,
                              std::size_t max_moves )
{
    require_enabled( net, m, s );
    auto cid = cluster_ids( net );
    std::mt19937_64 rng( seed );
    Expedition e{ s, m, {} };
    std::vector<NodeId> cur = s.steps();
    std::size_t n_moves = std::uniform_int_distribution<std::size_t>( 1, std::max<std::size_t>( 1, max_moves ) )( rng );
    for ( std::size_t step = 0; step < n_moves; ++step )
    {
        std::vector<std::pair<std::size_t, std::size_t>> legal;
        for ( std::size_t j = 2; j <= cur.size(); ++j )
            for ( std::size_t i = 1; i < j; ++i )
                if ( expedite_ok( net, cid, m, cur, i, j ) )
                    legal.emplace_back( i, j );
        if ( legal.empty() )
            break;
        auto mv = legal[ std::uniform_int_distribution<std::size_t>( 0, legal.size() - 1 )( rng ) ];
        e.moves.push_back( mv );
        cur = expedite( FiringSequence{ cur }, mv.first, mv.second ).steps();
    }
    return e;
}

ExpediteSafetyResult verify_expedite_safe( const PetriNet& net, const Marking& m, const FiringSequence& s,
                                           std::size_t samples, std::uint64_t seed )
{
    const Marking target = fire_sequence( net, m, s );
    ExpediteSafetyResult r;
    for ( std::size_t k = 0; k < samples; ++k )
    {
        Expedition e = random_expedition( net, m, s, seed + k );
        FiringSequence moved = e.result( net );
        auto reached = try_fire_sequence( net, m, moved );
        ++r.checked;
        if ( !reached || *reached != target || !preserves_cluster_order( net, s, moved ) )
        {
            r.safe = false;
            r.counterexample = e;
            return r;
        }
    }
    return r;
}

} // namespace lucent
