#include "lucent/net.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace lucent
{

std::string to_string( Tri v )
{
    switch ( v )
    {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Undecided: return "undecided";
    }
    return "undecided";
}

bool is_valid_identifier( const std::string& s )
{
    if ( s.empty() )
        return false;
    auto alpha = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || c == '_'; };
    auto digit = []( char c ) { return c >= '0' && c <= '9'; };
    if ( !alpha( s[ 0 ] ) )
        return false;
    return std::all_of( s.begin() + 1, s.end(), [ & ]( char c ) { return alpha( c ) || digit( c ); } );
}

// Marking

Marking::Marking( std::initializer_list<NodeId> places )
{
    for ( const auto& p : places )
        add( p );
}

Marking::Marking( const std::map<NodeId, TokenCount>& counts )
{
    for ( const auto& [ p, n ] : counts )
        add( p, n );
}

Marking Marking::from_set( const NodeSet& places )
{
    Marking m;
    for ( const auto& p : places )
        m.add( p );
    return m;
}

TokenCount Marking::operator()( const NodeId& p ) const
{
    auto it = _counts.find( p );
    return it == _counts.end() ? 0 : it->second;
}

TokenCount Marking::count_of( const NodeSet& places ) const
{
    TokenCount n = 0;
    for ( const auto& p : places )
        n += ( *this )( p );
    return n;
}

std::size_t Marking::size() const
{
    std::size_t n = 0;
    for ( const auto& [ _, c ] : _counts )
        n += c;
    return n;
}

NodeSet Marking::support() const
{
    NodeSet s;
    for ( const auto& [ p, _ ] : _counts )
        s.insert( p );
    return s;
}

bool Marking::is_set() const
{
    return std::all_of( _counts.begin(), _counts.end(), []( const auto& e ) { return e.second <= 1; } );
}

void Marking::add( const NodeId& p, TokenCount n )
{
    if ( n > 0 )
        _counts[ p ] += n;
}

Marking Marking::operator+( const Marking& other ) const
{
    Marking r = *this;
    for ( const auto& [ p, n ] : other._counts )
        r.add( p, n );
    return r;
}

Marking Marking::operator-( const Marking& other ) const
{
    Marking r;
    for ( const auto& [ p, n ] : _counts )
    {
        TokenCount o = other( p );
        if ( n > o )
            r.add( p, n - o );
    }
    return r;
}

Marking Marking::meet( const Marking& other ) const
{
    Marking r;
    for ( const auto& [ p, n ] : _counts )
        r.add( p, std::min( n, other( p ) ) );
    return r;
}

bool Marking::leq( const Marking& other ) const
{
    return std::all_of( _counts.begin(), _counts.end(),
                        [ & ]( const auto& e ) { return e.second <= other( e.first ); } );
}

std::string Marking::str() const
{
    std::string out = "[";
    bool first = true;
    for ( const auto& [ p, n ] : _counts )
    {
        if ( !first )
            out += ", ";
        first = false;
        out += p;
        if ( n > 1 )
            out += "^" + std::to_string( n );
    }
    return out + "]";
}

std::vector<std::string> Marking::entries() const
{
    std::vector<std::string> out;
    for ( const auto& [ p, n ] : _counts )
        out.push_back( p + ":" + std::to_string( n ) );
    return out;
}

Marking Marking::parse( const std::string& text )
{
    std::string body = text;
    auto trim = []( std::string s ) {
        auto b = s.find_first_not_of( " \t" );
        auto e = s.find_last_not_of( " \t" );
        return b == std::string::npos ? std::string{} : s.substr( b, e - b + 1 );
    };
    body = trim( body );
    if ( !body.empty() && body.front() == '[' )
    {
        if ( body.back() != ']' )
            throw Error( "malformed marking '" + text + "'" );
        body = body.substr( 1, body.size() - 2 );
    }
    Marking m;
    std::stringstream ss( body );
    std::string item;
    while ( std::getline( ss, item, ',' ) )
    {
        item = trim( item );
        if ( item.empty() )
            continue;
        auto sep = item.find_first_of( "^:" );
        std::string place = trim( item.substr( 0, sep ) );
        TokenCount n = 1;
        if ( sep != std::string::npos )
        {
            try
            {
                n = static_cast<TokenCount>( std::stoul( item.substr( sep + 1 ) ) );
            }
            catch ( const std::exception& )
            {
                throw Error( "malformed marking entry '" + item + "'" );
            }
        }
        if ( !is_valid_identifier( place ) )
            throw Error( "malformed marking entry '" + item + "'" );
        m.add( place, n );
    }
    return m;
}

// FiringSequence

FiringSequence FiringSequence::operator+( const FiringSequence& other ) const
{
    auto steps = _steps;
    steps.insert( steps.end(), other._steps.begin(), other._steps.end() );
    return FiringSequence{ std::move( steps ) };
}

FiringSequence FiringSequence::prefix( std::size_t n ) const
{
    n = std::min( n, _steps.size() );
    return FiringSequence{ std::vector<NodeId>( _steps.begin(), _steps.begin() + static_cast<std::ptrdiff_t>( n ) ) };
}

std::string FiringSequence::str() const
{
    std::string out = "<";
    for ( std::size_t i = 0; i < _steps.size(); ++i )
        out += ( i ? ", " : "" ) + _steps[ i ];
    return out + ">";
}

// PetriNet

namespace
{

std::size_t index_in( const std::vector<NodeId>& sorted, const NodeId& id )
{
    auto it = std::lower_bound( sorted.begin(), sorted.end(), id );
    if ( it == sorted.end() || *it != id )
        return sorted.size();
    return static_cast<std::size_t>( it - sorted.begin() );
}

std::size_t find_root( std::vector<std::size_t>& parent, std::size_t x )
{
    while ( parent[ x ] != x )
    {
        parent[ x ] = parent[ parent[ x ] ];
        x = parent[ x ];
    }
    return x;
}

} // namespace

PetriNet::PetriNet( std::vector<NodeId> places, std::vector<NodeId> transitions, std::vector<Arc> arcs )
        : _places( std::move( places ) ), _transitions( std::move( transitions ) ), _arcs( std::move( arcs ) )
{
    if ( _places.empty() )
        throw InvalidNet( "a net needs at least one place" );
    if ( _transitions.empty() )
        throw InvalidNet( "a net needs at least one transition" );

    for ( const auto* ids : { &_places, &_transitions } )
        for ( const auto& id : *ids )
            if ( !is_valid_identifier( id ) )
                throw InvalidNet( "invalid identifier '" + id + "'" );

    std::sort( _places.begin(), _places.end() );
    std::sort( _transitions.begin(), _transitions.end() );
    if ( std::adjacent_find( _places.begin(), _places.end() ) != _places.end() )
        throw InvalidNet( "duplicate place identifier" );
    if ( std::adjacent_find( _transitions.begin(), _transitions.end() ) != _transitions.end() )
        throw InvalidNet( "duplicate transition identifier" );
    for ( const auto& p : _places )
        if ( std::binary_search( _transitions.begin(), _transitions.end(), p ) )
            throw InvalidNet( "identifier '" + p + "' names both a place and a transition" );

    std::sort( _arcs.begin(), _arcs.end() );
    if ( auto dup = std::adjacent_find( _arcs.begin(), _arcs.end() ); dup != _arcs.end() )
        throw InvalidNet( "duplicate arc " + dup->from + " -> " + dup->to );

    const std::size_t np = _places.size(), nt = _transitions.size();
    _t_pre.assign( nt, {} );
    _t_post.assign( nt, {} );
    _p_pre.assign( np, {} );
    _p_post.assign( np, {} );

    // union-find over places [0, np) and transitions [np, np + nt)
    std::vector<std::size_t> parent( np + nt );
    std::iota( parent.begin(), parent.end(), 0 );

    for ( const auto& a : _arcs )
    {
        std::size_t fp = index_in( _places, a.from ), ft = index_in( _transitions, a.from );
        std::size_t tp = index_in( _places, a.to ), tt = index_in( _transitions, a.to );
        if ( fp == np && ft == nt )
            throw InvalidNet( "arc source '" + a.from + "' is not a node" );
        if ( tp == np && tt == nt )
            throw InvalidNet( "arc target '" + a.to + "' is not a node" );
        std::size_t p, t;
        if ( fp < np && tt < nt )
        {
            p = fp;
            t = tt;
            _t_pre[ t ].push_back( p );
            _p_post[ p ].push_back( t );
        }
        else if ( ft < nt && tp < np )
        {
            p = tp;
            t = ft;
            _t_post[ t ].push_back( p );
            _p_pre[ p ].push_back( t );
        }
        else
            throw InvalidNet( "arc " + a.from + " -> " + a.to + " must connect a place and a transition" );
        parent[ find_root( parent, p ) ] = find_root( parent, np + t );
    }

    for ( auto* lists : { &_t_pre, &_t_post, &_p_pre, &_p_post } )
        for ( auto& l : *lists )
            std::sort( l.begin(), l.end() );

    std::size_t root = find_root( parent, 0 );
    for ( std::size_t i = 1; i < np + nt; ++i )
        if ( find_root( parent, i ) != root )
            throw InvalidNet( "net is not weakly connected" );
}

bool PetriNet::is_place( const NodeId& id ) const { return std::binary_search( _places.begin(), _places.end(), id ); }

bool PetriNet::is_transition( const NodeId& id ) const
{
    return std::binary_search( _transitions.begin(), _transitions.end(), id );
}

bool PetriNet::has_arc( const NodeId& from, const NodeId& to ) const
{
    return std::binary_search( _arcs.begin(), _arcs.end(), Arc{ from, to } );
}

std::size_t PetriNet::place_index( const NodeId& id ) const
{
    std::size_t i = index_in( _places, id );
    if ( i == _places.size() )
        throw NodeNotFound( id );
    return i;
}

std::size_t PetriNet::transition_index( const NodeId& id ) const
{
    std::size_t i = index_in( _transitions, id );
    if ( i == _transitions.size() )
        throw NodeNotFound( id );
    return i;
}

// Cluster

NodeSet Cluster::nodes() const
{
    NodeSet all = places;
    all.insert( transitions.begin(), transitions.end() );
    return all;
}

std::string Cluster::str() const
{
    std::string out = "{";
    bool first = true;
    for ( const auto& n : nodes() )
    {
        out += ( first ? "" : ", " ) + n;
        first = false;
    }
    return out + "}";
}

std::string to_string( Connectivity c ) { return c == Connectivity::Strong ? "strong" : "weak"; }

std::string to_string( NetClass c )
{
    switch ( c )
    {
    case NetClass::MarkedGraph: return "marked-graph";
    case NetClass::StateMachine: return "state-machine";
    case NetClass::FreeChoice: return "free-choice";
    case NetClass::General: return "general";
    }
    return "general";
}

// Structure

NodeSet preset( const PetriNet& net, const NodeId& node )
{
    NodeSet out;
    if ( net.is_place( node ) )
    {
        for ( auto t : net.pre_transitions( net.place_index( node ) ) )
            out.insert( net.transitions()[ t ] );
    }
    else
    {
        for ( auto p : net.pre_places( net.transition_index( node ) ) )
            out.insert( net.places()[ p ] );
    }
    return out;
}

NodeSet postset( const PetriNet& net, const NodeId& node )
{
    NodeSet out;
    if ( net.is_place( node ) )
    {
        for ( auto t : net.post_transitions( net.place_index( node ) ) )
            out.insert( net.transitions()[ t ] );
    }
    else
    {
        for ( auto p : net.post_places( net.transition_index( node ) ) )
            out.insert( net.places()[ p ] );
    }
    return out;
}

NodeSet preset_of_set( const PetriNet& net, const NodeSet& nodes )
{
    NodeSet out;
    for ( const auto& n : nodes )
        out.merge( preset( net, n ) );
    return out;
}

NodeSet postset_of_set( const PetriNet& net, const NodeSet& nodes )
{
    NodeSet out;
    for ( const auto& n : nodes )
        out.merge( postset( net, n ) );
    return out;
}

bool is_enabled( const PetriNet& net, const Marking& m, const NodeId& t )
{
    const auto& pre = net.pre_places( net.transition_index( t ) );
    return std::all_of( pre.begin(), pre.end(), [ & ]( std::size_t p ) { return m( net.places()[ p ] ) >= 1; } );
}

NodeSet enabled_transitions( const PetriNet& net, const Marking& m )
{
    NodeSet out;
    for ( const auto& t : net.transitions() )
        if ( is_enabled( net, m, t ) )
            out.insert( t );
    return out;
}

Marking fire( const PetriNet& net, const Marking& m, const NodeId& t )
{
    std::size_t ti = net.transition_index( t );
    if ( !is_enabled( net, m, t ) )
        throw NotEnabled( t );
    std::map<NodeId, TokenCount> counts = m.counts();
    for ( auto p : net.pre_places( ti ) )
        --counts[ net.places()[ p ] ];
    for ( auto p : net.post_places( ti ) )
        ++counts[ net.places()[ p ] ];
    return Marking{ counts };
}

Marking fire_sequence( const PetriNet& net, const Marking& m, const FiringSequence& s )
{
    Marking cur = m;
    for ( std::size_t i = 0; i < s.size(); ++i )
    {
        if ( !is_enabled( net, cur, s[ i ] ) )
            throw NotEnabledAt( i, s[ i ] );
        cur = fire( net, cur, s[ i ] );
    }
    return cur;
}

std::optional<Marking> try_fire_sequence( const PetriNet& net, const Marking& m, const FiringSequence& s )
{
    Marking cur = m;
    for ( const auto& t : s )
    {
        if ( !net.is_transition( t ) || !is_enabled( net, cur, t ) )
            return std::nullopt;
        cur = fire( net, cur, t );
    }
    return cur;
}

std::vector<Cluster> clusters( const PetriNet& net )
{
    const std::size_t np = net.num_places(), nt = net.num_transitions();
    std::vector<std::size_t> parent( np + nt );
    std::iota( parent.begin(), parent.end(), 0 );
    // only place -> transition arcs glue nodes together
    for ( std::size_t t = 0; t < nt; ++t )
        for ( auto p : net.pre_places( t ) )
            parent[ find_root( parent, p ) ] = find_root( parent, np + t );

    std::map<std::size_t, Cluster> by_root;
    for ( std::size_t p = 0; p < np; ++p )
        by_root[ find_root( parent, p ) ].places.insert( net.places()[ p ] );
    for ( std::size_t t = 0; t < nt; ++t )
        by_root[ find_root( parent, np + t ) ].transitions.insert( net.transitions()[ t ] );

    std::vector<Cluster> out;
    for ( auto& [ _, c ] : by_root )
        out.push_back( std::move( c ) );
    std::sort( out.begin(), out.end(), []( const Cluster& a, const Cluster& b ) {
        if ( a.places.empty() != b.places.empty() )
            return b.places.empty();
        if ( !a.places.empty() )
            return *a.places.begin() < *b.places.begin();
        return *a.transitions.begin() < *b.transitions.begin();
    } );
    return out;
}

Cluster cluster_of( const PetriNet& net, const NodeId& node )
{
    if ( !net.has_node( node ) )
        throw NodeNotFound( node );
    for ( auto& c : clusters( net ) )
        if ( c.contains( node ) )
            return c;
    throw NodeNotFound( node ); // unreachable: clusters partition the nodes
}

Marking mrk( const Cluster& c ) { return Marking::from_set( c.places ); }

bool is_free_choice( const PetriNet& net )
{
    const std::size_t nt = net.num_transitions();
    for ( std::size_t a = 0; a < nt; ++a )
        for ( std::size_t b = a + 1; b < nt; ++b )
        {
            const auto& pa = net.pre_places( a );
            const auto& pb = net.pre_places( b );
            if ( pa == pb )
                continue;
            std::vector<std::size_t> common;
            std::set_intersection( pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter( common ) );
            if ( !common.empty() )
                return false;
        }
    return true;
}

bool is_proper( const PetriNet& net )
{
    for ( std::size_t t = 0; t < net.num_transitions(); ++t )
        if ( net.pre_places( t ).empty() || net.post_places( t ).empty() )
            return false;
    return true;
}

Connectivity connectivity( const PetriNet& net )
{
    const std::size_t np = net.num_places(), n = np + net.num_transitions();
    auto reach_all = [ & ]( bool forward ) {
        std::vector<char> seen( n, 0 );
        std::queue<std::size_t> todo;
        seen[ 0 ] = 1;
        todo.push( 0 );
        std::size_t count = 1;
        while ( !todo.empty() )
        {
            std::size_t x = todo.front();
            todo.pop();
            auto visit = [ & ]( std::size_t y ) {
                if ( !seen[ y ] )
                {
                    seen[ y ] = 1;
                    ++count;
                    todo.push( y );
                }
            };
            if ( x < np )
            {
                for ( auto t : forward ? net.post_transitions( x ) : net.pre_transitions( x ) )
                    visit( np + t );
            }
            else
            {
                for ( auto p : forward ? net.post_places( x - np ) : net.pre_places( x - np ) )
                    visit( p );
            }
        }
        return count == n;
    };
    return reach_all( true ) && reach_all( false ) ? Connectivity::Strong : Connectivity::Weak;
}

NetClass net_class( const PetriNet& net )
{
    bool marked_graph = true;
    for ( std::size_t p = 0; p < net.num_places(); ++p )
        if ( net.pre_transitions( p ).size() > 1 || net.post_transitions( p ).size() > 1 )
            marked_graph = false;
    if ( marked_graph )
        return NetClass::MarkedGraph;

    bool state_machine = true;
    for ( std::size_t t = 0; t < net.num_transitions(); ++t )
        if ( net.pre_places( t ).size() != 1 || net.post_places( t ).size() != 1 )
            state_machine = false;
    if ( state_machine )
        return NetClass::StateMachine;

    return is_free_choice( net ) ? NetClass::FreeChoice : NetClass::General;
}

} // namespace lucent
