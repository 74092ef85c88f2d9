#include "lucent/corpus.hpp"

#include "lucent/home_cluster.hpp"
#include "lucent/lucency.hpp"
#include "lucent/paths.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace lucent
{

namespace
{

struct Spec
{
    std::vector<NodeId> inputs;
    std::vector<NodeId> outputs;
};

// Builds a net from per-transition presets and postsets.
PetriNet build( std::size_t n_places, const std::map<NodeId, Spec>& trans )
{
    std::vector<NodeId> places;
    for ( std::size_t i = 1; i <= n_places; ++i )
        places.push_back( "p" + std::to_string( i ) );
    std::vector<NodeId> transitions;
    std::vector<Arc> arcs;
    for ( const auto& [ t, s ] : trans )
    {
        transitions.push_back( t );
        for ( const auto& p : s.inputs )
            arcs.push_back( { p, t } );
        for ( const auto& p : s.outputs )
            arcs.push_back( { t, p } );
    }
    return PetriNet( places, transitions, arcs );
}

NetDocument make_doc( PaperNetId id )
{
    switch ( id )
    {
    case PaperNetId::N1:
        return { "N1",
                 build( 4, { { "t1", { { "p1" }, { "p2" } } },
                             { "t2", { { "p1" }, { "p2" } } },
                             { "t3", { { "p2" }, { "p3" } } },
                             { "t4", { { "p3" }, { "p4" } } },
                             { "t5", { { "p3" }, { "p4" } } } } ),
                 Marking{ "p1" } };
    case PaperNetId::N2:
        return { "N2",
                 build( 6, { { "t1", { { "p1" }, { "p2", "p5" } } },
                             { "t2", { { "p1" }, { "p2", "p6" } } },
                             { "t3", { { "p2" }, { "p3" } } },
                             { "t4", { { "p3", "p5" }, { "p4" } } },
                             { "t5", { { "p3", "p6" }, { "p4" } } } } ),
                 Marking{ "p1" } };
    case PaperNetId::N3:
        return { "N3",
                 build( 6, { { "t1", { { "p1" }, { "p2" } } },
                             { "t2", { { "p2", "p3" }, { "p1", "p4" } } },
                             { "t3", { { "p4", "p5" }, { "p3", "p6" } } },
                             { "t4", { { "p6" }, { "p5" } } } } ),
                 Marking{ "p1", "p3", "p6" } };
    case PaperNetId::N4:
        return { "N4",
                 build( 9, { { "t1", { { "p3" }, { "p4" } } },
                             { "t2", { { "p1" }, { "p3", "p5", "p7" } } },
                             { "t3", { { "p1" }, { "p3", "p7", "p8" } } },
                             { "t4", { { "p7" }, { "p6" } } },
                             { "t5", { { "p4", "p5" }, { "p2" } } },
                             { "t6", { { "p6", "p8" }, { "p9" } } } } ),
                 Marking{ "p1" } };
    case PaperNetId::N5:
        return { "N5",
                 build( 8, { { "t1", { { "p1" }, { "p2", "p3" } } },
                             { "t2", { { "p1" }, { "p4", "p5" } } },
                             { "t3", { { "p2" }, { "p8" } } },
                             { "t4", { { "p3" }, { "p7" } } },
                             { "t5", { { "p4" }, { "p8" } } },
                             { "t6", { { "p5" }, { "p7" } } },
                             { "t7", { { "p7", "p8" }, { "p6" } } },
                             { "t8", { { "p7", "p8" }, { "p7", "p8" } } } } ),
                 Marking{ "p1" } };
    }
    throw PreconditionError( "unknown example net" );
}

constexpr Basis S = Basis::Stated;
constexpr Basis D = Basis::Derived;

std::vector<Expectation> checkpoints( PaperNetId id )
{
    switch ( id )
    {
    case PaperNetId::N1:
        return { { "places", "4", S },
                 { "transitions", "5", S },
                 { "arcs", "10", S },
                 { "clusters", "{p1, t1, t2}; {p2, t3}; {p3, t4, t5}; {p4}", S },
                 { "reachable_count", "4", S } };
    case PaperNetId::N2:
        return { { "places", "6", S },
                 { "transitions", "5", S },
                 { "clusters", "{p1, t1, t2}; {p2, t3}; {p3, p5, p6, t4, t5}; {p4}", D },
                 { "footprint [p2, p5]", "{t3}", S },
                 { "footprint [p2, p6]", "{t3}", S } };
    case PaperNetId::N3:
        return { { "places", "6", S },
                 { "transitions", "4", S },
                 { "clusters", "{p1, t1}; {p2, p3, t2}; {p4, p5, t3}; {p6, t4}", S },
                 { "reachable_count", "8", D },
                 { "footprint [p2, p3, p5]", "{t2}", S },
                 { "footprint [p2, p4, p5]", "{t3}", S } };
    case PaperNetId::N4:
        return { { "places", "9", S },
                 { "transitions", "6", S },
                 { "free_choice", "true", S },
                 { "proper", "true", S },
                 { "footprint [p3, p5, p7]", "{t1, t4}", S },
                 { "footprint [p3, p7, p8]", "{t1, t4}", S } };
    case PaperNetId::N5:
        return { { "places", "8", S },
                 { "transitions", "8", S },
                 { "free_choice", "true", S },
                 { "proper", "true", S },
                 { "footprint [p4, p7]", "{t5}", S } };
    }
    return {};
}

std::vector<Expectation> expectations( PaperNetId id )
{
    std::vector<Expectation> out = checkpoints( id );
    std::vector<Expectation> more;
    switch ( id )
    {
    case PaperNetId::N1:
        more = { { "free_choice", "true", S },
                 { "net_class", "state-machine", D },
                 { "lucent", "true", S },
                 { "fully_transparent", "false", D },
                 { "home_markings", "[p4]", S },
                 { "home_clusters", "{p4}", S },
                 { "dead_end", "terminal", S },
                 { "live", "false", S },
                 { "perpetual", "false", S },
                 { "safe", "true", D },
                 { "deadlock_free", "false", D } };
        break;
    case PaperNetId::N2:
        more = { { "reachable", "[p1] [p2, p5] [p2, p6] [p3, p5] [p3, p6] [p4]", S },
                 { "free_choice", "false", D },
                 { "lucent", "false", S },
                 { "lucency_witness", "[p2, p5] / [p2, p6] : {t3}", S },
                 { "home_clusters", "{p4}", D } };
        break;
    case PaperNetId::N3:
        more = { { "free_choice", "true", S },
                 { "net_class", "marked-graph", D },
                 { "lucent", "false", S },
                 { "lucency_witness", "[p1, p3, p6] / [p1, p4, p6] : {t1, t4}", S },
                 { "live", "true", S },
                 { "safe", "true", S },
                 { "deadlock_free", "true", S },
                 { "home_marking_count", "8", S },
                 { "home_clusters", "none", D },
                 { "perpetual", "false", D } };
        break;
    case PaperNetId::N4:
        more = { { "lucent", "false", S },
                 { "lucency_witness", "[p3, p5, p7] / [p3, p7, p8] : {t1, t4}", S },
                 { "home_clusters", "none", S } };
        break;
    case PaperNetId::N5:
        more = { { "lucent", "true", S },
                 { "fully_transparent", "false", S },
                 { "live", "false", S },
                 { "perpetual", "false", S },
                 { "reachable_count", "9", D },
                 { "home_clusters", "{p6}", D },
                 { "dead_end", "terminal", D },
                 { "safe", "true", D } };
        break;
    }
    out.insert( out.end(), more.begin(), more.end() );
    return out;
}

std::string set_str( const NodeSet& s )
{
    std::string out = "{";
    for ( const auto& n : s )
        out += ( out.size() > 1 ? ", " : "" ) + n;
    return out + "}";
}

std::string markings_str( std::vector<Marking> ms )
{
    std::sort( ms.begin(), ms.end() );
    std::string out;
    for ( const auto& m : ms )
        out += ( out.empty() ? "" : " " ) + m.str();
    return out.empty() ? "none" : out;
}

std::string clusters_str( const std::vector<Cluster>& cs )
{
    std::string out;
    for ( const auto& c : cs )
        out += ( out.empty() ? "" : "; " ) + c.str();
    return out.empty() ? "none" : out;
}

std::string tri_str( Tri t ) { return to_string( t ); }

} // namespace

std::string to_string( PaperNetId id ) { return "N" + std::to_string( static_cast<int>( id ) + 1 ); }

std::vector<PaperNetId> all_paper_nets()
{
    return { PaperNetId::N1, PaperNetId::N2, PaperNetId::N3, PaperNetId::N4, PaperNetId::N5 };
}

std::string to_string( Basis b ) { return b == Basis::Stated ? "stated" : "derived"; }

std::string evaluate_property( const PaperNet& pn, const std::string& property )
{
    const PetriNet& net = pn.doc.net;
    const Marking& m0 = pn.doc.initial;

    if ( property == "places" )
        return std::to_string( net.num_places() );
    if ( property == "transitions" )
        return std::to_string( net.num_transitions() );
    if ( property == "arcs" )
        return std::to_string( net.arcs().size() );
    if ( property == "clusters" )
        return clusters_str( clusters( net ) );
    if ( property == "free_choice" )
        return is_free_choice( net ) ? "true" : "false";
    if ( property == "proper" )
        return is_proper( net ) ? "true" : "false";
    if ( property == "net_class" )
        return to_string( net_class( net ) );
    if ( property == "connectivity" )
        return to_string( connectivity( net ) );
    if ( property.starts_with( "footprint " ) )
        return set_str( footprint( net, Marking::parse( property.substr( 10 ) ) ) );

    ReachabilityGraph rg = explore( net, m0 );
    if ( property == "reachable" )
        return markings_str( rg.states );
    if ( property == "reachable_count" )
        return std::to_string( rg.size() );
    if ( property == "lucent" )
        return tri_str( check_lucency( net, rg ).lucent );
    if ( property == "lucency_witness" )
    {
        LucencyVerdict v = check_lucency( net, rg );
        if ( !v.witness )
            return "none";
        return v.witness->first.str() + " / " + v.witness->second.str() + " : " + set_str( v.shared_footprint );
    }
    if ( property == "fully_transparent" )
        return tri_str( is_fully_transparent( net, rg ).fully_transparent );
    if ( property == "live" )
        return tri_str( is_live( net, rg ).live );
    if ( property == "safe" )
        return tri_str( is_safe( rg ).safe );
    if ( property == "bounded" )
    {
        auto b = bound_k( rg ).kind;
        return b == BoundResult::Kind::Bounded ? "true" : b == BoundResult::Kind::Unbounded ? "false" : "undecided";
    }
    if ( property == "deadlock_free" )
        return tri_str( is_deadlock_free( net, rg ).deadlock_free );
    if ( property == "home_markings" )
        return markings_str( home_markings( net, rg ) );
    if ( property == "home_marking_count" )
        return std::to_string( home_markings( net, rg ).size() );
    if ( property == "home_clusters" )
        return clusters_str( find_home_clusters( net, m0 ).home_clusters );
    if ( property == "perpetual" )
        return tri_str( is_perpetual( net, m0 ) );
    if ( property == "dead_end" )
    {
        auto homes = find_home_clusters( net, m0, {}, HomeMethod::Direct ).home_clusters;
        return homes.empty() ? "none" : to_string( classify_dead_end( net, m0, homes.front() ) );
    }
    throw PreconditionError( "unknown property '" + property + "'" );
}

std::vector<std::string> transcription_problems( const PaperNet& pn )
{
    std::vector<std::string> out;
    for ( const auto& e : checkpoints( pn.id ) )
    {
        std::string got = evaluate_property( pn, e.property );
        if ( got != e.value )
            out.push_back( pn.doc.name + ": " + e.property + " is " + got + ", expected " + e.value );
    }
    return out;
}

PaperNet paper_net( PaperNetId id )
{
    PaperNet pn{ id, make_doc( id ), expectations( id ) };
    auto problems = transcription_problems( pn );
    if ( !problems.empty() )
        throw InvalidNet( "transcription checkpoint failed: " + problems.front() );
    return pn;
}

std::vector<ExpectationMismatch> check_expectations( const PaperNet& pn )
{
    std::vector<ExpectationMismatch> out;
    for ( const auto& e : pn.expected )
    {
        std::string got = evaluate_property( pn, e.property );
        if ( got != e.value )
            out.push_back( { e, got } );
    }
    return out;
}

// Generator

namespace
{

class Rng
{
    std::mt19937_64 _gen;

public:
    explicit Rng( std::uint64_t seed ) : _gen( seed ) {}
    std::size_t between( std::size_t lo, std::size_t hi )
    {
        return std::uniform_int_distribution<std::size_t>( lo, hi )( _gen );
    }
    template <class T> const T& pick( const std::vector<T>& v ) { return v[ between( 0, v.size() - 1 ) ]; }
};

// Strongly connected components over nodes 0..n-1 (Kosaraju).
std::vector<std::size_t> scc_ids( std::size_t n, const std::vector<std::vector<std::size_t>>& adj,
                                  std::size_t& count )
{
    std::vector<std::vector<std::size_t>> radj( n );
    for ( std::size_t u = 0; u < n; ++u )
        for ( auto v : adj[ u ] )
            radj[ v ].push_back( u );
    std::vector<char> seen( n, 0 );
    std::vector<std::size_t> order;
    for ( std::size_t s = 0; s < n; ++s )
    {
        if ( seen[ s ] )
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{ { s, 0 } };
        seen[ s ] = 1;
        while ( !stack.empty() )
        {
            auto& [ u, i ] = stack.back();
            if ( i < adj[ u ].size() )
            {
                std::size_t v = adj[ u ][ i++ ];
                if ( !seen[ v ] )
                {
                    seen[ v ] = 1;
                    stack.push_back( { v, 0 } );
                }
            }
            else
            {
                order.push_back( u );
                stack.pop_back();
            }
        }
    }
    std::vector<std::size_t> comp( n, SIZE_MAX );
    count = 0;
    for ( auto it = order.rbegin(); it != order.rend(); ++it )
    {
        if ( comp[ *it ] != SIZE_MAX )
            continue;
        std::vector<std::size_t> stack{ *it };
        comp[ *it ] = count;
        while ( !stack.empty() )
        {
            std::size_t u = stack.back();
            stack.pop_back();
            for ( auto v : radj[ u ] )
                if ( comp[ v ] == SIZE_MAX )
                {
                    comp[ v ] = count;
                    stack.push_back( v );
                }
        }
        ++count;
    }
    return comp;
}

void check_range( std::size_t lo, std::size_t hi, const char* what )
{
    if ( lo > hi )
        throw PreconditionError( std::string( "empty range for " ) + what );
}

} // namespace

NetDocument generate( const GeneratorParams& params )
{
    check_range( params.min_clusters, params.max_clusters, "cluster_count" );
    check_range( params.min_places_per_cluster, params.max_places_per_cluster, "places_per_cluster" );
    check_range( params.min_transitions_per_cluster, params.max_transitions_per_cluster, "transitions_per_cluster" );
    check_range( params.min_outputs, params.max_outputs, "outputs_per_transition" );
    if ( params.min_clusters == 0 || params.min_places_per_cluster == 0 || params.min_outputs == 0 ||
         params.max_places == 0 )
        throw PreconditionError( "generator ranges must allow at least one cluster, place and output" );

    Rng rng( params.seed );
    struct Block
    {
        std::vector<std::size_t> places, transitions;
    };
    std::vector<Block> blocks;
    std::size_t n_places = 0, n_trans = 0;
    std::size_t wanted = rng.between( params.min_clusters, params.max_clusters );
    for ( std::size_t b = 0; b < wanted && n_places < params.max_places; ++b )
    {
        std::size_t min_t = params.min_transitions_per_cluster;
        if ( params.force_strongly_connected || b == 0 )
            min_t = std::max<std::size_t>( min_t, 1 );
        std::size_t nt = rng.between( min_t, std::max( min_t, params.max_transitions_per_cluster ) );
        std::size_t np = rng.between( params.min_places_per_cluster, params.max_places_per_cluster );
        if ( nt == 0 )
            np = 1; // a place without output transitions is a cluster on its own
        np = std::min( np, params.max_places - n_places );
        Block blk;
        for ( std::size_t i = 0; i < np; ++i )
            blk.places.push_back( n_places++ );
        for ( std::size_t i = 0; i < nt; ++i )
            blk.transitions.push_back( n_trans++ );
        blocks.push_back( std::move( blk ) );
    }

    // adjacency over places [0, n_places) and transitions [n_places, n_places + n_trans)
    const std::size_t n = n_places + n_trans;
    std::vector<std::vector<std::size_t>> adj( n );
    auto add = [ & ]( std::size_t from, std::size_t to ) {
        if ( std::find( adj[ from ].begin(), adj[ from ].end(), to ) == adj[ from ].end() )
            adj[ from ].push_back( to );
    };
    std::vector<std::size_t> block_of( n );
    for ( std::size_t b = 0; b < blocks.size(); ++b )
    {
        for ( auto p : blocks[ b ].places )
            block_of[ p ] = b;
        for ( auto t : blocks[ b ].transitions )
        {
            block_of[ n_places + t ] = b;
            for ( auto p : blocks[ b ].places )
                add( p, n_places + t );
            std::size_t outs = std::min( rng.between( params.min_outputs, params.max_outputs ), n_places );
            std::vector<std::size_t> all( n_places );
            std::iota( all.begin(), all.end(), 0 );
            for ( std::size_t k = 0; k < outs; ++k )
            {
                std::size_t j = rng.between( k, n_places - 1 );
                std::swap( all[ k ], all[ j ] );
                add( n_places + t, all[ k ] );
            }
        }
    }

    // weak connectivity: link every other component from a transition of block 0
    std::vector<std::size_t> parent( blocks.size() );
    std::iota( parent.begin(), parent.end(), 0 );
    std::function<std::size_t( std::size_t )> root = [ & ]( std::size_t x ) {
        return parent[ x ] == x ? x : parent[ x ] = root( parent[ x ] );
    };
    for ( std::size_t u = 0; u < n; ++u )
        for ( auto v : adj[ u ] )
            parent[ root( block_of[ u ] ) ] = root( block_of[ v ] );
    for ( std::size_t b = 1; b < blocks.size(); ++b )
        if ( root( b ) != root( 0 ) )
        {
            std::size_t t = n_places + rng.pick( blocks[ 0 ].transitions );
            std::size_t p = rng.pick( blocks[ b ].places );
            add( t, p );
            parent[ root( b ) ] = root( 0 );
        }

    if ( params.force_strongly_connected )
    {
        // Repeatedly route a sink component back into a source component.
        while ( true )
        {
            std::size_t count = 0;
            auto comp = scc_ids( n, adj, count );
            if ( count <= 1 )
                break;
            std::vector<char> has_out( count, 0 ), has_in( count, 0 );
            for ( std::size_t u = 0; u < n; ++u )
                for ( auto v : adj[ u ] )
                    if ( comp[ u ] != comp[ v ] )
                    {
                        has_out[ comp[ u ] ] = 1;
                        has_in[ comp[ v ] ] = 1;
                    }
            std::vector<std::size_t> sink_t, source_p;
            for ( std::size_t u = n_places; u < n; ++u )
                if ( !has_out[ comp[ u ] ] )
                    sink_t.push_back( u );
            for ( std::size_t u = 0; u < n_places; ++u )
                if ( !has_in[ comp[ u ] ] )
                    source_p.push_back( u );
            std::size_t t = rng.pick( sink_t );
            std::vector<std::size_t> targets;
            for ( auto p : source_p )
                if ( comp[ p ] != comp[ t ] )
                    targets.push_back( p );
            if ( targets.empty() )
                for ( std::size_t p = 0; p < n_places; ++p )
                    if ( comp[ p ] != comp[ t ] )
                        targets.push_back( p );
            add( t, rng.pick( targets ) );
        }
    }

    std::vector<NodeId> places, transitions;
    for ( std::size_t i = 0; i < n_places; ++i )
        places.push_back( "p" + std::to_string( i + 1 ) );
    for ( std::size_t i = 0; i < n_trans; ++i )
        transitions.push_back( "t" + std::to_string( i + 1 ) );
    auto name = [ & ]( std::size_t u ) { return u < n_places ? places[ u ] : transitions[ u - n_places ]; };
    std::vector<Arc> arcs;
    for ( std::size_t u = 0; u < n; ++u )
        for ( auto v : adj[ u ] )
            arcs.push_back( { name( u ), name( v ) } );

    PetriNet net( places, transitions, arcs );
    auto cs = clusters( net );
    Marking m0 = mrk( cs[ rng.between( 0, cs.size() - 1 ) ] );
    return { "random_" + std::to_string( params.seed ), std::move( net ), std::move( m0 ) };
}

std::vector<NetDocument> paper_corpus()
{
    std::vector<NetDocument> out;
    for ( auto id : all_paper_nets() )
        out.push_back( paper_net( id ).doc );
    return out;
}

std::vector<NetDocument> random_corpus( std::size_t count, std::uint64_t seed, bool force_strongly_connected )
{
    std::vector<NetDocument> out;
    std::seed_seq seq{ seed };
    std::vector<std::uint64_t> seeds( count );
    {
        std::vector<std::uint32_t> raw( 2 * count );
        seq.generate( raw.begin(), raw.end() );
        for ( std::size_t i = 0; i < count; ++i )
            seeds[ i ] = ( std::uint64_t( raw[ 2 * i ] ) << 32 ) | raw[ 2 * i + 1 ];
    }
    for ( std::size_t i = 0; i < count; ++i )
    {
        GeneratorParams p;
        p.seed = seeds[ i ];
        // every fourth net is strongly connected unless all are requested
        p.force_strongly_connected = force_strongly_connected || i % 4 == 3;
        if ( i % 2 == 1 )
        {
            // sparser profile: fewer token-producing transitions
            p.max_places_per_cluster = 2;
            p.max_transitions_per_cluster = 2;
            p.max_outputs = 2;
        }
        if ( i % 8 == 7 )
            p.max_outputs = 1; // strongly connected and token non-increasing
        out.push_back( generate( p ) );
    }
    return out;
}

// Theorem suite

const std::vector<std::string>& suite_checks()
{
    static const std::vector<std::string> names = {
            "lucent-implies-bounded",
            "transparent-implies-lucent",
            "expediting-preserves-outcome",
            "home-cluster-lucent",
            "home-cluster-safe",
            "home-cluster-no-conflict-pairs",
            "no-conflict-pairs-implies-lucent",
            "home-marking-not-dominated",
            "markings-pairwise-incomparable",
            "rooted-path-exists",
            "rooted-path-safe",
            "dead-end-dichotomy",
            "strongly-connected-home-live",
            "short-circuit-equivalence",
            "perpetual-is-proper",
    };
    return names;
}

const TheoremTally& SuiteReport::tally( const std::string& check ) const
{
    for ( const auto& t : tallies )
        if ( t.check == check )
            return t;
    throw PreconditionError( "unknown check '" + check + "'" );
}

namespace
{

class Recorder
{
    SuiteReport& _report;
    const NetDocument& _doc;

    TheoremTally& tally( const std::string& check )
    {
        for ( auto& t : _report.tallies )
            if ( t.check == check )
                return t;
        throw PreconditionError( "unknown check '" + check + "'" );
    }

public:
    Recorder( SuiteReport& r, const NetDocument& d ) : _report( r ), _doc( d ) {}

    void pass( const std::string& check ) { ++tally( check ).pass; }
    void skip( const std::string& check ) { ++tally( check ).skip; }
    void fail( const std::string& check, const std::string& evidence )
    {
        ++tally( check ).fail;
        _report.anomalies.push_back( { check, _doc.name, evidence, serialize( _doc ) } );
    }
    void verdict( const std::string& check, bool ok, const std::string& evidence )
    {
        ok ? pass( check ) : fail( check, evidence );
    }
    // Runs `body`; an exception counts as a failure of `check`.
    void guarded( const std::string& check, const std::function<void()>& body )
    {
        try
        {
            body();
        }
        catch ( const std::exception& e )
        {
            fail( check, std::string( "exception: " ) + e.what() );
        }
    }
};

// Pumps the unboundedness witness until two consecutive markings share a footprint.
std::optional<std::string> pumped_collision( const PetriNet& net, const Marking& m0, const UnboundednessWitness& w )
{
    Marking cur = fire_sequence( net, m0, w.stem );
    for ( std::size_t k = 0; k <= net.num_transitions() + 1; ++k )
    {
        Marking next = fire_sequence( net, cur, w.pump );
        if ( next != cur && footprint( net, next ) == footprint( net, cur ) )
            return cur.str() + " and " + next.str() + " share a footprint";
        cur = next;
    }
    return std::nullopt;
}

FiringSequence random_run( const PetriNet& net, const Marking& m0, std::uint64_t seed, std::size_t max_len )
{
    std::mt19937_64 gen( seed );
    FiringSequence s;
    Marking m = m0;
    for ( std::size_t i = 0; i < max_len; ++i )
    {
        NodeSet en = enabled_transitions( net, m );
        if ( en.empty() )
            break;
        std::vector<NodeId> v( en.begin(), en.end() );
        const NodeId& t = v[ std::uniform_int_distribution<std::size_t>( 0, v.size() - 1 )( gen ) ];
        m = fire( net, m, t );
        s.push_back( t );
    }
    return s;
}

void evaluate_net( const NetDocument& doc, std::size_t index, const SuiteOptions& opt, Recorder& rec )
{
    const PetriNet& net = doc.net;
    const Marking& m0 = doc.initial;
    const bool fc = is_free_choice( net );
    const bool proper = is_proper( net );
    ReachabilityGraph rg = explore( net, m0, opt.limits );
    LucencyVerdict luc = check_lucency( net, rg );

    rec.guarded( "lucent-implies-bounded", [ & ] {
        if ( rg.verdict == ExplorationVerdict::Unbounded )
        {
            auto hit = pumped_collision( net, m0, *rg.witness );
            rec.verdict( "lucent-implies-bounded", hit.has_value(),
                         "unbounded net without a footprint collision along the pumped witness" );
        }
        else if ( rg.complete() && luc.lucent == Tri::True )
            rec.pass( "lucent-implies-bounded" );
        else
            rec.skip( "lucent-implies-bounded" );
    } );

    rec.guarded( "transparent-implies-lucent", [ & ] {
        if ( !rg.complete() || is_fully_transparent( net, rg ).fully_transparent != Tri::True )
            return rec.skip( "transparent-implies-lucent" );
        rec.verdict( "transparent-implies-lucent", luc.lucent == Tri::True,
                     "fully transparent but " + ( luc.witness ? luc.witness->first.str() + " and " +
                                                                        luc.witness->second.str() + " share a footprint"
                                                              : std::string( "lucency undecided" ) ) );
    } );

    rec.guarded( "expediting-preserves-outcome", [ & ] {
        if ( !fc )
            return rec.skip( "expediting-preserves-outcome" );
        std::uint64_t seed = opt.seed * 0x9e3779b97f4a7c15ULL + index;
        FiringSequence s;
        for ( std::uint64_t k = 0; k < 4; ++k )
            if ( FiringSequence run = random_run( net, m0, seed + k, 10 ); run.size() > s.size() )
                s = run;
        if ( s.empty() )
            return rec.skip( "expediting-preserves-outcome" );
        ExpediteSafetyResult r = verify_expedite_safe( net, m0, s, opt.expedite_samples, seed );
        std::string evidence = "base " + s.str();
        if ( r.counterexample )
            evidence += ", expedited to " + r.counterexample->result( net ).str();
        rec.verdict( "expediting-preserves-outcome", r.safe && r.checked >= opt.expedite_samples, evidence );
    } );

    std::vector<Cluster> homes;
    if ( rg.complete() )
        for ( const auto& c : clusters( net ) )
            if ( home_cluster_direct( net, rg, c ).is_home == Tri::True )
                homes.push_back( c );
    const bool hyp = fc && proper && !homes.empty();
    const std::string home_desc = homes.empty() ? "" : "home cluster " + homes.front().str();

    auto hyp_check = [ & ]( const std::string& name, const std::function<std::pair<bool, std::string>()>& body ) {
        rec.guarded( name, [ & ] {
            if ( !hyp )
                return rec.skip( name );
            auto [ ok, evidence ] = body();
            rec.verdict( name, ok, home_desc + ": " + evidence );
        } );
    };

    hyp_check( "home-cluster-lucent", [ & ] {
        std::string ev = "lucent=" + to_string( luc.lucent );
        if ( luc.witness )
            ev += ", " + luc.witness->first.str() + " and " + luc.witness->second.str() + " share a footprint";
        return std::make_pair( luc.lucent == Tri::True, ev );
    } );
    hyp_check( "home-cluster-safe", [ & ] {
        SafetyResult s = is_safe( rg );
        return std::make_pair( s.safe == Tri::True,
                               "safe=" + to_string( s.safe ) + ( s.violation ? " at " + s.violation->str() : "" ) );
    } );
    std::vector<ConflictPair> pairs;
    hyp_check( "home-cluster-no-conflict-pairs", [ & ] {
        pairs = find_conflict_pairs( net, rg, 1 );
        return std::make_pair( pairs.empty(), pairs.empty() ? std::string()
                                                            : "conflict-pair " + pairs.front().m1.str() + " / " +
                                                                      pairs.front().m2.str() );
    } );
    rec.guarded( "no-conflict-pairs-implies-lucent", [ & ] {
        if ( !hyp || !pairs.empty() )
            return rec.skip( "no-conflict-pairs-implies-lucent" );
        rec.verdict( "no-conflict-pairs-implies-lucent", luc.lucent == Tri::True,
                     home_desc + ": no conflict-pairs but lucent=" + to_string( luc.lucent ) );
    } );
    hyp_check( "home-marking-not-dominated", [ & ] {
        for ( const auto& c : homes )
        {
            DominationResult d = check_no_dominating( net, rg, c );
            if ( d.holds != Tri::True )
                return std::make_pair( false, mrk( c ).str() + " dominated by " +
                                                      ( d.counterexample ? d.counterexample->str() : "?" ) );
        }
        return std::make_pair( true, std::string() );
    } );
    hyp_check( "markings-pairwise-incomparable", [ & ] {
        IncomparableResult r = check_pairwise_incomparable( rg );
        return std::make_pair( r.holds == Tri::True,
                               r.counterexample ? r.counterexample->first.str() + " > " + r.counterexample->second.str()
                                                : "holds=" + to_string( r.holds ) );
    } );

    rec.guarded( "rooted-path-exists", [ & ] {
        if ( !hyp )
        {
            rec.skip( "rooted-path-exists" );
            rec.skip( "rooted-path-safe" );
            return;
        }
        const Cluster& c = homes.front();
        NodeSet dead = dead_places( net, rg );
        std::vector<std::string> missing, unsafe;
        for ( const auto& p : net.places() )
        {
            if ( dead.contains( p ) )
                continue;
            RootedPathResult r = find_rooted_path( net, rg, p, c );
            if ( r.status != RootedPathResult::Status::Found || !is_q_rooted( net, r.path->nodes(), c.places ) ||
                 r.path->nodes().front() != p )
            {
                missing.push_back( p );
                continue;
            }
            if ( verify_path_safety( net, rg, *r.path ).safe != Tri::True )
                unsafe.push_back( r.path->str() );
        }
        auto join = []( const std::vector<std::string>& v ) {
            std::string out;
            for ( const auto& s : v )
                out += ( out.empty() ? "" : ", " ) + s;
            return out;
        };
        rec.verdict( "rooted-path-exists", missing.empty(), home_desc + ": no rooted path from " + join( missing ) );
        rec.verdict( "rooted-path-safe", unsafe.empty(), home_desc + ": paths holding two tokens " + join( unsafe ) );
    } );

    rec.guarded( "dead-end-dichotomy", [ & ] {
        if ( !proper || homes.empty() )
            return rec.skip( "dead-end-dichotomy" );
        for ( const auto& c : homes )
            (void)classify_dead_end( net, m0, c, opt.limits );
        rec.pass( "dead-end-dichotomy" );
    } );

    rec.guarded( "strongly-connected-home-live", [ & ] {
        if ( !fc || homes.empty() || connectivity( net ) != Connectivity::Strong )
            return rec.skip( "strongly-connected-home-live" );
        CheckReport r = check_strongly_connected_home( net, m0, homes.front(), opt.limits );
        if ( r.outcome == Outcome::Skip )
            return rec.skip( "strongly-connected-home-live" );
        rec.verdict( "strongly-connected-home-live", r.outcome == Outcome::Pass, r.detail );
    } );

    rec.guarded( "short-circuit-equivalence", [ & ] {
        if ( !fc || !proper || !m0.is_set() )
            return rec.skip( "short-circuit-equivalence" );
        for ( const auto& c : clusters( net ) )
        {
            CheckReport r = check_short_circuit_equivalence( net, m0, c, opt.limits );
            if ( r.outcome == Outcome::Skip )
                rec.skip( "short-circuit-equivalence" );
            else
                rec.verdict( "short-circuit-equivalence", r.outcome == Outcome::Pass, c.str() + ": " + r.detail );
        }
    } );

    rec.guarded( "perpetual-is-proper", [ & ] {
        if ( !fc || !rg.complete() || homes.empty() || is_live( net, rg ).live != Tri::True )
            return rec.skip( "perpetual-is-proper" );
        rec.verdict( "perpetual-is-proper", proper, "perpetual free-choice net that is not proper" );
    } );
}

} // namespace

SuiteReport run_theorem_suite( const std::vector<NetDocument>& nets, const SuiteOptions& options )
{
    SuiteReport report;
    for ( const auto& name : suite_checks() )
        report.tallies.push_back( { name } );
    if ( nets.empty() )
    {
        report.tallies.clear();
        return report;
    }
    for ( std::size_t i = 0; i < nets.size(); ++i )
    {
        Recorder rec( report, nets[ i ] );
        evaluate_net( nets[ i ], i, options, rec );
        ++report.nets;
    }
    return report;
}

} // namespace lucent
