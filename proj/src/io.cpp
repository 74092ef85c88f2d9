#include "lucent/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace lucent
{

using json = nlohmann::json;

std::string to_string( ParseError::Kind k )
{
    switch ( k )
    {
    case ParseError::Kind::MissingHeader:
        return "missing-header";
    case ParseError::Kind::DuplicateId:
        return "duplicate-id";
    case ParseError::Kind::UnknownNode:
        return "unknown-node";
    case ParseError::Kind::IllegalArcKind:
        return "illegal-arc-kind";
    case ParseError::Kind::Syntax:
        return "syntax";
    case ParseError::Kind::InvalidNet:
        return "invalid-net";
    }
    return "?";
}

// Parsing

namespace
{

std::vector<std::string> tokenize( std::string line )
{
    if ( auto hash = line.find( '#' ); hash != std::string::npos )
        line.erase( hash );
    for ( std::size_t pos = 0; ( pos = line.find( "->", pos ) ) != std::string::npos; pos += 4 )
        line.replace( pos, 2, " -> " );
    std::istringstream in( line );
    std::vector<std::string> out;
    for ( std::string tok; in >> tok; )
        out.push_back( tok );
    return out;
}

using Kind = ParseError::Kind;

void expect_identifier( const std::string& s, std::size_t line )
{
    if ( !is_valid_identifier( s ) )
        throw ParseError( Kind::Syntax, line, "'" + s + "' is not a valid identifier" );
}

} // namespace

NetDocument parse_net( std::string_view text )
{
    std::optional<std::string> name;
    std::map<NodeId, std::size_t> places, transitions; // id -> declaring line
    std::map<NodeId, TokenCount> init;
    struct PendingArc
    {
        Arc arc;
        std::size_t line;
    };
    std::vector<PendingArc> arcs;

    std::istringstream in{ std::string( text ) };
    std::size_t ln = 0;
    for ( std::string line; std::getline( in, line ); )
    {
        ++ln;
        auto tok = tokenize( line );
        if ( tok.empty() )
            continue;
        const std::string& kw = tok[ 0 ];
        if ( !name )
        {
            if ( kw != "net" )
                throw ParseError( Kind::MissingHeader, ln, "expected 'net NAME' before '" + kw + "'" );
            if ( tok.size() != 2 )
                throw ParseError( Kind::Syntax, ln, "expected 'net NAME'" );
            expect_identifier( tok[ 1 ], ln );
            name = tok[ 1 ];
            continue;
        }
        if ( kw == "net" )
            throw ParseError( Kind::Syntax, ln, "second 'net' header" );
        if ( kw == "place" || kw == "trans" )
        {
            bool is_place = kw == "place";
            bool with_init = is_place && tok.size() == 4 && tok[ 2 ] == "init";
            if ( tok.size() != 2 && !with_init )
                throw ParseError( Kind::Syntax, ln,
                                  is_place ? "expected 'place ID' or 'place ID init N'" : "expected 'trans ID'" );
            const std::string& id = tok[ 1 ];
            expect_identifier( id, ln );
            if ( places.contains( id ) || transitions.contains( id ) )
                throw ParseError( Kind::DuplicateId, ln,
                                  "'" + id + "' already declared on line " +
                                          std::to_string( places.contains( id ) ? places[ id ] : transitions[ id ] ) );
            ( is_place ? places : transitions )[ id ] = ln;
            if ( with_init )
            {
                const std::string& n = tok[ 3 ];
                TokenCount v = 0;
                auto [ ptr, ec ] = std::from_chars( n.data(), n.data() + n.size(), v );
                if ( ec != std::errc() || ptr != n.data() + n.size() )
                    throw ParseError( Kind::Syntax, ln, "'" + n + "' is not a natural number" );
                if ( v > 0 )
                    init[ id ] = v;
            }
            continue;
        }
        if ( kw == "arc" )
        {
            if ( tok.size() != 4 || tok[ 2 ] != "->" )
                throw ParseError( Kind::Syntax, ln, "expected 'arc FROM -> TO'" );
            expect_identifier( tok[ 1 ], ln );
            expect_identifier( tok[ 3 ], ln );
            arcs.push_back( { { tok[ 1 ], tok[ 3 ] }, ln } );
            continue;
        }
        throw ParseError( Kind::Syntax, ln, "unknown statement '" + kw + "'" );
    }
    if ( !name )
        throw ParseError( Kind::MissingHeader, 0, "missing 'net NAME' header" );

    std::vector<Arc> flow;
    std::map<Arc, std::size_t> seen;
    for ( const auto& [ arc, line ] : arcs )
    {
        for ( const auto* end : { &arc.from, &arc.to } )
            if ( !places.contains( *end ) && !transitions.contains( *end ) )
                throw ParseError( Kind::UnknownNode, line, "arc endpoint '" + *end + "' is not declared" );
        if ( places.contains( arc.from ) == places.contains( arc.to ) )
            throw ParseError( Kind::IllegalArcKind, line,
                              "arc " + arc.from + " -> " + arc.to + " must connect a place and a transition" );
        if ( auto [ it, fresh ] = seen.emplace( arc, line ); !fresh )
            throw ParseError( Kind::DuplicateId, line,
                              "arc " + arc.from + " -> " + arc.to + " already declared on line " +
                                      std::to_string( it->second ) );
        flow.push_back( arc );
    }

    std::vector<NodeId> ps, ts;
    for ( const auto& [ id, line ] : places )
        ps.push_back( id );
    for ( const auto& [ id, line ] : transitions )
        ts.push_back( id );
    try
    {
        return { *name, PetriNet( ps, ts, flow ), Marking( init ) };
    }
    catch ( const InvalidNet& e )
    {
        throw ParseError( Kind::InvalidNet, 0, e.what() );
    }
}

NetDocument load_net( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        throw Error( "cannot open '" + path + "'" );
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_net( buf.str() );
}

std::string serialize( const NetDocument& doc )
{
    std::string out = "net " + doc.name + "\n";
    for ( const auto& p : doc.net.places() )
    {
        out += "place " + p;
        if ( TokenCount n = doc.initial( p ) )
            out += " init " + std::to_string( n );
        out += "\n";
    }
    for ( const auto& t : doc.net.transitions() )
        out += "trans " + t + "\n";
    for ( const auto& a : doc.net.arcs() )
        out += "arc " + a.from + " -> " + a.to + "\n";
    return out;
}

// Analysis

AnalysisReport analyze( const NetDocument& doc, const AnalysisOptions& options )
{
    const PetriNet& net = doc.net;
    AnalysisReport r;
    r.net_name = doc.name;
    r.limits = options.limits;
    r.method = options.method;

    r.free_choice = is_free_choice( net );
    r.proper = is_proper( net );
    r.connectivity = connectivity( net );
    r.net_class = net_class( net );
    r.clusters = clusters( net );

    ReachabilityGraph rg = explore( net, doc.initial, options.limits );
    r.exploration = rg.verdict;
    r.states = rg.size();
    r.bound = bound_k( rg );
    r.safe = is_safe( rg );
    r.live = is_live( net, rg );
    r.deadlock = is_deadlock_free( net, rg );
    if ( rg.complete() )
        r.home_markings = home_markings( net, rg );

    r.lucency = check_lucency( net, rg );
    r.transparency = is_fully_transparent( net, rg );

    try
    {
        r.home = find_home_clusters( net, doc.initial, options.limits, options.method );
    }
    catch ( const TheoremViolation& e )
    {
        r.home_error = e.what();
    }

    if ( rg.verdict == ExplorationVerdict::Unbounded )
        r.perpetual = Tri::False;
    else if ( !rg.complete() || !r.home )
        r.perpetual = Tri::Undecided;
    else if ( r.live.live == Tri::False || ( r.home->decided && r.home->home_clusters.empty() ) )
        r.perpetual = Tri::False;
    else if ( r.live.live == Tri::True && !r.home->home_clusters.empty() )
        r.perpetual = Tri::True;
    return r;
}

// Emitting

namespace
{

json tri( Tri t )
{
    switch ( t )
    {
    case Tri::True:
        return true;
    case Tri::False:
        return false;
    case Tri::Undecided:
        return "undecided";
    }
    return "undecided";
}

json marking( const Marking& m ) { return m.entries(); }

json nodes( const NodeSet& s ) { return json( std::vector<std::string>( s.begin(), s.end() ) ); }

json sequence( const FiringSequence& s ) { return s.steps(); }

json unbounded( const std::optional<UnboundednessWitness>& w )
{
    if ( !w )
        return nullptr;
    return { { "stem", sequence( w->stem ) }, { "pump", sequence( w->pump ) } };
}

json lucency_json( const LucencyVerdict& v )
{
    json j;
    j[ "lucent" ] = tri( v.lucent );
    j[ "witness" ] = nullptr;
    if ( v.witness )
        j[ "witness" ] = { { "markings", json::array( { marking( v.witness->first ), marking( v.witness->second ) } ) },
                           { "footprint", nodes( v.shared_footprint ) } };
    j[ "unbounded_witness" ] = unbounded( v.unbounded );
    return j;
}

json home_json( const HomeClusterReport& r )
{
    json details = json::array();
    for ( const auto& d : r.details )
        details.push_back( { { "cluster", nodes( d.cluster.nodes() ) },
                             { "mrk", marking( d.mrk ) },
                             { "is_home", tri( d.is_home ) },
                             { "evidence", d.evidence } } );
    json homes = json::array();
    for ( const auto& c : r.home_clusters )
        homes.push_back( nodes( c.nodes() ) );
    return { { "method", to_string( r.method ) },
             { "home_clusters", homes },
             { "details", details },
             { "decided", r.decided } };
}

std::string bound_kind( const BoundResult& b )
{
    switch ( b.kind )
    {
    case BoundResult::Kind::Bounded:
        return "true";
    case BoundResult::Kind::Unbounded:
        return "false";
    case BoundResult::Kind::Unknown:
        return "undecided";
    }
    return "undecided";
}

json report_json( const AnalysisReport& r )
{
    json j;
    j[ "schema_version" ] = report_schema_version;
    j[ "net" ] = r.net_name;
    j[ "limits" ] = { { "max_states", r.limits.max_states } };

    json cl = json::array();
    for ( const auto& c : r.clusters )
        cl.push_back( nodes( c.nodes() ) );
    j[ "structure" ] = { { "free_choice", r.free_choice },
                         { "proper", r.proper },
                         { "connectivity", to_string( r.connectivity ) },
                         { "net_class", to_string( r.net_class ) },
                         { "clusters", cl } };

    json b;
    b[ "exploration" ] = to_string( r.exploration );
    b[ "states" ] = r.states;
    b[ "bounded" ] = r.bound.kind == BoundResult::Kind::Bounded     ? json( true )
                     : r.bound.kind == BoundResult::Kind::Unbounded ? json( false )
                                                                    : json( "undecided" );
    b[ "bound" ] = r.bound.kind == BoundResult::Kind::Bounded ? json( r.bound.bound ) : json( nullptr );
    b[ "unbounded_witness" ] = unbounded( r.bound.witness );
    b[ "safe" ] = tri( r.safe.safe );
    b[ "unsafe_marking" ] = r.safe.violation ? marking( *r.safe.violation ) : json( nullptr );
    b[ "live" ] = tri( r.live.live );
    b[ "liveness_counterexample" ] =
            r.live.transition ? json{ { "transition", *r.live.transition }, { "marking", marking( *r.live.marking ) } }
                              : json( nullptr );
    b[ "deadlock_free" ] = tri( r.deadlock.deadlock_free );
    json dead = json::array();
    for ( const auto& m : r.deadlock.dead_markings )
        dead.push_back( marking( m ) );
    b[ "dead_markings" ] = dead;
    if ( r.home_markings )
    {
        json hm = json::array();
        for ( const auto& m : *r.home_markings )
            hm.push_back( marking( m ) );
        b[ "home_markings" ] = hm;
    }
    else
        b[ "home_markings" ] = "undecided";
    j[ "behaviour" ] = b;

    json l = lucency_json( r.lucency );
    l[ "fully_transparent" ] = tri( r.transparency.fully_transparent );
    l[ "non_transparent_marking" ] =
            r.transparency.counterexample ? marking( *r.transparency.counterexample ) : json( nullptr );
    j[ "lucency" ] = l;

    if ( r.home )
    {
        json h = home_json( *r.home );
        j[ "home_clusters" ] = h[ "home_clusters" ];
        j[ "home_cluster_details" ] = h[ "details" ];
        j[ "home_clusters_decided" ] = h[ "decided" ];
    }
    else
    {
        j[ "home_clusters" ] = "undecided";
        j[ "home_cluster_details" ] = json::array();
        j[ "home_clusters_decided" ] = false;
    }
    j[ "home_method" ] = to_string( r.method );
    j[ "home_error" ] = r.home_error ? json( *r.home_error ) : json( nullptr );
    j[ "perpetual" ] = tri( r.perpetual );
    return j;
}

std::string dump( const json& j ) { return j.dump( 2 ) + "\n"; }

std::string set_text( const NodeSet& s )
{
    std::string out = "{";
    for ( const auto& n : s )
        out += ( out.size() > 1 ? ", " : "" ) + n;
    return out + "}";
}

std::string lucency_text( const LucencyVerdict& v )
{
    std::string out = "lucent: " + to_string( v.lucent ) + "\n";
    if ( v.witness )
        out += "  witness: " + v.witness->first.str() + " and " + v.witness->second.str() + " both enable " +
               set_text( v.shared_footprint ) + "\n";
    if ( v.unbounded )
        out += "  unbounded: stem " + v.unbounded->stem.str() + ", pump " + v.unbounded->pump.str() + "\n";
    return out;
}

std::string home_text( const HomeClusterReport& r )
{
    std::string out = "home clusters (" + to_string( r.method ) + "):";
    if ( r.home_clusters.empty() )
        out += r.decided ? " none" : " none found (some clusters undecided)";
    for ( const auto& c : r.home_clusters )
        out += " " + c.str();
    out += "\n";
    for ( const auto& d : r.details )
        out += "  " + d.cluster.str() + " Mrk=" + d.mrk.str() + " home=" + to_string( d.is_home ) + ": " +
               d.evidence + "\n";
    return out;
}

} // namespace

std::string emit_report( const AnalysisReport& r, Format format )
{
    if ( format == Format::Json )
        return dump( report_json( r ) );

    std::string out = "net " + r.net_name + "\n";
    out += "structure: " + to_string( r.net_class ) + ", free-choice=" + ( r.free_choice ? "yes" : "no" ) +
           ", proper=" + ( r.proper ? "yes" : "no" ) + ", " + to_string( r.connectivity ) + "ly connected\n";
    out += "clusters:";
    for ( const auto& c : r.clusters )
        out += " " + c.str();
    out += "\n";
    out += "state space: " + std::to_string( r.states ) + " markings, " + to_string( r.exploration ) +
           " (max_states " + std::to_string( r.limits.max_states ) + ")\n";
    out += "bounded: " + bound_kind( r.bound );
    if ( r.bound.kind == BoundResult::Kind::Bounded )
        out += " (k = " + std::to_string( r.bound.bound ) + ")";
    if ( r.bound.witness )
        out += " (stem " + r.bound.witness->stem.str() + ", pump " + r.bound.witness->pump.str() + ")";
    out += "\n";
    out += "safe: " + to_string( r.safe.safe );
    if ( r.safe.violation )
        out += " (" + r.safe.violation->str() + ")";
    out += "\n";
    out += "live: " + to_string( r.live.live );
    if ( r.live.transition )
        out += " (" + *r.live.transition + " is dead from " + r.live.marking->str() + ")";
    out += "\n";
    out += "deadlock-free: " + to_string( r.deadlock.deadlock_free );
    for ( const auto& m : r.deadlock.dead_markings )
        out += " " + m.str();
    out += "\n";
    out += "home markings:";
    if ( !r.home_markings )
        out += " undecided";
    else if ( r.home_markings->empty() )
        out += " none";
    else
        for ( const auto& m : *r.home_markings )
            out += " " + m.str();
    out += "\n";
    out += lucency_text( r.lucency );
    out += "fully transparent: " + to_string( r.transparency.fully_transparent );
    if ( r.transparency.counterexample )
        out += " (" + r.transparency.counterexample->str() + " is not transparent)";
    out += "\n";
    if ( r.home )
        out += home_text( *r.home );
    if ( r.home_error )
        out += "home clusters: ANOMALY: " + *r.home_error + "\n";
    out += "perpetual: " + to_string( r.perpetual ) + "\n";
    return out;
}

std::string emit_lucency( const std::string& net_name, const LucencyVerdict& v, Format format )
{
    if ( format == Format::Json )
    {
        json j = lucency_json( v );
        j[ "schema_version" ] = report_schema_version;
        j[ "net" ] = net_name;
        return dump( j );
    }
    return "net " + net_name + "\n" + lucency_text( v );
}

std::string emit_home_clusters( const std::string& net_name, const HomeClusterReport& r, Format format )
{
    if ( format == Format::Json )
    {
        json j = home_json( r );
        j[ "schema_version" ] = report_schema_version;
        j[ "net" ] = net_name;
        return dump( j );
    }
    return "net " + net_name + "\n" + home_text( r );
}

std::string emit_reachability( const std::string& net_name, const PetriNet& net, const ReachabilityGraph& rg,
                               Format format )
{
    if ( format == Format::Json )
    {
        json states = json::array();
        for ( std::size_t s = 0; s < rg.size(); ++s )
            states.push_back( { { "index", s },
                                { "marking", marking( rg.states[ s ] ) },
                                { "enabled", nodes( rg.footprint( net, s ) ) } } );
        json edges = json::array();
        for ( const auto& e : rg.edges )
            edges.push_back( { e.from, e.transition, e.to } );
        json j;
        j[ "schema_version" ] = report_schema_version;
        j[ "net" ] = net_name;
        j[ "exploration" ] = to_string( rg.verdict );
        j[ "states" ] = states;
        j[ "edges" ] = edges;
        j[ "terminal_sccs" ] = rg.terminal_sccs;
        j[ "unbounded_witness" ] = unbounded( rg.witness );
        return dump( j );
    }
    std::string out = "net " + net_name + ": " + std::to_string( rg.size() ) + " markings, " +
                      to_string( rg.verdict ) + "\n";
    for ( std::size_t s = 0; s < rg.size(); ++s )
    {
        out += "  " + std::to_string( s ) + " " + rg.states[ s ].str() + " enables " +
               set_text( rg.footprint( net, s ) ) + "\n";
        for ( auto e : rg.out_edges[ s ] )
            out += "      --" + rg.edges[ e ].transition + "--> " + std::to_string( rg.edges[ e ].to ) + "\n";
    }
    if ( rg.witness )
        out += "  unbounded: stem " + rg.witness->stem.str() + ", pump " + rg.witness->pump.str() + "\n";
    return out;
}

} // namespace lucent
