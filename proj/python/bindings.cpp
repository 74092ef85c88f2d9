#include "lucent/corpus.hpp"
#include "lucent/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lucent;

namespace
{

py::object tri( Tri t )
{
    if ( t == Tri::Undecided )
        return py::none();
    return py::bool_( t == Tri::True );
}

py::dict marking_dict( const Marking& m )
{
    py::dict d;
    for ( const auto& [ p, n ] : m.counts() )
        d[ py::str( p ) ] = n;
    return d;
}

Marking to_marking( const std::map<std::string, TokenCount>& d ) { return Marking( d ); }

std::vector<std::string> set_list( const NodeSet& s ) { return { s.begin(), s.end() }; }

ExplorationLimits limits( std::size_t max_states ) { return { max_states, std::nullopt }; }

HomeMethod method_of( const std::string& s )
{
    if ( s == "direct" )
        return HomeMethod::Direct;
    if ( s == "short-circuit" )
        return HomeMethod::ShortCircuit;
    if ( s == "both" )
        return HomeMethod::Both;
    throw py::value_error( "method must be 'direct', 'short-circuit' or 'both'" );
}

PaperNetId paper_id( const std::string& s )
{
    for ( auto id : all_paper_nets() )
        if ( to_string( id ) == s )
            return id;
    throw py::value_error( "unknown example net '" + s + "'" );
}

NetDocument make_net( const std::string& name, const std::vector<std::string>& places,
                      const std::vector<std::string>& transitions,
                      const std::vector<std::pair<std::string, std::string>>& arcs,
                      const std::map<std::string, TokenCount>& initial )
{
    std::vector<Arc> flow;
    for ( const auto& [ a, b ] : arcs )
        flow.push_back( { a, b } );
    return { name, PetriNet( places, transitions, flow ), to_marking( initial ) };
}

} // namespace

PYBIND11_MODULE( _core, m )
{
    m.doc() = "Lucency and home-cluster analysis of marked Petri nets";

    py::register_exception<Error>( m, "LucentError", PyExc_ValueError );

    py::class_<NetDocument>( m, "Net" )
            .def( py::init( &make_net ), py::arg( "name" ), py::arg( "places" ), py::arg( "transitions" ),
                  py::arg( "arcs" ), py::arg( "initial" ) = std::map<std::string, TokenCount>{} )
            .def_static( "parse", []( const std::string& text ) { return parse_net( text ); } )
            .def_static( "load", &load_net )
            .def_static( "example", []( const std::string& id ) { return paper_net( paper_id( id ) ).doc; } )
            .def_static(
                    "generate",
                    []( std::uint64_t seed, bool strongly_connected ) {
                        GeneratorParams p;
                        p.seed = seed;
                        p.force_strongly_connected = strongly_connected;
                        return generate( p );
                    },
                    py::arg( "seed" ), py::arg( "strongly_connected" ) = false )
            .def_readonly( "name", &NetDocument::name )
            .def_property_readonly( "places", []( const NetDocument& d ) { return d.net.places(); } )
            .def_property_readonly( "transitions", []( const NetDocument& d ) { return d.net.transitions(); } )
            .def_property_readonly( "arcs",
                                    []( const NetDocument& d ) {
                                        std::vector<std::pair<std::string, std::string>> out;
                                        for ( const auto& a : d.net.arcs() )
                                            out.emplace_back( a.from, a.to );
                                        return out;
                                    } )
            .def_property_readonly( "initial", []( const NetDocument& d ) { return marking_dict( d.initial ); } )
            .def( "serialize", []( const NetDocument& d ) { return serialize( d ); } )
            .def( "__repr__", []( const NetDocument& d ) {
                return "<Net " + d.name + ": " + std::to_string( d.net.num_places() ) + " places, " +
                       std::to_string( d.net.num_transitions() ) + " transitions>";
            } );

    m.def( "is_free_choice", []( const NetDocument& d ) { return is_free_choice( d.net ); } );
    m.def( "is_proper", []( const NetDocument& d ) { return is_proper( d.net ); } );
    m.def( "net_class", []( const NetDocument& d ) { return to_string( net_class( d.net ) ); } );
    m.def( "clusters", []( const NetDocument& d ) {
        std::vector<std::vector<std::string>> out;
        for ( const auto& c : clusters( d.net ) )
            out.push_back( set_list( c.nodes() ) );
        return out;
    } );
    m.def( "enabled", []( const NetDocument& d, const std::map<std::string, TokenCount>& mk ) {
        return set_list( enabled_transitions( d.net, to_marking( mk ) ) );
    } );
    m.def( "fire", []( const NetDocument& d, const std::map<std::string, TokenCount>& mk,
                       const std::vector<std::string>& seq ) {
        return marking_dict( fire_sequence( d.net, to_marking( mk ), FiringSequence( seq ) ) );
    } );

    m.def(
            "explore",
            []( const NetDocument& d, std::size_t max_states ) {
                ReachabilityGraph rg = explore( d.net, d.initial, limits( max_states ) );
                py::list states;
                for ( const auto& s : rg.states )
                    states.append( marking_dict( s ) );
                py::list edges;
                for ( const auto& e : rg.edges )
                    edges.append( py::make_tuple( e.from, e.transition, e.to ) );
                py::dict out;
                out[ "verdict" ] = to_string( rg.verdict );
                out[ "states" ] = states;
                out[ "edges" ] = edges;
                return out;
            },
            py::arg( "net" ), py::arg( "max_states" ) = 100000 );

    m.def(
            "lucency",
            []( const NetDocument& d, std::size_t max_states ) {
                LucencyVerdict v = check_lucency( d.net, d.initial, limits( max_states ) );
                py::dict out;
                out[ "lucent" ] = tri( v.lucent );
                if ( v.witness )
                {
                    out[ "witness" ] = py::make_tuple( marking_dict( v.witness->first ),
                                                       marking_dict( v.witness->second ) );
                    out[ "footprint" ] = set_list( v.shared_footprint );
                }
                else
                {
                    out[ "witness" ] = py::none();
                    out[ "footprint" ] = py::none();
                }
                return out;
            },
            py::arg( "net" ), py::arg( "max_states" ) = 100000 );

    m.def(
            "home_clusters",
            []( const NetDocument& d, const std::string& method, std::size_t max_states ) {
                HomeClusterReport r = find_home_clusters( d.net, d.initial, limits( max_states ), method_of( method ) );
                std::vector<std::vector<std::string>> out;
                for ( const auto& c : r.home_clusters )
                    out.push_back( set_list( c.nodes() ) );
                return out;
            },
            py::arg( "net" ), py::arg( "method" ) = "both", py::arg( "max_states" ) = 100000 );

    m.def(
            "analyze",
            []( const NetDocument& d, const std::string& format, const std::string& method,
                std::size_t max_states ) {
                if ( format != "json" && format != "text" )
                    throw py::value_error( "format must be 'json' or 'text'" );
                AnalysisReport r = analyze( d, { limits( max_states ), method_of( method ) } );
                return emit_report( r, format == "json" ? Format::Json : Format::Text );
            },
            py::arg( "net" ), py::arg( "format" ) = "json", py::arg( "method" ) = "both",
            py::arg( "max_states" ) = 100000 );

    m.def(
            "theorem_suite",
            []( std::size_t random, std::uint64_t seed, bool include_examples ) {
                std::vector<NetDocument> nets = include_examples ? paper_corpus() : std::vector<NetDocument>{};
                auto extra = random_corpus( random, seed );
                nets.insert( nets.end(), extra.begin(), extra.end() );
                SuiteOptions opt;
                opt.seed = seed;
                SuiteReport r = run_theorem_suite( nets, opt );
                py::dict tallies;
                for ( const auto& t : r.tallies )
                    tallies[ py::str( t.check ) ] = py::make_tuple( t.pass, t.fail, t.skip );
                py::list anomalies;
                for ( const auto& a : r.anomalies )
                    anomalies.append( py::make_tuple( a.check, a.net_name, a.evidence ) );
                py::dict out;
                out[ "nets" ] = r.nets;
                out[ "tallies" ] = tallies;
                out[ "anomalies" ] = anomalies;
                return out;
            },
            py::arg( "random" ) = 0, py::arg( "seed" ) = 0, py::arg( "include_examples" ) = true );
}
