// lucent: command-line front end.
//
// Exit codes: 0 analyses completed, 1 property violation found, 2 input
// error, 3 undecided (exploration truncated).

#include "lucent/corpus.hpp"
#include "lucent/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{

using namespace lucent;

enum Exit
{
    Ok = 0,
    Violation = 1,
    InputError = 2,
    Inconclusive = 3
};

struct Globals
{
    std::size_t max_states = 100000;
    std::string format = "text";

    [[nodiscard]] Format fmt() const { return format == "json" ? Format::Json : Format::Text; }
    [[nodiscard]] ExplorationLimits limits() const { return { max_states, std::nullopt }; }
};

HomeMethod parse_method( const std::string& s )
{
    if ( s == "direct" )
        return HomeMethod::Direct;
    if ( s == "short-circuit" )
        return HomeMethod::ShortCircuit;
    return HomeMethod::Both;
}

int run_analyze( const Globals& g, const std::string& file, const std::string& method )
{
    NetDocument doc = load_net( file );
    AnalysisReport r = analyze( doc, { g.limits(), parse_method( method ) } );
    std::cout << emit_report( r, g.fmt() );
    if ( r.home_error )
        return Violation;
    return r.exploration == ExplorationVerdict::Truncated ? Inconclusive : Ok;
}

int run_lucency( const Globals& g, const std::string& file )
{
    NetDocument doc = load_net( file );
    LucencyVerdict v = check_lucency( doc.net, doc.initial, g.limits() );
    std::cout << emit_lucency( doc.name, v, g.fmt() );
    return v.lucent == Tri::True ? Ok : v.lucent == Tri::False ? Violation : Inconclusive;
}

int run_home( const Globals& g, const std::string& file, const std::string& method )
{
    NetDocument doc = load_net( file );
    HomeClusterReport r;
    try
    {
        r = find_home_clusters( doc.net, doc.initial, g.limits(), parse_method( method ) );
    }
    catch ( const TheoremViolation& e )
    {
        std::cerr << "lucent: anomaly: " << e.what() << "\n";
        return Violation;
    }
    std::cout << emit_home_clusters( doc.name, r, g.fmt() );
    if ( !r.home_clusters.empty() )
        return Ok;
    return r.decided ? Violation : Inconclusive;
}

int run_reach( const Globals& g, const std::string& file )
{
    NetDocument doc = load_net( file );
    ReachabilityGraph rg = explore( doc.net, doc.initial, g.limits() );
    std::cout << emit_reachability( doc.name, doc.net, rg, g.fmt() );
    return rg.verdict == ExplorationVerdict::Truncated ? Inconclusive : Ok;
}

int run_suite( const Globals& g, std::size_t random, std::uint64_t seed )
{
    bool ok = true;
    for ( auto id : all_paper_nets() )
    {
        PaperNet pn = paper_net( id );
        for ( const auto& m : check_expectations( pn ) )
        {
            std::cout << pn.doc.name << ": expected " << m.expected.property << " = " << m.expected.value
                      << ", got " << m.actual << "\n";
            ok = false;
        }
    }
    std::vector<NetDocument> nets = paper_corpus();
    auto extra = random_corpus( random, seed );
    nets.insert( nets.end(), extra.begin(), extra.end() );

    SuiteOptions opt;
    opt.limits = g.limits();
    opt.seed = seed;
    SuiteReport r = run_theorem_suite( nets, opt );
    std::cout << "theorem suite over " << r.nets << " nets (" << random << " random, seed " << seed << ")\n";
    for ( const auto& t : r.tallies )
        std::cout << "  " << t.check << ": " << t.pass << " pass, " << t.fail << " fail, " << t.skip << " skip\n";
    for ( const auto& a : r.anomalies )
        std::cout << "ANOMALY " << a.check << " on " << a.net_name << ": " << a.evidence << "\n" << a.net_text;
    std::cout << ( r.ok() && ok ? "no anomalies\n" : "anomalies found\n" );
    return r.ok() && ok ? Ok : Violation;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Lucency, home-cluster and behavioural analysis of marked Petri nets" };
    app.require_subcommand( 1 );
    Globals g;
    app.add_option( "--max-states", g.max_states, "State budget for explicit exploration" )
            ->capture_default_str()
            ->check( CLI::PositiveNumber );
    app.add_option( "--format", g.format, "Output format" )
            ->capture_default_str()
            ->check( CLI::IsMember( { "json", "text" } ) );

    std::string file, method = "both";
    std::size_t random = 0;
    std::uint64_t seed = 0;
    const auto methods = CLI::IsMember( { "direct", "short-circuit", "both" } );

    auto* analyze_cmd = app.add_subcommand( "analyze", "Full analysis report" );
    analyze_cmd->add_option( "file", file, "Net file" )->required();
    analyze_cmd->add_option( "--method", method, "Home-cluster method" )->capture_default_str()->check( methods );

    auto* lucency_cmd = app.add_subcommand( "lucency", "Decide lucency" );
    lucency_cmd->add_option( "file", file, "Net file" )->required();

    auto* home_cmd = app.add_subcommand( "home-clusters", "Find home clusters" );
    home_cmd->add_option( "file", file, "Net file" )->required();
    home_cmd->add_option( "--method", method, "Decision method" )->capture_default_str()->check( methods );

    auto* reach_cmd = app.add_subcommand( "reach", "Dump the reachability graph" );
    reach_cmd->add_option( "file", file, "Net file" )->required();

    auto* suite_cmd = app.add_subcommand( "paper-suite", "Example nets plus randomized theorem suite" );
    suite_cmd->add_option( "--random", random, "Number of random nets" )->capture_default_str();
    suite_cmd->add_option( "--seed", seed, "Seed for the random nets" )->capture_default_str();

    // global options may follow the subcommand
    for ( auto* sub : { analyze_cmd, lucency_cmd, home_cmd, reach_cmd, suite_cmd } )
        sub->fallthrough();

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        int code = app.exit( e );
        return code == 0 ? Ok : InputError;
    }

    try
    {
        if ( *analyze_cmd )
            return run_analyze( g, file, method );
        if ( *lucency_cmd )
            return run_lucency( g, file );
        if ( *home_cmd )
            return run_home( g, file, method );
        if ( *reach_cmd )
            return run_reach( g, file );
        return run_suite( g, random, seed );
    }
    catch ( const ParseError& e )
    {
        std::cerr << "lucent: " << file << ": " << e.what() << "\n";
        return InputError;
    }
    catch ( const Error& e )
    {
        std::cerr << "lucent: " << e.what() << "\n";
        return InputError;
    }
}
