// Acceptance run: one PASS/FAIL line per criterion. Timed criteria report the
// best of several repetitions after a warm-up run.

#include "lucent/corpus.hpp"
#include "lucent/paths.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace lucent;

namespace
{

using Clock = std::chrono::steady_clock;

struct Verdict
{
    bool ok = true;
    std::string note;

    void require( bool cond, const std::string& what )
    {
        if ( !cond )
        {
            ok = false;
            note += ( note.empty() ? "" : "; " ) + what;
        }
    }
};

// runs body `reps` times, returns the last outcome and the best wall time in ms
std::pair<Verdict, double> timed( const std::function<Verdict()>& body, int reps = 5 )
{
    Verdict last = body();
    double best = 1e300;
    for ( int i = 0; i < reps; ++i )
    {
        auto t0 = Clock::now();
        last = body();
        best = std::min( best, std::chrono::duration<double, std::milli>( Clock::now() - t0 ).count() );
    }
    return { last, best };
}

int failures = 0;

void report( int n, const std::string& title, Verdict o, std::optional<double> ms = std::nullopt,
             std::optional<double> limit_ms = std::nullopt )
{
    std::ostringstream line;
    if ( ms && limit_ms && *ms >= *limit_ms )
        o.require( false, "too slow" );
    line << ( o.ok ? "PASS" : "FAIL" ) << " criterion " << n << ": " << title;
    if ( ms )
    {
        line.precision( 3 );
        line << std::fixed << " [" << *ms << " ms";
        if ( limit_ms )
            line << " < " << *limit_ms << " ms";
        line << "]";
    }
    if ( !o.note.empty() )
        line << " -- " << o.note;
    std::puts( line.str().c_str() );
    failures += !o.ok;
}

std::set<Marking> state_set( const ReachabilityGraph& rg ) { return { rg.states.begin(), rg.states.end() }; }

bool same_nodes( const std::vector<Cluster>& cs, const std::vector<NodeSet>& expected )
{
    std::vector<NodeSet> got;
    for ( const auto& c : cs )
        got.push_back( c.nodes() );
    return got == expected;
}

void criterion_1()
{
    auto d = paper_net( PaperNetId::N2 ).doc;
    auto [ o, ms ] = timed( [ & ] {
        Verdict o;
        auto rg = explore( d.net, d.initial );
        o.require( rg.complete(), "exploration incomplete" );
        std::set<Marking> expected{ { "p1" }, { "p2", "p5" }, { "p2", "p6" }, { "p3", "p5" }, { "p3", "p6" }, { "p4" } };
        o.require( state_set( rg ) == expected && rg.size() == 6, "state set differs" );
        return o;
    } );
    report( 1, "N2 reachable markings are exactly the six listed", o, ms, 1.0 );
}

void criterion_2()
{
    auto d = paper_net( PaperNetId::N2 ).doc;
    auto [ o, ms ] = timed( [ & ] {
        Verdict o;
        auto v = check_lucency( d.net, d.initial );
        o.require( v.lucent == Tri::False, "not reported non-lucent" );
        o.require( v.witness && v.witness->first == Marking{ "p2", "p5" } && v.witness->second == Marking{ "p2", "p6" },
                   "witness differs" );
        o.require( v.shared_footprint == NodeSet{ "t3" }, "footprint differs" );
        return o;
    } );
    report( 2, "N2 not lucent, witness ([p2,p5],[p2,p6]) with footprint {t3}", o, ms, 1.0 );
}

void criterion_3()
{
    auto d = paper_net( PaperNetId::N1 ).doc;
    auto [ o, ms ] = timed( [ & ] {
        Verdict o;
        auto rg = explore( d.net, d.initial );
        o.require( check_lucency( d.net, rg ).lucent == Tri::True, "not lucent" );
        std::set<NodeSet> fps;
        for ( const auto& s : rg.states )
            fps.insert( footprint( d.net, s ) );
        o.require( rg.size() == 4 && fps.size() == 4, "expected 4 markings with 4 distinct footprints" );
        o.require( home_markings( d.net, rg ) == std::vector<Marking>{ { "p4" } }, "home markings differ" );
        auto hc = find_home_clusters( d.net, d.initial );
        o.require( same_nodes( hc.home_clusters, { { "p4" } } ), "home clusters differ" );
        o.require( classify_dead_end( d.net, d.initial, cluster_of( d.net, "p4" ) ) == DeadEndKind::Terminal,
                   "dead end not terminal" );
        o.require( is_live( d.net, rg ).live == Tri::False, "reported live" );
        o.require( is_perpetual( d.net, d.initial ) == Tri::False, "reported perpetual" );
        return o;
    } );
    report( 3, "N1 lucent, 4 markings/footprints, home marking [p4], home cluster {p4}, terminal, not live, not perpetual",
            o, ms, 1.0 );
}

void criterion_4()
{
    auto d = paper_net( PaperNetId::N3 ).doc;
    auto [ o, ms ] = timed( [ & ] {
        Verdict o;
        auto rg = explore( d.net, d.initial );
        auto v = check_lucency( d.net, rg );
        o.require( v.lucent == Tri::False && v.shared_footprint == NodeSet{ "t1", "t4" }, "lucency witness differs" );
        o.require( is_live( d.net, rg ).live == Tri::True, "not live" );
        o.require( is_safe( rg ).safe == Tri::True, "not safe" );
        o.require( is_deadlock_free( d.net, rg ).deadlock_free == Tri::True, "not deadlock-free" );
        std::set<Marking> circuits;
        for ( const char* a : { "p1", "p2" } )
            for ( const char* b : { "p3", "p4" } )
                for ( const char* c : { "p5", "p6" } )
                    circuits.insert( Marking{ a, b, c } );
        auto homes = home_markings( d.net, rg );
        o.require( homes.size() == 8 && std::set<Marking>( homes.begin(), homes.end() ) == circuits,
                   "home markings are not the 8 circuit markings" );
        o.require( find_home_clusters( d.net, d.initial ).home_clusters.empty(), "home cluster found" );
        o.require( net_class( d.net ) == NetClass::MarkedGraph, "not a marked graph" );
        return o;
    } );
    report( 4, "N3 not lucent on {t1,t4}; live, safe, deadlock-free; 8 home markings; no home cluster; marked graph", o,
            ms, 1.0 );
}

void criterion_5()
{
    auto d = paper_net( PaperNetId::N4 ).doc;
    Verdict o;
    auto v = check_lucency( d.net, d.initial );
    o.require( v.lucent == Tri::False, "not reported non-lucent" );
    o.require( v.witness && v.witness->first == Marking{ "p3", "p5", "p7" } &&
                       v.witness->second == Marking{ "p3", "p7", "p8" },
               "witness differs" );
    o.require( v.shared_footprint == NodeSet{ "t1", "t4" }, "footprint differs" );
    o.require( find_home_clusters( d.net, d.initial ).home_clusters.empty(), "home cluster found" );
    report( 5, "N4 not lucent, witness ([p3,p5,p7],[p3,p7,p8]) enabling {t1,t4}; no home cluster", o );
}

void criterion_6()
{
    auto d = paper_net( PaperNetId::N5 ).doc;
    Verdict o;
    o.require( check_lucency( d.net, d.initial ).lucent == Tri::True, "not lucent" );
    auto t = is_fully_transparent( d.net, d.initial );
    o.require( t.fully_transparent == Tri::False, "reported fully transparent" );
    auto rg = explore( d.net, d.initial );
    o.require( rg.index_of( { "p4", "p7" } ).has_value(), "[p4,p7] not reachable" );
    o.require( !is_transparent_marking( d.net, { "p4", "p7" } ), "[p4,p7] reported transparent" );
    std::size_t only_t5 = 0;
    for ( const auto& s : rg.states )
        only_t5 += enabled_transitions( d.net, s ) == NodeSet{ "t5" };
    o.require( only_t5 == 1, "more than one marking enables only t5" );
    o.require( enabled_transitions( d.net, { "p4", "p7" } ) == NodeSet{ "t5" }, "[p4,p7] does not enable only t5" );
    FiringSequence sigma{ "t2", "t5", "t6", "t8", "t8" };
    o.require( expedited_member( d.net, d.initial, sigma, expedite( sigma, 2, 3 ) ) == Tri::True,
               "sigma_{2<-3} not in Exp" );
    o.require( expedited_member( d.net, d.initial, sigma, expedite( sigma, 2, 4 ) ) == Tri::False,
               "sigma_{2<-4} in Exp" );
    report( 6, "N5 lucent, not fully transparent at [p4,p7]; sigma_{2<-3} in Exp, sigma_{2<-4} not", o );
}

void criterion_7()
{
    auto n = paper_net( PaperNetId::N3 ).doc.net;
    Verdict o;
    Path p( n, { "p6", "t4", "p5", "t3", "p3", "t2", "p4", "t3", "p3", "t2", "p1" } );
    auto d = disentangle( n, p, cluster_of( n, "p1" ) );
    o.require( d.nodes() == std::vector<NodeId>{ "p6", "t4", "p5", "t3", "p3", "t2", "p1" }, "got " + d.str() );
    o.require( !is_disentangled( n, { "p5", "t3", "p3", "t2", "p4" } ), "rho1 classified disentangled" );
    o.require( is_disentangled( n, { "p5", "t3", "p3", "t2", "p1" } ), "rho2 classified entangled" );
    report( 7, "N3 disentangling yields <p6,t4,p5,t3,p3,t2,p1>; rho1 entangled, rho2 disentangled", o );
}

void criterion_8()
{
    auto d = paper_net( PaperNetId::N3 ).doc;
    Verdict o;
    auto rg = explore( d.net, d.initial );
    auto pairs = find_conflict_pairs( d.net, rg );
    ConflictPair expected{ { "p2", "p3", "p5" }, { "p2", "p4", "p5" } };
    o.require( std::find( pairs.begin(), pairs.end(), expected ) != pairs.end(), "pair not found" );
    o.require( enabled_transitions( d.net, expected.m1 ) == NodeSet{ "t2" } &&
                       enabled_transitions( d.net, expected.m2 ) == NodeSet{ "t3" },
               "enabled sets differ" );
    auto derived =
            derive_conflict_pair( d.net, d.initial, { "p1", "p3", "p6" }, { "p1", "p4", "p6" }, DeriveMode::greedy() );
    o.require( derived.pair == expected, "derived pair differs" );
    o.require( derived.sigma1 == FiringSequence{ "t1", "t4" }, "sigma1 = " + derived.sigma1.str() );
    report( 8, "N3 conflict-pair ([p2,p3,p5],[p2,p4,p5]) found and derived greedily via <t1,t4>", o );
}

void criterion_9()
{
    auto d = paper_net( PaperNetId::N1 ).doc;
    auto c = cluster_of( d.net, "p4" );
    auto [ o, ms ] = timed( [ & ] {
        Verdict o;
        Tri direct = is_home_cluster_direct( d.net, d.initial, c );
        Tri sc = is_home_cluster_short_circuit( d.net, d.initial, c );
        auto s = short_circuit( d.net, c, d.initial );
        auto rg = explore( d.net, d.initial );
        auto rg_sc = explore( s.net, d.initial );
        bool live_bounded = rg_sc.complete() && is_live( s.net, rg_sc ).live == Tri::True;
        o.require( direct == Tri::True, "direct verdict not true" );
        o.require( sc == Tri::True, "short-circuit verdict not true" );
        o.require( live_bounded, "short-circuited net not live and bounded" );
        o.require( state_set( rg ) == state_set( rg_sc ), "reachable sets differ" );
        return o;
    } );
    report( 9, "N1, C={p4}: direct = short-circuit = live-and-bounded = true, equal reachable sets", o, ms, 5.0 );
}

void criterion_10()
{
    const std::size_t count = 1000;
    const std::uint64_t seed = 20240601;
    const std::vector<std::string> listed{
            "home-cluster-lucent",           "home-cluster-safe",         "home-cluster-no-conflict-pairs",
            "home-marking-not-dominated",    "markings-pairwise-incomparable", "rooted-path-safe",
            "strongly-connected-home-live",  "expediting-preserves-outcome",   "transparent-implies-lucent",
            "lucent-implies-bounded" };
    auto t0 = Clock::now();
    auto nets = random_corpus( count, seed );
    Verdict o;
    std::size_t max_places = 0;
    for ( const auto& d : nets )
    {
        o.require( is_free_choice( d.net ) && is_proper( d.net ), d.name + " is not proper free-choice" );
        max_places = std::max( max_places, d.net.num_places() );
    }
    o.require( max_places <= 12, "net with more than 12 places" );
    SuiteOptions opt;
    opt.seed = seed;
    opt.expedite_samples = 10;
    auto r = run_theorem_suite( nets, opt );
    double ms = std::chrono::duration<double, std::milli>( Clock::now() - t0 ).count();
    std::ostringstream tallies;
    for ( const auto& name : listed )
    {
        const auto& t = r.tally( name );
        o.require( t.fail == 0, name + " failed " + std::to_string( t.fail ) + "x" );
        o.require( t.pass > 0, name + " never applicable" );
        tallies << " " << name << "=" << t.pass << "/" << t.fail << "/" << t.skip;
    }
    for ( const auto& a : r.anomalies )
        if ( std::find( listed.begin(), listed.end(), a.check ) != listed.end() )
            o.require( false, a.check + " on " + a.net_name + ": " + a.evidence );
    report( 10, std::to_string( count ) + " random proper free-choice nets, zero anomalies in the listed checks", o, ms,
            60000.0 );
    std::printf( "  pass/fail/skip:%s\n", tallies.str().c_str() );
    std::size_t other = 0;
    for ( const auto& a : r.anomalies )
        other += std::find( listed.begin(), listed.end(), a.check ) == listed.end();
    std::printf( "  anomalies in checks outside this criterion: %zu\n", other );
}

void criterion_11()
{
    Verdict o;
    for ( const char* f : { "n1.net", "n2.net", "n3.net", "n4.net", "n5.net" } )
    {
        auto d = load_net( std::string( LUCENT_CORPUS_DIR ) + "/" + f );
        auto a = emit_report( analyze( d ), Format::Json );
        auto b = emit_report( analyze( load_net( std::string( LUCENT_CORPUS_DIR ) + "/" + f ) ), Format::Json );
        o.require( !a.empty() && a == b, std::string( f ) + " reports differ" );
    }
    report( 11, "analyze yields byte-identical json on repeated runs for every corpus net", o );
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria{ criterion_1, criterion_2, criterion_3, criterion_4,
                                                        criterion_5, criterion_6, criterion_7, criterion_8,
                                                        criterion_9, criterion_10, criterion_11 };
    for ( std::size_t i = 0; i < criteria.size(); ++i )
    {
        try
        {
            criteria[ i ]();
        }
        catch ( const std::exception& e )
        {
            Verdict o;
            o.require( false, std::string( "exception: " ) + e.what() );
            report( static_cast<int>( i + 1 ), "aborted", o );
        }
    }
    std::printf( "%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size() );
    return failures == 0 ? 0 : 1;
}
