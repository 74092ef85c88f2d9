#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace lucent;
using test::example;

namespace
{

PetriNet loop_net()
{
    return PetriNet( { "p" }, { "t" }, { { "p", "t" }, { "t", "p" } } );
}

} // namespace

TEST( Marking, MultisetLaws )
{
    Marking a( std::map<NodeId, TokenCount>{ { "p1", 2 }, { "p2", 1 } } );
    Marking b{ "p2", "p3" };
    EXPECT_EQ( a + b, b + a );
    EXPECT_EQ( ( a + b ).size(), a.size() + b.size() );
    EXPECT_EQ( ( a + b ) - b, a );
    EXPECT_EQ( a.meet( b ), Marking{ "p2" } );
    EXPECT_TRUE( Marking{ "p2" }.leq( a ) );
    EXPECT_TRUE( Marking{ "p2" }.lt( a ) );
    EXPECT_FALSE( a.lt( a ) );
    EXPECT_FALSE( a.is_set() );
    EXPECT_TRUE( b.is_set() );
    EXPECT_EQ( a( "p1" ), 2u );
    EXPECT_EQ( a( "zz" ), 0u );
    EXPECT_EQ( a.count_of( { "p1", "p2", "p9" } ), 3u );
    EXPECT_EQ( a.support(), ( NodeSet{ "p1", "p2" } ) );
}

TEST( Marking, ZeroCountsAreDropped )
{
    Marking m( std::map<NodeId, TokenCount>{ { "p1", 0 }, { "p2", 1 } } );
    EXPECT_EQ( m, Marking{ "p2" } );
    EXPECT_EQ( Marking{ "p1" } - Marking( std::map<NodeId, TokenCount>{ { "p1", 3 } } ), Marking{} );
}

TEST( Marking, ParseAndPrintRoundTrip )
{
    Marking m = Marking::parse( "[p1, p2^2]" );
    EXPECT_EQ( m( "p2" ), 2u );
    EXPECT_EQ( Marking::parse( m.str() ), m );
    EXPECT_EQ( Marking::parse( "[]" ), Marking{} );
}

TEST( FiringSequence, ConcatAndPrefix )
{
    FiringSequence s{ "t1", "t2" };
    FiringSequence u{ "t3" };
    EXPECT_EQ( ( s + u ).size(), 3u );
    EXPECT_EQ( ( s + u ).prefix( 2 ), s );
    EXPECT_EQ( s + FiringSequence{}, s );
}

TEST( PetriNet, RejectsMalformedInput )
{
    EXPECT_THROW( PetriNet( { "p", "p" }, { "t" }, { { "p", "t" } } ), InvalidNet );
    EXPECT_THROW( PetriNet( { "p" }, { "p" }, {} ), InvalidNet );
    EXPECT_THROW( PetriNet( { "p" }, { "t" }, { { "p", "x" } } ), InvalidNet );
    EXPECT_THROW( PetriNet( { "p", "q" }, { "t" }, { { "p", "q" } } ), InvalidNet );
    EXPECT_THROW( PetriNet( { "p" }, { "t" }, { { "p", "t" }, { "p", "t" } } ), InvalidNet );
    // two components
    EXPECT_THROW( PetriNet( { "p", "q" }, { "t", "u" }, { { "p", "t" }, { "q", "u" } } ), InvalidNet );
}

TEST( PetriNet, PresetAndPostset )
{
    auto n2 = example( PaperNetId::N2 ).net;
    EXPECT_EQ( preset( n2, "t3" ), NodeSet{ "p2" } );
    EXPECT_EQ( preset( n2, "t4" ), ( NodeSet{ "p3", "p5" } ) );
    EXPECT_EQ( postset( n2, "t1" ), ( NodeSet{ "p2", "p5" } ) );
    EXPECT_TRUE( preset( n2, "p1" ).empty() );
    auto n3 = example( PaperNetId::N3 ).net;
    EXPECT_EQ( preset( n3, "t2" ), ( NodeSet{ "p2", "p3" } ) );
    EXPECT_EQ( preset_of_set( n3, { "t2", "t3" } ), ( NodeSet{ "p2", "p3", "p4", "p5" } ) );
    EXPECT_EQ( postset_of_set( n3, { "p1", "p6" } ), ( NodeSet{ "t1", "t4" } ) );
    EXPECT_THROW( preset( n3, "nope" ), NodeNotFound );
}

TEST( PetriNet, EnabledTransitions )
{
    auto n2 = example( PaperNetId::N2 ).net;
    EXPECT_EQ( enabled_transitions( n2, { "p2", "p5" } ), NodeSet{ "t3" } );
    EXPECT_EQ( enabled_transitions( n2, { "p2", "p6" } ), NodeSet{ "t3" } );
    EXPECT_TRUE( enabled_transitions( n2, {} ).empty() );
    auto n3 = example( PaperNetId::N3 ).net;
    EXPECT_EQ( enabled_transitions( n3, { "p1", "p3", "p6" } ), ( NodeSet{ "t1", "t4" } ) );
}

TEST( PetriNet, Firing )
{
    auto n2 = example( PaperNetId::N2 ).net;
    EXPECT_EQ( fire( n2, { "p1" }, "t1" ), ( Marking{ "p2", "p5" } ) );
    EXPECT_THROW( fire( n2, { "p1" }, "t3" ), NotEnabled );
    EXPECT_EQ( fire_sequence( n2, { "p1" }, { "t1", "t3" } ), ( Marking{ "p3", "p5" } ) );
    EXPECT_EQ( fire_sequence( n2, { "p1" }, {} ), Marking{ "p1" } );
    try
    {
        fire_sequence( n2, { "p1" }, { "t1", "t4" } );
        FAIL();
    }
    catch ( const NotEnabledAt& e )
    {
        EXPECT_EQ( e.index, 1u );
        EXPECT_EQ( e.transition, "t4" );
    }
    EXPECT_FALSE( try_fire_sequence( n2, { "p1" }, { "t3" } ) );

    auto n3 = example( PaperNetId::N3 ).net;
    EXPECT_EQ( fire( n3, { "p1", "p3", "p6" }, "t1" ), ( Marking{ "p2", "p3", "p6" } ) );
    EXPECT_EQ( fire_sequence( n3, { "p1", "p3", "p6" }, { "t1", "t2" } ), ( Marking{ "p1", "p4", "p6" } ) );
}

TEST( PetriNet, FiringIsMultisetArithmetic )
{
    // a token that is both consumed and produced stays put
    auto n = loop_net();
    Marking m( std::map<NodeId, TokenCount>{ { "p", 2 } } );
    EXPECT_EQ( fire( n, m, "t" ), m );
}

TEST( Clusters, ExampleNets )
{
    using test::make_cluster;
    auto c1 = clusters( example( PaperNetId::N1 ).net );
    EXPECT_EQ( c1, ( std::vector<Cluster>{ make_cluster( { "p1" }, { "t1", "t2" } ), make_cluster( { "p2" }, { "t3" } ),
                                           make_cluster( { "p3" }, { "t4", "t5" } ), make_cluster( { "p4" }, {} ) } ) );
    auto c3 = clusters( example( PaperNetId::N3 ).net );
    EXPECT_EQ( c3, ( std::vector<Cluster>{ make_cluster( { "p1" }, { "t1" } ), make_cluster( { "p2", "p3" }, { "t2" } ),
                                           make_cluster( { "p4", "p5" }, { "t3" } ),
                                           make_cluster( { "p6" }, { "t4" } ) } ) );
    EXPECT_EQ( clusters( loop_net() ), ( std::vector<Cluster>{ make_cluster( { "p" }, { "t" } ) } ) );
    EXPECT_EQ( cluster_of( example( PaperNetId::N3 ).net, "p3" ), make_cluster( { "p2", "p3" }, { "t2" } ) );
}

TEST( Clusters, PartitionNodes )
{
    for ( std::uint64_t seed = 0; seed < 50; ++seed )
    {
        GeneratorParams p;
        p.seed = seed;
        auto doc = generate( p );
        std::size_t total = 0;
        NodeSet seen;
        for ( const auto& c : clusters( doc.net ) )
        {
            total += c.nodes().size();
            for ( const auto& n : c.nodes() )
                seen.insert( n );
        }
        EXPECT_EQ( total, doc.net.num_places() + doc.net.num_transitions() );
        EXPECT_EQ( seen.size(), total );
    }
}

TEST( Clusters, Mrk )
{
    EXPECT_EQ( mrk( test::make_cluster( { "p4" }, {} ) ), Marking{ "p4" } );
    EXPECT_EQ( mrk( cluster_of( example( PaperNetId::N3 ).net, "t2" ) ), ( Marking{ "p2", "p3" } ) );
}

TEST( Structure, FreeChoiceAndProper )
{
    EXPECT_TRUE( is_free_choice( example( PaperNetId::N1 ).net ) );
    EXPECT_FALSE( is_free_choice( example( PaperNetId::N2 ).net ) );
    EXPECT_TRUE( is_free_choice( loop_net() ) );
    EXPECT_TRUE( is_proper( example( PaperNetId::N1 ).net ) );
    EXPECT_TRUE( is_proper( example( PaperNetId::N3 ).net ) );
    EXPECT_FALSE( is_proper( PetriNet( { "p" }, { "t" }, { { "t", "p" } } ) ) );
}

TEST( Structure, ConnectivityAndClass )
{
    EXPECT_EQ( connectivity( example( PaperNetId::N3 ).net ), Connectivity::Strong );
    EXPECT_EQ( connectivity( example( PaperNetId::N1 ).net ), Connectivity::Weak );
    EXPECT_EQ( connectivity( loop_net() ), Connectivity::Strong );
    EXPECT_EQ( net_class( example( PaperNetId::N3 ).net ), NetClass::MarkedGraph );
    EXPECT_EQ( net_class( example( PaperNetId::N2 ).net ), NetClass::General );
    EXPECT_EQ( net_class( example( PaperNetId::N1 ).net ), NetClass::StateMachine );
    EXPECT_EQ( net_class( example( PaperNetId::N5 ).net ), NetClass::FreeChoice );
}

TEST( Structure, Identifiers )
{
    EXPECT_TRUE( is_valid_identifier( "p_1" ) );
    EXPECT_FALSE( is_valid_identifier( "1p" ) );
    EXPECT_FALSE( is_valid_identifier( "" ) );
    EXPECT_FALSE( is_valid_identifier( "a-b" ) );
}
