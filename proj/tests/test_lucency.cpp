#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace lucent;
using test::example;

TEST( Footprint, Basics )
{
    auto n2 = example( PaperNetId::N2 ).net;
    EXPECT_EQ( footprint( n2, { "p2", "p6" } ), NodeSet{ "t3" } );
    EXPECT_TRUE( footprint( n2, {} ).empty() );
    auto n3 = example( PaperNetId::N3 ).net;
    EXPECT_EQ( footprint( n3, { "p1", "p4", "p6" } ), ( NodeSet{ "t1", "t4" } ) );
}

TEST( Lucency, ExampleNets )
{
    auto n1 = example( PaperNetId::N1 );
    EXPECT_EQ( check_lucency( n1.net, n1.initial ).lucent, Tri::True );

    auto n2 = example( PaperNetId::N2 );
    auto v2 = check_lucency( n2.net, n2.initial );
    EXPECT_EQ( v2.lucent, Tri::False );
    ASSERT_TRUE( v2.witness );
    EXPECT_EQ( v2.witness->first, ( Marking{ "p2", "p5" } ) );
    EXPECT_EQ( v2.witness->second, ( Marking{ "p2", "p6" } ) );
    EXPECT_EQ( v2.shared_footprint, NodeSet{ "t3" } );

    auto n3 = example( PaperNetId::N3 );
    auto v3 = check_lucency( n3.net, n3.initial );
    EXPECT_EQ( v3.lucent, Tri::False );
    ASSERT_TRUE( v3.witness );
    EXPECT_EQ( v3.witness->first, ( Marking{ "p1", "p3", "p6" } ) );
    EXPECT_EQ( v3.witness->second, ( Marking{ "p1", "p4", "p6" } ) );
    EXPECT_EQ( v3.shared_footprint, ( NodeSet{ "t1", "t4" } ) );

    auto n5 = example( PaperNetId::N5 );
    EXPECT_EQ( check_lucency( n5.net, n5.initial ).lucent, Tri::True );
}

TEST( Lucency, UnboundedIsNotLucent )
{
    PetriNet n( { "p", "q" }, { "t" }, { { "p", "t" }, { "t", "p" }, { "t", "q" } } );
    auto v = check_lucency( n, { "p" } );
    EXPECT_EQ( v.lucent, Tri::False );
    EXPECT_TRUE( v.unbounded );
}

TEST( Lucency, TruncatedIsUndecided )
{
    auto n5 = example( PaperNetId::N5 );
    EXPECT_EQ( check_lucency( n5.net, n5.initial, { 2, std::nullopt } ).lucent, Tri::Undecided );
}

TEST( Lucency, VerdictMatchesFootprintInjectivity )
{
    for ( std::uint64_t seed = 0; seed < 80; ++seed )
    {
        GeneratorParams p;
        p.seed = seed;
        auto d = generate( p );
        auto rg = explore( d.net, d.initial );
        if ( !rg.complete() )
            continue;
        std::set<NodeSet> fps;
        for ( const auto& s : rg.states )
            fps.insert( footprint( d.net, s ) );
        bool injective = fps.size() == rg.size();
        EXPECT_EQ( check_lucency( d.net, rg ).lucent, to_tri( injective ) ) << d.name;
        if ( injective )
            EXPECT_LE( rg.size(), std::size_t{ 1 } << d.net.num_transitions() );
    }
}

TEST( Transparency, Markings )
{
    auto n5 = example( PaperNetId::N5 ).net;
    EXPECT_FALSE( is_transparent_marking( n5, { "p4", "p7" } ) );
    auto n1 = example( PaperNetId::N1 ).net;
    EXPECT_TRUE( is_transparent_marking( n1, { "p1" } ) );
    EXPECT_TRUE( is_transparent_marking( n1, {} ) );
    EXPECT_FALSE( is_transparent_marking( n1, { "p4" } ) );
}

TEST( Transparency, Nets )
{
    auto n5 = example( PaperNetId::N5 );
    auto r5 = is_fully_transparent( n5.net, n5.initial );
    EXPECT_EQ( r5.fully_transparent, Tri::False );
    ASSERT_TRUE( r5.counterexample );
    EXPECT_FALSE( is_transparent_marking( n5.net, *r5.counterexample ) );
    EXPECT_TRUE( explore( n5.net, n5.initial ).index_of( { "p4", "p7" } ) );
    PetriNet loop( { "p" }, { "t" }, { { "p", "t" }, { "t", "p" } } );
    EXPECT_EQ( is_fully_transparent( loop, { "p" } ).fully_transparent, Tri::True );
    // the dead end [p4] hides its token
    auto n1 = example( PaperNetId::N1 );
    EXPECT_EQ( is_fully_transparent( n1.net, n1.initial ).fully_transparent, Tri::False );
}

TEST( ConflictPairs, N3 )
{
    auto n3 = example( PaperNetId::N3 );
    auto rg = explore( n3.net, n3.initial );
    auto pairs = find_conflict_pairs( n3.net, rg );
    ConflictPair expected{ { "p2", "p3", "p5" }, { "p2", "p4", "p5" } };
    EXPECT_NE( std::find( pairs.begin(), pairs.end(), expected ), pairs.end() );
    for ( const auto& cp : pairs )
        EXPECT_TRUE( is_conflict_pair( n3.net, rg, cp.m1, cp.m2 ) );
    EXPECT_EQ( enabled_transitions( n3.net, expected.m1 ), NodeSet{ "t2" } );
    EXPECT_EQ( enabled_transitions( n3.net, expected.m2 ), NodeSet{ "t3" } );
}

TEST( ConflictPairs, NoneWithHomeCluster )
{
    for ( auto id : { PaperNetId::N1, PaperNetId::N5 } )
    {
        auto d = example( id );
        EXPECT_TRUE( find_conflict_pairs( d.net, d.initial ).empty() ) << to_string( id );
    }
    PetriNet single( { "p", "q" }, { "t" }, { { "p", "t" }, { "t", "q" } } );
    EXPECT_TRUE( find_conflict_pairs( single, { "p" } ).empty() );
}

TEST( ConflictPairs, RejectsNonPairs )
{
    auto n3 = example( PaperNetId::N3 );
    auto rg = explore( n3.net, n3.initial );
    Marking a{ "p2", "p3", "p5" };
    EXPECT_FALSE( is_conflict_pair( n3.net, rg, a, a ) );
    // unreachable marking
    EXPECT_FALSE( is_conflict_pair( n3.net, rg, a, { "p1" } ) );
    // overlapping footprints
    EXPECT_FALSE( is_conflict_pair( n3.net, rg, { "p1", "p3", "p6" }, { "p1", "p4", "p6" } ) );
}

TEST( ConflictPairs, UndecidedWhenTruncated )
{
    auto n3 = example( PaperNetId::N3 );
    EXPECT_THROW( find_conflict_pairs( n3.net, n3.initial, { 2, std::nullopt } ), Undecided );
}

TEST( Agreement, Split )
{
    auto n3 = example( PaperNetId::N3 ).net;
    auto s = agreement_split( n3, { "p1", "p3", "p6" }, { "p1", "p4", "p6" } );
    EXPECT_EQ( s.p_agree, ( NodeSet{ "p1", "p6" } ) );
    EXPECT_EQ( s.p_one, NodeSet{ "p3" } );
    EXPECT_EQ( s.p_two, NodeSet{ "p4" } );
    EXPECT_EQ( s.t_rest, ( NodeSet{ "t1", "t4" } ) );
    EXPECT_EQ( s.t_one, NodeSet{ "t2" } );
    EXPECT_EQ( s.t_two, NodeSet{ "t3" } );
    auto s2 = agreement_split( n3, { "p2", "p3", "p5" }, { "p2", "p4", "p5" } );
    EXPECT_EQ( s2.agreement(), ( Marking{ "p2", "p5" } ) );
    EXPECT_THROW( agreement_split( n3, { "p1" }, { "p1" } ), PreconditionError );
    EXPECT_THROW( agreement_split( n3, Marking( std::map<NodeId, TokenCount>{ { "p1", 2 } } ), { "p2" } ),
                  RequiresSafeMarkings );
}

TEST( Derive, GreedyReproducesN3Pair )
{
    auto n3 = example( PaperNetId::N3 );
    auto d = derive_conflict_pair( n3.net, n3.initial, { "p1", "p3", "p6" }, { "p1", "p4", "p6" },
                                   DeriveMode::greedy() );
    EXPECT_EQ( d.pair.m1, ( Marking{ "p2", "p3", "p5" } ) );
    EXPECT_EQ( d.pair.m2, ( Marking{ "p2", "p4", "p5" } ) );
    EXPECT_EQ( d.sigma1, ( FiringSequence{ "t1", "t4" } ) );
    EXPECT_THROW( derive_conflict_pair( n3.net, n3.initial, { "p1", "p3", "p6" }, { "p1", "p3", "p6" },
                                        DeriveMode::greedy() ),
                  PreconditionError );
}

TEST( Derive, N1HasNoSameFootprintPair )
{
    auto n1 = example( PaperNetId::N1 );
    auto rg = explore( n1.net, n1.initial );
    for ( std::size_t i = 0; i < rg.size(); ++i )
        for ( std::size_t j = i + 1; j < rg.size(); ++j )
            EXPECT_NE( footprint( n1.net, rg.states[ i ] ), footprint( n1.net, rg.states[ j ] ) );
}

TEST( Domination, Checks )
{
    auto n1 = example( PaperNetId::N1 );
    EXPECT_EQ( check_no_dominating( n1.net, n1.initial, cluster_of( n1.net, "p4" ) ).holds, Tri::True );
    auto n5 = example( PaperNetId::N5 );
    EXPECT_EQ( check_no_dominating( n5.net, n5.initial, cluster_of( n5.net, "p6" ) ).holds, Tri::True );
    // initial marking strictly above Mrk({q})
    PetriNet n( { "p", "q" }, { "t" }, { { "p", "t" }, { "t", "q" } } );
    auto r = check_no_dominating( n, { "p", "q" }, cluster_of( n, "q" ) );
    EXPECT_EQ( r.holds, Tri::False );
    ASSERT_TRUE( r.counterexample );
    EXPECT_EQ( *r.counterexample, ( Marking{ "p", "q" } ) );
}

TEST( Domination, PairwiseIncomparable )
{
    auto n1 = example( PaperNetId::N1 );
    EXPECT_EQ( check_pairwise_incomparable( n1.net, n1.initial ).holds, Tri::True );
    auto n3 = example( PaperNetId::N3 );
    EXPECT_EQ( check_pairwise_incomparable( n3.net, n3.initial ).holds, Tri::True );
    PetriNet pump( { "p", "q" }, { "t" }, { { "p", "t" }, { "t", "p" }, { "t", "q" } } );
    EXPECT_EQ( check_pairwise_incomparable( pump, { "p" } ).holds, Tri::False );
}
