#include "test_util.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

using namespace lucent;
using test::example;
using nlohmann::json;

namespace
{

ParseError::Kind parse_kind( const std::string& text, std::size_t* line = nullptr )
{
    try
    {
        parse_net( text );
    }
    catch ( const ParseError& e )
    {
        if ( line )
            *line = e.line;
        return e.kind;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ParseError::Kind::Syntax;
}

} // namespace

TEST( Parse, CorpusFileMatchesExample )
{
    auto d = load_net( std::string( LUCENT_CORPUS_DIR ) + "/n2.net" );
    auto n2 = example( PaperNetId::N2 );
    EXPECT_EQ( d.name, "N2" );
    EXPECT_EQ( d.net, n2.net );
    EXPECT_EQ( d.initial, Marking{ "p1" } );
}

TEST( Parse, AllCorpusFilesRoundTrip )
{
    for ( auto id : all_paper_nets() )
    {
        auto n = example( id );
        auto path = std::string( LUCENT_CORPUS_DIR ) + "/" + to_string( id ) + ".net";
        for ( auto& c : path )
            c = static_cast<char>( std::tolower( c ) );
        auto d = load_net( path );
        EXPECT_EQ( serialize( d ), serialize( n ) ) << path;
        EXPECT_EQ( serialize( parse_net( serialize( d ) ) ), serialize( d ) );
    }
}

TEST( Parse, GrammarFeatures )
{
    auto d = parse_net( "# comment\n"
                        "net toy   # trailing comment\n"
                        "\n"
                        "place a init 2\n"
                        "place b\n"
                        "trans t\n"
                        "arc a->t\n"
                        "arc t -> b\n" );
    EXPECT_EQ( d.name, "toy" );
    EXPECT_EQ( d.initial( "a" ), 2u );
    EXPECT_TRUE( d.net.has_arc( "a", "t" ) );
    EXPECT_TRUE( d.net.has_arc( "t", "b" ) );
}

TEST( Parse, Errors )
{
    std::size_t line = 99;
    EXPECT_EQ( parse_kind( "", &line ), ParseError::Kind::MissingHeader );
    EXPECT_EQ( line, 0u );
    EXPECT_EQ( parse_kind( "place p\n" ), ParseError::Kind::MissingHeader );
    EXPECT_EQ( parse_kind( "net x\nplace p1\nplace p2\narc p1 -> p2\n", &line ), ParseError::Kind::IllegalArcKind );
    EXPECT_EQ( line, 4u );
    EXPECT_EQ( parse_kind( "net x\nplace p\ntrans t\narc t -> t\n" ), ParseError::Kind::IllegalArcKind );
    EXPECT_EQ( parse_kind( "net x\nplace p\nplace p\n", &line ), ParseError::Kind::DuplicateId );
    EXPECT_EQ( line, 3u );
    EXPECT_EQ( parse_kind( "net x\nplace p\ntrans p\n" ), ParseError::Kind::DuplicateId );
    EXPECT_EQ( parse_kind( "net x\nplace p\ntrans t\narc p -> t\narc p -> t\n" ), ParseError::Kind::DuplicateId );
    EXPECT_EQ( parse_kind( "net x\nplace p\narc p -> q\n", &line ), ParseError::Kind::UnknownNode );
    EXPECT_EQ( line, 3u );
    EXPECT_EQ( parse_kind( "net x\nplace p init -1\n" ), ParseError::Kind::Syntax );
    EXPECT_EQ( parse_kind( "net x\nplaces p\n" ), ParseError::Kind::Syntax );
    EXPECT_EQ( parse_kind( "net x\nplace 9p\n" ), ParseError::Kind::Syntax );
    EXPECT_EQ( parse_kind( "net x\nnet y\nplace p\n" ), ParseError::Kind::Syntax );
    EXPECT_EQ( parse_kind( "net x\nplace p\nplace q\ntrans t\narc p -> t\n" ), ParseError::Kind::InvalidNet );
}

TEST( Parse, MissingFile ) { EXPECT_THROW( load_net( "/nonexistent/x.net" ), Error ); }

TEST( Serialize, GeneratedNetsRoundTrip )
{
    for ( std::uint64_t seed = 0; seed < 40; ++seed )
    {
        GeneratorParams p;
        p.seed = seed;
        auto d = generate( p );
        auto back = parse_net( serialize( d ) );
        EXPECT_EQ( back.net, d.net );
        EXPECT_EQ( back.initial, d.initial );
        EXPECT_EQ( back.name, d.name );
    }
}

TEST( Report, JsonContents )
{
    auto n2 = json::parse( emit_report( analyze( example( PaperNetId::N2 ) ), Format::Json ) );
    EXPECT_EQ( n2[ "schema_version" ], 1 );
    EXPECT_EQ( n2[ "lucency" ][ "lucent" ], false );
    EXPECT_EQ( n2[ "lucency" ][ "witness" ][ "markings" ], json::parse( R"([["p2:1","p5:1"],["p2:1","p6:1"]])" ) );
    EXPECT_EQ( n2[ "lucency" ][ "witness" ][ "footprint" ], json::parse( R"(["t3"])" ) );
    auto n1 = json::parse( emit_report( analyze( example( PaperNetId::N1 ) ), Format::Json ) );
    EXPECT_EQ( n1[ "home_clusters" ], json::parse( R"([["p4"]])" ) );
    EXPECT_EQ( n1[ "lucency" ][ "lucent" ], true );
    EXPECT_EQ( n1[ "perpetual" ], false );
    EXPECT_EQ( n1[ "behaviour" ][ "states" ], 4 );
}

TEST( Report, Undecided )
{
    auto n5 = example( PaperNetId::N5 );
    auto j = json::parse( emit_report( analyze( n5, { { 2, std::nullopt }, HomeMethod::Direct } ), Format::Json ) );
    EXPECT_EQ( j[ "behaviour" ][ "exploration" ], "truncated" );
    EXPECT_EQ( j[ "lucency" ][ "lucent" ], "undecided" );
}

TEST( Report, Deterministic )
{
    for ( auto id : all_paper_nets() )
    {
        auto d = example( id );
        for ( auto f : { Format::Json, Format::Text } )
            EXPECT_EQ( emit_report( analyze( d ), f ), emit_report( analyze( d ), f ) );
    }
}

TEST( Report, OtherEmitters )
{
    auto n3 = example( PaperNetId::N3 );
    auto rg = explore( n3.net, n3.initial );
    auto j = json::parse( emit_reachability( n3.name, n3.net, rg, Format::Json ) );
    EXPECT_EQ( j[ "states" ].size(), 8u );
    auto l = json::parse( emit_lucency( n3.name, check_lucency( n3.net, rg ), Format::Json ) );
    EXPECT_EQ( l[ "witness" ][ "footprint" ], json::parse( R"(["t1","t4"])" ) );
    auto h = json::parse( emit_home_clusters( n3.name, find_home_clusters( n3.net, n3.initial ), Format::Json ) );
    EXPECT_TRUE( h[ "home_clusters" ].empty() );
    EXPECT_NE( emit_lucency( n3.name, check_lucency( n3.net, rg ), Format::Text ).find( "lucent: false" ),
               std::string::npos );
}
