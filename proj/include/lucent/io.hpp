#pragma once

#include "lucent/home_cluster.hpp"
#include "lucent/lucency.hpp"
#include "lucent/net.hpp"
#include "lucent/state_space.hpp"

#include <string>
#include <string_view>

namespace lucent
{

struct NetDocument
{
    std::string name;
    PetriNet net;
    Marking initial;
};

struct ParseError : Error
{
    enum class Kind
    {
        MissingHeader,
        DuplicateId,
        UnknownNode,
        IllegalArcKind,
        Syntax,
        InvalidNet
    };

    ParseError( Kind k, std::size_t ln, const std::string& msg )
            : Error( "line " + std::to_string( ln ) + ": " + msg ), kind{ k }, line{ ln }
    {
    }
    Kind kind;
    std::size_t line; // 1-based; 0 when the problem is not tied to a line
};

std::string to_string( ParseError::Kind k );

// Line-oriented format; '#' starts a comment.
//   net NAME
//   place ID [init N]
//   trans ID
//   arc FROM -> TO
NetDocument parse_net( std::string_view text );
NetDocument load_net( const std::string& path );

// Normalized form: header, places, transitions, arcs, each block sorted.
std::string serialize( const NetDocument& doc );

enum class Format
{
    Json,
    Text
};

struct AnalysisOptions
{
    ExplorationLimits limits;
    HomeMethod method = HomeMethod::Both;
};

struct AnalysisReport
{
    std::string net_name;
    ExplorationLimits limits;
    HomeMethod method = HomeMethod::Both;

    // structure
    bool free_choice = false;
    bool proper = false;
    Connectivity connectivity = Connectivity::Weak;
    NetClass net_class = NetClass::General;
    std::vector<Cluster> clusters;

    // behaviour
    ExplorationVerdict exploration = ExplorationVerdict::Complete;
    std::size_t states = 0;
    BoundResult bound;
    SafetyResult safe;
    LivenessResult live;
    DeadlockResult deadlock;
    std::optional<std::vector<Marking>> home_markings; // nullopt when undecided

    // lucency
    LucencyVerdict lucency;
    TransparencyResult transparency;

    // home clusters; nullopt with the error text when the methods disagree
    std::optional<HomeClusterReport> home;
    std::optional<std::string> home_error;
    Tri perpetual = Tri::Undecided;
};

AnalysisReport analyze( const NetDocument& doc, const AnalysisOptions& options = {} );

// Byte-stable output: sorted keys, fixed number formatting.
std::string emit_report( const AnalysisReport& report, Format format );
std::string emit_lucency( const std::string& net_name, const LucencyVerdict& v, Format format );
std::string emit_home_clusters( const std::string& net_name, const HomeClusterReport& r, Format format );
std::string emit_reachability( const std::string& net_name, const PetriNet& net, const ReachabilityGraph& rg,
                               Format format );

inline constexpr int report_schema_version = 1;

} // namespace lucent
