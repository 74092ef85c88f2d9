#pragma once

#include "lucent/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lucent
{

enum class PaperNetId
{
    N1,
    N2,
    N3,
    N4,
    N5
};

std::string to_string( PaperNetId id );
std::vector<PaperNetId> all_paper_nets();

// How an expected value was obtained: quoted from the net's description, or
// computed from the transcribed structure.
enum class Basis
{
    Stated,
    Derived
};

std::string to_string( Basis b );

struct Expectation
{
    std::string property; // see evaluate_property
    std::string value;
    Basis basis = Basis::Stated;
};

struct PaperNet
{
    PaperNetId id;
    NetDocument doc;
    std::vector<Expectation> expected;
};

// Returns the transcribed net. Structural checkpoints are verified first;
// a failing checkpoint throws InvalidNet.
PaperNet paper_net( PaperNetId id );

// Structural checkpoints that failed (empty when the transcription is sound).
std::vector<std::string> transcription_problems( const PaperNet& pn );

// Computes a property as the canonical string used in expectation tables.
// Properties: places, transitions, arcs, clusters, free_choice, proper,
// net_class, connectivity, reachable, reachable_count, lucent,
// lucency_witness, fully_transparent, live, safe, bounded, deadlock_free,
// home_markings, home_clusters, perpetual, dead_end, and "footprint M" for a
// marking M such as "footprint [p4, p7]".
std::string evaluate_property( const PaperNet& pn, const std::string& property );

struct ExpectationMismatch
{
    Expectation expected;
    std::string actual;
};

std::vector<ExpectationMismatch> check_expectations( const PaperNet& pn );

struct GeneratorParams
{
    std::uint64_t seed = 0;
    std::size_t min_clusters = 2, max_clusters = 6;
    std::size_t min_places_per_cluster = 1, max_places_per_cluster = 3;
    std::size_t min_transitions_per_cluster = 0, max_transitions_per_cluster = 3;
    std::size_t min_outputs = 1, max_outputs = 3;
    std::size_t max_places = 12;
    bool force_strongly_connected = false;
};

// Proper, free-choice, weakly connected net; initial marking is Mrk of a
// uniformly chosen cluster. Throws PreconditionError on empty ranges.
NetDocument generate( const GeneratorParams& params );

struct TheoremTally
{
    std::string check;
    std::size_t pass = 0, fail = 0, skip = 0;
};

struct Anomaly
{
    std::string check;
    std::string net_name;
    std::string evidence;
    std::string net_text; // serialized net for reproduction
};

struct SuiteOptions
{
    ExplorationLimits limits;
    std::size_t expedite_samples = 10;
    std::uint64_t seed = 0;
};

struct SuiteReport
{
    std::size_t nets = 0;
    std::vector<TheoremTally> tallies; // fixed check order
    std::vector<Anomaly> anomalies;

    [[nodiscard]] bool ok() const { return anomalies.empty(); }
    [[nodiscard]] const TheoremTally& tally( const std::string& check ) const;
};

// Names of the checks in report order.
const std::vector<std::string>& suite_checks();

SuiteReport run_theorem_suite( const std::vector<NetDocument>& nets, const SuiteOptions& options = {} );

std::vector<NetDocument> paper_corpus();
std::vector<NetDocument> random_corpus( std::size_t count, std::uint64_t seed, bool force_strongly_connected = false );

} // namespace lucent
