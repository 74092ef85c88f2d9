#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lucent
{

using NodeId = std::string;
using NodeSet = std::set<NodeId>;
using TokenCount = std::uint32_t;

// Errors

struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct InvalidNet : Error
{
    using Error::Error;
};

struct NodeNotFound : Error
{
    explicit NodeNotFound( const NodeId& id ) : Error( "unknown node '" + id + "'" ), node{ id } {}
    NodeId node;
};

struct NotEnabled : Error
{
    explicit NotEnabled( const NodeId& t ) : Error( "transition '" + t + "' is not enabled" ), transition{ t } {}
    NodeId transition;
};

struct NotEnabledAt : Error
{
    NotEnabledAt( std::size_t idx, const NodeId& t )
            : Error( "step " + std::to_string( idx ) + " ('" + t + "') of the firing sequence is not enabled" ),
              index{ idx }, transition{ t }
    {
    }
    std::size_t index; // 0-based
    NodeId transition;
};

// Raised when a caller violates an operation's documented precondition.
struct PreconditionError : Error
{
    using Error::Error;
};

// Raised when an analysis needs a complete state space and only has a partial one.
struct Undecided : Error
{
    using Error::Error;
};

enum class Tri
{
    False,
    True,
    Undecided
};

inline Tri to_tri( bool b ) { return b ? Tri::True : Tri::False; }
std::string to_string( Tri v );

bool is_valid_identifier( const std::string& s );

// Marking: a multiset of places. Zero counts are never stored, so equality
// and ordering of the underlying map coincide with multiset equality.
class Marking
{
    std::map<NodeId, TokenCount> _counts;

public:
    Marking() = default;
    Marking( std::initializer_list<NodeId> places );
    explicit Marking( const std::map<NodeId, TokenCount>& counts );

    static Marking from_set( const NodeSet& places );

    [[nodiscard]] TokenCount operator()( const NodeId& p ) const;
    [[nodiscard]] TokenCount count_of( const NodeSet& places ) const; // b(X)
    [[nodiscard]] std::size_t size() const;                          // |b|
    [[nodiscard]] bool empty() const { return _counts.empty(); }
    [[nodiscard]] NodeSet support() const;
    [[nodiscard]] bool is_set() const; // all counts <= 1
    [[nodiscard]] const std::map<NodeId, TokenCount>& counts() const { return _counts; }

    void add( const NodeId& p, TokenCount n = 1 );

    [[nodiscard]] Marking operator+( const Marking& other ) const; // multiset sum
    [[nodiscard]] Marking operator-( const Marking& other ) const; // multiset difference (saturating)
    [[nodiscard]] Marking meet( const Marking& other ) const;      // pointwise minimum

    [[nodiscard]] bool leq( const Marking& other ) const;
    [[nodiscard]] bool lt( const Marking& other ) const { return leq( other ) && *this != other; }

    // Canonical "[p1, p2^2]" rendering; one string per multiset.
    [[nodiscard]] std::string str() const;
    // Sorted "place:count" entries.
    [[nodiscard]] std::vector<std::string> entries() const;
    static Marking parse( const std::string& text );

    friend bool operator==( const Marking&, const Marking& ) = default;
    friend auto operator<=>( const Marking& a, const Marking& b ) { return a._counts <=> b._counts; }
};

class FiringSequence
{
    std::vector<NodeId> _steps;

public:
    FiringSequence() = default;
    FiringSequence( std::initializer_list<NodeId> steps ) : _steps( steps ) {}
    explicit FiringSequence( std::vector<NodeId> steps ) : _steps( std::move( steps ) ) {}

    [[nodiscard]] std::size_t size() const { return _steps.size(); }
    [[nodiscard]] bool empty() const { return _steps.empty(); }
    [[nodiscard]] const NodeId& operator[]( std::size_t i ) const { return _steps[ i ]; }
    [[nodiscard]] const std::vector<NodeId>& steps() const { return _steps; }
    [[nodiscard]] auto begin() const { return _steps.begin(); }
    [[nodiscard]] auto end() const { return _steps.end(); }

    void push_back( NodeId t ) { _steps.push_back( std::move( t ) ); }
    [[nodiscard]] FiringSequence operator+( const FiringSequence& other ) const;
    [[nodiscard]] FiringSequence prefix( std::size_t n ) const;
    [[nodiscard]] std::string str() const;

    friend bool operator==( const FiringSequence&, const FiringSequence& ) = default;
    friend auto operator<=>( const FiringSequence&, const FiringSequence& ) = default;
};

struct Arc
{
    NodeId from;
    NodeId to;

    friend bool operator==( const Arc&, const Arc& ) = default;
    friend auto operator<=>( const Arc&, const Arc& ) = default;
};

// Immutable (P, T, F). Places and transitions are kept sorted by identifier
// and addressed internally by their position in that order.
class PetriNet
{
public:
    PetriNet( std::vector<NodeId> places, std::vector<NodeId> transitions, std::vector<Arc> arcs );

    [[nodiscard]] const std::vector<NodeId>& places() const { return _places; }
    [[nodiscard]] const std::vector<NodeId>& transitions() const { return _transitions; }
    [[nodiscard]] const std::vector<Arc>& arcs() const { return _arcs; }

    [[nodiscard]] std::size_t num_places() const { return _places.size(); }
    [[nodiscard]] std::size_t num_transitions() const { return _transitions.size(); }

    [[nodiscard]] bool is_place( const NodeId& id ) const;
    [[nodiscard]] bool is_transition( const NodeId& id ) const;
    [[nodiscard]] bool has_node( const NodeId& id ) const { return is_place( id ) || is_transition( id ); }
    [[nodiscard]] bool has_arc( const NodeId& from, const NodeId& to ) const;

    // Throw NodeNotFound when the identifier is not a place (transition).
    [[nodiscard]] std::size_t place_index( const NodeId& id ) const;
    [[nodiscard]] std::size_t transition_index( const NodeId& id ) const;

    // Index-level adjacency, each list sorted ascending.
    [[nodiscard]] const std::vector<std::size_t>& pre_places( std::size_t t ) const { return _t_pre[ t ]; }
    [[nodiscard]] const std::vector<std::size_t>& post_places( std::size_t t ) const { return _t_post[ t ]; }
    [[nodiscard]] const std::vector<std::size_t>& pre_transitions( std::size_t p ) const { return _p_pre[ p ]; }
    [[nodiscard]] const std::vector<std::size_t>& post_transitions( std::size_t p ) const { return _p_post[ p ]; }

    friend bool operator==( const PetriNet& a, const PetriNet& b )
    {
        return a._places == b._places && a._transitions == b._transitions && a._arcs == b._arcs;
    }

private:
    std::vector<NodeId> _places;
    std::vector<NodeId> _transitions;
    std::vector<Arc> _arcs;
    std::vector<std::vector<std::size_t>> _t_pre, _t_post, _p_pre, _p_post;
};

struct Cluster
{
    NodeSet places;
    NodeSet transitions;

    [[nodiscard]] bool contains( const NodeId& id ) const { return places.contains( id ) || transitions.contains( id ); }
    [[nodiscard]] NodeSet nodes() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==( const Cluster&, const Cluster& ) = default;
    friend auto operator<=>( const Cluster&, const Cluster& ) = default;
};

enum class Connectivity
{
    Weak,
    Strong
};

enum class NetClass
{
    MarkedGraph,
    StateMachine,
    FreeChoice,
    General
};

std::string to_string( Connectivity c );
std::string to_string( NetClass c );

NodeSet preset( const PetriNet& net, const NodeId& node );
NodeSet postset( const PetriNet& net, const NodeId& node );
NodeSet preset_of_set( const PetriNet& net, const NodeSet& nodes );
NodeSet postset_of_set( const PetriNet& net, const NodeSet& nodes );

NodeSet enabled_transitions( const PetriNet& net, const Marking& m );
bool is_enabled( const PetriNet& net, const Marking& m, const NodeId& t );
Marking fire( const PetriNet& net, const Marking& m, const NodeId& t );
Marking fire_sequence( const PetriNet& net, const Marking& m, const FiringSequence& s );
// Like fire_sequence but returns nullopt instead of throwing.
std::optional<Marking> try_fire_sequence( const PetriNet& net, const Marking& m, const FiringSequence& s );

// Clusters ordered by smallest place identifier; place-less clusters last,
// ordered by transition identifier.
std::vector<Cluster> clusters( const PetriNet& net );
Cluster cluster_of( const PetriNet& net, const NodeId& node );
Marking mrk( const Cluster& c );

bool is_free_choice( const PetriNet& net );
bool is_proper( const PetriNet& net );
Connectivity connectivity( const PetriNet& net );
NetClass net_class( const PetriNet& net );

} // namespace lucent
