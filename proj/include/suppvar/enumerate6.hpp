#ifndef SUPPVAR_ENUMERATE6_HPP
#define SUPPVAR_ENUMERATE6_HPP

#include <json.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "suppvar/monomial.hpp"
#include "suppvar/support.hpp"

namespace suppvar {

inline constexpr int kGraphVertices = 6;
inline constexpr int kGraphPairs = 15;

using Permutation6 = std::array<int, kGraphVertices>;
/// Zero-based vertex pair with first < second.
using GraphEdge = std::pair<int, int>;

/// A simple graph on six vertices. Pairs are ordered (1,2), (1,3), ...,
/// (5,6); the adjacency string lists one bit per pair in that order.
class GcdGraph {
 public:
  GcdGraph() = default;
  /// Bit k of `bits` is the k-th pair.
  static GcdGraph fromPairBits(std::uint16_t bits);
  /// One-based vertex labels.
  static GcdGraph fromEdges(std::initializer_list<std::pair<int, int>> edges);
  /// Accepts the 15-character adjacency string. Throws std::invalid_argument.
  static GcdGraph parse(const std::string& text);
  static GcdGraph cycle();
  static GcdGraph complete();

  std::uint16_t pairBits() const { return bits_; }
  bool adjacent(int u, int v) const;
  int edgeCount() const;
  std::vector<GraphEdge> edges() const;
  Subset neighbours(int v) const;
  bool isClique(Subset vertices) const;

  /// Vertex v of this graph becomes vertex perm[v].
  GcdGraph permuted(const Permutation6& perm) const;
  /// Lexicographically least adjacency string over all relabellings.
  GcdGraph canonical() const;
  bool isCanonical() const { return canonical() == *this; }
  std::string toString() const;

  friend bool operator==(GcdGraph, GcdGraph) = default;
  friend auto operator<=>(GcdGraph a, GcdGraph b) { return a.toString() <=> b.toString(); }

 private:
  explicit GcdGraph(std::uint16_t bits) : bits_(bits) {}
  std::uint16_t bits_ = 0;
};

int pairIndex(int u, int v);
/// The graph with an edge between generators sharing a variable.
GcdGraph gcdGraphOf(const MonomialSeq& f);

/// Canonical forms of all graphs on six vertices, sorted.
std::vector<GcdGraph> allGraphClasses();
/// A dominating vertex, or an edge seen by every other vertex through exactly
/// one endpoint. Such graphs force full support.
bool forcesFullSupport(const GcdGraph& g);
/// allGraphClasses() minus the excluded graphs.
std::vector<GcdGraph> enumerateGraphs();

/// Edges (u,v) with every vertex equal or adjacent to u or v.
std::vector<GraphEdge> denseEdges(const GcdGraph& g);
/// All nonempty cliques ordered by size and then bitmask.
std::vector<Subset> cliques(const GcdGraph& g);
/// True when giving a variable to each active clique forces full support
/// for every minimal ideal with this graph.
bool forbiddenSupport(const GcdGraph& g, const std::vector<Subset>& active);
/// Cliques whose variable alone is not already forbidden.
std::vector<Subset> admissibleCliques(const GcdGraph& g);

using IntVector = std::vector<long long>;

/// {x >= 0 : Ax = 0} in clique-index space.
struct CliqueCone {
  std::vector<Subset> cliques;
  std::vector<IntVector> equalities;
  int dimension() const { return static_cast<int>(cliques.size()); }
};

/// Rows are (Mx)_1 - (Mx)_i for i = 2..6, M the clique indicator matrix.
CliqueCone buildCone(const std::vector<Subset>& cliques);

/// Primitive extreme rays of {x >= 0 : Ax = 0} in `dim` coordinates by double
/// description. Sorted lexicographically.
std::vector<IntVector> extremeRays(const std::vector<IntVector>& equalities, int dim);

/// Exact vector: weights indexed like `cliques`.
struct CliqueVector {
  GcdGraph graph;
  std::vector<Subset> cliques;
  IntVector weights;

  std::vector<Subset> active() const;
  /// Degree of generator v: sum of weights of cliques containing v.
  long long degreeAt(int v) const;
};

/// What the rest of the pipeline can see of a set of active cliques: the
/// covered edges, which vertices have a private variable, and per vertex the
/// minimal nonempty sets C minus w over active cliques C containing w. Forbidden
/// status, minimality and divisibility between generators and lcms depend on
/// nothing else, and the summary of a union is the merge of the summaries.
struct SupportSummary {
  std::array<std::uint64_t, kGraphVertices> minimal{};
  std::uint8_t singletons = 0;
  std::uint16_t edges = 0;

  static SupportSummary of(const std::vector<Subset>& active);
  SupportSummary merged(const SupportSummary& other) const;
  /// Active cliques with the same minimal sets and singletons, hence the same
  /// forbidden status. Covered edges may be fewer.
  std::vector<Subset> representative() const;

  friend auto operator<=>(const SupportSummary&, const SupportSummary&) = default;
};

class ClosureCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sums of subsets of rays with unforbidden support, one vector per support
/// summary, restricted to supports whose realized graph is `g`.
std::vector<CliqueVector> rayClosure(const GcdGraph& g, const std::vector<Subset>& cliques,
                                     const std::vector<IntVector>& rays, std::size_t cap = 1u << 20);

struct NonMinimal {
  int divisor = 0;   // zero-based generator index
  int multiple = 0;  // generator divisible by the divisor
};

/// One variable per active clique; f_i is the product over active cliques
/// containing i. Weights are doubled when every generator would have degree 1.
std::variant<MonomialSeq, NonMinimal> idealFromVector(const CliqueVector& cv);

// Pipeline ------------------------------------------------------------------

struct CandidateResult {
  IntVector weights;
  std::string ideal;  // empty when rejected as non-minimal
  std::optional<NonMinimal> rejected;
  Classification::Kind kind = Classification::Kind::Other;
  std::string variety;
  std::string engine;
};

struct GraphResult {
  GcdGraph graph;
  std::vector<Subset> cliques;
  std::vector<IntVector> rays;
  std::vector<CandidateResult> candidates;

  nlohmann::json toJson() const;
  static GraphResult fromJson(const nlohmann::json& j);
};

struct PipelineOptions {
  /// Empty means every graph from enumerateGraphs().
  std::vector<GcdGraph> graphs;
  /// JSON-lines file; existing lines are reused and new graphs are appended.
  std::string checkpoint;
  int threads = 1;
  SupportOptions support;
  std::size_t closureCap = 1u << 20;
  std::function<void(const GraphResult&)> onGraph;
};

struct PipelineTable {
  std::vector<GraphResult> graphs;
  std::map<std::string, int> tally;  // classification name -> candidates
  int nonMinimal = 0;
  int resumed = 0;
  /// Graphs abandoned on a resource cap, with the reason. Not checkpointed.
  std::vector<std::pair<std::string, std::string>> capped;

  nlohmann::json toJson() const;
  std::string summary() const;
};

/// Raised after a run in which some candidate classified as Other. Carries
/// the finished table.
class ClassificationFailure : public std::runtime_error {
 public:
  ClassificationFailure(const std::string& what, PipelineTable table)
      : std::runtime_error(what), table_(std::move(table)) {}
  const PipelineTable& table() const { return table_; }

 private:
  PipelineTable table_;
};

/// Classifies every candidate of one graph.
GraphResult processGraph(const GcdGraph& g, const SupportOptions& support, std::size_t closureCap = 1u << 20);

/// Runs all graphs, resuming from the checkpoint. A graph that hits a resource
/// cap is listed in `capped` and the run goes on. Throws ClassificationFailure
/// after the run when a candidate classified as Other.
PipelineTable runPipeline(const PipelineOptions& options);

/// Ten fixed graphs for quick runs, the 6-cycle among them.
std::vector<GcdGraph> ciGraphs();

}  // namespace suppvar

#endif  // SUPPVAR_ENUMERATE6_HPP
