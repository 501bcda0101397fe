#ifndef SUPPVAR_COMPLEX_HPP
#define SUPPVAR_COMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "suppvar/monomial.hpp"

namespace suppvar {

/// A differential coefficient: either a constant ±1 or ±a_i for one
/// parameter a_i (zero-based parameter index).
struct EntryCoeff {
  signed char sign = 1;
  signed char param = -1;  // -1 marks a constant

  static constexpr EntryCoeff constant(int s) {
    return EntryCoeff{static_cast<signed char>(s), -1};
  }
  static constexpr EntryCoeff parameter(int s, int i) {
    return EntryCoeff{static_cast<signed char>(s), static_cast<signed char>(i)};
  }
  constexpr bool isConstant() const { return param < 0; }
  friend constexpr bool operator==(EntryCoeff, EntryCoeff) = default;
};

struct MatrixEntry {
  int row = 0;
  int col = 0;
  EntryCoeff coeff;
};

/// Sparse matrix over EntryCoeff with subset labels on both bases. Rows index
/// the target basis and columns the source basis.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<MatrixEntry> entries;
  std::vector<Subset> rowBasis;
  std::vector<Subset> colBasis;

  std::optional<EntryCoeff> at(int row, int col) const;
  /// Looks up by basis labels rather than positions.
  std::optional<EntryCoeff> at(Subset rowLabel, Subset colLabel) const;
  /// Dense rendering of a constant-only matrix; throws if a parameter is present.
  std::vector<std::vector<int>> constantDense() const;
};

/// A Z-graded complex; diffs.at(d) maps pieces.at(d) to pieces.at(d-1).
struct TotalComplex {
  int n = 0;
  std::map<int, std::vector<Subset>> pieces;
  std::map<int, SparseMatrix> diffs;

  int totalDimension() const;
  int dimension(int degree) const;
};

/// The 2-periodic complex F_even -> F_odd -> F_even in the b-basis.
struct PeriodicComplex {
  int n = 0;
  std::vector<Subset> even;
  std::vector<Subset> odd;
  SparseMatrix evenToOdd;
  SparseMatrix oddToEven;
};

/// Taylor complex over the algebraic closure, graded by |J|, b-basis.
TotalComplex taylorKbar(const TaylorData& data);

/// Left multiplication b_j * b_J in the b-basis: (sgn({j}J), {j} ∪ J) when
/// j ∉ J and f_j f_J = f_{{j} ∪ J}; nothing otherwise.
struct EAction {
  int coeff = 0;
  Subset target;
};
std::optional<EAction> eAction(const TaylorData& data, int j, Subset J);
/// The same product expressed in the c-basis (c_J = ksgn(J) b_J).
std::optional<EAction> eActionC(const TaylorData& data, int j, Subset J);

/// d_a = Taylor differential + Σ a_i e_i on the full 2^n basis.
PeriodicComplex periodicComplex(const TaylorData& data);

// Subcomplex diagram -------------------------------------------------------------

struct DiagramClass {
  Subset M;
  std::vector<Subset> members;  // S_M in increasing order
};

struct DiagramEdge {
  int source = 0;  // class indices
  int target = 0;
  int generator = 0;  // zero-based j
};

struct SubcomplexDiagram {
  int n = 0;
  std::vector<DiagramClass> classes;  // sorted by M mask
  std::vector<DiagramEdge> edges;     // sorted by (source, generator)

  /// Index of the class whose closure is M, or -1.
  int indexOf(Subset M) const;
  /// Out-edges of a class as (target class, generator) pairs.
  std::vector<std::pair<int, int>> outEdges(int cls) const;
};

SubcomplexDiagram subcomplexDiagram(const TaylorData& data);

/// Integer weight per class (keyed by M). Every edge raises weight by one.
struct WeakGrading {
  std::map<Subset, int> weights;
  int at(Subset M) const { return weights.at(M); }
};

/// A closed walk of classes along which the edge constraints are contradictory.
struct GradingObstruction {
  std::vector<Subset> witness;
  std::string describe() const;
};

using GradingResult = std::variant<WeakGrading, GradingObstruction>;

/// BFS over each connected component; weights normalised so each component's
/// minimum is 0.
GradingResult weakGrading(const SubcomplexDiagram& diag);
/// Σ_J = floor(deg f_J / deg f_1). Throws std::invalid_argument when the
/// generators do not share a degree.
WeakGrading homogeneousSigma(const TaylorData& data);
/// True when every diagram edge has weight(target) = weight(source) + 1.
bool isWeakGrading(const SubcomplexDiagram& diag, const WeakGrading& sigma);

/// Undirected connected components, each a sorted list of class closures.
std::vector<std::vector<Subset>> components(const SubcomplexDiagram& diag);

/// The 2^n totalisation in the c-basis: J sits in degree |J| - 2Σ_{M_J}.
/// When `only` is given the result is restricted to those classes, which must
/// form a union of components. Throws std::invalid_argument when sigma
/// violates an edge.
TotalComplex totalization(const TaylorData& data, const SubcomplexDiagram& diag,
                          const WeakGrading& sigma,
                          const std::vector<Subset>* only = nullptr);

// Monomial subcomplexes ------------------------------------------------------------

struct SimplicialComplexT {
  Subset vertices;
  std::vector<Subset> faces;  // sorted by (size, mask); includes ∅ when nonvoid

  bool contains(Subset face) const;
  bool isClosed() const;
  int dimension() const;
};

/// Δ_J = { M_J ∖ K : K ∈ S_J }.
SimplicialComplexT deltaComplex(const TaylorData& data, Subset J);

/// Augmented cochain complex C̃^q for q = -1 .. dim. coboundary[k] maps
/// degree (k-1) to degree k, with the sign (-1)^{#{w ∈ σ : w < v}} on
/// σ^∨ -> (σ ∪ {v})^∨.
struct CochainComplex {
  std::vector<std::vector<Subset>> bases;  // bases[q + 1]
  std::vector<SparseMatrix> coboundary;    // coboundary[q + 1]: q -> q+1

  const std::vector<Subset>& basis(int q) const { return bases.at(q + 1); }
  const SparseMatrix& delta(int q) const { return coboundary.at(q + 1); }
  int topDegree() const { return static_cast<int>(bases.size()) - 2; }
};

CochainComplex reducedCochain(const SimplicialComplexT& delta);

/// Ranks of reduced cohomology by degree over Q (fieldChar 0) or F_p.
std::map<int, int> cohomologyRanks(const SimplicialComplexT& delta, unsigned long long fieldChar);

/// The class-restricted Taylor subcomplex T_J in the c-basis, graded by |K|.
TotalComplex taylorSubcomplexC(const TaylorData& data, Subset J);

}  // namespace suppvar

#endif  // SUPPVAR_COMPLEX_HPP
