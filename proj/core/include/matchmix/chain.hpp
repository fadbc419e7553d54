#ifndef MATCHMIX_CHAIN_HPP
#define MATCHMIX_CHAIN_HPP

#include <map>
#include <utility>
#include <vector>

#include "matchmix/bigint.hpp"
#include "matchmix/bipartite_graph.hpp"
#include "matchmix/enumerate.hpp"

namespace matchmix {

/// The three Metropolis chains over matchings.
///  broder        - perfect and near-perfect matchings, uniform weights
///  jsv           - same state space, hole-class weights |M|/|N_uv|
///  monomer_dimer - all matchings, uniform weights
enum class ChainKind { broder, jsv, monomer_dimer };

std::string chain_name(ChainKind k);
ChainKind parse_chain(const std::string& name);

struct ChainSpec {
  ChainKind kind = ChainKind::broder;
  // Self-loop mass: a step stays put with this probability and otherwise
  // performs a kernel move. Must lie in [0, 1).
  double laziness = 0.0;
};

struct HolePair {
  VertexId u = -1;
  VertexId v = -1;
  friend auto operator<=>(const HolePair&, const HolePair&) = default;
};

enum class StateClass { perfect, near_perfect, general };

/// A matching stored as partner vectors for both sides; the U-side vector
/// is the canonical encoding used for state deduplication.
struct Matching {
  std::vector<VertexId> partner_u;  // -1 = unmatched
  std::vector<VertexId> partner_v;
  VertexId size = 0;

  static Matching empty(const BipartiteGraph& g);
  static Matching from_partner_u(const BipartiteGraph& g,
                                 std::vector<VertexId> partner_u);

  StateClass classify(const BipartiteGraph& g) const;
  /// Valid only for near-perfect matchings.
  HolePair holes(const BipartiteGraph& g) const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.partner_u == b.partner_u;
  }
};

/// What a single edge-selection does to a matching.
struct Move {
  bool changes = false;
  VertexId add_u = -1, add_v = -1;     // edge to add, if any
  VertexId drop_u = -1, drop_v = -1;   // edge to remove, if any
};

/// The kernel move selected by edge index under the given chain's rules.
/// broder and jsv share the kernel (they differ only in the Metropolis
/// weights); monomer_dimer uses the add/remove/exchange rules on all
/// matchings. Throws DomainError when m is outside the chain's state space.
Move edge_move(const Matching& m, const BipartiteGraph& g, ChainKind kind,
               std::size_t edge_index);

void apply_move(Matching& m, const Move& mv);
void undo_move(Matching& m, const Move& mv);

/// Hole-class weights w(M): 1 for perfect matchings, |M(G)|/|N_uv(G)| for
/// the class with holes (u, v). Exact rationals.
class JsvWeights {
 public:
  JsvWeights() = default;
  /// From exact counts (enumeration or a completed state-graph scan).
  explicit JsvWeights(const MatchingCounts& counts);

  /// Weight of a state class; throws DomainError for an empty hole class
  /// (no such states exist) and for general matchings.
  Rat weight(StateClass cls, HolePair holes = {}) const;
  Rat weight_of(const Matching& m, const BipartiteGraph& g) const;

  const std::map<std::pair<VertexId, VertexId>, Rat>& by_hole_class() const {
    return by_class_;
  }

 private:
  std::map<std::pair<VertexId, VertexId>, Rat> by_class_;
};

/// One outgoing transition: target plus exact transition probability
/// (edge-choice multiplicity / m, Metropolis-filtered for jsv).
struct Proposal {
  Matching target;
  Rat probability;
};

/// All distinct kernel proposals from m, in first-edge order, plus the
/// aggregated self-loop as the final entry. For jsv pass the weights so the
/// Metropolis acceptance of the transition probability is applied; the
/// rejected mass joins the self-loop. Laziness scales every non-loop entry.
std::vector<Proposal> neighbors(const Matching& m, const BipartiteGraph& g,
                                const ChainSpec& chain,
                                const JsvWeights* weights = nullptr);

}  // namespace matchmix

#endif
