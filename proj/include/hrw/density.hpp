#pragma once
// Exact densities, balancedness, hearts, lambda/gamma and small structural
// parameters of k-graphs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrw/hypergraph.hpp"
#include "hrw/rational.hpp"

namespace hrw {

// Subgraph optimisation engines. Exhaustive enumerates vertex subsets and
// is limited to 24 vertices; Flow uses parametric max-closure.
enum class Engine { Flow, Exhaustive };

struct DensityWitness {
  Rational value;
  std::vector<int> edges;        // edge indices of the host graph
  std::vector<Vertex> vertices;  // vertex set of the witness, sorted

  // Witnesses are induced on their vertex set; relabelled 0.. in id order.
  KGraph subgraph(const KGraph& host) const { return host.induced(vertices); }
};

// Ratios evaluated on a whole graph (isolated vertices count).
Rational d_density(const KGraph& g);                 // e/v, 0 if v = 0
Rational d1_density(const KGraph& g);                // e/(v-1), 0 if v < 2
Rational dk_density(const KGraph& g);                // (e-1)/(v-k), 1/k, or 0
Rational dk_pair(const KGraph& j, const Rational& mk_h2);  // e/(v-k+1/mk_h2), 0 if edgeless

DensityWitness m_density(const KGraph& g, Engine engine = Engine::Flow);
DensityWitness arboricity(const KGraph& g, Engine engine = Engine::Flow);
DensityWitness mk_density(const KGraph& g, Engine engine = Engine::Flow);
// Requires m_k(h1) >= m_k(h2) and h2 non-empty (std::invalid_argument otherwise).
DensityWitness mk_pair_density(const KGraph& h1, const KGraph& h2, Engine engine = Engine::Flow);
// Same with m_k(H2) supplied; no ordering check.
DensityWitness mk_pair_density_given(const KGraph& h1, const Rational& mk_h2, Engine engine = Engine::Flow);

enum class Balance { KBalanced, StrictKBalanced, BalancedWrt, StrictBalancedWrt };
bool balancedness(const KGraph& h, Balance mode, const KGraph* h2 = nullptr);

bool is_heart(const KGraph& h1, const KGraph& h2);
// Requires m_k(h1) >= m_k(h2) > 1. Returns compact relabelled subgraphs.
std::pair<KGraph, KGraph> heart(const KGraph& h1, const KGraph& h2);

enum class Regime { Strict, Equal };

struct PairContext {
  KGraph h1, h2;
  int k = 2;
  Rational mk_h1, mk_h2, mk_pair;
  Rational epsilon, gamma;
  Regime regime = Regime::Equal;
  bool heart = false;

  // Requires m_k(h1) >= m_k(h2), h2 non-empty, epsilon >= 0.
  static PairContext make(const KGraph& h1, const KGraph& h2, const Rational& epsilon = Rational(0));
  std::string describe() const;
};

Rational lambda(const KGraph& f, const PairContext& ctx);
Rational lambda_value(int v, int e, const Rational& mk_pair);
DensityWitness min_lambda_subgraph(const KGraph& f, const PairContext& ctx, Engine engine = Engine::Flow);
// min over non-empty subgraphs of lambda, value only; cheaper than the witness version.
Rational min_lambda_value(const KGraph& f, const Rational& mk_pair);

Rational gamma(const KGraph& h1, const KGraph& h2, const Rational& epsilon);
Rational gamma_from_pair_density(const Rational& mk_pair, const Rational& epsilon);

// max over subgraphs of the minimum degree, by peeling; the optional output
// receives the vertex set of a subgraph attaining it.
int delta_max(const KGraph& g, std::vector<Vertex>* witness = nullptr);

int weak_chromatic_number(const KGraph& h);

struct HeartStructureReport {
  bool h1_connected = false, h2_connected = false;
  int h1_min_degree = 0, h2_min_degree = 0;
  bool h1_cut_free = false, h2_cut_free = false;
  std::string cut_witness;  // description of a forbidden decomposition, if any
  bool ok() const {
    return h1_connected && h2_connected && h1_cut_free && h2_cut_free && h1_min_degree >= 2 && h2_min_degree >= 2;
  }
};

// Requires (h1, h2) to be a heart with m_k(h2) > 1.
HeartStructureReport heart_structure_check(const KGraph& h1, const KGraph& h2);

}  // namespace hrw
