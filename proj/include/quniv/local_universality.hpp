#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quniv/lattice.hpp"

namespace quniv {

enum class LocalRule {
  NonDyadic_P23_1,
  NonDyadic_P23_2,
  Dyadic_Binary_C29,
  Dyadic_Ternary_TwoComp_P214,
  Dyadic_Ternary_Unimod_P215,
  RankOne_Never,
  Oracle,
  Archimedean,
};
std::string rule_name(LocalRule r);

struct LocalVerdict {
  std::string place;
  bool universal = false;
  LocalRule rule = LocalRule::Oracle;
  std::optional<FieldElem> witness;  // an element of O_v outside Q(L_v)
};

enum class OracleMode { Auto, Raw, Blocks };

// Auto enumerates the raw Gram up to this many vectors, then switches to Jordan blocks.
inline constexpr uint64_t kOracleRawPreferred = uint64_t(1) << 12;
// Hard cap on vectors enumerated for a single Gram or block.
inline constexpr uint64_t kOracleBudget = uint64_t(1) << 24;

// Residues Q(x) mod pi^K over all x in L/pi^K L, as a hit table indexed by ResidueRing keys.
std::vector<char> image_mod(const LocalLattice& L, int K, OracleMode mode = OracleMode::Auto);

// a in Q(L_v), decided modulo pi^(ord a + 2e2 + 1).
bool represents_locally(const LocalLattice& L, const FieldElem& a, OracleMode mode = OracleMode::Auto);

struct OracleResult {
  bool universal = false;
  std::optional<FieldElem> witness;
};
// Units and pi-units against the image of Q (the local square theorem bounds the precision).
OracleResult universality_oracle(const LocalLattice& L, OracleMode mode = OracleMode::Auto);

LocalVerdict is_locally_universal_at(const LocalLattice& L, bool oracle_only = false);
LocalVerdict is_locally_universal_at(const QuadLattice& L, const LocalContext& ctx, bool oracle_only = false);

// Real place: indefinite. Complex place: always.
bool archimedean_universal(const QuadLattice& L, const Place& v);

struct LocalOptions {
  bool oracle_only = false;
  std::optional<std::vector<Integer>> places;  // restrict the finite places checked
  int precision = 0;
};

struct LocalReport {
  bool universal = false;
  std::vector<LocalVerdict> verdicts;  // archimedean first, then finite places by p
  // Finite places outside the checked set: L_v is unimodular and non-dyadic there.
  bool generic_universal = false;
  std::string generic_reason;
  bool restricted = false;
};

// Rational primes where L_v may fail to be unimodular, plus 2.
std::vector<Integer> bad_primes(const QuadLattice& L);
LocalReport is_locally_universal(const QuadLattice& L, const LocalOptions& opts = {});

}  // namespace quniv
