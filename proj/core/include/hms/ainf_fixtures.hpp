#pragma once

#include "hms/ainf.hpp"

#include <cstdint>
#include <memory>
#include <random>

namespace hms::ainf {

/// Quiver with Z2-graded arrows; an arrow may carry a differential onto a
/// closed arrow with the same endpoints and opposite parity.
struct DgQuiver {
    struct Arrow {
        int src = 0, tgt = 0;
        int parity = 0;
        int dto = -1;  // index of the differential's value, or -1
    };
    int nobj = 1;
    std::vector<Arrow> arrows;
};

DgQuiver random_dg_quiver(std::mt19937_64& rng, int max_obj, int max_arrows);

/// Path category of a dg quiver, truncated at paths of length max_len:
/// mu^1 is the letterwise derivation, mu^2 truncated concatenation.
FiniteAInfCategory dg_path_category(const DgQuiver& q, int max_len);

using HomotopyTables = std::map<int, std::map<std::vector<Elem>, Sum>>;

/// Random degree-0 homotopy term tables against a base functor.
HomotopyTables random_homotopy_tables(const AInfFunctor& F, std::mt19937_64& rng, int up_to);

/// Random pre-natural transformation of the given degree between two
/// parallel functors, including a nonzero zeroth term where possible.
PreNaturalTransformation random_prenatural(const AInfFunctor& F, const AInfFunctor& G,
                                           std::mt19937_64& rng, int degree, int up_to);

/// Builds G with G - F = mu1_fun(T) order by order; the gauge transform of a
/// functor along a homotopy with vanishing zeroth term is again a functor.
AInfFunctor gauge_twist(const AInfFunctor& F, AInfFunctor& G_storage,
                        const HomotopyTables& t_tables, int up_to);

/// Functor fixture: a dg category with a gauge-twisted endofunctor carrying
/// higher-order terms.
struct GaugeFixture {
    FiniteAInfCategory cat;
    AInfFunctor base;     // the identity
    AInfFunctor twisted;  // gauge twist of the identity
    HomotopyTables tables;
};
std::unique_ptr<GaugeFixture> random_gauge_fixture(std::uint64_t seed, int up_to);

/// Two path categories surjecting strictly onto a common quotient, the
/// hom-wise pair category, and the difference map whose kernel glues them.
struct QuotientFixture {
    FiniteAInfCategory a1, a2, b, pair;
    LinearFunctorData rho;  // pair -> b, difference of the two quotients
    AInfFunctor rho_functor_data;  // linear tables only, for the limit side
};
std::unique_ptr<QuotientFixture> random_quotient_fixture(std::uint64_t seed);

/// Transport fixture: E and its gauge twist along T, with Q the identity.
struct TransportFixture {
    FiniteAInfCategory cat;
    AInfFunctor q;       // identity
    AInfFunctor e;       // gauge-twisted identity
    AInfFunctor e_tilde; // gauge twist of e along T
    HomotopyTables tables;
    PreNaturalTransformation t;  // between e and e_tilde
};
std::unique_ptr<TransportFixture> random_transport_fixture(std::uint64_t seed, int up_to);

/// Hom-wise product of two categories on the same object set.
FiniteAInfCategory pair_category(const FiniteAInfCategory& a1, const FiniteAInfCategory& a2);

}  // namespace hms::ainf
