#pragma once

#include "hms/errors.hpp"
#include "hms/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hms::ainf {

/// Basis element of a hom space: (source object, target object, basis index).
struct Elem {
    int src = -1, tgt = -1, idx = -1;
    auto operator<=>(const Elem&) const = default;
};

/// Formal sum over F2: a sorted set of basis elements.
using Sum = std::vector<Elem>;

Sum sum_add(Sum a, const Sum& b);  // symmetric difference
Sum normalize(Sum a);

/// A finite A-infinity category presented by sparse multilinear tables over
/// F2. Table keys list the inputs left to right, so key.back() is the first
/// morphism to compose.
struct FiniteAInfCategory {
    std::vector<std::string> objects;
    std::map<std::pair<int, int>, std::vector<std::pair<std::string, int>>> homs;
    std::map<int, std::map<std::vector<Elem>, Sum>> mu;
    int max_arity = 0;

    int hom_dim(int s, int t) const;
    int degree(const Elem& e) const;
    std::vector<Elem> hom_elems(int s, int t) const;

    /// Registers one table entry, validating composability and the degree
    /// rule |out| = sum |in| + (2 - k) mod 2.
    void set_mu(int k, std::vector<Elem> key, Sum value);

    Sum apply_mu_elems(int k, const std::vector<Elem>& args) const;
    Sum apply_mu(int k, const std::vector<Sum>& args) const;

    /// All composable chains (a_k .. a_1) of basis elements.
    std::vector<std::vector<Elem>> composable(int k) const;

    void validate() const;
};

struct Violation {
    int arity = 0;
    std::vector<Elem> inputs;
    Sum value;  // the nonzero defect
};

/// Evaluates every associativity identity up to the arity bound; an empty
/// report is a pass.
std::vector<Violation> check_ainf(const FiniteAInfCategory& cat, int up_to);

struct AInfFunctor {
    const FiniteAInfCategory* source = nullptr;
    const FiniteAInfCategory* target = nullptr;
    std::vector<int> object_map;
    std::map<int, std::map<std::vector<Elem>, Sum>> terms;  // r >= 1

    void set_term(int r, std::vector<Elem> key, Sum value);
    Sum apply_elems(int r, const std::vector<Elem>& args) const;
    Sum apply(int r, const std::vector<Sum>& args) const;
    bool is_linear() const;
};

/// The identity functor of a category.
AInfFunctor identity_functor(const FiniteAInfCategory& cat);

/// Composition G after F, with the usual tree sum, up to the arity bound.
AInfFunctor compose(const AInfFunctor& G, const AInfFunctor& F, int up_to);

/// Termwise sum (difference over F2) of two functors with equal object maps,
/// as a degree-1 pre-natural transformation candidate.
std::vector<Violation> check_functor(const AInfFunctor& F, int up_to);

struct PreNaturalTransformation {
    const AInfFunctor* F = nullptr;
    const AInfFunctor* G = nullptr;
    int degree = 0;
    std::map<int, Sum> t0;                                  // per object, may be empty
    std::map<int, std::map<std::vector<Elem>, Sum>> terms;  // r >= 1

    Sum apply_elems(int r, const std::vector<Elem>& args) const;
};

/// The fun-category differential of a pre-natural transformation, evaluated
/// termwise up to the arity bound.
PreNaturalTransformation mu1_fun(const PreNaturalTransformation& T, int up_to);

/// F - G as a pre-natural transformation (degree 1, T0 = 0).
PreNaturalTransformation functor_difference(const AInfFunctor& F, const AInfFunctor& G,
                                            int up_to);

/// The limit category of a functor E: C -> D: objects of C, homs
/// Hom_C (+) Hom_D[1], structure maps twisted by E. Tables are built up to
/// the arity bound.
FiniteAInfCategory limit_category(const AInfFunctor& E, int up_to);

/// Degreewise-linear surjective functor data for the kernel construction.
struct LinearFunctorData {
    const FiniteAInfCategory* source = nullptr;
    const FiniteAInfCategory* target = nullptr;
    std::vector<int> object_map;
    std::map<Elem, Sum> images;  // linear term on basis elements
};

/// Subcategory on the kernel of a surjective linear map, with the restricted
/// structure maps expressed in the kernel basis.
FiniteAInfCategory kernel_category(const FiniteAInfCategory& A, const LinearFunctorData& rho,
                                   int up_to);

/// Convenience overload; throws NotLinear when the functor has higher terms.
FiniteAInfCategory kernel_category(const FiniteAInfCategory& A, const AInfFunctor& rho,
                                   int up_to);

/// Cohomology dimensions (even, odd) of a hom complex under mu^1.
std::pair<std::size_t, std::size_t> hom_cohomology(const FiniteAInfCategory& cat, int s, int t);

/// Hochschild chain: letters in composition order, the last one
/// distinguished. letters[i]: X_i -> X_(i+1), letters.back(): X_(d-1) -> X_0.
struct CyclicChain {
    std::vector<Elem> letters;
    auto operator<=>(const CyclicChain&) const = default;
};

/// The bar-type Hochschild differential over F2.
std::vector<CyclicChain> hochschild_b(const FiniteAInfCategory& cat, const CyclicChain& chain);

/// Transported functor between the limits of two homotopic functors.
/// Requires (Etilde . Q) - E = mu1_fun(T) up to the arity bound and T0 = 0.
AInfFunctor transport_functor(const AInfFunctor& E, const AInfFunctor& Etilde,
                              const AInfFunctor& Q, const PreNaturalTransformation& T,
                              const FiniteAInfCategory& LE, const FiniteAInfCategory& LEt,
                              int up_to);

}  // namespace hms::ainf
