#ifndef MULTSPEC_EXPERIMENT_HPP
#define MULTSPEC_EXPERIMENT_HPP

#include <json.hpp>

#include "family.hpp"

namespace multspec {

using Json = nlohmann::ordered_json;

// Census of all degree-2 maps over GF(q): bucket by (Lambda_1, Lambda_2),
// partition buckets into PGL2(GF(q^j))-conjugacy classes for j <= 2, list
// buckets that stay split as exceptions, and fit the single affine-linear
// relation satisfied by the sigma-vectors.
Json milnor_census(int64_t q, const Budget& budget = default_budget());

// Specializations of z^p + t z^{2p} + z at every valid t in GF(q): all share
// their spectra for n <= 2 yet fall into several conjugacy classes.
Json counterexample_census(int64_t q, int64_t p, const Budget& budget = default_budget());

// Sample random degree-2 maps over GF(q) and fit the affine-linear relations
// among their (sigma_1, sigma_2, sigma_3); the fit is solved, not assumed.
Json plane_relation_fit(int64_t q, int samples, uint64_t seed,
                        const Budget& budget = default_budget());

Json run_experiment(const std::string& name, const Json& params,
                    const Budget& budget = default_budget());

} // namespace multspec

#endif
