#ifndef MULTSPEC_ROOTFIND_HPP
#define MULTSPEC_ROOTFIND_HPP

#include "place.hpp"

namespace multspec {

// Newton's method N_f(z) = z - f/f' = (z f' - f)/f' as a validated map; every
// simple root of f is a superattracting fixed point
RationalMap newton_map(const Poly& f, const Budget& budget = default_budget());

struct FixedPointSum {
    enum class Status { HoldsExactly, MultiplierOne, Value };
    Status status;
    std::optional<FieldElement> value; // sum, when fixed points are distinct
};

// sum over fixed points of 1/(1 - lambda_i), evaluated exactly as
// M_1'(1)/M_1(1); MultiplierOne when M_1(1) = 0
FixedPointSum fixed_point_sum_check(const RationalMap& m,
                                    const Budget& budget = default_budget());

struct ObstructionReport {
    bool obstructed;
    // residue-count gate: a generally convergent algorithm would force
    // r = 1 mod m, i.e. p | r - 1; applies when p = 0 or p >= r
    bool residue_branch_applies;
    bool residue_obstructed;
    std::string residue_detail;
    // isospectral-collapse gate: p > d
    bool collapse_obstructed;
    std::string collapse_detail;
    // the dynamical premise (attracting points at the roots) is recorded as a
    // hypothesis; only the arithmetic consequence is checked here
    std::string hypothesis;
};

ObstructionReport residue_obstruction(int64_t r, int64_t p, int64_t d);

struct ProbeStep {
    bool determined;
    int64_t v;
};

struct SeedTrajectory {
    int64_t seed_valuation;
    std::vector<ProbeStep> steps; // v(z_0), v(z_1), ...
    enum class Verdict { NoConvergenceToSinks, ConvergesToZero, ConvergesToInfinity,
                         Indeterminate, Inconclusive } verdict;
};

// track valuations along the orbit, each step forced by the ultrametric
// inequality (unique minimal term) or reported Indeterminate
std::vector<SeedTrajectory> convergence_probe(const RationalMap& m, const Place& v,
                                              const std::vector<int64_t>& seeds, int iters);

} // namespace multspec

#endif
