#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chred/ch_build.hpp"
#include "chred/circuit.hpp"
#include "chred/measure.hpp"
#include "chred/tucker.hpp"

namespace chred {

struct VerificationReport {
    std::vector<Rational> discrepancies;  // per agent, |v(R+) - v(R-)|
    Rational max_discrepancy;
    std::vector<std::size_t> failing_agents;
    std::size_t cut_count = 0;
    std::size_t max_cuts = 0;  // n = number of agents
    bool cuts_ok = false;
    bool pass = false;
};

// Exact per-agent discrepancies; pass iff every discrepancy <= epsilon and at
// most n cuts are used. Failures are report content, not errors.
VerificationReport verify(const CHInstance& inst, const CutSet& cuts);

// Target pair for the gate-local solution synthesizer. Copies below the
// per-dimension split index decode coordinate i of one point, the rest the
// other; k0 values may be omitted (balanced defaults are chosen).
struct SynthesisPlan {
    GridPoint a;
    GridPoint b;
    std::vector<int> k0;  // optional, one entry per dimension, each in [1, K+1]
};

// Places exactly n cuts: N input-region cuts at shared unit-interval
// endpoints, one balancing cut per gate strip, one cut per auxiliary interval
// (and per output gadget in the three-block variant). Gate, auxiliary, and
// feedback discrepancies of the result are exactly zero for balanced plans.
// Throws "plan not found" when the pair cannot be realized and reports the
// violating dimension when a plan leaves a feedback agent unbalanced.
CutSet synthesize(const CHInstance& inst, const SynthesisPlan& plan,
                  const LabelGrid* lambda = nullptr);

struct DecodeResult {
    // x[k-1] holds val(I^k_{i,j}) row-major; entries in [-1,1].
    std::vector<std::vector<Rational>> x;
    std::vector<bool> pure;               // per copy: all inputs in {-1,+1}
    std::vector<int> good;                // G, 1-based copy indices
    std::vector<std::vector<int>> phi_of; // per copy; empty unless pure
    std::vector<std::vector<Rational>> y; // per copy outputs
    std::size_t cuts_in_input_region = 0;
    bool phi_pairwise_ok = true;          // max |phi(x^k1)-phi(x^k2)|_inf <= 1 over good copies
    StrongSolution extracted;             // <= N points
};

// Implements the solution decoder: input bits from the input region, the
// good-copy set G, per-copy outputs (from output-gate centers, or negated
// output-region reads in the three-block variant), and the extracted
// StrongTucker solution. Throws "no cover extracted" when good copies fail to
// cover all labels — void unless verify(inst, cuts) passes.
DecodeResult decode(const CHInstance& inst, const CutSet& cuts);

// Gate structure recovered from the instance's copy-1 gate agents; order and
// sources match the circuit the instance was built from.
std::vector<Gate> reconstruct_gates(const CHInstance& inst);

// Cuts strictly inside copy region C^k (per-copy parity bookkeeping).
std::size_t cuts_in_copy_region(const CHInstance& inst, const CutSet& cuts, int k);

// Brute-force oracle for tiny instances: <= 3 agents, <= 24 blocks,
// <= 3 cuts. Enumerates breakpoint cells; within a cell every discrepancy is
// affine in the cut positions and feasibility is decided exactly by
// Fourier-Motzkin elimination. Returns a solution or nullopt.
std::optional<CutSet> solve_tiny(const std::vector<PiecewiseDensity>& agents,
                                 const Rational& epsilon, std::size_t max_cuts,
                                 const Interval& ambient);

}  // namespace chred
