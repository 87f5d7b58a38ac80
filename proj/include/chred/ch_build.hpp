#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chred/circuit.hpp"
#include "chred/measure.hpp"

namespace chred {

enum class Variant { Standard, ThreeBlock };

// Integer coordinates of every named unit interval in the construction.
// Region order: input region I, then (3-block) output region O, then circuit
// region C. Within I: dimension-major, then column, then copy. Within C:
// copy-major, then gate, then left/center/right/auxiliary.
struct Layout {
    Variant variant = Variant::Standard;
    int N = 0;
    int m = 0;  // gate count of the compiled circuit
    int K = 0;  // circuit copies: 3N standard, 20N three-block

    long long len_I() const { return 7LL * N * N * K; }
    long long len_O() const { return variant == Variant::ThreeBlock ? 3LL * N * K : 0; }
    long long len_C() const { return 4LL * m * K; }
    long long L() const { return len_I() + len_O() + len_C(); }

    long long input_lo(int i, int j, int k) const {
        return (static_cast<long long>(i - 1) * 7 * N + (j - 1)) * K + (k - 1);
    }
    long long o_gadget_lo(int i, int k) const {
        return len_I() + (static_cast<long long>(i - 1) * K + (k - 1)) * 3;
    }
    long long c_copy_lo(int k) const { return len_I() + len_O() + static_cast<long long>(k - 1) * 4 * m; }
    long long gate_lo(int k, int t) const { return c_copy_lo(k) + static_cast<long long>(t - 1) * 4; }

    Interval input_interval(int i, int j, int k) const { return unit(input_lo(i, j, k)); }
    Interval gate_sub(int k, int t, int which) const { return unit(gate_lo(k, t) + which); }  // 0=l,1=c,2=r,3=a
    Interval gate_span(int k, int t) const;   // l u c u r u a, length 4
    Interval gate_strip(int k, int t) const;  // l u c u r, length 3
    Interval o_sub(int i, int k, int which) const { return unit(o_gadget_lo(i, k) + which); }
    Interval o_gadget(int i, int k) const;  // length 3
    Interval o_dim(int i) const;            // O_i, length 3K
    Interval copy_region(int k) const;      // C^k, length 4m
    Interval ambient() const { return Interval(Rational(0), Rational(L())); }

private:
    static Interval unit(long long lo) { return Interval(Rational(static_cast<long>(lo)), Rational(static_cast<long>(lo + 1))); }
};

Layout build_layout(int N, int m, Variant variant);

enum class AgentKind { Auxiliary, NotGate, NandGate, Feedback, NotFollower, OutputCopy };

std::string agent_kind_name(AgentKind k);

struct Agent {
    AgentKind kind = AgentKind::Auxiliary;
    int k = 0;  // copy index, 0 when not applicable
    int t = 0;  // gate index, 0 when not applicable
    int i = 0;  // dimension index (feedback / output copy)
    PiecewiseDensity density;
};

struct CHInstance {
    Variant variant = Variant::Standard;
    Rational epsilon;
    Layout layout;
    std::vector<Agent> agents;
    bool unit_scaled = false;  // true after scale_to_unit

    std::size_t n() const { return agents.size(); }
    Interval ambient() const {
        return unit_scaled ? Interval(Rational(0), Rational(1)) : layout.ambient();
    }
};

// --- Agent builders (exposed for gadget-level tests) -------------------------

Agent build_auxiliary_agent(const Layout& layout, int k, int t);
Agent build_not_agent(const Layout& layout, int k, int t, WireRef source);
Agent build_nand_agent(const Layout& layout, int k, int t, WireRef s1, WireRef s2);
Agent build_feedback_agent(const Layout& layout, int i);

Agent build_nand_agent_3block(const Layout& layout, int k, int t, WireRef s1, WireRef s2);
Agent build_not_follower_agent(const Layout& layout, int k, int t, int nand_t, const Rational& delta);
Agent build_output_copy_agent(const Layout& layout, int i, int k);
Agent build_feedback_agent_3block(const Layout& layout, int i);

// J_t: the length-delta interval centered at the l/c boundary of gate t,
// where three-block NAND gates store their output.
Interval j_interval(const Layout& layout, int k, int t, const Rational& delta);

Rational three_block_delta(const Rational& epsilon);  // (1/5 - eps)/2

// --- Instance builders --------------------------------------------------------

// Standard construction: 3N copies, n = 6Nm + N agents, every agent mass 1.
// Throws "epsilon out of range" unless 0 <= eps < 1/5.
CHInstance build_instance(const Circuit& lambda_hat, const Rational& epsilon);

// Three-block-uniform construction: 20N copies; the circuit is first
// normalized so NAND outputs feed only NOT gates. Every agent has at most 3
// maximal blocks of one common height.
CHInstance build_instance_3block(const Circuit& lambda_hat, const Rational& epsilon);

// Rescales the construction onto [0,1]: positions divide by L, heights
// multiply by L; agent masses and all signed values are unchanged.
CHInstance scale_to_unit(const CHInstance& inst);

// Expected agent counts, used by tests and validation.
std::size_t expected_agent_count(const Layout& layout);

}  // namespace chred
