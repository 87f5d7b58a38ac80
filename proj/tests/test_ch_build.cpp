#include <doctest.h>

#include "chred/ch_build.hpp"
#include "chred/circuit.hpp"
#include "chred/measure.hpp"
#include "gadget_env.hpp"

using namespace chred;
using namespace chred::testenv;

namespace {

// Ten-gate, two-output circuit used for the counting examples.
Circuit ten_gate_circuit() {
    CircuitBuilder b(2);
    WireRef w1 = b.not_(b.input(1, 1));            // 1
    WireRef w2 = b.nand_(w1, b.input(2, 3));       // 2
    WireRef w3 = b.nand_(b.input(1, 2), w2);       // 3
    WireRef w4 = b.not_(w3);                       // 4
    WireRef w5 = b.nand_(w4, w1);                  // 5
    WireRef w6 = b.not_(w5);                       // 6
    return b.finish_with_outputs({w6, w2});        // + 4 repositioning NOTs = 10
}

}  // namespace

TEST_CASE("layout constants match the region arithmetic") {
    Layout layout = build_layout(2, 10, Variant::Standard);
    CHECK(layout.len_I() == 168);  // 21 N^3
    CHECK(layout.len_C() == 240);  // 12 m N
    CHECK(layout.L() == 408);
    CHECK(layout.input_interval(1, 1, 1) == Interval(Rational(0), Rational(1)));
    CHECK(layout.gate_sub(1, 1, 0).lo == Rational(168));
    CHECK(layout.gate_sub(1, 1, 3).hi == Rational(172));
    CHECK_THROWS(build_layout(2, 1, Variant::Standard));  // m < N

    Layout three = build_layout(2, 10, Variant::ThreeBlock);
    CHECK(three.K == 40);
    CHECK(three.len_I() == 1120);
    CHECK(three.len_O() == 240);
    CHECK(three.o_gadget(1, 1).lo == Rational(1120));
    CHECK(three.c_copy_lo(1) == 1360);
}

TEST_CASE("auxiliary agent forces a cut in its interval") {
    Layout layout = build_layout(1, 1, Variant::Standard);
    Agent aux = build_auxiliary_agent(layout, 1, 1);
    CHECK(total_mass(aux.density) == Rational(1));
    Rational lo = layout.gate_sub(1, 1, 3).lo;
    CHECK(signed_value(aux.density, CutSet{}).abs() == Rational(1));
    CHECK(signed_value(aux.density, CutSet({lo + Rational(1, 2)})).abs() == Rational(0));
    CHECK(signed_value(aux.density, CutSet({lo + Rational(2, 5)})).abs() == Rational(1, 5));
}

TEST_CASE("NOT gadget: forced cut, correctness, balancing offset") {
    GadgetEnv env = make_not_env();
    CHECK(total_mass(env.agent) == Rational(1));
    // No cut in the strip: discrepancy at least 1/3, with 1/3 attained.
    Rational min_nocut(2);
    for (int a : {-1, +1})
        for (int sigma : {-1, +1}) {
            auto cuts = configure(env, {a}, sigma, std::nullopt);
            REQUIRE(cuts);
            Rational d = signed_value(env.agent, *cuts).abs();
            CHECK(d >= Rational(1, 3));
            if (d < min_nocut) min_nocut = d;
        }
    CHECK(min_nocut == Rational(1, 3));
    // Input +1, entering sign +, cut in l at offset 1/2: discrepancy 0, output -1.
    auto cuts = configure(env, {+1}, +1, Rational(1, 2));
    REQUIRE(cuts);
    CHECK(signed_value(env.agent, *cuts).abs() == Rational(0));
    CHECK(interval_value(env.out_c, *cuts) == Rational(-1));
    // Any single interior cut with discrepancy within epsilon forces NOT.
    Rational eps(199, 1000);
    for (int a : {-1, +1})
        for (int sigma : {-1, +1})
            for (long num = 0; num <= 24; ++num) {
                auto sweep = configure(env, {a}, sigma, Rational(num, 8));
                REQUIRE(sweep);
                if (signed_value(env.agent, *sweep).abs() <= eps) {
                    CHECK(cuts_in_interior(env.strip, *sweep) == 1);
                    CHECK(interval_value(env.out_c, *sweep) == Rational(-a));
                }
            }
}

TEST_CASE("NAND gadget: truth table under both entering signs, balancing offsets") {
    GadgetEnv env = make_nand_env();
    CHECK(total_mass(env.agent) == Rational(1));
    Rational min_nocut(2);
    for (int a1 : {-1, +1})
        for (int a2 : {-1, +1})
            for (int sigma : {-1, +1}) {
                auto nocut = configure(env, {a1, a2}, sigma, std::nullopt);
                REQUIRE(nocut);
                Rational d = signed_value(env.agent, *nocut).abs();
                CHECK(d >= Rational(1, 5));
                if (d < min_nocut) min_nocut = d;
            }
    CHECK(min_nocut == Rational(1, 5));
    // Spec balancing offsets under entering sign +: (+,+) -> l at 1/2,
    // mixed -> r at 1/4, (-,-) -> r at 3/4.
    auto check_zero = [&](int a1, int a2, Rational offset, int out) {
        auto cuts = configure(env, {a1, a2}, +1, offset);
        REQUIRE(cuts);
        CHECK(signed_value(env.agent, *cuts).abs() == Rational(0));
        CHECK(interval_value(env.out_c, *cuts) == Rational(out));
    };
    check_zero(+1, +1, Rational(1, 2), -1);
    check_zero(-1, +1, Rational(2) + Rational(1, 4), +1);
    check_zero(-1, -1, Rational(2) + Rational(3, 4), +1);
}

TEST_CASE("standard instance: agent count, masses, input-reading gates") {
    Circuit c = ten_gate_circuit();
    REQUIRE(c.gate_count() == 10);
    CHInstance inst = build_instance(c, Rational(199, 1000));
    CHECK(inst.n() == 122);  // 6Nm + N with N=2, m=10
    CHECK(inst.n() == expected_agent_count(inst.layout));
    for (const auto& agent : inst.agents) CHECK(total_mass(agent.density) == Rational(1));
    // Gate 1 is a NOT reading input (1,1): one block sits on I^k_{1,1}.
    const Agent& g1 = inst.agents[0];
    REQUIRE(g1.kind == AgentKind::NotGate);
    bool reads_input = false;
    for (const auto& b : g1.density.blocks())
        reads_input |= b.interval == inst.layout.input_interval(1, 1, 1);
    CHECK(reads_input);
    CHECK_THROWS_WITH(build_instance(c, Rational(1, 5)), "epsilon out of range");
    CHECK_THROWS_WITH(build_instance(c, Rational(1, 4)), "epsilon out of range");
}

TEST_CASE("three-block instance: every agent has <= 3 equal-height blocks of mass 1") {
    Circuit c = ten_gate_circuit();
    CHInstance inst = build_instance_3block(c, Rational(199, 1000));
    CHECK(inst.n() == expected_agent_count(inst.layout));
    CHECK(inst.layout.K == 40);
    for (const auto& agent : inst.agents) {
        CHECK(total_mass(agent.density) == Rational(1));
        REQUIRE(agent.density.block_count() <= 3);
        const auto& blocks = agent.density.blocks();
        for (const auto& b : blocks) CHECK(b.height == blocks[0].height);
    }
    CHECK(three_block_delta(Rational(199, 1000)) == Rational(1, 2000));
}

TEST_CASE("feedback agent discrepancy tracks the output-label imbalance") {
    Layout layout = build_layout(2, 10, Variant::Standard);
    Agent gamma = build_feedback_agent(layout, 1);
    CHECK(total_mass(gamma.density) == Rational(1));
    CHECK(gamma.density.block_count() == 6);  // one block per copy
    // Flip the output center of selected copies to -1 by bracketing it with
    // two cuts; everything else stays at +1.
    auto with_negatives = [&](std::initializer_list<int> copies) {
        std::vector<Rational> cs;
        for (int k : copies) {
            Interval c = layout.gate_sub(k, layout.m - layout.N + 1, 1);
            cs.push_back(c.lo);
            cs.push_back(c.hi);
        }
        std::sort(cs.begin(), cs.end());
        return CutSet(cs);
    };
    CHECK(signed_value(gamma.density, with_negatives({})).abs() == Rational(1));
    CHECK(signed_value(gamma.density, with_negatives({1, 2, 3})).abs() == Rational(0));
    CHECK(signed_value(gamma.density, with_negatives({1, 2})).abs() == Rational(1, 3));
}

TEST_CASE("scale to unit interval preserves masses and signed values") {
    Circuit c = ten_gate_circuit();
    CHInstance inst = build_instance(c, Rational(199, 1000));
    CHInstance scaled = scale_to_unit(inst);
    CHECK(scaled.unit_scaled);
    Rational L(inst.layout.L());
    for (const auto& agent : scaled.agents) CHECK(total_mass(agent.density) == Rational(1));
    // Signed values agree when cut positions are scaled along.
    std::vector<Rational> raw{Rational(1, 2), Rational(170), Rational(350, 1)};
    std::vector<Rational> shrunk;
    for (const auto& q : raw) shrunk.push_back(q / L);
    CutSet big(raw), small(shrunk);
    for (std::size_t a = 0; a < inst.agents.size(); ++a)
        CHECK(signed_value(inst.agents[a].density, big) ==
              signed_value(scaled.agents[a].density, small));
}
