#include <doctest.h>

#include <random>
#include <set>

#include "chred/ch_build.hpp"
#include "chred/ch_solve.hpp"
#include "chred/circuit.hpp"
#include "chred/tucker.hpp"

using namespace chred;

namespace {

LabelGrid table_with_pair(int n, std::uint64_t seed, GridPoint& a, GridPoint& b) {
    std::mt19937_64 rng(seed);
    std::vector<int> dims(static_cast<std::size_t>(n), 8);
    std::size_t cells = 1;
    for (int d = 0; d < n; ++d) cells *= 8;
    std::vector<LabelMask> labels(cells);
    LabelMask all = (LabelMask{1} << n) - 1;
    for (auto& l : labels) l = static_cast<LabelMask>(rng() % (all + 1));
    LabelGrid g(dims, labels);
    // Plant an antipodal pair along an orientable step: +1 in the last
    // dimension (tau = +1 there), equal elsewhere.
    a.assign(static_cast<std::size_t>(n), 4);
    b = a;
    b[static_cast<std::size_t>(n - 1)] = 5;
    g.set_label(a, pack_label(std::vector<int>(static_cast<std::size_t>(n), +1)));
    g.set_label(b, pack_label(std::vector<int>(static_cast<std::size_t>(n), -1)));
    return g;
}

struct BuiltFixture {
    LabelGrid table;
    GridPoint a, b;
    CHInstance inst;
    CutSet cuts;

    BuiltFixture(Variant variant, std::uint64_t seed) {
        table = table_with_pair(2, seed, a, b);
        Circuit c = build_lambda_hat(table);
        inst = variant == Variant::Standard ? build_instance(c, Rational(199, 1000))
                                            : build_instance_3block(c, Rational(199, 1000));
        cuts = synthesize(inst, SynthesisPlan{a, b, {}}, &table);
    }
};

CHInstance single_agent_instance(PiecewiseDensity d) {
    CHInstance inst;
    inst.layout = build_layout(1, 1, Variant::Standard);
    inst.epsilon = Rational(199, 1000);
    Agent agent;
    agent.kind = AgentKind::Auxiliary;
    agent.density = std::move(d);
    inst.agents.push_back(std::move(agent));
    return inst;
}

}  // namespace

TEST_CASE("verify: exact discrepancies and failure listing") {
    CHInstance inst = single_agent_instance(PiecewiseDensity({Block(0, 1, 1)}));
    VerificationReport pass = verify(inst, CutSet({Rational(1, 2)}));
    CHECK(pass.pass);
    CHECK(pass.max_discrepancy == Rational(0));
    VerificationReport fail = verify(inst, CutSet{});
    CHECK(!fail.pass);
    CHECK(fail.max_discrepancy == Rational(1));
    CHECK(fail.failing_agents == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(verify(inst, CutSet({Rational(-1)})), std::out_of_range);
}

TEST_CASE("synthesized standard solution verifies exactly and decodes to the plan") {
    BuiltFixture fx(Variant::Standard, 17);
    CHECK(fx.cuts.size() == fx.inst.n());

    VerificationReport rep = verify(fx.inst, fx.cuts);
    CHECK(rep.pass);
    CHECK(rep.max_discrepancy == Rational(0));

    DecodeResult res = decode(fx.inst, fx.cuts);
    CHECK(res.good.size() == static_cast<std::size_t>(fx.inst.layout.K));
    CHECK(res.cuts_in_input_region == 2);
    CHECK(res.phi_pairwise_ok);
    for (int k = 1; k <= fx.inst.layout.K; ++k) CHECK(res.pure[static_cast<std::size_t>(k - 1)]);
    CHECK(verify_strong_solution(fx.table, res.extracted));
    // Extracted points are exactly the plan pair.
    std::set<GridPoint> got(res.extracted.points.begin(), res.extracted.points.end());
    CHECK(got == std::set<GridPoint>{fx.a, fx.b});
    // Copy-region parity bookkeeping: exactly 2m interior cuts per copy.
    for (int k = 1; k <= fx.inst.layout.K; ++k)
        CHECK(cuts_in_copy_region(fx.inst, fx.cuts, k) ==
              2 * static_cast<std::size_t>(fx.inst.layout.m));
}

TEST_CASE("three-block synthesized solution verifies exactly and decodes") {
    BuiltFixture fx(Variant::ThreeBlock, 23);
    VerificationReport rep = verify(fx.inst, fx.cuts);
    CHECK(rep.pass);
    CHECK(rep.max_discrepancy == Rational(0));
    DecodeResult res = decode(fx.inst, fx.cuts);
    CHECK(res.good.size() == static_cast<std::size_t>(fx.inst.layout.K));
    CHECK(verify_strong_solution(fx.table, res.extracted));
    std::set<GridPoint> got(res.extracted.points.begin(), res.extracted.points.end());
    CHECK(got == std::set<GridPoint>{fx.a, fx.b});
}

TEST_CASE("gate reconstruction matches the compiled circuit") {
    GridPoint a, b;
    LabelGrid table = table_with_pair(2, 31, a, b);
    Circuit c = build_lambda_hat(table);
    CHInstance inst = build_instance(c, Rational(199, 1000));
    auto gates = reconstruct_gates(inst);
    REQUIRE(gates.size() == c.gates.size());
    for (std::size_t t = 0; t < gates.size(); ++t) {
        CHECK(gates[t].kind == c.gates[t].kind);
        if (gates[t].kind == GateKind::Nand) {
            bool same = (gates[t].in1 == c.gates[t].in1 && gates[t].in2 == c.gates[t].in2) ||
                        (gates[t].in1 == c.gates[t].in2 && gates[t].in2 == c.gates[t].in1);
            CHECK(same);
        } else {
            CHECK(gates[t].in1 == c.gates[t].in1);
        }
    }
    Circuit norm = normalize_nand_followers(c);
    CHInstance inst3 = build_instance_3block(c, Rational(199, 1000));
    auto gates3 = reconstruct_gates(inst3);
    REQUIRE(gates3.size() == norm.gates.size());
    for (std::size_t t = 0; t < gates3.size(); ++t) {
        CHECK(gates3[t].kind == norm.gates[t].kind);
        if (gates3[t].kind == GateKind::Nand) {
            // Reconstruction reads blocks in position order; NAND is symmetric.
            bool same = (gates3[t].in1 == norm.gates[t].in1 && gates3[t].in2 == norm.gates[t].in2) ||
                        (gates3[t].in1 == norm.gates[t].in2 && gates3[t].in2 == norm.gates[t].in1);
            CHECK(same);
        } else {
            CHECK(gates3[t].in1 == norm.gates[t].in1);
        }
    }
}

TEST_CASE("negative controls: deleted auxiliary cut and perturbed gate cut") {
    BuiltFixture fx(Variant::Standard, 41);
    const Layout& layout = fx.inst.layout;

    // Delete the first auxiliary cut: that auxiliary agent reports exactly 1.
    Rational aux_cut = layout.gate_sub(1, 1, 3).lo + Rational(1, 2);
    std::vector<Rational> reduced;
    for (const auto& q : fx.cuts.cuts())
        if (q != aux_cut) reduced.push_back(q);
    REQUIRE(reduced.size() == fx.cuts.size() - 1);
    VerificationReport rep = verify(fx.inst, CutSet(reduced));
    CHECK(!rep.pass);
    bool found = false;
    for (std::size_t idx = 0; idx < fx.inst.agents.size(); ++idx) {
        const Agent& ag = fx.inst.agents[idx];
        if (ag.kind == AgentKind::Auxiliary && ag.k == 1 && ag.t == 1) {
            CHECK(rep.discrepancies[idx] == Rational(1));
            found = true;
        }
    }
    CHECK(found);

    // Move a handful of gate cuts right by 1/2: some agent exceeds epsilon.
    int moved = 0;
    for (int t = 1; t <= layout.m && moved < 8; t += layout.m / 7, ++moved) {
        Interval strip = layout.gate_strip(2, t);
        std::vector<Rational> mutated;
        bool done = false;
        for (const auto& q : fx.cuts.cuts()) {
            if (!done && strip.lo < q && q < strip.hi) {
                mutated.push_back(q + Rational(1, 2));
                done = true;
            } else {
                mutated.push_back(q);
            }
        }
        REQUIRE(done);
        std::sort(mutated.begin(), mutated.end());
        CHECK(!verify(fx.inst, CutSet(mutated)).pass);
    }
}

TEST_CASE("forced split indices and stray-cut decoding") {
    GridPoint a, b;
    LabelGrid table = table_with_pair(2, 71, a, b);
    Circuit c = build_lambda_hat(table);
    CHInstance inst = build_instance(c, Rational(199, 1000));
    const int K = inst.layout.K;

    // Explicit balanced split indices, as in the default.
    CutSet cuts = synthesize(inst, SynthesisPlan{a, b, {K / 2 + 1, K / 2 + 1}}, &table);
    CHECK(verify(inst, cuts).pass);
    CHECK_THROWS(synthesize(inst, SynthesisPlan{a, b, {K / 2 + 1}}, &table));
    CHECK_THROWS(synthesize(inst, SynthesisPlan{a, b, {0, K / 2 + 1}}, &table));

    // A stray cut inside one copy's input interval spoils exactly that copy.
    std::vector<Rational> strayed = cuts.cuts();
    strayed.push_back(inst.layout.input_interval(1, 1, 3).lo + Rational(1, 3));
    std::sort(strayed.begin(), strayed.end());
    CutSet bad(strayed);
    CHECK(!verify(inst, bad).cuts_ok);  // budget exceeded
    DecodeResult res = decode(inst, bad);
    CHECK(!res.pure[2]);
    CHECK(res.good.size() == static_cast<std::size_t>(K - 1));
    for (int k : res.good) CHECK(k != 3);
    // The remaining good copies still cover; extraction survives.
    CHECK(verify_strong_solution(table, res.extracted));
}

TEST_CASE("unanimous decoding violates the feedback agents") {
    GridPoint a, b;
    LabelGrid table = table_with_pair(2, 57, a, b);
    Circuit c = build_lambda_hat(table);
    CHInstance inst = build_instance(c, Rational(199, 1000));
    // A degenerate plan decoding the same point in every copy leaves feedback
    // dimension 1 at discrepancy 1; the synthesizer surfaces it.
    SynthesisPlan plan{a, a, {}};
    CHECK_THROWS_WITH(synthesize(inst, plan, nullptr), "plan unbalanced in dimension 1");
}

TEST_CASE("solve_tiny: closed forms and verifier agreement") {
    Interval unit(Rational(0), Rational(1));
    auto one = solve_tiny({PiecewiseDensity({Block(0, 1, 1)})}, Rational(0), 1, unit);
    REQUIRE(one);
    CHECK(one->cuts() == std::vector<Rational>{Rational(1, 2)});

    // Auxiliary-style agent inside a longer ambient: cut at the block midpoint.
    Interval ambient(Rational(0), Rational(4));
    auto aux = solve_tiny({PiecewiseDensity({Block(2, 3, 1)})}, Rational(0), 1, ambient);
    REQUIRE(aux);
    CHECK(aux->cuts() == std::vector<Rational>{Rational(5, 2)});

    // Two agents, two cuts, epsilon 0: returned solution verifies exactly.
    std::vector<PiecewiseDensity> agents{PiecewiseDensity({Block(0, 1, 1)}),
                                         PiecewiseDensity({Block(0, Rational(1, 2), 2)})};
    auto two = solve_tiny(agents, Rational(0), 2, unit);
    REQUIRE(two);
    for (const auto& d : agents) CHECK(signed_value(d, *two).abs() == Rational(0));

    // Infeasible: one cut cannot balance two disjoint unit blocks plus parity.
    auto none = solve_tiny({PiecewiseDensity({Block(0, 1, Rational(1, 2)), Block(1, 2, Rational(1, 2))})},
                           Rational(0), 0, Interval(Rational(0), Rational(2)));
    CHECK(!none);
    CHECK_THROWS(solve_tiny({}, Rational(0), 4, unit));
}

TEST_CASE("solve_tiny agrees with verify on random tiny instances") {
    std::mt19937_64 rng(2024);
    Interval ambient(Rational(0), Rational(8));
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<PiecewiseDensity> agents;
        int n_agents = 1 + static_cast<int>(rng() % 2);
        for (int a = 0; a < n_agents; ++a) {
            std::vector<Block> blocks;
            long cursor = static_cast<long>(rng() % 2);
            int nb = 1 + static_cast<int>(rng() % 2);
            for (int b = 0; b < nb; ++b) {
                long len = 1 + static_cast<long>(rng() % 2);
                blocks.emplace_back(Rational(cursor), Rational(cursor + len),
                                    Rational(static_cast<long>(1 + rng() % 3)));
                cursor += len + static_cast<long>(rng() % 2);
            }
            agents.emplace_back(std::move(blocks));
        }
        Rational eps(1 + static_cast<long>(rng() % 50), 100);
        auto got = solve_tiny(agents, eps, n_agents, ambient);
        if (got) {
            CHECK(got->size() <= static_cast<std::size_t>(n_agents));
            for (const auto& d : agents) CHECK(signed_value(d, *got).abs() <= eps);
        }
    }
}
