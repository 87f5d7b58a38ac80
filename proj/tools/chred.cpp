// Command-line front end for the consensus-halving reduction workbench:
// instance generation, snake folding, instance construction, solution
// synthesis, verification, decoding, and the end-to-end roundtrip.
//
// Exit codes: 0 success, 2 verification/stage failure, 3 input format error,
// 4 parameter out of range.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "chred/ch_build.hpp"
#include "chred/ch_solve.hpp"
#include "chred/json_io.hpp"
#include "chred/snake.hpp"
#include "chred/tucker.hpp"

namespace {

using namespace chred;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerifyFail = 2;
constexpr int kFormatError = 3;
constexpr int kParamError = 4;

struct Options {
    std::string in_path, out_path, pipeline_path, lambda_path, inst_path, cuts_path, plan_path;
    std::string circuit_out;
    std::string epsilon = "199/1000";
    std::string variant = "standard";
    std::string dims;
    int m = 0;
    std::uint64_t seed = 1;
    bool json_report = false;
};

Variant parse_variant(const std::string& v) {
    if (v == "standard") return Variant::Standard;
    if (v == "3block") return Variant::ThreeBlock;
    throw std::invalid_argument("variant must be 'standard' or '3block'");
}

Rational parse_epsilon(const std::string& s) {
    Rational eps = Rational::parse(s);
    if (eps.sign() < 0 || !(eps < Rational(1, 5)))
        throw std::out_of_range("epsilon out of range: need 0 <= epsilon < 1/5");
    return eps;
}

void emit(const Options& opt, const json& report, const std::string& text) {
    if (opt.json_report)
        std::cout << report.dump(1, ' ') << "\n";
    else
        std::cout << text;
}

int cmd_tucker_gen(const Options& opt) {
    if (!opt.dims.empty()) {
        std::vector<int> dims;
        std::stringstream ss(opt.dims);
        std::string tok;
        while (std::getline(ss, tok, ',')) dims.push_back(std::stoi(tok));
        for (int w : dims)
            if (w < 2 || w > 64) throw std::out_of_range("dims entries must lie in [2,64]");
        LabelGrid g = random_antipodal_instance(dims, opt.seed);
        io::save_json_file(opt.out_path, io::label_grid_to_json(g));
        emit(opt, json{{"dims", dims}, {"seed", opt.seed}, {"out", opt.out_path}},
             "wrote antipodal instance to " + opt.out_path + "\n");
        return kOk;
    }
    if (opt.m < 4 || opt.m > 64 || opt.m % 2 != 0)
        throw std::out_of_range("m must be even and in [4,64]");
    Tucker2D t = random_tucker2d(opt.m, opt.seed);
    io::save_json_file(opt.out_path, io::tucker2d_to_json(t));
    emit(opt, json{{"m", opt.m}, {"seed", opt.seed}, {"out", opt.out_path}},
         "wrote 2D-Tucker instance to " + opt.out_path + "\n");
    return kOk;
}

int cmd_fold(const Options& opt) {
    Tucker2D t = io::tucker2d_from_json(io::load_json_file(opt.in_path));
    if (auto rep = check_antipodality(t); !rep.ok) {
        std::cerr << "input is not antipodal at (" << rep.witness[0] << "," << rep.witness[1] << ")\n";
        return kVerifyFail;
    }
    Pipeline pipeline;
    LabelGrid final_inst = pipeline_to_width8(t, pipeline);
    io::save_json_file(opt.out_path, io::label_grid_to_json(final_inst));
    if (!opt.pipeline_path.empty())
        io::save_json_file(opt.pipeline_path, io::pipeline_to_json(pipeline));
    emit(opt,
         json{{"dims", final_inst.dims()}, {"stages", pipeline.records.size()}, {"out", opt.out_path}},
         "folded to " + std::to_string(final_inst.n()) + " dimensions of width 8 (" +
             std::to_string(pipeline.records.size()) + " stages), wrote " + opt.out_path + "\n");
    return kOk;
}

CHInstance build_from_options(const Options& opt, LabelGrid& lambda_out) {
    lambda_out = io::label_grid_from_json(io::load_json_file(opt.lambda_path));
    Circuit lambda_hat = build_lambda_hat(lambda_out);
    Rational eps = parse_epsilon(opt.epsilon);
    return parse_variant(opt.variant) == Variant::Standard ? build_instance(lambda_hat, eps)
                                                           : build_instance_3block(lambda_hat, eps);
}

int cmd_ch_build(const Options& opt) {
    LabelGrid lambda;
    CHInstance inst = build_from_options(opt, lambda);
    io::save_json_file(opt.out_path, io::instance_to_json(inst));
    if (!opt.circuit_out.empty()) {
        Circuit c = build_lambda_hat(lambda);
        if (inst.variant == Variant::ThreeBlock) c = normalize_nand_followers(c);
        io::save_json_file(opt.circuit_out, io::circuit_to_json(c));
    }
    emit(opt,
         json{{"agents", inst.n()},
              {"gates", inst.layout.m},
              {"copies", inst.layout.K},
              {"L", inst.layout.L()},
              {"out", opt.out_path}},
         "built instance: " + std::to_string(inst.n()) + " agents, m=" +
             std::to_string(inst.layout.m) + ", K=" + std::to_string(inst.layout.K) + ", wrote " +
             opt.out_path + "\n");
    return kOk;
}

json verify_report_json(const VerificationReport& rep) {
    return json{{"pass", rep.pass},
                {"cut_count", rep.cut_count},
                {"max_cuts", rep.max_cuts},
                {"max_discrepancy", rep.max_discrepancy.str()},
                {"failing_agents", rep.failing_agents}};
}

int cmd_ch_verify(const Options& opt) {
    CHInstance inst = io::instance_from_json(io::load_json_file(opt.inst_path));
    CutSet cuts = io::cutset_from_json(io::load_json_file(opt.cuts_path));
    VerificationReport rep = verify(inst, cuts);
    std::ostringstream text;
    text << (rep.pass ? "PASS" : "FAIL") << ": " << rep.cut_count << "/" << rep.max_cuts
         << " cuts, max discrepancy " << rep.max_discrepancy.str() << " vs epsilon "
         << inst.epsilon.str() << "\n";
    for (auto idx : rep.failing_agents)
        text << "  agent " << idx << " (" << agent_kind_name(inst.agents[idx].kind)
             << ") discrepancy " << rep.discrepancies[idx].str() << "\n";
    emit(opt, verify_report_json(rep), text.str());
    return rep.pass ? kOk : kVerifyFail;
}

int cmd_ch_synth(const Options& opt) {
    CHInstance inst = io::instance_from_json(io::load_json_file(opt.inst_path));
    SynthesisPlan plan = io::plan_from_json(io::load_json_file(opt.plan_path));
    LabelGrid lambda;
    bool have_lambda = !opt.lambda_path.empty();
    if (have_lambda) lambda = io::label_grid_from_json(io::load_json_file(opt.lambda_path));
    CutSet cuts = synthesize(inst, plan, have_lambda ? &lambda : nullptr);
    io::save_json_file(opt.out_path, io::cutset_to_json(cuts));
    emit(opt, json{{"cuts", cuts.size()}, {"out", opt.out_path}},
         "synthesized " + std::to_string(cuts.size()) + " cuts, wrote " + opt.out_path + "\n");
    return kOk;
}

json decode_report_json(const CHInstance& inst, const DecodeResult& res) {
    json points = json::array();
    for (const auto& p : res.extracted.points) points.push_back(p);
    return json{{"good_copies", res.good},
                {"copies", inst.layout.K},
                {"cuts_in_input_region", res.cuts_in_input_region},
                {"phi_pairwise_ok", res.phi_pairwise_ok},
                {"extracted_points", points}};
}

int cmd_ch_decode(const Options& opt) {
    CHInstance inst = io::instance_from_json(io::load_json_file(opt.inst_path));
    CutSet cuts = io::cutset_from_json(io::load_json_file(opt.cuts_path));
    DecodeResult res = decode(inst, cuts);
    if (!opt.out_path.empty()) io::save_json_file(opt.out_path, io::solution_to_json(res.extracted));
    std::ostringstream text;
    text << "good copies: " << res.good.size() << "/" << inst.layout.K << ", cuts in input region: "
         << res.cuts_in_input_region << ", pairwise phi ok: " << (res.phi_pairwise_ok ? "yes" : "no")
         << "\nextracted points:";
    for (const auto& p : res.extracted.points) {
        text << " (";
        for (std::size_t d = 0; d < p.size(); ++d) text << (d ? "," : "") << p[d];
        text << ")";
    }
    text << "\n";
    emit(opt, decode_report_json(inst, res), text.str());
    return kOk;
}

// Adjacent antipodal pair whose step direction the synthesizer can realize
// against the alternating entering sign along the input region.
bool find_plan(const LabelGrid& lambda, SynthesisPlan& plan) {
    int n = lambda.n();
    std::vector<GridPoint> dirs;
    GridPoint d(static_cast<std::size_t>(n), -1);
    while (true) {
        bool nonzero = false;
        for (int v : d) nonzero |= v != 0;
        if (nonzero) dirs.push_back(d);
        int i = 0;
        for (; i < n; ++i) {
            if (d[static_cast<std::size_t>(i)] < 1) {
                ++d[static_cast<std::size_t>(i)];
                break;
            }
            d[static_cast<std::size_t>(i)] = -1;
        }
        if (i == n) break;
    }
    auto orientable = [&](const GridPoint& step) {
        bool fwd = true, bwd = true;
        for (int i = 1; i <= n; ++i) {
            int tau = ((n - i) % 2 == 0) ? +1 : -1;
            if (step[static_cast<std::size_t>(i - 1)] * tau < 0) fwd = false;
            if (step[static_cast<std::size_t>(i - 1)] * tau > 0) bwd = false;
        }
        return fwd || bwd;
    };
    for (std::size_t idx = 0; idx < lambda.cell_count(); ++idx) {
        GridPoint a = lambda.point_at(idx);
        for (const auto& step : dirs) {
            if (!orientable(step)) continue;
            GridPoint b = a;
            for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] += step[static_cast<std::size_t>(i)];
            if (!lambda.in_grid(b)) continue;
            if (lambda.label(b) != negate_label(lambda.label(a), n)) continue;
            plan.a = a;
            plan.b = b;
            return true;
        }
    }
    return false;
}

int cmd_ch_roundtrip(const Options& opt) {
    LabelGrid lambda;
    CHInstance inst = build_from_options(opt, lambda);
    json stages = json::array();
    std::ostringstream text;
    auto stage = [&](const std::string& name, bool ok, const std::string& detail) {
        stages.push_back(json{{"stage", name}, {"ok", ok}, {"detail", detail}});
        text << (ok ? "ok  " : "FAIL") << "  " << name << (detail.empty() ? "" : ": " + detail)
             << "\n";
        return ok;
    };
    stage("build", true, std::to_string(inst.n()) + " agents, m=" + std::to_string(inst.layout.m));
    SynthesisPlan plan;
    if (!find_plan(lambda, plan)) {
        stage("plan", false, "plan not found: no orientable adjacent antipodal pair");
        emit(opt, json{{"stages", stages}, {"pass", false}}, text.str());
        return kVerifyFail;
    }
    CutSet cuts = synthesize(inst, plan, &lambda);
    stage("synthesize", true, std::to_string(cuts.size()) + " cuts");
    VerificationReport rep = verify(inst, cuts);
    bool ok = stage("verify", rep.pass, "max discrepancy " + rep.max_discrepancy.str());
    DecodeResult res;
    if (ok) {
        res = decode(inst, cuts);
        ok = stage("decode",
                   res.good.size() == static_cast<std::size_t>(inst.layout.K) && res.phi_pairwise_ok,
                   std::to_string(res.good.size()) + " good copies");
    }
    if (ok) ok = stage("verify_strong_solution", verify_strong_solution(lambda, res.extracted), "");
    emit(opt, json{{"stages", stages}, {"pass", ok}}, text.str());
    return ok ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consensus-halving reduction workbench"};
    app.require_subcommand(1);
    Options opt;

    auto* gen = app.add_subcommand("tucker-gen", "generate a random antipodal instance");
    gen->add_option("--m", opt.m, "2D-Tucker side length (even, 4..64)");
    gen->add_option("--dims", opt.dims, "comma-separated widths for an ND strong instance");
    gen->add_option("--seed", opt.seed, "random seed");
    gen->add_option("--out", opt.out_path, "output file")->required();
    gen->add_flag("--json", opt.json_report, "JSON report");

    auto* fold_cmd = app.add_subcommand("fold", "run the snake-embedding pipeline to width 8");
    fold_cmd->add_option("--in", opt.in_path, "2D-Tucker instance file")->required();
    fold_cmd->add_option("--out", opt.out_path, "final instance file")->required();
    fold_cmd->add_option("--pipeline", opt.pipeline_path, "pipeline record file");
    fold_cmd->add_flag("--json", opt.json_report, "JSON report");

    auto* ch = app.add_subcommand("ch", "consensus-halving instance commands");
    ch->require_subcommand(1);

    auto* build_cmd = ch->add_subcommand("build", "compile a label table into an instance");
    build_cmd->add_option("--lambda", opt.lambda_path, "label table on [8]^N")->required();
    build_cmd->add_option("--epsilon", opt.epsilon, "tolerance, must be < 1/5");
    build_cmd->add_option("--variant", opt.variant, "standard | 3block");
    build_cmd->add_option("--out", opt.out_path, "instance file")->required();
    build_cmd->add_option("--circuit-out", opt.circuit_out, "also write the compiled circuit");
    build_cmd->add_flag("--json", opt.json_report, "JSON report");

    auto* synth_cmd = ch->add_subcommand("synth", "synthesize an exact solution");
    synth_cmd->add_option("--inst", opt.inst_path, "instance file")->required();
    synth_cmd->add_option("--plan", opt.plan_path, "synthesis plan file")->required();
    synth_cmd->add_option("--lambda", opt.lambda_path, "label table for plan validation");
    synth_cmd->add_option("--out", opt.out_path, "cut set file")->required();
    synth_cmd->add_flag("--json", opt.json_report, "JSON report");

    auto* verify_cmd = ch->add_subcommand("verify", "verify a cut set");
    verify_cmd->add_option("--inst", opt.inst_path, "instance file")->required();
    verify_cmd->add_option("--cuts", opt.cuts_path, "cut set file")->required();
    verify_cmd->add_flag("--json", opt.json_report, "JSON report");

    auto* decode_cmd = ch->add_subcommand("decode", "decode a verified cut set");
    decode_cmd->add_option("--inst", opt.inst_path, "instance file")->required();
    decode_cmd->add_option("--cuts", opt.cuts_path, "cut set file")->required();
    decode_cmd->add_option("--out", opt.out_path, "extracted solution file");
    decode_cmd->add_flag("--json", opt.json_report, "JSON report");

    auto* roundtrip_cmd = ch->add_subcommand("roundtrip", "build, synthesize, verify, decode");
    roundtrip_cmd->add_option("--lambda", opt.lambda_path, "label table on [8]^N")->required();
    roundtrip_cmd->add_option("--epsilon", opt.epsilon, "tolerance, must be < 1/5");
    roundtrip_cmd->add_option("--variant", opt.variant, "standard | 3block");
    roundtrip_cmd->add_flag("--json", opt.json_report, "JSON report");

    CLI11_PARSE(app, argc, argv);
    try {
        if (gen->parsed()) return cmd_tucker_gen(opt);
        if (fold_cmd->parsed()) return cmd_fold(opt);
        if (build_cmd->parsed()) return cmd_ch_build(opt);
        if (synth_cmd->parsed()) return cmd_ch_synth(opt);
        if (verify_cmd->parsed()) return cmd_ch_verify(opt);
        if (decode_cmd->parsed()) return cmd_ch_decode(opt);
        if (roundtrip_cmd->parsed()) return cmd_ch_roundtrip(opt);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormatError;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParamError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormatError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
