// lts: check, run and fuzz programs of the occurrence-typing calculus.

#include "lts/checker.hpp"
#include "lts/eval.hpp"
#include "lts/harness.hpp"
#include "lts/refine.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2 };

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::vector<lts::Constant> parse_delta(const std::vector<std::string>& names) {
    std::vector<lts::Constant> out;
    for (const auto& name : names) {
        auto c = lts::constant_from_name(name);
        if (!c) throw CLI::ValidationError("--delta", "unknown constant '" + name + "'");
        out.push_back(*c);
    }
    return out;
}

bool uses_refinements(const lts::Expr& e) {
    switch (e.kind()) {
        case lts::Expr::Kind::Const:
            return e.constant() == lts::Constant::IsEven || e.constant() == lts::Constant::IsOdd;
        case lts::Expr::Kind::Abs:
            return lts::mentions_refinement(e.annot()) || uses_refinements(e.body());
        default:
            for (const auto& child : e.children()) {
                if (uses_refinements(child)) return true;
            }
            return false;
    }
}

struct Loaded {
    lts::RefineEnv delta;
    lts::Expr expr;
};

Loaded load(const std::string& path, const std::vector<std::string>& delta_flag) {
    lts::Program program = lts::parse_program(read_file(path));
    lts::RefineEnv delta;
    for (auto c : program.declared) delta.insert(c);
    for (auto c : parse_delta(delta_flag)) delta.insert(c);
    if (delta.empty() && uses_refinements(program.expr)) delta = {lts::Constant::IsEven, lts::Constant::IsOdd};
    return {delta, program.expr};
}

int cmd_check(const std::string& path, const std::vector<std::string>& delta_flag, bool extended) {
    Loaded in = load(path, delta_flag);
    lts::CheckOptions options;
    options.mode = extended ? lts::Mode::Extended : lts::Mode::Primary;
    try {
        lts::Judgment j = lts::typecheck(in.delta, lts::TypeEnv{}, in.expr, options);
        std::cout << lts::print_type(lts::normalize(j.type)) << " ; " << lts::print_pred(j.pred) << "\n";
        return kOk;
    } catch (const lts::TypeError& err) {
        std::cerr << "type error: " << err.what() << "\n";
        return kFailure;
    }
}

int cmd_run(const std::string& path, const std::vector<std::string>& delta_flag, std::size_t fuel, bool unchecked,
            bool trace) {
    Loaded in = load(path, delta_flag);
    if (!unchecked) {
        try {
            lts::typecheck(in.delta, lts::TypeEnv{}, in.expr, lts::Mode::Primary);
        } catch (const lts::TypeError& err) {
            std::cerr << "type error: " << err.what() << "\n";
            return kFailure;
        }
    } else if (!lts::is_closed(in.expr)) {
        std::cerr << "error: free variables in program\n";
        return kFailure;
    }
    if (trace) {
        auto terms = lts::trace(in.expr, fuel);
        for (std::size_t i = 0; i < terms.size(); ++i) std::cout << i << ": " << lts::print_expr(terms[i]) << "\n";
    }
    lts::EvalOutcome out = lts::evaluate(in.expr, fuel);
    switch (out.kind) {
        case lts::EvalOutcome::Kind::Value:
            if (!trace) std::cout << lts::print_expr(out.term) << "\n";
            return kOk;
        case lts::EvalOutcome::Kind::Stuck:
            std::cerr << "stuck: " << out.reason << "\n";
            return kFailure;
        case lts::EvalOutcome::Kind::FuelExhausted:
            std::cerr << "out of fuel after " << out.steps << " steps\n";
            return kFailure;
    }
    return kFailure;
}

int cmd_fuzz(const lts::FuzzConfig& config, const std::string& json_path) {
    lts::FuzzReport report = lts::run_fuzz(config);
    std::cout << report.summary();
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
            std::cerr << "error: cannot write " << json_path << "\n";
            return kUsage;
        }
        out << report.to_json().dump(2) << "\n";
    }
    return report.ok() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Typechecker, evaluator and soundness fuzzer for an occurrence-typed lambda calculus"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> delta;
    bool extended = false;
    bool unchecked = false;
    std::size_t fuel = lts::kDefaultFuel;

    auto* check = app.add_subcommand("check", "Typecheck a program and print `<type> ; <pred>`");
    check->add_option("file", file, "Program file (.lts)")->required();
    check->add_flag("--extended", extended, "Use the extended rule set");
    check->add_option("--delta", delta, "Refinement constants, comma separated")->delimiter(',');

    auto* eval = app.add_subcommand("eval", "Typecheck and evaluate a program");
    auto* trace = app.add_subcommand("trace", "Typecheck and print every reduction step");
    for (auto* sub : {eval, trace}) {
        sub->add_option("file", file, "Program file (.lts)")->required();
        sub->add_option("--fuel", fuel, "Maximum number of steps")->check(CLI::NonNegativeNumber);
        sub->add_flag("--unchecked", unchecked, "Skip typechecking");
        sub->add_option("--delta", delta, "Refinement constants, comma separated")->delimiter(',');
    }

    lts::FuzzConfig config;
    std::string json_path;
    auto* fuzz = app.add_subcommand("fuzz", "Randomized soundness testing");
    fuzz->add_option("--count", config.count, "Number of terms")->check(CLI::PositiveNumber);
    fuzz->add_option("--seed", config.seed, "RNG seed");
    fuzz->add_option("--depth", config.max_depth, "Maximum term depth")->check(CLI::PositiveNumber);
    fuzz->add_option("--fuel", config.fuel, "Steps per term");
    fuzz->add_flag("--refinements", config.with_refinements, "Generate refinement types and check erasure");
    fuzz->add_option("--threads", config.threads, "Worker threads (0: all cores)");
    fuzz->add_option("--json", json_path, "Write a JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*check) return cmd_check(file, delta, extended);
        if (*eval) return cmd_run(file, delta, fuel, unchecked, false);
        if (*trace) return cmd_run(file, delta, fuel, unchecked, true);
        if (*fuzz) return cmd_fuzz(config, json_path);
    } catch (const CLI::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    } catch (const lts::SyntaxError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kUsage;
    } catch (const lts::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
