#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "petbox/experiment.hpp"

namespace {

using petbox::Json;

int finish(const petbox::ScenarioResult& res, const std::string& out_path, bool json_extra) {
    if (!res.log.empty()) std::cout << res.log;
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output path: " << out_path << "\n";
            return petbox::kExitConfigError;
        }
        if (json_extra)
            out << res.extra.dump(2) << "\n";
        else
            out << res.csv;
    } else if (!res.csv.empty()) {
        std::cout << res.csv;
    }
    return res.exit_code;
}

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw petbox::domain_error("cannot open config: " + path);
    Json j;
    in >> j;
    return j;
}

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long long max_states = 0;
    bool exact = false;
    bool sample = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON scenario config");
    cmd->add_option("--out", args.out_path, "output path (CSV; JSON for pet traces)");
    cmd->add_option("--seed", args.seed, "seed overriding the config")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--max-states", args.max_states, "state-space cap for norm evaluation");
    cmd->add_flag("--exact", args.exact, "force exact mode");
    cmd->add_flag("--sample", args.sample, "force sample mode");
}

Json effective_config(const CommonArgs& args, const std::string& scenario) {
    Json config = args.config_path.empty() ? Json::object() : load_config(args.config_path);
    config["scenario"] = scenario;
    if (args.seed_set) config["seed"] = args.seed;
    if (args.max_states > 0) config["max_states"] = args.max_states;
    if (args.exact) config["mode"] = "exact";
    if (args.sample) config["mode"] = "sample";
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Box norms, PET induction, and multilinear counting at desk scale"};
    app.require_subcommand(1);

    CommonArgs pet_args;
    std::string inline_family;
    int inline_dim = 1;
    int inline_target = 1;
    auto* pet_cmd = app.add_subcommand("pet", "run the induction on a polynomial family and print its directions");
    add_common(pet_cmd, pet_args);
    pet_cmd->add_option("--family", inline_family, "inline family, ';'-separated (e.g. \"e1*z^2+e1*z; e2*z^2+e2*z\")");
    pet_cmd->add_option("--dim", inline_dim, "ambient dimension for --family");
    pet_cmd->add_option("--target", inline_target, "function index the directions control (default 1)");

    CommonArgs norm_args;
    auto* norm_cmd = app.add_subcommand("norm", "evaluate configured box norms of a constructed function");
    add_common(norm_cmd, norm_args);

    CommonArgs count_args;
    auto* count_cmd = app.add_subcommand("count-op", "evaluate the polynomial-progression counting operator");
    add_common(count_cmd, count_args);

    CommonArgs thm_args;
    auto* thm_cmd = app.add_subcommand("theorem15-check", "counting operator vs target box norms");
    add_common(thm_cmd, thm_args);

    CommonArgs concat_args;
    auto* concat_cmd = app.add_subcommand("concat-check", "degree-1 concatenation scenario");
    add_common(concat_cmd, concat_args);

    CommonArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("equidist-sweep", "count-vs-bound sweeps; writes oracle fixtures");
    add_common(sweep_cmd, sweep_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (pet_cmd->parsed()) {
            Json config = effective_config(pet_args, "pet");
            if (!inline_family.empty()) {
                Json fam = Json::array();
                std::string cur;
                for (char c : inline_family) {
                    if (c == ';') {
                        fam.push_back(cur);
                        cur.clear();
                    } else {
                        cur.push_back(c);
                    }
                }
                if (!cur.empty()) fam.push_back(cur);
                config["family"] = fam;
                config["dim"] = inline_dim;
                config["target"] = inline_target;
            }
            auto res = petbox::run_scenario(config);
            return finish(res, pet_args.out_path.empty() ? config.value("out", "") : pet_args.out_path, true);
        }
        const CommonArgs* args = nullptr;
        std::string scenario;
        if (norm_cmd->parsed()) { args = &norm_args; scenario = "norm"; }
        if (count_cmd->parsed()) { args = &count_args; scenario = "count-op"; }
        if (thm_cmd->parsed()) { args = &thm_args; scenario = "theorem15-check"; }
        if (concat_cmd->parsed()) { args = &concat_args; scenario = "concat-check"; }
        if (sweep_cmd->parsed()) { args = &sweep_args; scenario = "equidist-sweep"; }
        Json config = effective_config(*args, scenario);
        auto res = petbox::run_scenario(config);
        return finish(res, args->out_path.empty() ? config.value("out", "") : args->out_path, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return petbox::kExitConfigError;
    }
}
