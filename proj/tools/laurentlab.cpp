#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "laurentlab/somos/suite.hpp"
#include "laurentlab/toda/suite.hpp"

namespace fs = std::filesystem;
using namespace laurentlab;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, config_error = 1, violation = 2, verify_failed = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string engine;
    std::string command;
    somos::SomosParams somos;
    toda::TodaParams toda;
    int max_n = 12;
    int max_t = 6;
    int radius = 5;
    int sigma_max = 0;
    std::vector<std::string> checks;
    std::string specialize;
    std::string out;
    std::string config_path;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    bool mutate = false;
};

// Fills fields not given on the command line from a JSON config file.
void merge_config(Options& o, const CLI::App& sub, const CLI::App& app)
{
    std::ifstream in(o.config_path);
    if (!in) {
        throw ConfigError("cannot read config " + o.config_path);
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    auto given = [&](const std::string& flag) {
        for (const CLI::App* a : {&sub, &app}) {
            if (const CLI::Option* opt = a->get_option_no_throw("--" + flag); opt && opt->count() > 0) {
                return true;
            }
        }
        return false;
    };
    try {
        for (const auto& [key, value] : j.items()) {
            if (given(key == "max_n" ? "max-n" : key == "max_t" ? "max-t" : key == "sigma_max" ? "sigma-max" : key)) {
                continue;
            }
            if (key == "engine") {
                if (value.get<std::string>() != o.engine) {
                    throw ConfigError("config engine " + value.get<std::string>() + " does not match " + o.engine);
                }
            } else if (o.engine == "somos" && (key == "k" || key == "l" || key == "m")) {
                (key == "k" ? o.somos.k : key == "l" ? o.somos.l : o.somos.m) = value.get<int>();
            } else if (o.engine == "toda" && (key == "k1" || key == "k2" || key == "l1" || key == "l2")) {
                (key == "k1" ? o.toda.k1 : key == "k2" ? o.toda.k2 : key == "l1" ? o.toda.l1 : o.toda.l2) =
                    value.get<int>();
            } else if (o.engine == "somos" && key == "max_n") {
                o.max_n = value.get<int>();
            } else if (o.engine == "toda" && key == "max_t") {
                o.max_t = value.get<int>();
            } else if (o.engine == "toda" && key == "radius") {
                o.radius = value.get<int>();
            } else if (o.engine == "toda" && key == "sigma_max") {
                o.sigma_max = value.get<int>();
            } else if (key == "checks") {
                o.checks = value.get<std::vector<std::string>>();
            } else if (key == "specialize") {
                o.specialize = value.get<std::string>();
            } else if (key == "out") {
                o.out = value.get<std::string>();
            } else if (key == "jobs") {
                o.jobs = value.get<unsigned>();
            } else if (key == "seed") {
                o.seed = value.get<std::uint64_t>();
            } else {
                throw ConfigError("config: unknown key " + key + " for " + o.engine);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

// Flag, then LAURENTLAB_OUT, then the config file, then ./laurentlab-out.
fs::path output_dir(const Options& o, bool flag_given)
{
    if (flag_given && !o.out.empty()) {
        return o.out;
    }
    if (const char* env = std::getenv("LAURENTLAB_OUT"); env && *env) {
        return env;
    }
    return o.out.empty() ? fs::path("laurentlab-out") : fs::path(o.out);
}

void write_file(const fs::path& path, const std::string& text)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string lines(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v) {
        s += x;
        s += '\n';
    }
    return s;
}

ordered_json report_config(const Options& o)
{
    ordered_json c;
    c["engine"] = o.engine;
    if (o.engine == "somos") {
        c["params"] = {{"k", o.somos.k}, {"l", o.somos.l}, {"m", o.somos.m}};
        c["max_n"] = o.max_n;
    } else {
        c["params"] = {{"k1", o.toda.k1}, {"k2", o.toda.k2}, {"l1", o.toda.l1}, {"l2", o.toda.l2}};
        c["radius"] = o.radius;
        c["max_t"] = o.max_t;
    }
    c["checks"] = o.checks;
    c["seed"] = o.seed;
    if (o.mutate) {
        c["mutate"] = true;
    }
    return c;
}

int run(const Options& o, const fs::path& out)
{
    bool ones = o.specialize == "ones";
    try {
        std::vector<std::string> dump;
        if (o.engine == "somos") {
            somos::SomosEngine e(o.somos, o.mutate);
            dump = somos::dump(e, o.max_n, ones);
        } else {
            toda::TodaEngine e(o.toda, o.radius, o.mutate);
            e.iterate(o.max_t);
            dump = toda::dump(e, o.max_t, ones);
        }
        fs::path file = out / (o.engine + (ones ? "-ones.txt" : "-dump.txt"));
        write_file(file, lines(dump));
        std::cout << "wrote " << dump.size() << " lines to " << file.string() << "\n";
        return ok;
    } catch (const checks::LaurentViolation& e) {
        fs::path file = out / "witness.txt";
        write_file(file, "subject: " + e.subject() + "\nremainder: " + e.witness() + "\n");
        std::cerr << e.what() << "; witness in " << file.string() << "\n";
        return violation;
    }
}

int verify(const Options& o, const fs::path& out)
{
    checks::SuiteReport report;
    if (o.engine == "somos") {
        somos::SomosEngine e(o.somos, o.mutate);
        somos::SuiteConfig c;
        c.max_n = o.max_n;
        c.seed = o.seed;
        c.jobs = o.jobs;
        report = somos::run_suite(e, c, o.checks);
    } else {
        toda::TodaEngine e(o.toda, o.radius, o.mutate);
        toda::SuiteConfig c;
        c.max_t = o.max_t;
        c.sigma_max = o.sigma_max;
        c.seed = o.seed;
        c.jobs = o.jobs;
        report = toda::run_suite(e, c, o.checks);
    }
    report.config = report_config(o);
    write_file(out / "report.json", checks::to_json(report).dump(2) + "\n");
    write_file(out / "report.md", checks::to_markdown(report));
    auto s = report.summary();
    std::cout << s.pass << " passed, " << s.fail << " failed, " << s.skipped << " skipped; report in "
              << (out / "report.json").string() << "\n";
    if (s.fail == 0) {
        return ok;
    }
    std::string w;
    for (const auto& r : report.records) {
        if (!r.ok()) {
            w += r.check_id + " | " + r.subject + " | " + r.witness.value_or("") + "\n";
        }
    }
    write_file(out / "witnesses.txt", w);
    return verify_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Laurent and coprimeness checks for extended Somos-4 and Toda recurrences"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--checks", o.checks, "Checks to run (comma separated)")->delimiter(',');
    app.add_option("--specialize", o.specialize, "Dump all-ones integer values")->check(CLI::IsMember({"ones"}));
    app.add_option("--out", o.out, "Output directory (else LAURENTLAB_OUT, else ./laurentlab-out)");
    app.add_option("--config", o.config_path, "JSON config; flags take precedence");
    app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for randomized checks");
    app.add_flag("--mutate", o.mutate)->group("");

    auto* s = app.add_subcommand("somos", "Extended Somos-4 recurrence")->fallthrough();
    s->add_option("--k", o.somos.k)->check(CLI::PositiveNumber);
    s->add_option("--l", o.somos.l)->check(CLI::PositiveNumber);
    s->add_option("--m", o.somos.m)->check(CLI::PositiveNumber);
    s->add_option("--max-n", o.max_n, "Largest index")->check(CLI::Range(8, 40));

    auto* t = app.add_subcommand("toda", "Extended discrete Toda recurrence")->fallthrough();
    t->add_option("--k1", o.toda.k1)->check(CLI::PositiveNumber);
    t->add_option("--k2", o.toda.k2)->check(CLI::PositiveNumber);
    t->add_option("--l1", o.toda.l1)->check(CLI::PositiveNumber);
    t->add_option("--l2", o.toda.l2)->check(CLI::PositiveNumber);
    t->add_option("--radius", o.radius, "Window radius")->check(CLI::Range(2, 12));
    t->add_option("--max-t", o.max_t, "Largest time step")->check(CLI::Range(2, 12));
    t->add_option("--sigma-max", o.sigma_max, "Largest t for sigma tilde checks (0: min(max-t, 5))")
        ->check(CLI::Range(0, 12));

    for (auto* sub : {s, t}) {
        sub->require_subcommand(1);
        sub->add_subcommand("run", "Iterate and write dumps")->fallthrough();
        sub->add_subcommand("verify", "Run checks and write reports")->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return config_error;
    }

    CLI::App* sub = s->parsed() ? s : t;
    o.engine = sub->get_name();
    o.command = sub->get_subcommands().front()->get_name();
    try {
        if (!o.config_path.empty()) {
            merge_config(o, *sub, app);
        }
        const auto& known = o.engine == "somos" ? somos::check_names() : toda::check_names();
        if (o.checks.empty()) {
            o.checks = known;
        }
        for (const auto& c : o.checks) {
            if (std::find(known.begin(), known.end(), c) == known.end()) {
                throw ConfigError("unknown check: " + c);
            }
        }
        if (o.engine == "somos") {
            somos::validate(o.somos);
        } else {
            toda::validate(o.toda);
        }
        if (o.jobs == 0) {
            throw ConfigError("jobs must be positive");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error;
    }

    fs::path out = output_dir(o, app.count("--out") > 0);
    try {
        return o.command == "run" ? run(o, out) : verify(o, out);
    } catch (const checks::LaurentViolation& e) {
        std::cerr << e.what() << "\n";
        return o.command == "run" ? violation : verify_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error;
    }
}
