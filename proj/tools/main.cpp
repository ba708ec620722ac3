#include <pthread.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "streamcalc/canonical.hpp"
#include "streamcalc/errors.hpp"
#include "streamcalc/eval.hpp"
#include "streamcalc/indexing.hpp"
#include "streamcalc/oracle.hpp"
#include "streamcalc/parser.hpp"
#include "streamcalc/printer.hpp"
#include "streamcalc/wellformed.hpp"

namespace {

using namespace streamcalc;

enum class command { run, at, prefix, check, dump };

struct run_config {
    command cmd = command::run;
    std::string program_path;
    std::string expr_text;
    index_t index = 0;
    std::size_t count = 0;
    std::uint64_t fuel = default_fuel;
    std::size_t precision = 50;
    std::string format = "text";
    bool oracle_check = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw static_error("IOError", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fresh_unbound(const environment& env) {
    for (std::uint64_t i = 0;; ++i) {
        std::string name = "w" + std::to_string(i);
        if (env.find(name) == env.end()) return name;
    }
}

int execute(const run_config& cfg) {
    program prog = parse_program(read_file(cfg.program_path));
    validate(prog);
    expr_ptr query = parse_expr(cfg.expr_text);
    validate_expression(prog, query);

    capsule result = evaluate(prog, query, {}, cfg.fuel);

    switch (cfg.cmd) {
        case command::run:
        case command::dump: {
            capsule canon = alpha_canonicalize(result);
            if (cfg.format == "json")
                std::cout << capsule_to_json(canon) << "\n";
            else
                std::cout << render_capsule(canon) << "\n";
            return 0;
        }
        case command::at: {
            if (!result.val.is_stream())
                throw sort_error("--eval result is not a stream, cannot index");
            element_result e = guarded_at(result.env, result.val.stream(), cfg.index);
            if (auto* d = std::get_if<divergence>(&e))
                throw divergence_error(d->var, d->pending, d->reentry);
            std::cout << std::get<rational>(e).str() << "\n";
            return 0;
        }
        case command::prefix: {
            if (!result.val.is_stream())
                throw sort_error("--eval result is not a stream, cannot take a prefix");
            std::vector<rational> elems = prefix(result.env, result.val.stream(), cfg.count);
            if (cfg.oracle_check) {
                std::size_t n = std::max(cfg.count, cfg.precision);
                prefix_assignment a = kleene_prefix(result.env, {}, n);
                partial_prefix approx = sem_eval_prefix(result.val.stream(), a, n);
                for (std::size_t i = 0; i < cfg.count; ++i) {
                    if (!approx[i].has_value())
                        throw runtime_fault("OracleMismatch",
                                            "position " + std::to_string(i) +
                                                " undetermined after fixpoint, evaluator got " +
                                                elems[i].str());
                    if (*approx[i] != elems[i])
                        throw runtime_fault("OracleMismatch",
                                            "position " + std::to_string(i) + ": fixpoint " +
                                                approx[i]->str() + ", evaluator " + elems[i].str());
                }
            }
            for (std::size_t i = 0; i < elems.size(); ++i) {
                if (i > 0) std::cout << " ";
                std::cout << elems[i].str();
            }
            std::cout << "\n";
            return 0;
        }
        case command::check: {
            if (result.val.is_stream()) {
                std::string probe = fresh_unbound(result.env);
                if (auto failure =
                        check_wf_failure(result.env, probe, result.val.stream()))
                    throw not_well_defined(probe, render_stream_value(result.val.stream()),
                                           failure->var, failure->balance);
            }
            std::cout << "well-defined\n";
            return 0;
        }
    }
    return 1;
}

// The evaluator recurses one native frame per expansion, so deep runs need
// more stack than the default thread gets.
struct thread_box {
    const run_config* cfg;
    int exit_code = 1;
    std::exception_ptr error;
};

void* thread_main(void* raw) {
    auto* box = static_cast<thread_box*>(raw);
    try {
        box->exit_code = execute(*box->cfg);
    } catch (...) {
        box->error = std::current_exception();
    }
    return nullptr;
}

int execute_on_big_stack(const run_config& cfg) {
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, 512u * 1024 * 1024);
    thread_box box{&cfg, 1, nullptr};
    pthread_t tid;
    if (pthread_create(&tid, &attr, thread_main, &box) != 0) {
        pthread_attr_destroy(&attr);
        return execute(cfg);
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    if (box.error) std::rethrow_exception(box.error);
    return box.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpreter and analyzer for corecursive stream programs"};
    app.require_subcommand(1);

    run_config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("program", cfg.program_path, "program file (.sc)")->required();
        sub->add_option("--eval", cfg.expr_text, "expression to evaluate")->required();
        sub->add_option("--fuel", cfg.fuel, "budget of first-time call expansions")
            ->envname("STREAMCALC_FUEL")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    CLI::App* run = app.add_subcommand("run", "evaluate to a capsule and print it");
    add_common(run);
    run->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    CLI::App* at = app.add_subcommand("at", "print one element of the evaluated stream");
    add_common(at);
    at->add_option("--index", cfg.index, "element position")->required();

    CLI::App* pre = app.add_subcommand("prefix", "print the first elements of the evaluated stream");
    add_common(pre);
    pre->add_option("--count", cfg.count, "how many elements")->required();
    pre->add_flag("--oracle", cfg.oracle_check,
                  "cross-check the prefix against the fixpoint approximation");
    pre->add_option("--precision", cfg.precision, "fixpoint prefix length for --oracle")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* chk = app.add_subcommand("check", "report the well-definedness verdict");
    add_common(chk);

    CLI::App* dmp = app.add_subcommand("dump", "evaluate and dump the capsule as JSON");
    add_common(dmp);
    dmp->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) cfg.cmd = command::run;
    if (at->parsed()) cfg.cmd = command::at;
    if (pre->parsed()) cfg.cmd = command::prefix;
    if (chk->parsed()) cfg.cmd = command::check;
    if (dmp->parsed()) {
        cfg.cmd = command::dump;
        if (dmp->count("--format") == 0) cfg.format = "json";
    }

    try {
        return execute_on_big_stack(cfg);
    } catch (const static_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const runtime_fault& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
