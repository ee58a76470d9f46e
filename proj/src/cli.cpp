#include "lc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "lc/branch.hpp"
#include "lc/decomposition.hpp"
#include "lc/io.hpp"
#include "lc/oracle.hpp"
#include "lc/reductions.hpp"
#include "lc/twdp.hpp"

namespace lc {

namespace {

namespace fs = std::filesystem;

struct AlgoRun {
    SolveResult result;
    std::string stat1, stat2;
};

AlgoRun run_algo(const std::string& algo, const InstanceFile& file, const std::string& td_path,
                 std::uint64_t budget, int threads, bool paper_faithful, Deadline deadline,
                 std::ostream* trace) {
    const InstancePair& inst = file.inst;
    AlgoRun run;
    if (algo == "bruteforce") {
        OracleOptions opts;
        opts.budget = budget;
        opts.threads = threads;
        opts.prune = !paper_faithful;
        opts.deadline = deadline;
        run.result = solve_bruteforce(inst, opts);
        run.stat1 = std::to_string(run.result.stats.partitions_examined);
        run.stat2 = "0";
    } else if (algo == "branch") {
        BranchConfig cfg;
        cfg.node_budget = budget;
        cfg.threads = threads;
        cfg.deadline = deadline;
        run.result = solve_branch(inst, cfg);
        run.stat1 = std::to_string(run.result.stats.nodes_explored);
        run.stat2 = std::to_string(run.result.stats.max_branching);
    } else if (algo == "twdp") {
        TreeDecomposition td;
        if (!td_path.empty()) {
            td = read_pace_td_file(td_path, file.g_vertex_order);
        } else {
            td = heuristic_decompose(union_graph(inst));
        }
        NiceTreeDecomposition ntd = nicify(td, union_graph(inst));
        TwdpOptions opts;
        opts.threads = threads;
        opts.table_budget = budget;
        opts.deadline = deadline;
        opts.trace = trace;
        run.result = solve_twdp(inst, ntd, opts);
        run.stat1 = std::to_string(run.result.stats.max_table_size);
        run.stat2 = std::to_string(run.result.stats.table_count);
    } else {
        throw Error("unknown algorithm " + algo);
    }
    return run;
}

std::string pick_auto(const InstanceFile& file, const std::string& td_path) {
    std::size_t k = file.inst.g.vertex_count() - file.inst.h.vertex_count();
    if (k <= 4) return "bruteforce";
    if (!td_path.empty()) return "twdp";
    return "branch";
}

int cmd_solve(const std::string& instance_path, std::string algo, const std::string& td_path,
              const std::string& cert_path, const std::string& stats_path,
              const std::string& trace_path, std::uint64_t budget, int threads,
              bool paper_faithful, double timeout_sec, std::ostream& out, std::ostream& err) {
    InstanceFile file = read_lcp_file(instance_path);
    if (!td_path.empty() && algo != "twdp" && algo != "auto")
        throw Error("--td is only meaningful with --algo twdp");
    if (algo == "auto") algo = pick_auto(file, td_path);
    if (!td_path.empty() && algo != "twdp") throw Error("--td is only meaningful with --algo twdp");
    if (!trace_path.empty() && algo != "twdp") throw Error("--trace is only meaningful with twdp");

    Deadline deadline;
    if (timeout_sec > 0)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(timeout_sec));

    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!trace_path.empty()) {
        if (trace_path == "-") {
            trace = &err;
        } else {
            trace_file.open(trace_path);
            if (!trace_file) throw Error("cannot write trace file " + trace_path);
            trace = &trace_file;
        }
    }

    AlgoRun run = run_algo(algo, file, td_path, budget, threads, paper_faithful, deadline, trace);
    out << (run.result.yes ? "YES" : "NO") << '\n';

    if (!cert_path.empty()) {
        if (run.result.yes) {
            ContractionSequence seq =
                witness_to_sequence(*run.result.certificate, file.inst.g);
            write_certificate_file(cert_path, Certificate{seq});
        } else {
            err << "no certificate: answer is NO\n";
        }
    }
    if (!stats_path.empty()) {
        std::ofstream sf(stats_path);
        if (!sf) throw Error("cannot write stats file " + stats_path);
        const SolveStats& st = run.result.stats;
        sf << "algo " << algo << '\n'
           << "answer " << (run.result.yes ? "YES" : "NO") << '\n'
           << "ms " << st.elapsed_ms << '\n'
           << "partitions_examined " << st.partitions_examined << '\n'
           << "nodes_explored " << st.nodes_explored << '\n'
           << "max_branching " << st.max_branching << '\n'
           << "depth " << st.depth << '\n'
           << "colors_used " << st.colors_used << '\n'
           << "max_table_size " << st.max_table_size << '\n'
           << "table_count " << st.table_count << '\n';
    }
    return run.result.yes ? 0 : 1;
}

int cmd_check(const std::string& instance_path, const std::string& cert_path, std::ostream& out,
              std::ostream& err) {
    InstanceFile file = read_lcp_file(instance_path);
    Certificate cert = read_certificate_file(cert_path);
    if (const auto* seq = std::get_if<ContractionSequence>(&cert)) {
        try {
            LabeledGraph result = apply_sequence(file.inst.g, *seq);
            if (result == file.inst.h) {
                out << "certificate valid\n";
                return 0;
            }
            err << "sequence applies but the result differs from H\n";
            return 1;
        } catch (const InvalidStepError& e) {
            err << e.what() << '\n';
            return 1;
        }
    }
    const auto& wit = std::get<WitnessStructure>(cert);
    try {
        ValidityReport rep = check_witness(file.inst, wit);
        if (rep.valid) {
            out << "certificate valid\n";
            return 0;
        }
        for (const auto& v : rep.violations) err << v << '\n';
        return 1;
    } catch (const NotAPartitionError& e) {
        err << e.what() << '\n';
        return 1;
    } catch (const RepresentativeMismatchError& e) {
        err << e.what() << '\n';
        return 1;
    }
}

// exhaustive helpers used by generate --emit-cert for the search families

std::optional<std::set<int>> find_pvc_cover(const PvcInstance& p) {
    std::vector<int> verts = p.graph.vertices();
    if (verts.size() > 20) throw Error("--emit-cert pvc search limited to 20 vertices");
    std::map<int, int> part_of;
    for (std::size_t i = 0; i < p.partition.size(); ++i)
        for (int v : p.partition[i]) part_of[v] = static_cast<int>(i);
    for (std::uint32_t mask = 0; mask < (1u << verts.size()); ++mask) {
        std::set<int> cover;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if ((mask >> i) & 1) cover.insert(verts[i]);
        bool ok = true;
        for (auto [u, v] : p.graph.edges())
            if (!cover.count(u) && !cover.count(v)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int> used(p.partition.size(), 0);
        for (int v : cover) ++used[part_of[v]];
        for (std::size_t i = 0; i < p.partition.size() && ok; ++i)
            if (used[i] > p.budgets[i]) ok = false;
        if (ok) return cover;
    }
    return std::nullopt;
}

std::optional<std::vector<std::pair<int, int>>> find_cross_matching(
    const CrossMatchingInstance& cm) {
    std::vector<int> a(cm.side_a.begin(), cm.side_a.end());
    if (a.size() > 12) throw Error("--emit-cert crossmatch search limited to 12 pairs");
    std::vector<int> b(cm.side_b.begin(), cm.side_b.end());
    std::vector<bool> used(b.size(), false);
    std::vector<std::pair<int, int>> matching;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == a.size()) {
            LabeledGraph contracted = cm.graph;
            for (auto [av, bv] : matching) contracted = contract_edge(contracted, av, bv);
            auto verts = contracted.vertices();
            for (std::size_t p = 0; p < verts.size(); ++p)
                for (std::size_t q = p + 1; q < verts.size(); ++q)
                    if (!contracted.has_edge(verts[p], verts[q])) return false;
            return true;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j] || !cm.graph.has_edge(a[i], b[j])) continue;
            used[j] = true;
            matching.emplace_back(a[i], b[j]);
            if (self(self, i + 1)) return true;
            matching.pop_back();
            used[j] = false;
        }
        return false;
    };
    if (rec(rec, 0)) return matching;
    return std::nullopt;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& algos, double timeout_sec,
              const std::string& out_path, std::uint64_t budget, int threads, std::ostream& out,
              std::ostream& err) {
    std::vector<std::string> paths;
    if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir);
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".lcp")
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw Error("no .lcp instances in " + dir);

    std::ofstream csv_file;
    std::ostream* csv = &out;
    if (!out_path.empty()) {
        csv_file.open(out_path);
        if (!csv_file) throw Error("cannot write " + out_path);
        csv = &csv_file;
    }
    *csv << "instance,algo,answer,ms,stat1,stat2,verified\n";

    for (const std::string& path : paths) {
        InstanceFile file = read_lcp_file(path);
        std::optional<bool> agreed;
        for (const std::string& algo : algos) {
            Deadline deadline = std::chrono::steady_clock::now() +
                                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(timeout_sec));
            auto t0 = std::chrono::steady_clock::now();
            std::string answer, stat1, stat2, verified;
            std::optional<bool> yes;
            try {
                AlgoRun run = run_algo(algo, file, "", budget, threads, false, deadline, nullptr);
                yes = run.result.yes;
                answer = run.result.yes ? "YES" : "NO";
                stat1 = run.stat1;
                stat2 = run.stat2;
                if (run.result.yes) {
                    bool ok = check_witness(file.inst, *run.result.certificate).valid;
                    verified = ok ? "1" : "0";
                    if (!ok) {
                        err << "certificate verification failed: " << path << " (" << algo << ")\n";
                        return 4;
                    }
                }
            } catch (const TimeoutError&) {
                answer = "timeout";
            } catch (const BudgetExceededError&) {
                answer = "budget";
            }
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                  t0)
                            .count();
            *csv << path << ',' << algo << ',' << answer << ',' << ms << ',' << stat1 << ','
                 << stat2 << ',' << verified << '\n';
            if (yes) {
                if (agreed && *agreed != *yes) {
                    err << "solver disagreement on " << path << ": minimized repro at " << path
                        << '\n';
                    return 4;
                }
                agreed = *yes;
            }
        }
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"labeled contractibility solver suite"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "decide whether H is a labeled contraction of G");
    std::string instance_path, algo = "auto", td_path, cert_path, stats_path, trace_path;
    std::uint64_t budget = 100'000'000;
    int threads = 1;
    bool paper_faithful = false;
    double timeout_sec = 0;
    solve->add_option("instance", instance_path, "instance file (.lcp)")->required();
    solve->add_option("--algo", algo, "bruteforce|branch|twdp|auto")
        ->check(CLI::IsMember({"bruteforce", "branch", "twdp", "auto"}));
    solve->add_option("--td", td_path, "PACE .td decomposition (twdp only)");
    solve->add_option("--cert", cert_path, "write certificate here on YES");
    solve->add_option("--stats", stats_path, "write run statistics here");
    solve->add_option("--trace", trace_path, "twdp table dump ('-' for stderr)");
    solve->add_option("--budget", budget, "partition/node/table budget");
    solve->add_option("--threads", threads, "worker threads");
    solve->add_flag("--paper-faithful", paper_faithful, "disable bruteforce prefix pruning");
    solve->add_option("--timeout", timeout_sec, "wall-clock limit in seconds");

    // check
    auto* check = app.add_subcommand("check", "validate a certificate against an instance");
    std::string check_instance, check_cert;
    check->add_option("instance", check_instance)->required();
    check->add_option("certificate", check_cert)->required();

    // generate
    auto* generate = app.add_subcommand("generate", "produce instances from the reductions");
    generate->require_subcommand(1);
    std::string gen_out, gen_cert, cnf_path, input_path, mode = "yes";
    int rnd_n = 8, rnd_k = 3;
    std::uint64_t rnd_seed = 1;
    auto* g_random = generate->add_subcommand("random", "random contraction instance");
    g_random->add_option("--n", rnd_n, "vertices in G");
    g_random->add_option("--k", rnd_k, "number of contractions");
    g_random->add_option("--seed", rnd_seed, "rng seed");
    g_random->add_option("--mode", mode, "yes|perturbed")
        ->check(CLI::IsMember({"yes", "perturbed"}));
    auto* g_1in3 = generate->add_subcommand("1in3sat", "1-in-3-SAT reduction");
    g_1in3->add_option("--cnf", cnf_path, "DIMACS CNF input")->required();
    auto* g_nae = generate->add_subcommand("nae34", "Positive-NAE-(3,4)-SAT reduction");
    g_nae->add_option("--cnf", cnf_path, "DIMACS CNF input")->required();
    auto* g_cm = generate->add_subcommand("crossmatch", "Cross Matching reduction");
    g_cm->add_option("--input", input_path, "cross-matching instance")->required();
    auto* g_pvc = generate->add_subcommand("pvc", "Sub-Cubic PVC reduction");
    g_pvc->add_option("--input", input_path, "PVC instance")->required();
    for (auto* sub : {g_random, g_1in3, g_nae, g_cm, g_pvc}) {
        sub->add_option("-o,--out", gen_out, "output instance path")->required();
        sub->add_option("--emit-cert", gen_cert, "also write the forward certificate here");
    }

    // decompose
    auto* decompose = app.add_subcommand("decompose", "tree decomposition of G union H");
    std::string dec_instance, dec_out;
    decompose->add_option("instance", dec_instance)->required();
    decompose->add_option("-o,--out", dec_out, "output .td path")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run algorithms over a corpus");
    std::string bench_dir, bench_algos = "bruteforce,branch,twdp", bench_out;
    double bench_timeout = 60;
    bench->add_option("--dir", bench_dir, "corpus directory of .lcp files")->required();
    bench->add_option("--algos", bench_algos, "comma-separated algorithm list");
    bench->add_option("--timeout", bench_timeout, "per-run timeout in seconds");
    bench->add_option("--out", bench_out, "CSV output path (default stdout)");
    bench->add_option("--budget", budget, "per-run budget");
    bench->add_option("--threads", threads, "worker threads");

    std::vector<const char*> argv;
    argv.push_back("lc");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, algo, td_path, cert_path, stats_path, trace_path,
                             budget, threads, paper_faithful, timeout_sec, out, err);
        if (check->parsed()) return cmd_check(check_instance, check_cert, out, err);
        if (decompose->parsed()) {
            InstanceFile file = read_lcp_file(dec_instance);
            LabeledGraph uni = union_graph(file.inst);
            TreeDecomposition td = heuristic_decompose(uni);
            ValidityReport rep = validate(td, uni);
            if (!rep.valid) throw Error("internal: heuristic decomposition invalid");
            write_pace_td_file(dec_out, td, file.g_vertex_order);
            out << "width " << rep.width << '\n';
            return 0;
        }
        if (generate->parsed()) {
            InstancePair inst{LabeledGraph{}, LabeledGraph{}};
            std::optional<ContractionSequence> cert;
            if (g_random->parsed()) {
                RandomInstance r = gen_random(
                    rnd_n, rnd_k, rnd_seed,
                    mode == "yes" ? RandomMode::Yes : RandomMode::Perturbed);
                inst = std::move(r.inst);
                cert = std::move(r.certificate);
            } else if (g_1in3->parsed()) {
                CnfFormula f = read_dimacs_file(cnf_path);
                inst = gen_from_1in3sat(f);
                if (!gen_cert.empty()) {
                    SatResult sr = sat_bruteforce(f, SatSemantics::OneInThree);
                    if (!sr.sat) throw Error("no certificate: formula is not 1-in-3 satisfiable");
                    cert = certificate_from_assignment(f, sr.assignment, CertFamily::OneInThree);
                }
            } else if (g_nae->parsed()) {
                CnfFormula f = read_dimacs_file(cnf_path);
                inst = gen_from_nae34sat(f);
                if (!gen_cert.empty()) {
                    SatResult sr = sat_bruteforce(f, SatSemantics::Nae);
                    if (!sr.sat) throw Error("no certificate: formula is not NAE satisfiable");
                    cert = certificate_from_assignment(f, sr.assignment, CertFamily::Nae34);
                }
            } else if (g_cm->parsed()) {
                CrossMatchingInstance cm = read_crossmatching_file(input_path);
                inst = gen_from_crossmatching(cm);
                if (!gen_cert.empty()) {
                    auto matching = find_cross_matching(cm);
                    if (!matching) throw Error("no certificate: no valid cross matching");
                    ContractionSequence seq;
                    for (auto [a, b] : *matching) seq.pairs.emplace_back(a, b);
                    cert = std::move(seq);
                }
            } else if (g_pvc->parsed()) {
                PvcInstance p = read_pvc_file(input_path);
                inst = gen_from_pvc(p);
                if (!gen_cert.empty()) {
                    auto cover = find_pvc_cover(p);
                    if (!cover) throw Error("no certificate: PVC instance has no solution");
                    cert = pvc_certificate(p, *cover);
                }
            }
            write_lcp_file(gen_out, inst);
            if (!gen_cert.empty()) {
                if (!cert) throw Error("no certificate available for this family/mode");
                if (apply_sequence(inst.g, *cert) != inst.h)
                    throw Error("internal: forward certificate does not replay to H");
                write_certificate_file(gen_cert, Certificate{*cert});
            }
            return 0;
        }
    } catch (const BudgetExceededError& e) {
        err << e.what() << '\n';
        return 3;
    } catch (const TimeoutError& e) {
        err << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 2;
    }

    if (bench->parsed()) {
        try {
            std::vector<std::string> algos;
            std::stringstream ss(bench_algos);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) algos.push_back(item);
            return cmd_bench(bench_dir, algos, bench_timeout, bench_out, budget, threads, out,
                             err);
        } catch (const Error& e) {
            err << e.what() << '\n';
            return 2;
        }
    }
    return 2;
}

} // namespace lc
