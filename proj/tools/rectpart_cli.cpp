#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rectpart/instances.hpp"
#include "rectpart/registry.hpp"

using namespace rectpart;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // invalid partition, infeasible request
constexpr int kExitUsage = 2;   // bad flags, unparsable files

Orientation parse_orientation(const std::string &s) {
    if (s == "hor") return Orientation::kHor;
    if (s == "ver") return Orientation::kVer;
    if (s == "best") return Orientation::kBest;
    throw algos::UsageError("unknown orientation: " + s);
}

HierVariant parse_variant(const std::string &s) {
    if (s == "load") return HierVariant::kLoad;
    if (s == "dist") return HierVariant::kDist;
    if (s == "hor") return HierVariant::kHor;
    if (s == "ver") return HierVariant::kVer;
    throw algos::UsageError("unknown variant: " + s);
}

std::vector<int> parse_int_list(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

void print_stats_line(const PartitionStats &st) {
    std::printf("lmax=%llu lavg=%.6f imbalance=%.6f runtime_ms=%.3f\n",
                static_cast<unsigned long long>(st.lmax), st.lavg(), st.imbalance(),
                st.runtime_ms);
}

struct GenerateArgs {
    std::string kind = "uniform";
    int n1 = 0, n2 = 0;
    double delta = 1.0;
    int peaks = 3;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs &a) {
    GenSpec spec;
    spec.kind = gen_kind_from_string(a.kind);
    spec.n1 = a.n1;
    spec.n2 = a.n2;
    spec.delta = a.delta;
    spec.peaks = a.peaks;
    spec.seed = a.seed;
    LoadMatrix m = generate(spec);
    write_matrix(m, a.out);
    std::cout << spec.describe() << " -> " << a.out << "\n";
    return kExitOk;
}

struct PartitionArgs {
    std::string matrix, algo, out;
    int m = 1;
    int P = 0, Q = 0;
    std::string orientation = "best";
    std::string variant = "load";
    int min_P = 0;
    std::string phase1 = "hier-relaxed";
    std::string phase2_fast = "jag-m-heur-probe";
    std::string phase2_slow = "jag-m-opt";
    std::string stripe_procs;
};

int cmd_partition(const PartitionArgs &a) {
    LoadMatrix matrix = read_matrix(a.matrix);
    PrefixSum2D ps = build_prefix_sum(matrix);
    algos::Params p;
    p.m = a.m;
    p.P = a.P;
    p.Q = a.Q;
    p.orientation = parse_orientation(a.orientation);
    p.variant = parse_variant(a.variant);
    p.min_P = a.min_P;
    p.phase1 = a.phase1;
    p.phase2_fast = a.phase2_fast;
    p.phase2_slow = a.phase2_slow;
    if (!a.stripe_procs.empty()) p.stripe_procs = parse_int_list(a.stripe_procs);
    algos::RunResult r = algos::run_algorithm(a.algo, ps, p);
    if (!a.out.empty()) write_partition(r.partition, a.out);
    PartitionStats st = evaluate_partition(ps, r.partition);
    st.runtime_ms = r.runtime_ms;
    print_stats_line(st);
    return kExitOk;
}

int cmd_evaluate(const std::string &matrix_path, const std::string &partition_path) {
    LoadMatrix matrix = read_matrix(matrix_path);
    Partition p = read_partition(partition_path);
    if (p.n1 != matrix.n1() || p.n2 != matrix.n2())
        throw ParseError("partition dimensions do not match the matrix", 1);
    PrefixSum2D ps = build_prefix_sum(matrix);
    print_stats_line(evaluate_partition(ps, p));
    return kExitOk;
}

int cmd_validate(const std::string &partition_path, const std::string &matrix_path) {
    Partition p = read_partition(partition_path);
    if (!matrix_path.empty()) {
        LoadMatrix matrix = read_matrix(matrix_path);
        if (p.n1 != matrix.n1() || p.n2 != matrix.n2())
            throw ParseError("partition dimensions do not match the matrix", 1);
    }
    ValidationReport rep = validate_partition(p);
    if (rep.ok()) {
        std::cout << "valid\n";
        return kExitOk;
    }
    for (const auto &v : rep.violations) std::cout << v.message() << "\n";
    return kExitDomain;
}

struct BenchmarkArgs {
    std::string algos_csv;
    std::string m_list = "";
    std::string seeds = "1,2,3,4,5,6,7,8,9,10";
    std::string kind = "uniform";
    int n1 = 512, n2 = 512;
    double delta = 1.2;
    int peaks = 3;
    std::vector<std::string> matrix_files;
    std::string out;
};

std::vector<int> default_m_list() {
    std::vector<int> out;
    for (int s = 4; s * s <= 10000; ++s) out.push_back(s * s);
    return out;
}

struct CsvValue {
    bool present = false;
    double value = 0;
};

void csv_row(std::ostream &os, const std::string &instance, const std::string &algo,
             const std::string &variant, int m, int P, int Q, const CsvValue &lmax,
             const CsvValue &lavg, const CsvValue &imb, const CsvValue &rt,
             const std::string &seed) {
    os << instance << ',' << algo << ',' << variant << ',' << m << ',';
    if (P > 0) os << P;
    os << ',';
    if (Q > 0) os << Q;
    os << ',';
    if (lmax.present) os << static_cast<unsigned long long>(lmax.value);
    os << ',';
    if (lavg.present) os << lavg.value;
    os << ',';
    if (imb.present) os << imb.value;
    os << ',';
    if (rt.present) os << rt.value;
    os << ',' << seed << '\n';
}

int cmd_benchmark(const BenchmarkArgs &a) {
    std::vector<std::string> algo_ids =
        a.algos_csv.empty()
            ? std::vector<std::string>{"rect-uniform", "rect-nicol", "jag-pq-heur",
                                       "jag-m-heur", "jag-m-heur-probe", "hier-rb",
                                       "hier-relaxed"}
            : split_list(a.algos_csv);
    for (const auto &id : algo_ids)
        if (!algos::is_known_algorithm(id)) throw algos::UsageError("unknown algorithm: " + id);
    std::vector<int> ms = a.m_list.empty() ? default_m_list() : parse_int_list(a.m_list);
    std::vector<int> seeds = parse_int_list(a.seeds);

    struct Instance {
        std::string id;
        std::uint64_t seed;
        PrefixSum2D ps;
    };
    std::vector<Instance> instances;
    if (!a.matrix_files.empty()) {
        for (const auto &f : a.matrix_files)
            instances.push_back({f, 0, build_prefix_sum(read_matrix(f))});
    } else {
        GenSpec spec;
        spec.kind = gen_kind_from_string(a.kind);
        spec.n1 = a.n1;
        spec.n2 = a.n2;
        spec.delta = a.delta;
        spec.peaks = a.peaks;
        std::ostringstream base;
        base << a.kind << '-' << a.n1 << 'x' << a.n2;
        if (spec.kind == GenKind::kUniform) base << "-d" << a.delta;
        for (int s : seeds) {
            spec.seed = static_cast<std::uint64_t>(s);
            instances.push_back({base.str(), spec.seed, build_prefix_sum(generate(spec))});
        }
    }

    std::ofstream csv(a.out);
    if (!csv) throw Error("cannot write " + a.out);
    csv << "instance,algo,variant,m,P,Q,lmax,lavg,imbalance,runtime_ms,seed\n";

    struct AggKey {
        std::string instance, algo;
        int m;
    };
    struct Agg {
        Load lmax_sum = 0;
        Load total_sum = 0;
        double rt_sum = 0;
        int runs = 0;
        std::string variant;
        int P = 0, Q = 0;
    };
    std::vector<std::pair<AggKey, Agg>> aggs;
    auto agg_of = [&](const std::string &inst, const std::string &algo, int m) -> Agg & {
        for (auto &kv : aggs)
            if (kv.first.instance == inst && kv.first.algo == algo && kv.first.m == m)
                return kv.second;
        aggs.push_back({AggKey{inst, algo, m}, Agg{}});
        return aggs.back().second;
    };

    for (const auto &inst : instances) {
        for (const auto &algo : algo_ids) {
            for (int m : ms) {
                algos::Params p;
                p.m = m;
                const std::string seed_str = std::to_string(inst.seed);
                try {
                    algos::RunResult r = algos::run_algorithm(algo, inst.ps, p);
                    PartitionStats st = evaluate_partition(inst.ps, r.partition);
                    st.runtime_ms = r.runtime_ms;
                    csv_row(csv, inst.id, algo, r.variant_used, m, r.P_used, r.Q_used,
                            {true, static_cast<double>(st.lmax)}, {true, st.lavg()},
                            {true, st.imbalance()}, {true, st.runtime_ms}, seed_str);
                    Agg &agg = agg_of(inst.id, algo, m);
                    agg.lmax_sum += st.lmax;
                    agg.total_sum += st.total;
                    agg.rt_sum += st.runtime_ms;
                    agg.runs += 1;
                    agg.variant = r.variant_used;
                    agg.P = r.P_used;
                    agg.Q = r.Q_used;
                } catch (const Error &e) {
                    std::cerr << "run failed: " << inst.id << " " << algo << " m=" << m << ": "
                              << e.what() << "\n";
                    csv_row(csv, inst.id, algo, "", m, 0, 0, {}, {}, {}, {}, seed_str);
                }
            }
        }
    }
    // aggregated rows: imbalance computed as sum(lmax)/sum(lavg) - 1 over the runs
    for (const auto &[key, agg] : aggs) {
        if (agg.runs == 0) continue;
        const double lavg_sum = static_cast<double>(agg.total_sum) / key.m;
        const double imb =
            lavg_sum > 0 ? static_cast<double>(agg.lmax_sum) / lavg_sum - 1.0 : 0.0;
        csv_row(csv, key.instance + "[agg" + std::to_string(agg.runs) + "]", key.algo,
                agg.variant, key.m, agg.P, agg.Q, {true, static_cast<double>(agg.lmax_sum)},
                {true, lavg_sum}, {true, imb}, {true, agg.rt_sum / agg.runs}, "");
    }
    std::cout << "wrote " << a.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"rectangular load-matrix partitioning toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App *cgen = app.add_subcommand("generate", "generate a synthetic load matrix");
    cgen->add_option("--kind", gen.kind, "uniform|diagonal|peak|multipeak");
    cgen->add_option("--n1", gen.n1, "rows")->required();
    cgen->add_option("--n2", gen.n2, "columns")->required();
    cgen->add_option("--delta", gen.delta, "max/min cell ratio (uniform)");
    cgen->add_option("--peaks", gen.peaks, "reference point count (multipeak)");
    cgen->add_option("--seed", gen.seed, "PRNG seed");
    cgen->add_option("--out", gen.out, "output matrix file")->required();

    PartitionArgs part;
    CLI::App *cpart = app.add_subcommand("partition", "partition a matrix file");
    cpart->add_option("--matrix", part.matrix, "matrix file")->required();
    cpart->add_option("--algo", part.algo, "algorithm id")->required();
    cpart->add_option("--m", part.m, "processor count")->required();
    cpart->add_option("--out", part.out, "output partition file");
    cpart->add_option("--p", part.P, "stripe / part count");
    cpart->add_option("--q", part.Q, "per-stripe processor count");
    cpart->add_option("--orientation", part.orientation, "hor|ver|best");
    cpart->add_option("--variant", part.variant, "load|dist|hor|ver");
    cpart->add_option("--min-p", part.min_P, "hybrid sweep floor");
    cpart->add_option("--phase1", part.phase1, "hybrid phase 1 algorithm");
    cpart->add_option("--phase2-fast", part.phase2_fast, "hybrid fast phase 2 algorithm");
    cpart->add_option("--phase2-slow", part.phase2_slow,
                      "hybrid slow phase 2 algorithm; 'none' disables");
    cpart->add_option("--stripe-procs", part.stripe_procs,
                      "comma list of per-stripe processor counts (jag-m-alloc)");

    std::string eval_matrix, eval_partition;
    CLI::App *ceval = app.add_subcommand("evaluate", "print stats of a partition file");
    ceval->add_option("--matrix", eval_matrix, "matrix file")->required();
    ceval->add_option("--partition", eval_partition, "partition file")->required();

    std::string val_partition, val_matrix;
    CLI::App *cval = app.add_subcommand("validate", "check a partition file");
    cval->add_option("--partition", val_partition, "partition file")->required();
    cval->add_option("--matrix", val_matrix, "matrix file (dimension check)");

    BenchmarkArgs bench;
    CLI::App *cbench = app.add_subcommand("benchmark", "sweep algorithms to CSV");
    cbench->add_option("--algos", bench.algos_csv, "comma list (default: main heuristics)");
    cbench->add_option("--m-list", bench.m_list,
                       "comma list of processor counts (default: squares 16..10000)");
    cbench->add_option("--seeds", bench.seeds, "comma list of seeds");
    cbench->add_option("--kind", bench.kind, "generator kind");
    cbench->add_option("--n1", bench.n1, "rows");
    cbench->add_option("--n2", bench.n2, "columns");
    cbench->add_option("--delta", bench.delta, "uniform delta");
    cbench->add_option("--peaks", bench.peaks, "multipeak count");
    cbench->add_option("--matrix", bench.matrix_files, "matrix files instead of a generator");
    cbench->add_option("--out", bench.out, "output CSV")->required();

    try {
        app.parse(argc, argv);
        if (*cgen) return cmd_generate(gen);
        if (*cpart) return cmd_partition(part);
        if (*ceval) return cmd_evaluate(eval_matrix, eval_partition);
        if (*cval) return cmd_validate(val_partition, val_matrix);
        if (*cbench) return cmd_benchmark(bench);
        return kExitUsage;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ResourceError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitDomain;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
