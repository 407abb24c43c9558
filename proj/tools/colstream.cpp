// colstream: drive the column-streaming convolution engine simulator from
// the command line. Subcommands: sim, compare, eval, schedule, spares.
// Exit codes: 0 success, 2 invalid arguments or unsupported configuration,
// 3 engine-vs-oracle verification failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "colstream/colstream.hpp"

namespace {

using namespace colstream;

int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "colstream: cannot open output file '" << path << "'\n";
        return 2;
    }
    fn(os);
    return 0;
}

struct SimOptions {
    int n = 227;
    int k = 0;
    int stride = 1;
    int channels = 1;
    int filters = 1;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_sim(const SimOptions& opt) {
    // Mirror the engine's stride gate before generating any data.
    if (opt.stride != 1)
        throw UnsupportedStrideError("sim: stride " + std::to_string(opt.stride) +
                                     " unsupported, engine streams stride 1 only");

    SplitMix64 rng(opt.seed);
    std::vector<FeatureMap> inputs;
    inputs.reserve(opt.channels);
    for (int c = 0; c < opt.channels; ++c) inputs.push_back(random_feature_map(opt.n, rng));
    const FilterSet filters = random_filter_set(opt.filters, opt.channels, opt.k, rng);

    const VerificationReport v = verify_against_oracle(inputs, filters);
    const std::string line = "cycles=" + std::to_string(v.engine.total_cycles) +
                             " verified=" + (v.equal ? "true" : "false") + "\n";
    const int rc = with_output(opt.out, [&](std::ostream& os) { os << line; });
    if (rc != 0) return rc;
    return v.equal ? 0 : 3;
}

struct CompareOptions {
    int n = 227;
    int k_min = 3;
    int k_max = 11;
    std::string format = "csv";
    std::string out;
    std::string svg;
};

int cmd_compare(const CompareOptions& opt) {
    const std::vector<ComparisonRow> rows = compare_sweep(opt.n, opt.k_min, opt.k_max);

    const int rc = with_output(opt.out, [&](std::ostream& os) {
        if (opt.format == "jsonl") {
            for (const ComparisonRow& r : rows) {
                nlohmann::ordered_json j;
                j["k"] = r.k;
                j["cycles_this"] = r.cycles_this;
                j["cycles_baseline"] = r.cycles_baseline;
                j["ratio"] = r.ratio;
                j["classification"] = verdict_name(r.classification);
                j["padded_elements_baseline"] = r.padded_elements_baseline;
                os << j.dump() << "\n";
            }
        } else {
            write_comparison_csv(os, rows);
        }
    });
    if (rc != 0) return rc;

    for (const ComparisonRow& r : rows)
        std::cerr << "k=" << r.k << ' ' << verdict_name(r.classification) << " (this=" << r.cycles_this
                  << " baseline=" << r.cycles_baseline << ")\n";

    if (!opt.svg.empty()) {
        std::ofstream os(opt.svg, std::ios::binary);
        if (!os) {
            std::cerr << "colstream: cannot open svg output file '" << opt.svg << "'\n";
            return 2;
        }
        os << comparison_svg(rows);
    }
    return 0;
}

struct EvalOptions {
    double normalize_to = 0;  // 0 = no normalization requested
    std::string dataset;
    std::string format = "csv";
    std::string out;
};

int cmd_eval(const EvalOptions& opt) {
    std::vector<AcceleratorRecord> records;
    if (opt.dataset.empty()) {
        records = builtin_dataset();
    } else {
        std::ifstream is(opt.dataset);
        if (!is) {
            std::cerr << "colstream: cannot read dataset file '" << opt.dataset << "'\n";
            return 2;
        }
        records = read_records_csv(is);
    }

    struct Row {
        const AcceleratorRecord* rec;
        double computed_e;
    };
    std::vector<Row> rows;
    rows.reserve(records.size());
    for (const AcceleratorRecord& rec : records) rows.push_back({&rec, evaluation_value(rec)});
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.computed_e > b.computed_e; });

    const bool normalized = opt.normalize_to > 0;
    std::vector<AcceleratorRecord> scaled;
    if (normalized) scaled = normalize(records, opt.normalize_to);
    auto scaled_of = [&](const AcceleratorRecord* rec) -> const AcceleratorRecord& {
        return scaled[static_cast<std::size_t>(rec - records.data())];
    };

    return with_output(opt.out, [&](std::ostream& os) {
        if (opt.format == "jsonl") {
            for (const Row& row : rows) {
                nlohmann::ordered_json j;
                j["name"] = row.rec->name;
                j["computed_e"] = row.computed_e;
                if (row.rec->paper_e) {
                    j["paper_e"] = *row.rec->paper_e;
                    j["delta"] = std::abs(row.computed_e - *row.rec->paper_e) / *row.rec->paper_e;
                } else {
                    j["paper_e"] = nullptr;
                    j["delta"] = nullptr;
                }
                if (normalized) {
                    const AcceleratorRecord& s = scaled_of(row.rec);
                    j["norm_compute_gops"] = s.compute_gops;
                    j["norm_power_w"] = s.power_w;
                    j["norm_area_mm2"] = s.area_mm2;
                }
                os << j.dump() << "\n";
            }
        } else {
            os << "name,computed_e,paper_e,delta";
            if (normalized) os << ",norm_compute_gops,norm_power_w,norm_area_mm2";
            os << "\n";
            for (const Row& row : rows) {
                os << row.rec->name << ',' << format_double(row.computed_e) << ',';
                if (row.rec->paper_e) {
                    os << format_double(*row.rec->paper_e) << ','
                       << format_double(std::abs(row.computed_e - *row.rec->paper_e) / *row.rec->paper_e);
                } else {
                    os << ',';
                }
                if (normalized) {
                    const AcceleratorRecord& s = scaled_of(row.rec);
                    os << ',' << format_double(s.compute_gops) << ',' << format_double(s.power_w) << ','
                       << format_double(s.area_mm2);
                }
                os << "\n";
            }
        }
    });
}

struct ScheduleOptions {
    int n = 227;
    int k = 0;
    int pass = 0;
    std::string out;
};

int cmd_schedule(const ScheduleOptions& opt) {
    const StreamSchedule sched = build_schedule(opt.n, opt.k);
    if (opt.pass < 0 || opt.pass >= sched.pass_count())
        throw std::invalid_argument("schedule: pass " + std::to_string(opt.pass) + " outside [0, " +
                                    std::to_string(sched.pass_count()) + ")");
    return with_output(opt.out, [&](std::ostream& os) { write_schedule_jsonl(os, sched, opt.pass); });
}

struct SparesOptions {
    int k = 0;
    int height = 11;
    std::string out;
};

int cmd_spares(const SparesOptions& opt) {
    const SpareReport r = spare_pe_report(opt.height, opt.k);
    return with_output(opt.out, [&](std::ostream& os) {
        os << "k=" << r.k << " H=" << r.physical_col_height << " logical_cols=" << r.logical_cols_per_physical
           << " spare_pes=" << r.spare_pes_per_physical_col << " utilization=" << format_double(r.utilization)
           << "\n";
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"column-streaming convolution engine simulator and analysis toolkit"};
    app.require_subcommand(1);

    SimOptions sim;
    CLI::App* sim_cmd = app.add_subcommand("sim", "run the engine on seeded random inputs and verify against the direct-convolution oracle");
    sim_cmd->add_option("--n", sim.n, "input feature map height/width")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--k", sim.k, "kernel size")->required()->check(CLI::Range(1, 1024));
    sim_cmd->add_option("--stride", sim.stride, "convolution stride")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--channels", sim.channels, "input channels C")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--filters", sim.filters, "output filters F")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "generator seed");
    sim_cmd->add_option("--out", sim.out, "write the result line to this file instead of stdout");

    CompareOptions cmp;
    CLI::App* cmp_cmd = app.add_subcommand("compare", "cycle comparison sweep against the zero-padding baseline");
    cmp_cmd->add_option("--n", cmp.n, "input feature map height/width")->check(CLI::PositiveNumber);
    cmp_cmd->add_option("--kmin", cmp.k_min, "first kernel size of the sweep");
    cmp_cmd->add_option("--kmax", cmp.k_max, "last kernel size of the sweep");
    cmp_cmd->add_option("--format", cmp.format, "output format")->check(CLI::IsMember({"csv", "jsonl"}));
    cmp_cmd->add_option("--out", cmp.out, "write the table to this file instead of stdout");
    cmp_cmd->add_option("--svg", cmp.svg, "also render a two-series line chart to this file");

    EvalOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "prior-art evaluation metric E = compute / (power * area)");
    eval_cmd->add_option("--normalize-to", eval.normalize_to, "also report records linearly scaled to this compute grade (GOPs)")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--dataset", eval.dataset, "record CSV to evaluate instead of the builtin survey table");
    eval_cmd->add_option("--format", eval.format, "output format")->check(CLI::IsMember({"csv", "jsonl"}));
    eval_cmd->add_option("--out", eval.out, "write the table to this file instead of stdout");

    ScheduleOptions sched;
    CLI::App* sched_cmd = app.add_subcommand("schedule", "dump one pass of the element-injection schedule as JSON lines");
    sched_cmd->add_option("--n", sched.n, "input feature map height/width")->check(CLI::PositiveNumber);
    sched_cmd->add_option("--k", sched.k, "kernel size")->required()->check(CLI::Range(1, 1024));
    sched_cmd->add_option("--pass", sched.pass, "filter-column pass to dump");
    sched_cmd->add_option("--out", sched.out, "write events to this file instead of stdout");

    SparesOptions spares;
    CLI::App* spares_cmd = app.add_subcommand("spares", "spare-PE utilization of a physical PE column");
    spares_cmd->add_option("--k", spares.k, "kernel size")->required()->check(CLI::Range(1, 1024));
    spares_cmd->add_option("--H", spares.height, "physical PE column height")->check(CLI::PositiveNumber);
    spares_cmd->add_option("--out", spares.out, "write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sim_cmd->parsed()) return cmd_sim(sim);
        if (cmp_cmd->parsed()) return cmd_compare(cmp);
        if (eval_cmd->parsed()) return cmd_eval(eval);
        if (sched_cmd->parsed()) return cmd_schedule(sched);
        if (spares_cmd->parsed()) return cmd_spares(spares);
    } catch (const std::invalid_argument& e) {
        std::cerr << "colstream: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "colstream: internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
