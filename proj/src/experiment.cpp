#include "dritz/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "dritz/svg.hpp"

namespace dritz {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kRecordsSchemaVersion = "1";

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
}

double parse_double(const std::string& s, const std::string& field) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid value for " + field + ": " + s);
    }
}

long parse_long(const std::string& s, const std::string& field) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid value for " + field + ": " + s);
    }
}

std::string write_file(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int ExperimentConfig::resolved_lattice_n() const {
    if (lattice_n > 0) return lattice_n;
    return problem == DomainKind::UnitSquare ? 500 : 160;
}

std::string ExperimentConfig::canonical_text() const {
    std::map<std::string, std::string> kv;
    kv["problem"] = make_domain(problem).name();
    std::string strat_list;
    for (const auto& s : strategies)
        strat_list += (strat_list.empty() ? "" : ",") + strategy_name(s);
    kv["strategies"] = strat_list;
    std::string lam_list;
    for (double l : lambdas)
        lam_list += (lam_list.empty() ? "" : ",") + fmt_double(l);
    kv["lambdas"] = lam_list;
    std::string dist_list;
    for (DistanceId d : distances)
        dist_list += (dist_list.empty() ? "" : ",") + distance_name(d);
    kv["distances"] = dist_list;
    kv["lambda_pre"] = fmt_double(lambda_pre);
    kv["repetitions"] = std::to_string(repetitions);
    kv["lattice_n"] = std::to_string(resolved_lattice_n());
    kv["iterations"] = std::to_string(iterations);
    kv["error_samples"] = std::to_string(error_samples);
    kv["base_seed"] = std::to_string(base_seed);
    kv["preset"] = preset;
    kv["monitor_every"] = std::to_string(monitor_every);
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string ExperimentConfig::hash() const {
    // FNV-1a 64
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') continue; // section
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (kv.count(key))
            throw std::invalid_argument("duplicate config key: " + key);
        kv[key] = value;
    }

    ExperimentConfig cfg;
    auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("preset")) {
        if (*v != "paper" && *v != "desk")
            throw std::invalid_argument("invalid value for preset: " + *v);
        cfg.preset = *v;
    }
    if (cfg.preset == "desk") {
        cfg.lattice_n = 40;
        cfg.repetitions = 5;
        cfg.error_samples = 100000;
    }
    if (auto v = take("problem")) cfg.problem = domain_kind_from_name(*v);
    if (auto v = take("strategies")) {
        cfg.strategies.clear();
        for (const std::string& tok : split(*v, ','))
            cfg.strategies.push_back(strategy_from_name(trim(tok)));
        if (cfg.strategies.empty())
            throw std::invalid_argument("strategies must be nonempty");
    }
    if (auto v = take("lambdas")) {
        cfg.lambdas.clear();
        for (const std::string& tok : split(*v, ','))
            cfg.lambdas.push_back(parse_double(trim(tok), "lambdas"));
    }
    if (auto v = take("distances")) {
        for (const std::string& tok : split(*v, ','))
            cfg.distances.push_back(distance_id_from_name(trim(tok)));
    }
    if (auto v = take("lambda_pre"))
        cfg.lambda_pre = parse_double(*v, "lambda_pre");
    if (auto v = take("repetitions"))
        cfg.repetitions = static_cast<int>(parse_long(*v, "repetitions"));
    if (auto v = take("lattice_n"))
        cfg.lattice_n = static_cast<int>(parse_long(*v, "lattice_n"));
    if (auto v = take("iterations")) cfg.iterations = parse_long(*v, "iterations");
    if (auto v = take("error_samples"))
        cfg.error_samples =
            static_cast<std::size_t>(parse_long(*v, "error_samples"));
    if (auto v = take("base_seed"))
        cfg.base_seed = static_cast<std::uint64_t>(parse_long(*v, "base_seed"));
    if (auto v = take("out")) cfg.out_dir = *v;
    if (auto v = take("monitor_every"))
        cfg.monitor_every = parse_long(*v, "monitor_every");
    if (!kv.empty())
        throw std::invalid_argument("unknown config key: " + kv.begin()->first);

    if (cfg.lambdas.empty())
        throw std::invalid_argument("lambdas must be nonempty");
    for (double l : cfg.lambdas)
        if (l <= 0.0)
            throw std::invalid_argument("lambdas must all be > 0");
    if (cfg.repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    if (cfg.lambda_pre <= 0.0)
        throw std::invalid_argument("lambda_pre must be > 0");
    for (DistanceId d : cfg.distances)
        if (distance_fn(d).domain != cfg.problem)
            throw std::invalid_argument("distances: " + distance_name(d) +
                                        " does not match problem " +
                                        make_domain(cfg.problem).name());
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return parse_experiment_config(read_file(path));
}

StrategyConfig plan_run(const ExperimentConfig& cfg, StrategyKind strategy,
                        std::optional<double> lambda,
                        std::optional<DistanceId> distance,
                        std::uint64_t seed) {
    const int N = cfg.resolved_lattice_n();
    const double scale = cfg.preset == "desk" ? 0.25 : 1.0;
    StrategyConfig c;
    switch (strategy) {
        case StrategyKind::Naive:
            c = naive_config(cfg.problem, lambda.value(), N, seed);
            c.main_iterations = cfg.iterations > 0
                                    ? cfg.iterations
                                    : std::lround(10000 * scale);
            break;
        case StrategyKind::PreTrain: {
            c = pretrain_config(cfg.problem, lambda.value(), N, seed);
            c.lambda_pre = cfg.lambda_pre;
            const long total =
                cfg.iterations > 0 ? cfg.iterations : std::lround(10000 * scale);
            // keep the 1000 : 3000 : 6000 phase proportions under scaling
            c.pre_schedule = LRSchedule{{{std::lround(total * 0.1), 0.01},
                                         {std::lround(total * 0.3), 0.001}}};
            c.main_iterations = total - c.pre_schedule.total_iterations();
            break;
        }
        case StrategyKind::ExactBC:
            c = exactbc_config(cfg.problem, distance.value(), N, seed);
            c.main_iterations = cfg.iterations > 0
                                    ? cfg.iterations
                                    : std::lround(10000 * scale);
            break;
    }
    return c;
}

namespace {

struct RunSlot {
    StrategyKind strategy;
    std::optional<double> lambda;
    std::optional<DistanceId> distance;
};

std::vector<RunSlot> build_plan(const ExperimentConfig& cfg) {
    std::vector<RunSlot> plan;
    for (StrategyKind s : cfg.strategies) {
        if (s == StrategyKind::ExactBC) {
            std::vector<DistanceId> ids = cfg.distances;
            if (ids.empty()) ids = distance_ids_for(cfg.problem);
            for (DistanceId d : ids)
                for (int r = 0; r < cfg.repetitions; ++r)
                    plan.push_back({s, std::nullopt, d});
        } else {
            for (double l : cfg.lambdas)
                for (int r = 0; r < cfg.repetitions; ++r)
                    plan.push_back({s, l, std::nullopt});
        }
    }
    return plan;
}

RunRecord execute_run(const ExperimentConfig& cfg, const RunSlot& slot,
                      long run_index, const std::string& config_hash) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(run_index);
    const StrategyConfig sc =
        plan_run(cfg, slot.strategy, slot.lambda, slot.distance, seed);
    const TrainedModel model = train(sc);

    RunRecord rec;
    rec.problem = make_domain(cfg.problem).name();
    rec.strategy = strategy_name(slot.strategy);
    if (slot.strategy == StrategyKind::PreTrain) {
        rec.lambda = slot.lambda;
        rec.lambda_pre = cfg.lambda_pre;
    } else if (slot.strategy == StrategyKind::Naive) {
        rec.lambda = slot.lambda;
    } else {
        rec.distance = distance_name(*slot.distance);
    }
    rec.seed = seed;
    rec.run_index = run_index;
    rec.failed = model.failed;
    rec.iterations = static_cast<long>(model.loss_trace.size());
    rec.wall_time_s = model.wall_time_s;
    rec.preset = cfg.preset;
    rec.config_hash = config_hash;
    if (!model.loss_trace.empty()) rec.final_loss = model.loss_trace.back();

    if (!model.failed) {
        const Problem prob = problem(cfg.problem);
        const ModelOracle oracle = trained_oracle(model);
        // MC seed pinned to the run index, disjoint from training seeds
        const std::uint64_t mc_seed =
            cfg.base_seed + 0x9000000000ull + static_cast<std::uint64_t>(run_index);
        const ErrorReport dir = relative_errors(
            oracle, prob.dirichlet_ref, prob.domain, cfg.error_samples, mc_seed);
        rec.rel_l2_dirichlet = dir.rel_l2;
        rec.rel_h1_dirichlet = dir.rel_h1;
        if (prob.has_robin && slot.lambda) {
            const ReferenceSolution robin =
                robin_solution(cfg.problem, *slot.lambda);
            const ErrorReport rob = relative_errors(
                oracle, robin, prob.domain, cfg.error_samples, mc_seed);
            rec.rel_l2_robin = rob.rel_l2;
            rec.rel_h1_robin = rob.rel_h1;
        }
    }
    return rec;
}

const char* kCsvHeader =
    "problem,strategy,lambda,lambda_pre,distance,seed,run_index,"
    "rel_l2_dirichlet,rel_h1_dirichlet,rel_l2_robin,rel_h1_robin,final_loss,"
    "failed,iterations,wall_time_s,preset,config_hash";

} // namespace

std::string record_to_csv_line(const RunRecord& r) {
    std::ostringstream ss;
    ss << r.problem << ',' << r.strategy << ',' << fmt_opt(r.lambda) << ','
       << fmt_opt(r.lambda_pre) << ',' << r.distance << ',' << r.seed << ','
       << r.run_index << ',' << fmt_opt(r.rel_l2_dirichlet) << ','
       << fmt_opt(r.rel_h1_dirichlet) << ',' << fmt_opt(r.rel_l2_robin) << ','
       << fmt_opt(r.rel_h1_robin) << ',' << fmt_opt(r.final_loss) << ','
       << (r.failed ? "true" : "false") << ',' << r.iterations << ','
       << fmt_double(r.wall_time_s) << ',' << r.preset << ',' << r.config_hash;
    return ss.str();
}

RunRecord record_from_csv_line(const std::string& line) {
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 17)
        throw std::invalid_argument("records CSV: expected 17 columns, got " +
                                    std::to_string(f.size()));
    auto opt = [](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        return parse_double(s, "records CSV field");
    };
    RunRecord r;
    r.problem = f[0];
    r.strategy = f[1];
    r.lambda = opt(f[2]);
    r.lambda_pre = opt(f[3]);
    r.distance = f[4];
    r.seed = static_cast<std::uint64_t>(parse_long(f[5], "seed"));
    r.run_index = parse_long(f[6], "run_index");
    r.rel_l2_dirichlet = opt(f[7]);
    r.rel_h1_dirichlet = opt(f[8]);
    r.rel_l2_robin = opt(f[9]);
    r.rel_h1_robin = opt(f[10]);
    r.final_loss = opt(f[11]);
    r.failed = f[12] == "true";
    r.iterations = parse_long(f[13], "iterations");
    r.wall_time_s = parse_double(f[14], "wall_time_s");
    r.preset = f[15];
    r.config_hash = f[16];
    return r;
}

std::string records_to_csv(std::span<const RunRecord> records,
                           const std::string& config_hash) {
    std::string out;
    out += std::string("# dritz records schema=") + kRecordsSchemaVersion + "\n";
    out += "# config_hash=" + config_hash + "\n";
    out += std::string(kCsvHeader) + "\n";
    for (const RunRecord& r : records) out += record_to_csv_line(r) + "\n";
    return out;
}

std::vector<RunRecord> records_from_csv(const std::string& csv_text) {
    std::vector<RunRecord> out;
    std::istringstream in(csv_text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kCsvHeader)
                throw std::invalid_argument("records CSV: unexpected header");
            header_seen = true;
            continue;
        }
        out.push_back(record_from_csv_line(line));
    }
    return out;
}

namespace {

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["problem"] = make_domain(cfg.problem).name();
    std::vector<std::string> strat;
    for (StrategyKind s : cfg.strategies) strat.push_back(strategy_name(s));
    j["strategies"] = strat;
    j["lambdas"] = cfg.lambdas;
    std::vector<std::string> dist;
    for (DistanceId d : cfg.distances) dist.push_back(distance_name(d));
    j["distances"] = dist;
    j["lambda_pre"] = cfg.lambda_pre;
    j["repetitions"] = cfg.repetitions;
    j["lattice_n"] = cfg.resolved_lattice_n();
    j["iterations"] = cfg.iterations;
    j["error_samples"] = cfg.error_samples;
    j["base_seed"] = cfg.base_seed;
    j["out"] = cfg.out_dir;
    j["preset"] = cfg.preset;
    j["monitor_every"] = cfg.monitor_every;
    j["config_hash"] = cfg.hash();
    j["schema"] = kRecordsSchemaVersion;
    return j;
}

std::optional<std::string> existing_hash(const std::string& records_path) {
    std::ifstream in(records_path);
    if (!in) return std::nullopt;
    std::string line;
    while (std::getline(in, line)) {
        const std::string prefix = "# config_hash=";
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
        if (!line.empty() && line[0] != '#') break;
    }
    return std::string(); // present but unhashed
}

} // namespace

std::vector<RunRecord> cmd_run(const ExperimentConfig& cfg, bool force,
                               int jobs) {
    const std::string hash = cfg.hash();
    const std::string records_path =
        (fs::path(cfg.out_dir) / "records.csv").string();
    if (const auto old = existing_hash(records_path)) {
        if (*old == hash && !force)
            return records_from_csv(read_file(records_path)); // up to date
        if (*old != hash && !force)
            throw std::runtime_error(
                records_path +
                " holds results of a different config; use --force to replace");
    }

    const std::vector<RunSlot> plan = build_plan(cfg);
    std::vector<RunRecord> records(plan.size());
    if (jobs < 1) jobs = 1;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> any_error{false};
    std::string first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= plan.size() || any_error.load()) return;
            try {
                records[i] = execute_run(cfg, plan[i], static_cast<long>(i), hash);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!any_error.exchange(true)) first_error = e.what();
                return;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (any_error.load()) throw std::runtime_error(first_error);

    write_file(records_path, records_to_csv(records, hash));
    write_file((fs::path(cfg.out_dir) / "config.json").string(),
               config_to_json(cfg).dump(2) + "\n");
    return records;
}

std::string format_mean_std(double mean, double std) {
    int exponent = 0;
    if (mean != 0.0)
        exponent = static_cast<int>(std::floor(std::log10(std::abs(mean))));
    const double scale = std::pow(10.0, exponent);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(%.2f +/- %.2f)e%+03d", mean / scale,
                  std / scale, exponent);
    return buf;
}

Summary summarize_records(std::span<const RunRecord> records) {
    if (records.empty())
        throw std::invalid_argument("summarize: no records");
    struct Group {
        std::string problem, strategy, group;
        std::vector<double> l2d, h1d, l2r, h1r;
        std::size_t n_failed = 0;
    };
    std::vector<Group> groups; // insertion order
    auto find_group = [&](const RunRecord& r) -> Group& {
        const std::string g =
            r.distance.empty() ? fmt_double(r.lambda.value_or(0.0)) : r.distance;
        for (Group& grp : groups)
            if (grp.problem == r.problem && grp.strategy == r.strategy &&
                grp.group == g)
                return grp;
        groups.push_back({r.problem, r.strategy, g, {}, {}, {}, {}, 0});
        return groups.back();
    };
    for (const RunRecord& r : records) {
        Group& g = find_group(r);
        if (r.failed) {
            ++g.n_failed;
            continue;
        }
        if (r.rel_l2_dirichlet) g.l2d.push_back(*r.rel_l2_dirichlet);
        if (r.rel_h1_dirichlet) g.h1d.push_back(*r.rel_h1_dirichlet);
        if (r.rel_l2_robin) g.l2r.push_back(*r.rel_l2_robin);
        if (r.rel_h1_robin) g.h1r.push_back(*r.rel_h1_robin);
    }

    Summary summary;
    auto emit = [&](const Group& g, const std::string& metric,
                    const std::vector<double>& vals) {
        if (vals.empty()) return;
        const EnsembleStats st = ensemble(vals, g.n_failed);
        summary.rows.push_back({g.problem, g.strategy, g.group, metric, st.mean,
                                st.sample_std, st.n_runs, st.n_failed});
    };
    for (const Group& g : groups) {
        emit(g, "rel_l2_dirichlet", g.l2d);
        emit(g, "rel_h1_dirichlet", g.h1d);
        emit(g, "rel_l2_robin", g.l2r);
        emit(g, "rel_h1_robin", g.h1r);
    }

    // best group per (problem, strategy, metric); ties toward smaller lambda
    std::vector<std::tuple<std::string, std::string, std::string>> keys;
    for (const SummaryRow& row : summary.rows) {
        const auto key = std::make_tuple(row.problem, row.strategy, row.metric);
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
        keys.push_back(key);
        const SummaryRow* best = nullptr;
        for (const SummaryRow& cand : summary.rows) {
            if (std::make_tuple(cand.problem, cand.strategy, cand.metric) != key)
                continue;
            if (!best || cand.mean < best->mean) {
                best = &cand;
            } else if (cand.mean == best->mean) {
                char* end1 = nullptr;
                char* end2 = nullptr;
                const double a = std::strtod(cand.group.c_str(), &end1);
                const double b = std::strtod(best->group.c_str(), &end2);
                if (*end1 == '\0' && *end2 == '\0' && a < b) best = &cand;
            }
        }
        if (best) summary.best.push_back(*best);
    }
    return summary;
}

std::string summary_to_text(const Summary& s) {
    std::string out;
    for (const SummaryRow& r : s.rows) {
        out += r.problem + " " + r.strategy + " " + r.group + " " + r.metric +
               ": " + format_mean_std(r.mean, r.sample_std) + " [n=" +
               std::to_string(r.n_runs) + ", failed=" +
               std::to_string(r.n_failed) + "]\n";
    }
    for (const SummaryRow& r : s.best) {
        out += "best " + r.metric + " for " + r.problem + " " + r.strategy +
               ": " + format_mean_std(r.mean, r.sample_std) +
               " achieved for " + r.group + "\n";
    }
    return out;
}

std::string summary_to_csv(const Summary& s) {
    std::string out =
        "problem,strategy,group,metric,mean,sample_std,n_runs,n_failed,best\n";
    auto is_best = [&](const SummaryRow& r) {
        for (const SummaryRow& b : s.best)
            if (b.problem == r.problem && b.strategy == r.strategy &&
                b.metric == r.metric && b.group == r.group)
                return true;
        return false;
    };
    for (const SummaryRow& r : s.rows) {
        out += r.problem + "," + r.strategy + "," + r.group + "," + r.metric +
               "," + fmt_double(r.mean) + "," + fmt_double(r.sample_std) + "," +
               std::to_string(r.n_runs) + "," + std::to_string(r.n_failed) +
               "," + (is_best(r) ? "true" : "false") + "\n";
    }
    return out;
}

Summary cmd_summarize(const std::string& records_csv_path,
                      const std::string& out_dir) {
    const std::vector<RunRecord> records =
        records_from_csv(read_file(records_csv_path));
    const Summary s = summarize_records(records);
    write_file((fs::path(out_dir) / "summary.csv").string(), summary_to_csv(s));
    write_file((fs::path(out_dir) / "summary.txt").string(), summary_to_text(s));
    return s;
}

namespace {

bool looks_like_monitor_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            return line.rfind("iteration,loss,energy", 0) == 0;
    return false;
}

} // namespace

void cmd_plot(const std::string& csv_path, const std::string& out_dir) {
    const std::string text = read_file(csv_path);
    if (looks_like_monitor_csv(text)) {
        std::vector<LinePoint> pts;
        std::istringstream in(text);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (header) {
                header = false;
                continue;
            }
            const auto f = split(line, ',');
            const double it = parse_double(f.at(0), "iteration");
            const double loss = parse_double(f.at(1), "loss");
            const double energy = parse_double(f.at(2), "energy");
            pts.push_back({it, std::abs(loss - energy)});
        }
        if (pts.empty()) throw std::invalid_argument("plot: empty series");
        write_file((fs::path(out_dir) / "monitor.svg").string(),
                   line_chart_svg("|loss - energy| over training", "iteration",
                                  "|loss - energy|", pts));
        return;
    }

    const Summary s = summarize_records(records_from_csv(text));
    // flat plot-data file: one row per (group, metric)
    std::string data =
        "problem,strategy,group,metric,mean,sample_std\n";
    for (const SummaryRow& r : s.rows)
        data += r.problem + "," + r.strategy + "," + r.group + "," + r.metric +
                "," + fmt_double(r.mean) + "," + fmt_double(r.sample_std) + "\n";
    write_file((fs::path(out_dir) / "plot_data.csv").string(), data);

    // one chart per (problem, strategy) with numeric groups
    std::vector<std::pair<std::string, std::string>> charts;
    for (const SummaryRow& r : s.rows) {
        const auto key = std::make_pair(r.problem, r.strategy);
        if (std::find(charts.begin(), charts.end(), key) != charts.end())
            continue;
        charts.push_back(key);
        std::vector<ErrorBarSeries> series;
        for (const std::string& metric :
             {std::string("rel_l2_dirichlet"), std::string("rel_h1_dirichlet"),
              std::string("rel_l2_robin"), std::string("rel_h1_robin")}) {
            ErrorBarSeries es{metric, {}};
            for (const SummaryRow& row : s.rows) {
                if (row.problem != key.first || row.strategy != key.second ||
                    row.metric != metric)
                    continue;
                char* end = nullptr;
                const double x = std::strtod(row.group.c_str(), &end);
                if (*end != '\0' || x <= 0.0) continue; // non-numeric group
                es.points.push_back({x, row.mean, row.sample_std});
            }
            if (!es.points.empty()) series.push_back(std::move(es));
        }
        if (series.empty()) continue;
        const std::string name =
            "plot_" + key.first + "_" + key.second + ".svg";
        write_file((fs::path(out_dir) / name).string(),
                   error_bar_chart_svg(key.first + " / " + key.second,
                                       "lambda", "relative error", series));
    }
}

MonitorSummary cmd_monitor(const ExperimentConfig& cfg) {
    if (cfg.monitor_every <= 0)
        throw std::invalid_argument("monitor_every must be > 0");
    StrategyConfig sc = plan_run(
        cfg, cfg.strategies.at(0),
        cfg.strategies.at(0) == StrategyKind::ExactBC
            ? std::optional<double>()
            : std::optional<double>(cfg.lambdas.at(0)),
        cfg.strategies.at(0) == StrategyKind::ExactBC
            ? std::optional<DistanceId>(cfg.distances.empty()
                                            ? distance_ids_for(cfg.problem)[0]
                                            : cfg.distances[0])
            : std::optional<DistanceId>(),
        cfg.base_seed);
    sc.monitor_every = cfg.monitor_every;
    if (cfg.preset == "desk") {
        sc.monitor_interior_samples = 100000;
        sc.monitor_boundary_samples = 1000;
    }
    const TrainedModel model = train(sc);
    if (model.monitor_trace.empty())
        throw std::runtime_error("monitor run produced no trace");

    std::string csv = "iteration,loss,energy,abs_diff\n";
    for (const MonitorSample& m : model.monitor_trace)
        csv += std::to_string(m.iteration) + "," + fmt_double(m.loss) + "," +
               fmt_double(m.energy) + "," +
               fmt_double(std::abs(m.loss - m.energy)) + "\n";
    write_file((fs::path(cfg.out_dir) / "monitor.csv").string(), csv);

    const MonitorSummary summary = monitor_divergence(model.monitor_trace);
    std::string txt = "max_abs_diff=" + fmt_double(summary.max_abs_diff) +
                      "\nfinal_abs_diff=" + fmt_double(summary.final_abs_diff) +
                      "\nsamples=" +
                      std::to_string(summary.abs_diff_series.size()) + "\n";
    write_file((fs::path(cfg.out_dir) / "monitor_summary.txt").string(), txt);

    std::vector<LinePoint> pts;
    for (const MonitorSample& m : model.monitor_trace)
        pts.push_back({static_cast<double>(m.iteration),
                       std::abs(m.loss - m.energy)});
    write_file((fs::path(cfg.out_dir) / "monitor.svg").string(),
               line_chart_svg("|loss - energy| over training", "iteration",
                              "|loss - energy|", pts));
    return summary;
}

} // namespace dritz
