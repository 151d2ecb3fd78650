#include "rmgen/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "json_config.hpp"
#include "rmgen/binary_io.hpp"
#include "rmgen/errors.hpp"
#include "rmgen/eval.hpp"
#include "rmgen/heatmap.hpp"
#include "rmgen/rng.hpp"

namespace rmgen::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using scenario::Dataset;
using scenario::RadioMap;

namespace {

constexpr int kEvalChunk = 32;

void require_file(const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " path is required");
    if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " '" + path + "' does not exist");
}

void require_output(const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string("--") + what + " is required");
}

selection::Method parse_method(const std::string& s) {
    if (s == "env" || s == "environment" || s == "environment_aware") return selection::Method::environment_aware;
    if (s == "random") return selection::Method::random;
    throw ConfigError("unknown selection method '" + s + "' (expected env or random)");
}

diffusion::SigmaMode parse_sigma(const std::string& s) {
    if (s == "posterior") return diffusion::SigmaMode::posterior;
    if (s == "beta") return diffusion::SigmaMode::beta;
    throw ConfigError("unknown sigma mode '" + s + "' (expected posterior or beta)");
}

void write_text(const std::string& path, const std::string& text) {
    write_file(path, std::vector<char>(text.begin(), text.end()));
}

std::string read_text(const std::string& path) {
    const auto bytes = read_file(path);
    return {bytes.begin(), bytes.end()};
}

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

const scenario::DatasetRecord& record_at(const Dataset& ds, int index) {
    if (index < 0 || static_cast<std::size_t>(index) >= ds.records.size()) {
        throw ConfigError("record index " + std::to_string(index) + " outside dataset of " +
                          std::to_string(ds.records.size()) + " records");
    }
    return ds.records[static_cast<std::size_t>(index)];
}

}  // namespace

Split parse_split(const std::string& s) {
    if (s == "train") return Split::train;
    if (s == "test") return Split::test;
    if (s == "all") return Split::all;
    throw ConfigError("unknown split '" + s + "' (expected train, test or all)");
}

Dataset select_split(const Dataset& ds, Split split) {
    const std::size_t cut = scenario::train_split_point(ds.records.size());
    switch (split) {
        case Split::train: return scenario::slice(ds, 0, cut);
        case Split::test: return scenario::slice(ds, cut, ds.records.size());
        case Split::all: break;
    }
    return ds;
}

// ---- argument validation -------------------------------------------------

void GenDataArgs::validate() const {
    scenario::parse_regime(regime);
    if (count < 1) throw ConfigError("--count must be at least 1");
    require_output(out, "out");
}

void SelectArgs::validate() const {
    require_file(data, "dataset");
    const auto kind = encoders::parse_condition_kind(cond);
    if (kind == encoders::ConditionKind::fragments) {
        parse_method(select);
        selection::fragment_budget(percent, 4, 1);
        if (k < 1) throw ConfigError("--k must be positive");
        if (capacity < 1) throw ConfigError("--capacity must be positive");
    }
    if (index < 0) throw ConfigError("--index must be non-negative");
}

void TrainArgs::validate() const {
    require_file(data, "dataset");
    if (!resume.empty()) require_file(resume, "checkpoint");
    encoders::parse_condition_kind(cond);
    parse_method(select);
    parse_sigma(sigma);
    parse_split(split);
    selection::fragment_budget(percent, 4, 1);
    if (epochs < 1) throw ConfigError("--epochs must be at least 1");
    if (!(lr > 0.0f) || !std::isfinite(lr)) throw ConfigError("--lr must be positive");
    if (batch < 1) throw ConfigError("--batch must be at least 1");
    if (steps < 2) throw ConfigError("--steps must be at least 2");
    if (!(beta1 > 0.0 && beta1 < beta_t && beta_t < 1.0)) throw ConfigError("need 0 < beta1 < betaT < 1");
    if (base_channels < 1) throw ConfigError("--base-channels must be positive");
    require_output(out, "out");
}

void SampleArgs::validate() const {
    require_file(ckpt, "checkpoint");
    if (cond_file.empty() == data.empty()) throw ConfigError("give exactly one of --cond-file or --data");
    if (!cond_file.empty()) require_file(cond_file, "condition");
    if (!data.empty()) require_file(data, "dataset");
    if (index < 0) throw ConfigError("--index must be non-negative");
}

void EvalArgs::validate() const {
    require_file(ckpt, "checkpoint");
    require_file(data, "dataset");
    if (etr.empty()) throw ConfigError("at least one --etr value is required");
    for (double e : etr) {
        if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("--etr values must be positive");
    }
    parse_split(split);
    if (limit < 0) throw ConfigError("--limit must be non-negative");
    if (select) parse_method(*select);
    if (percent) selection::fragment_budget(*percent, 4, 1);
    if (!(bin_width > 0.0)) throw ConfigError("--bin-width must be positive");
}

void RenderArgs::validate() const {
    if (map.empty() == data.empty()) throw ConfigError("give exactly one of --map or --data");
    if (!map.empty()) require_file(map, "map");
    if (!data.empty()) require_file(data, "dataset");
    if (min_dbm && max_dbm && !(*max_dbm > *min_dbm)) throw ConfigError("--max must exceed --min");
    require_output(out, "out");
}

// ---- serialization helpers ----------------------------------------------

std::string condition_to_json(const encoders::ConditionSet& cs) {
    json doc;
    doc["kind"] = encoders::to_string(cs.kind);
    doc["capacity"] = cs.capacity;
    doc["fragments"] = json::array();
    for (const auto& f : cs.fragments) {
        doc["fragments"].push_back({{"row", f.row}, {"col", f.col}, {"k", f.size_k}, {"values_dbm", f.values_dbm}});
    }
    doc["tx"] = json::array();
    for (const auto& t : cs.tx_list) doc["tx"].push_back({{"x", t.x}, {"y", t.y}});
    return doc.dump(2) + "\n";
}

encoders::ConditionSet condition_from_json(const std::string& text) {
    encoders::ConditionSet cs;
    try {
        const json doc = json::parse(text);
        cs.kind = encoders::parse_condition_kind(doc.at("kind").get<std::string>());
        cs.capacity = doc.value("capacity", cs.capacity);
        for (const auto& f : doc.value("fragments", json::array())) {
            selection::Fragment frag;
            frag.row = f.at("row").get<int>();
            frag.col = f.at("col").get<int>();
            frag.size_k = f.at("k").get<int>();
            frag.values_dbm = f.at("values_dbm").get<std::vector<float>>();
            cs.fragments.push_back(std::move(frag));
        }
        for (const auto& t : doc.value("tx", json::array())) {
            cs.tx_list.push_back({t.at("x").get<int>(), t.at("y").get<int>()});
        }
    } catch (const json::exception& e) {
        throw ConditionError(std::string("malformed condition file: ") + e.what());
    }
    cs.validate();
    return cs;
}

std::string map_to_csv(const RadioMap& map) {
    std::string s;
    char buf[32];
    for (int r = 0; r < map.grid_n; ++r) {
        for (int c = 0; c < map.grid_n; ++c) {
            std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(map.at(r, c)));
            if (c) s += ',';
            s += buf;
        }
        s += '\n';
    }
    return s;
}

RadioMap map_from_csv(const std::string& text) {
    std::vector<float> values;
    std::istringstream lines(text);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                values.push_back(std::stof(cell));
            } catch (const std::exception&) {
                throw StorageError("map CSV holds a non-numeric cell '" + cell + "'");
            }
        }
        ++rows;
    }
    if (rows == 0 || values.size() != static_cast<std::size_t>(rows) * rows) {
        throw DimensionError("map CSV is not a square grid");
    }
    RadioMap m;
    m.grid_n = rows;
    m.values_dbm = std::move(values);
    return m;
}

// ---- commands --------------------------------------------------------------

void cmd_gen_data(const GenDataArgs& a, std::ostream& out) {
    a.validate();
    const Dataset ds = scenario::build_dataset(scenario::parse_regime(a.regime), a.count, a.seed);
    scenario::save_dataset(ds, a.out);
    out << "wrote " << ds.records.size() << " " << a.regime << " records to " << a.out << " (min "
        << fixed(ds.min_dbm, 2) << " dBm, max " << fixed(ds.max_dbm, 2) << " dBm)\n";
}

void cmd_select_fragments(const SelectArgs& a, std::ostream& out) {
    a.validate();
    const Dataset ds = scenario::load_dataset(a.data);
    const auto& rec = record_at(ds, a.index);
    encoders::EncoderConfig enc;
    enc.grid_n = ds.grid_n;
    enc.fragment_k = a.k;
    enc.fragment_capacity = a.capacity;
    const diffusion::ConditionOptions opts{parse_method(a.select), a.percent, a.n_subareas};
    const auto cs = diffusion::build_condition(rec, encoders::parse_condition_kind(a.cond), opts, enc,
                                               derive_seed(a.seed, "selection", static_cast<std::uint64_t>(a.index)));
    const std::string text = condition_to_json(cs);
    if (a.out.empty()) {
        out << text;
    } else {
        write_text(a.out, text);
        out << "wrote " << (cs.kind == encoders::ConditionKind::fragments ? cs.fragments.size() : cs.tx_list.size())
            << " " << encoders::to_string(cs.kind) << " entries to " << a.out << "\n";
    }
}

void cmd_train(const TrainArgs& a, std::ostream& out) {
    a.validate();
    const Dataset ds = scenario::load_dataset(a.data);
    const Dataset train_set = select_split(ds, parse_split(a.split));
    if (train_set.records.empty()) throw ConfigError("training split of " + a.data + " is empty");
    const auto kind = encoders::parse_condition_kind(a.cond);

    diffusion::TrainConfig tc;
    tc.lr = a.lr;
    tc.epochs = a.epochs;
    tc.batch_size = a.batch;
    tc.seed = a.seed;
    tc.condition_kind = kind;
    const auto report = [&out](const diffusion::EpochReport& r) {
        out << "epoch " << r.epoch << " loss " << fixed(r.mean_loss, 6) << "\n" << std::flush;
    };

    diffusion::ModelCheckpoint ckpt;
    if (!a.resume.empty()) {
        ckpt = diffusion::load_checkpoint(a.resume);
        const auto& mc = ckpt.model->config();
        if (mc.kind != kind) {
            throw ConfigError("checkpoint was trained on " + encoders::to_string(mc.kind) + " conditions, --cond is " +
                              a.cond);
        }
        if (mc.unet.grid_n != ds.grid_n) throw ConfigError("checkpoint grid differs from dataset grid");
        diffusion::train_model(ckpt, train_set, tc, report);
    } else {
        const diffusion::ScheduleConfig sched{a.steps, a.beta1, a.beta_t};
        const diffusion::ConditionOptions opts{parse_method(a.select), a.percent, a.n_subareas};
        auto mc = diffusion::default_model_config(ds, kind, sched, opts);
        mc.unet.base_channels = a.base_channels;
        mc.sigma_mode = parse_sigma(a.sigma);
        if (kind == encoders::ConditionKind::fragments) {
            const int budget = selection::fragment_budget(a.percent, ds.grid_n, mc.encoder.fragment_k);
            mc.encoder.fragment_capacity = std::max(mc.encoder.fragment_capacity, budget);
        } else {
            int most = 0;
            for (const auto& r : ds.records) most = std::max(most, static_cast<int>(r.scenario.tx_list.size()));
            mc.encoder.tx_capacity = std::max(mc.encoder.tx_capacity, most);
        }
        ckpt = diffusion::train(train_set, tc, mc, report);
    }
    diffusion::save_checkpoint(ckpt, a.out);
    out << "wrote checkpoint " << a.out << " (" << ckpt.loss_trace.size() << " epochs, "
        << ckpt.model->parameters().total_elements() << " parameters)\n";
}

void cmd_sample(const SampleArgs& a, std::ostream& out) {
    a.validate();
    const auto ckpt = diffusion::load_checkpoint(a.ckpt);
    const auto& mc = ckpt.model->config();
    encoders::ConditionSet cs;
    if (!a.cond_file.empty()) {
        cs = condition_from_json(read_text(a.cond_file));
    } else {
        const Dataset ds = scenario::load_dataset(a.data);
        if (ds.grid_n != mc.unet.grid_n) throw ConfigError("dataset grid differs from checkpoint grid");
        cs = diffusion::build_condition(record_at(ds, a.index), mc.kind, mc.condition, mc.encoder,
                                        derive_seed(a.seed, "selection", static_cast<std::uint64_t>(a.index)));
    }
    const RadioMap map = diffusion::sample(cs, ckpt, a.seed);
    const std::string csv = map_to_csv(map);
    if (a.out.empty()) {
        out << csv;
    } else {
        write_text(a.out, csv);
        out << "wrote sampled map to " << a.out << "\n";
    }
    if (!a.ppm.empty()) heatmap::render_heatmap(map.values_dbm, map.grid_n, mc.norm.min_dbm, mc.norm.max_dbm, a.ppm);
}

eval::EvalReport cmd_eval(const EvalArgs& a, std::ostream& out) {
    a.validate();
    const auto ckpt = diffusion::load_checkpoint(a.ckpt);
    const auto& mc = ckpt.model->config();
    const Dataset ds = scenario::load_dataset(a.data);
    if (ds.grid_n != mc.unet.grid_n) throw ConfigError("dataset grid differs from checkpoint grid");
    const Split split = parse_split(a.split);
    Dataset test = select_split(ds, split);
    if (a.limit > 0 && static_cast<std::size_t>(a.limit) < test.records.size()) {
        test = scenario::slice(test, 0, static_cast<std::size_t>(a.limit));
    }
    if (test.records.empty()) throw ConfigError("no records to evaluate in " + a.data);

    diffusion::ConditionOptions opts = mc.condition;
    if (a.select) opts.method = parse_method(*a.select);
    if (a.percent) opts.percent = *a.percent;

    const std::size_t n = test.records.size();
    std::vector<encoders::ConditionSet> conds;
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < n; ++i) {
        conds.push_back(diffusion::build_condition(test.records[i], mc.kind, opts, mc.encoder,
                                                   derive_seed(a.seed, "selection", i)));
        seeds.push_back(derive_seed(a.seed, "sample", i));
    }
    std::vector<RadioMap> generated;
    for (std::size_t start = 0; start < n; start += kEvalChunk) {
        const std::size_t len = std::min<std::size_t>(kEvalChunk, n - start);
        auto part = diffusion::sample_batch(*ckpt.model, std::span(conds).subspan(start, len),
                                            std::span(seeds).subspan(start, len));
        std::move(part.begin(), part.end(), std::back_inserter(generated));
    }
    std::vector<RadioMap> truth;
    for (const auto& r : test.records) truth.push_back(r.map);

    const Dataset reference = split == Split::test ? select_split(ds, Split::train) : test;
    const RadioMap baseline = eval::baseline_mean_map(reference.records.empty() ? test : reference);
    const auto report = eval::make_report(truth, generated, a.etr, a.bin_width, &baseline);

    const std::string text = eval::format_report(report);
    if (a.report.empty()) {
        out << text;
    } else {
        write_text(a.report, text);
        out << "accuracy@" << fixed(report.etr, 2) << ": " << fixed(report.accuracy) << " (baseline "
            << fixed(report.baseline_accuracy) << ") over " << n << " maps\n";
    }
    if (!a.csv.empty()) write_text(a.csv, eval::format_csv(report));
    if (!a.render.empty()) {
        fs::create_directories(a.render);
        const double err_hi = 2.0 * report.etr;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string stem = (fs::path(a.render) / ("map_" + std::to_string(i))).string();
            heatmap::render_heatmap(truth[i].values_dbm, truth[i].grid_n, mc.norm.min_dbm, mc.norm.max_dbm,
                                    stem + "_gt.ppm");
            heatmap::render_heatmap(generated[i].values_dbm, generated[i].grid_n, mc.norm.min_dbm, mc.norm.max_dbm,
                                    stem + "_gen.ppm");
            heatmap::render_heatmap(eval::error_map(truth[i], generated[i]), truth[i].grid_n, 0.0, err_hi,
                                    stem + "_err.ppm");
        }
    }
    return report;
}

void cmd_render(const RenderArgs& a, std::ostream& out) {
    a.validate();
    RadioMap map;
    double lo = 0.0, hi = 0.0;
    if (!a.data.empty()) {
        const Dataset ds = scenario::load_dataset(a.data);
        map = record_at(ds, a.index).map;
        lo = ds.min_dbm;
        hi = ds.max_dbm;
    } else {
        map = map_from_csv(read_text(a.map));
        const auto [mn, mx] = std::minmax_element(map.values_dbm.begin(), map.values_dbm.end());
        lo = *mn;
        hi = *mx;
    }
    if (a.min_dbm) lo = *a.min_dbm;
    if (a.max_dbm) hi = *a.max_dbm;
    heatmap::render_heatmap(map.values_dbm, map.grid_n, lo, hi, a.out);
    out << "wrote " << map.grid_n << "x" << map.grid_n << " heatmap to " << a.out << "\n";
}

// ---- argument parsing --------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conditional diffusion radio map generator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file supplying any flag; command-line values take precedence");

    GenDataArgs gen;
    auto* g = app.add_subcommand("gen-data", "Synthesize a dataset of scenarios and radio maps");
    g->add_option("--regime", gen.regime, "indoor or outdoor")->capture_default_str();
    g->add_option("--count", gen.count, "number of records")->required();
    g->add_option("--seed", gen.seed, "dataset seed")->required();
    g->add_option("--out", gen.out, "output dataset file")->required();

    SelectArgs sel;
    auto* s = app.add_subcommand("select-fragments", "Build the condition set for one dataset record");
    s->add_option("--data", sel.data, "dataset file")->required();
    s->add_option("--index", sel.index, "record index")->capture_default_str();
    s->add_option("--cond", sel.cond, "fragments or tx")->capture_default_str();
    s->add_option("--select", sel.select, "env or random")->capture_default_str();
    s->add_option("--percent", sel.percent, "known-area percentage")->capture_default_str();
    s->add_option("--k", sel.k, "fragment side length")->capture_default_str();
    s->add_option("--n-subareas", sel.n_subareas, "number of subareas")->capture_default_str();
    s->add_option("--capacity", sel.capacity, "maximum fragments")->capture_default_str();
    s->add_option("--seed", sel.seed, "selection seed")->required();
    s->add_option("--out", sel.out, "output JSON (default stdout)");

    TrainArgs tr;
    auto* t = app.add_subcommand("train", "Train a conditional diffusion model");
    t->add_option("--data", tr.data, "dataset file")->required();
    t->add_option("--cond", tr.cond, "fragments or tx")->capture_default_str();
    t->add_option("--select", tr.select, "env or random")->capture_default_str();
    t->add_option("--percent", tr.percent, "known-area percentage")->capture_default_str();
    t->add_option("--n-subareas", tr.n_subareas, "number of subareas")->capture_default_str();
    t->add_option("--epochs", tr.epochs, "training epochs")->capture_default_str();
    t->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str();
    t->add_option("--batch", tr.batch, "batch size")->capture_default_str();
    t->add_option("--seed", tr.seed, "training seed")->required();
    t->add_option("--steps", tr.steps, "diffusion steps T")->capture_default_str();
    t->add_option("--beta1", tr.beta1, "first noise variance")->capture_default_str();
    t->add_option("--beta-t", tr.beta_t, "last noise variance")->capture_default_str();
    t->add_option("--base-channels", tr.base_channels, "U-Net base width")->capture_default_str();
    t->add_option("--sigma", tr.sigma, "posterior or beta")->capture_default_str();
    t->add_option("--split", tr.split, "train, test or all")->capture_default_str();
    t->add_option("--resume", tr.resume, "continue training this checkpoint");
    t->add_option("--out", tr.out, "output checkpoint")->required();

    SampleArgs sa;
    auto* sp = app.add_subcommand("sample", "Generate one radio map");
    sp->add_option("--ckpt", sa.ckpt, "checkpoint file")->required();
    sp->add_option("--cond-file", sa.cond_file, "condition JSON from select-fragments");
    sp->add_option("--data", sa.data, "dataset to draw the condition from");
    sp->add_option("--index", sa.index, "record index")->capture_default_str();
    sp->add_option("--seed", sa.seed, "sampling seed")->required();
    sp->add_option("--out", sa.out, "output CSV (default stdout)");
    sp->add_option("--ppm", sa.ppm, "also render a heatmap");

    EvalArgs ev;
    std::string ev_select;
    double ev_percent = 0.0;
    auto* e = app.add_subcommand("eval", "Sample held-out records and score them");
    e->add_option("--ckpt", ev.ckpt, "checkpoint file")->required();
    e->add_option("--data", ev.data, "dataset file")->required();
    e->add_option("--etr", ev.etr, "error tolerance rate(s); the first is primary")->delimiter(',');
    e->add_option("--split", ev.split, "train, test or all")->capture_default_str();
    e->add_option("--limit", ev.limit, "evaluate at most this many records")->capture_default_str();
    auto* sel_opt = e->add_option("--select", ev_select, "override the checkpoint's selection method");
    auto* pct_opt = e->add_option("--percent", ev_percent, "override the checkpoint's percentage");
    e->add_option("--seed", ev.seed, "sampling seed")->required();
    e->add_option("--bin-width", ev.bin_width, "histogram bin width in dB")->capture_default_str();
    e->add_option("--report", ev.report, "report file (default stdout)");
    e->add_option("--csv", ev.csv, "per-map accuracy CSV");
    e->add_option("--render", ev.render, "directory for PPM heatmaps");

    RenderArgs rd;
    double rd_min = 0.0, rd_max = 0.0;
    auto* r = app.add_subcommand("render", "Render a radio map as a PPM heatmap");
    r->add_option("--map", rd.map, "map CSV");
    r->add_option("--data", rd.data, "dataset file");
    r->add_option("--index", rd.index, "record index")->capture_default_str();
    auto* min_opt = r->add_option("--min", rd_min, "colormap lower bound (dBm)");
    auto* max_opt = r->add_option("--max", rd_max, "colormap upper bound (dBm)");
    r->add_option("--out", rd.out, "output PPM")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return 2;
    }

    try {
        if (g->parsed()) {
            cmd_gen_data(gen, out);
        } else if (s->parsed()) {
            cmd_select_fragments(sel, out);
        } else if (t->parsed()) {
            cmd_train(tr, out);
        } else if (sp->parsed()) {
            cmd_sample(sa, out);
        } else if (e->parsed()) {
            if (sel_opt->count() > 0) ev.select = ev_select;
            if (pct_opt->count() > 0) ev.percent = ev_percent;
            cmd_eval(ev, out);
        } else if (r->parsed()) {
            if (min_opt->count() > 0) rd.min_dbm = rd_min;
            if (max_opt->count() > 0) rd.max_dbm = rd_max;
            cmd_render(rd, out);
        }
    } catch (const ConfigError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const StorageError& ex) {
        err << "storage error: " << ex.what() << "\n";
        return 3;
    } catch (const ConditionError& ex) {
        err << "condition error: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace rmgen::cli
